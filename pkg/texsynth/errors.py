class TexsynthError(Exception):
    pass


class AudioFormatError(TexsynthError):
    pass


class SignalTooShortError(TexsynthError):
    pass


class DegenerateInputError(TexsynthError):
    pass


class ShapeMismatchError(TexsynthError):
    pass


class ParamFileError(TexsynthError):
    pass


class ParamFileVersionError(ParamFileError):
    pass


class NonFiniteError(TexsynthError):
    pass
