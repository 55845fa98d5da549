from abc import ABCMeta, abstractmethod
from jinja2 import Environment, PackageLoader


class GeneratorAbstract(metaclass=ABCMeta):
    """
    Template file generator
    """
    def __init__(self, template_path):
        self.env = Environment(loader=PackageLoader('texsynth.generators', 'templates'), trim_blocks=True,
                               lstrip_blocks=True, keep_trailing_newline=True)
        self.tpl = self.env.get_template(template_path)
        self._template_path = template_path
        self._template = None

    @property
    @abstractmethod
    def template(self):
        pass
