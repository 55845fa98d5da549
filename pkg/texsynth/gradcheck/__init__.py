from .checks import CheckResult, central_difference, relative_error, run_checks, DEFAULT_TOLERANCE
