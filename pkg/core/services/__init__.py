from .verification import THEOREM_CHECKS, run_theorem_checks  # noqa: F401
