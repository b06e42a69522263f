"""Exception hierarchy shared by every module of the package."""


class VsqError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class NotUnitary(VsqError):
    pass


class InvalidTransition(VsqError):
    pass


class OverlappingTransitions(VsqError):
    pass


class UnknownGate(VsqError):
    pass


class UnknownLevel(VsqError):
    pass


class UnknownScheme(VsqError):
    pass


class SameRole(VsqError):
    pass


class InvalidScheme(VsqError):
    pass


class ParseError(VsqError):
    pass


class NegativeAngle(VsqError):
    pass


class NormDrift(VsqError):
    pass


class UnknownOutcome(VsqError):
    pass
