"""Exception taxonomy shared by every module.

Validation errors mean an input failed a documented precondition; numerical
errors mean a computation left the trustworthy regime at runtime.  The class
name doubles as the stable error tag the CLI prints on stderr, so the names
stay short and descriptive rather than following the usual ``*Error`` suffix.
"""


class StateGeomError(Exception):
    """Base class for everything raised by this package."""


class ValidationError(StateGeomError):
    """An input violates a precondition.  CLI exit code 2."""


class NumericalError(StateGeomError):
    """A computation failed numerically.  CLI exit code 3."""


class NotHermitian(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class ZeroFunctional(ValidationError):
    pass


class TraceError(ValidationError):
    pass


class NotUnitary(ValidationError):
    pass


class Singular(ValidationError):
    pass


class RankMismatch(ValidationError):
    pass


class ZeroWeight(ValidationError):
    pass


class NotTracial(ValidationError):
    pass


class NumericallySingular(NumericalError):
    pass
