"""Exception types shared across the package."""


class ExcMapsError(Exception):
    """Base class for all library errors."""


# algebra
class NotPrime(ExcMapsError, ValueError):
    pass


class DegreeTooLarge(ExcMapsError, ValueError):
    pass


class FieldMismatch(ExcMapsError, ValueError):
    pass


class DivisionByZero(ExcMapsError, ZeroDivisionError):
    pass


class ZeroElement(ExcMapsError, ValueError):
    pass


class NoEmbedding(ExcMapsError, ValueError):
    pass


class ConstantMap(ExcMapsError, ValueError):
    pass


class ParseError(ExcMapsError, ValueError):
    pass


# exceptionality
class CapExceeded(ExcMapsError, ValueError):
    pass


# groups
class GroupTooLarge(ExcMapsError, ValueError):
    pass


class InvalidTriple(ExcMapsError, ValueError):
    """Raised when a triple fails a structural check.

    ``flag`` names the first check that failed.
    """

    def __init__(self, flag, message=None):
        self.flag = flag
        super().__init__(message or f"invalid triple: {flag} check failed")


class NotNormal(ExcMapsError, ValueError):
    pass


class NotGenerator(ExcMapsError, ValueError):
    pass


class NotTransitive(ExcMapsError, ValueError):
    pass


class NotIntermediate(ExcMapsError, ValueError):
    pass


# series / tame extensions
class NotAUnit(ExcMapsError, ValueError):
    pass


class NotOneUnit(ExcMapsError, ValueError):
    pass


class WildRoot(ExcMapsError, ValueError):
    pass


class WildOrder(ExcMapsError, ValueError):
    pass


class NotTotallyRamifiedShape(ExcMapsError, ValueError):
    pass


class NotCoprime(ExcMapsError, ValueError):
    pass
