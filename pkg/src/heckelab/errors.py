"""Exception types shared across the workbench."""


class HeckelabError(Exception):
    """Base class for all workbench errors."""


class NotPrime(HeckelabError):
    """A value required to be prime failed a primality test."""


class CharTooSmall(HeckelabError):
    """Characteristics 2 and 3 are not supported."""


class NotAUnit(HeckelabError):
    """Operand is zero or shares a factor with the modulus."""


class NotCoprime(HeckelabError):
    """Arguments violate a coprimality precondition."""


class IncompleteFactorization(HeckelabError):
    """An operation needed a complete factorization but the budget ran out."""


class ZeroShift(HeckelabError):
    """The additive shift of a Frobenius-affine equation is zero."""


class LevelMismatch(HeckelabError):
    """Field elements live at different extension levels."""


class CuspInput(HeckelabError):
    """A cusp point was passed where a finite j-invariant is required."""


class UnknownLevel(HeckelabError):
    """Requested modular polynomial level is not in the shipped set."""


class MalformedData(HeckelabError):
    """A shipped data file failed its integrity checks."""


class BudgetExceeded(HeckelabError):
    """A computation would exceed the configured budget."""


class ExtensionTooLarge(HeckelabError):
    """A required field extension exceeds the maximum constructible degree."""
