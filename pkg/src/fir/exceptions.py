"""Exception hierarchy for the fir package."""


class FirError(Exception):
    """Base class for every error raised by fir."""


# linear algebra

class DimensionMismatch(FirError, ValueError):
    pass


class ModulusMismatch(FirError, ValueError):
    pass


# groups

class GroupTableError(FirError, ValueError):
    """A Cayley table fails one of the group axioms."""


class NotClosed(GroupTableError):
    pass


class NoIdentity(GroupTableError):
    pass


class NoInverse(GroupTableError):
    pass


class NotAssociative(GroupTableError):
    pass


class OrderCapExceeded(FirError):
    pass


class InvalidAction(FirError, ValueError):
    pass


class NotPrimePower(FirError, ValueError):
    pass


class NotASubgroup(FirError, ValueError):
    pass


class PrimeDoesNotDivideOrder(FirError, ValueError):
    pass


# socle / modules

class CarrierNotNormal(FirError):
    pass


class AbelianMinimalNotElementary(FirError):
    """An abelian minimal normal subgroup is not elementary abelian (indicates a bug)."""


class NotCompletelyReducible(FirError):
    pass


class SearchCapExceeded(FirError):
    pass


# oracle

class OracleCapExceeded(FirError):
    pass


class OracleInconsistency(FirError):
    """Dixon's method produced data that fails an exactness check."""


# cli

class SpecParseError(FirError, ValueError):
    pass
