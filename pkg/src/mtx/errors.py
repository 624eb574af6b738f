"""Exception types shared across the package."""


class MtxError(Exception):
    """Base class for all package errors."""


class NotInGroup(MtxError):
    """Matrix fails a subgroup membership precondition."""


class NotInDomain(MtxError):
    """Element lies outside the stated domain of a multiplier/table row."""


class NotCoprime(MtxError):
    pass


class OddProduct(MtxError):
    """Gauss-sum closed form needs c*d even."""


class ZeroModulus(MtxError):
    pass


class EvenInput(MtxError):
    """eps_d needs an odd argument."""


class ZeroInput(MtxError):
    pass


class SingularMatrix(MtxError):
    pass


class NotUnimodular(MtxError):
    """Iwasawa decomposition needs |det| = 1."""


class DomainError(MtxError):
    """Point outside the accepted region (Im z too small, |Re z| too large, ...)."""


class PoleAtZ(MtxError):
    """cz + d vanished."""


class KindMismatch(MtxError):
    pass


class HatUnsupported(MtxError):
    """Operation not defined for the Hat (unit-circle) cover."""


class NotOrthogonal(MtxError):
    pass


class InternalMismatch(MtxError):
    """Closed form and definitional value disagreed; indicates a bug upstream."""


class InvalidParams(MtxError):
    pass
