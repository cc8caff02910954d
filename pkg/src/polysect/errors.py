"""Exception hierarchy.

Every error raised for bad *input geometry or symbols* derives from
:class:`DomainError`; the CLI maps those to exit code 2.
"""


class PolysectError(Exception):
    """Base class for all package errors."""


class DomainError(PolysectError, ValueError):
    """Input lies outside the domain of an operation."""


class DependentInput(DomainError):
    pass


class DependentRoots(DependentInput):
    pass


class Degenerate(DomainError):
    """Points do not determine a unique hyperplane."""


class DegenerateInput(DomainError):
    """Vertex set does not affinely span its ambient space."""


class ZeroRoot(DomainError):
    pass


class NotElliptic(DomainError):
    pass


class FacetNotElliptic(DomainError):
    pass


class NumericalDomain(DomainError):
    pass


class NotQuasiRegular(DomainError):
    pass


class RankTooLow(DomainError):
    pass


class Unsupported(DomainError):
    pass


class NotRegular(DomainError):
    """Edge detection by minimal distance is only valid for vertex-transitive input."""


class UnboundedSystem(DomainError):
    pass


class EmptyGeometry(DomainError):
    pass


class WindowTooLarge(DomainError):
    pass
