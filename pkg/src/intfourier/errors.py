"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class UndefinedValuation(DomainError):
    """The p-adic valuation of zero was requested."""


class InvariantFailure(ArithmeticError):
    """A mathematical invariant that must hold was violated.

    Raised when an exact computation contradicts a claim the library is
    built on (an integrality statement, a divisibility lemma, ...).
    """


class UnsupportedModel(DomainError):
    """The requested operation is not implemented for this model."""


class NotARepresentation(DomainError):
    """The supplied operators do not satisfy the sl2 relations."""
