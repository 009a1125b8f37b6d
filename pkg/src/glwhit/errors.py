"""Domain-error hierarchy shared by all modules.

Every error below means "the input is outside the documented domain" (CLI
exit code 2), as opposed to usage errors (exit code 64) which argparse
raises on its own.
"""


class DomainError(Exception):
    """Base class for all domain errors."""


class AmbientMismatchError(DomainError):
    """Subspace lattice operation on unequal ambient dimensions."""


class NotNilpotentError(DomainError):
    """A matrix required to be nilpotent is not."""


class NotDominatedError(DomainError):
    """Partition pair not related in dominance order."""


class InvalidPairError(DomainError):
    """(S, f) is not a Whittaker pair ([S,f] != -2f or S not diagonal)."""


class HypothesisViolatedError(DomainError):
    """A named deformation-chain hypothesis fails; .name says which."""

    def __init__(self, name, detail=""):
        self.name = name
        super().__init__(f"hypothesis violated: {name}" + (f" ({detail})" if detail else ""))


class PerturbationUnverifiedError(DomainError):
    """A supplied perturbation does not move f into the target orbit."""


class PerturbationNotFoundError(DomainError):
    """Bounded perturbation search exhausted (not a proof of nonexistence)."""


class NotInStabilizerError(DomainError):
    """Preorder argument does not commute with f."""


class NotGradedError(DomainError):
    """levi_relation argument is not of ad(S)-weight -2."""


class NotCompatibleError(DomainError):
    """f has support outside the simple negative positions of the given system."""


class NotPLError(DomainError):
    """f is not supported on the simple negatives of any ordering."""


class RegularityFailureError(DomainError):
    """The interpolated regular element vanished on a root (must not occur)."""


class CompositionTooShortError(DomainError):
    """Mirabolic machinery needs a composition of length >= 2."""


class ZeroElementError(DomainError):
    """Heisenberg data requested for e = 0."""


class NonCommutingError(DomainError):
    """[Z, e] != 0 where commutation is required."""
