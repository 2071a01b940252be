"""Exception types shared across the package.

All of them subclass ValueError so callers that only care about bad input can
catch a single type.
"""


class IllDefinedHomError(ValueError):
    """A matrix does not carry source relations into the target relation lattice."""


class InfiniteLevelError(ValueError):
    """A quotient level that must be finite turned out infinite."""

    def __init__(self, level: str, divisors: list[int]):
        self.level = level
        self.divisors = divisors
        super().__init__(f"Level {level} is infinite (elementary divisors {divisors})")


class MackeyAxiomError(ValueError):
    """A Mackey, Green or Tambara functor violates one of its axioms."""

    def __init__(self, name: str, violations: list[str]):
        self.violations = violations
        shown = "; ".join(violations[:3])
        more = f" (+{len(violations) - 3} more)" if len(violations) > 3 else ""
        super().__init__(f"{name or 'functor'} is not valid: {shown}{more}")


class NotInLevelError(ValueError):
    """An element vector does not belong to the level it was attached to."""
