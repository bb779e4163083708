"""Shared exception types for dg-forge.

Every failure mode that callers are expected to catch gets its own class;
anything else is a plain ValueError/AssertionError and indicates a bug or
malformed input.
"""


class DgForgeError(Exception):
    """Base class for all dg-forge specific errors."""


class FieldMismatch(DgForgeError):
    """Operands live over different coefficient fields."""


class DimMismatch(DgForgeError):
    """Operands have incompatible shapes or ambient dimensions."""


class NoSolution(DgForgeError):
    """A linear system has no solution."""


class FieldTooSmall(DgForgeError):
    """The ground field is too small for the requested exact algorithm
    (trace-form radical gate failed and no enumeration fallback applies)."""


class BudgetExceeded(DgForgeError):
    """An exhaustive search would exceed the configured budget."""


class NotACycle(DgForgeError):
    """A multiplicative-set generator was required to be a cycle (d(s) = 0)."""


class NotSemiprime(DgForgeError):
    """The algebra failed the dg-semiprimeness precondition."""


class NotOre(DgForgeError):
    """The multiplicative set is not (verifiably) Ore for this backend."""


class NotRegular(DgForgeError):
    """A declared-regular multiplicative set contains a zero divisor."""


class InhomogeneousDenominator(DgForgeError):
    """Denominators must be homogeneous (fraction degree and Koszul signs
    need a well-defined |s|)."""


class NotLocalised(DgForgeError):
    """A Laurent/fraction operation was requested on a ring in which the
    needed generators are not inverted."""


class NotHereditary(DgForgeError):
    """The cycle subalgebra could not be certified hereditary, so the
    lying-over check does not apply."""


class WindowTooSmall(DgForgeError):
    """The degree window is too small/degenerate to certify a graded
    comparison on the polynomial backend."""


class VerificationError(DgForgeError):
    """A sampled identity check failed; carries the witnessing sample."""

    def __init__(self, check: str, witness):
        self.check = check
        self.witness = witness
        super().__init__(f"{check}: failed with witness {witness!r}")


class HypothesisFailed(DgForgeError):
    """A pipeline stage's hypothesis failed; carries stage name and witness."""

    def __init__(self, stage: str, witness):
        self.stage = stage
        self.witness = witness
        super().__init__(f"stage {stage!r} failed: {witness!r}")


class SpecError(DgForgeError):
    """A run-description document failed to parse or validate; the message
    carries the offending line or key path."""
