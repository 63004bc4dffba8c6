"""Numeric tolerances, caps, and the run configuration record.

All floating-point comparisons in the package go through these constants so
that a single RunConfig can tighten or relax them coherently.
"""

from dataclasses import dataclass, field, replace

#: general numeric equality of derived quantities
TOL_EQ = 1e-8
#: residual allowed when a float must round to an integer
TOL_INT = 1e-6
#: structural identities of a built algebra (products, coproducts, antipode...)
TOL_AXIOM = 1e-9
#: coefficientwise equality of algebra elements
TOL_COEFF = 1e-10
#: Frobenius defect allowed in matrix-representation multiplicativity
TOL_MULT = 1e-7

#: default RNG seed for every randomized step
DEFAULT_SEED = 0xC0FFEE

#: closure enumeration cap for matrix-generator groups
CLOSURE_CAP = 20_000
#: dense multiplication-table cap (memory guard, ~order^2 ints)
TABLE_CAP = 4096
#: order cap for character-table computation
CHARTABLE_CAP = 2000
#: order cap for the isomorphism search
ISO_CAP = 512
#: retry budget for seeded spectral steps
RETRY_BUDGET = 8


@dataclass(frozen=True)
class RunConfig:
    """Immutable knobs shared by the pipeline and the CLI."""

    seed: int = DEFAULT_SEED
    tol_eq: float = TOL_EQ
    tol_int: float = TOL_INT
    tol_axiom: float = TOL_AXIOM
    tol_coeff: float = TOL_COEFF
    tol_mult: float = TOL_MULT
    closure_cap: int = CLOSURE_CAP
    table_cap: int = TABLE_CAP
    chartable_cap: int = CHARTABLE_CAP
    iso_cap: int = ISO_CAP
    retry_budget: int = RETRY_BUDGET
    output: str = "text"  # "text" | "structured"

    def with_(self, **kw):
        return replace(self, **kw)


DEFAULT_CONFIG = RunConfig()
