"""Stern-Brocot trees over arbitrary starting pairs, in exact arithmetic."""

from .rational import (
    INFINITE,
    Factorization,
    Fraction,
    SeedPair,
    cross_determinant,
    factorize,
    make_fraction,
    mediant,
    mod_inverse,
    p_adic_valuation,
    parse_fraction,
)
from .tree import (
    ResourceCapError,
    Row,
    RowProjection,
    expand,
    generate,
    insert_sums,
    iter_rows,
    project,
    slice_inclusive,
    stern_brocot_row,
)
from .locator import (
    Bracket,
    LocateResult,
    Weights,
    approximation_ladder,
    decompose,
    locate,
    weights_det1,
)
from .equivalence import (
    CanonicalSeed,
    EquivalenceReport,
    canonical_seed,
    check_equivalent,
    gcd_identity_check,
)
from .analytics import (
    DetList,
    StabilizationReport,
    casework_mod3_verify,
    completeness_sweep,
    det_lists,
    farey,
    power_of_two_descent_check,
    stabilization,
)

__version__ = "0.1.0"
