"""ekrlab: exact desk-scale extremal set theory of intersecting families.

Set families over [n] as dense bitmaps, exact p-biased measures and
influences over big-integer rationals, Kruskal-Katona shadow machinery,
executable checkers for the classical tool inequalities, and exhaustive
symmetry-reduced searches for the extremal values.
"""

from .family import (
    Construction,
    Dictatorship,
    Empty,
    FranklFuredi,
    Full,
    FullLevel,
    GroundSet,
    OrFamily,
    SetFamily,
    Subcube,
    SupersetFamily,
    are_cross_intersecting,
    build,
    construct,
    down_closure,
    dual,
    format_family,
    is_decreasing,
    is_increasing,
    is_intersecting,
    matching_number,
    parse_family,
    read_family,
    restrict,
    uniform_level,
    up_closure,
    write_family,
)
from .measures import (
    ExactRational,
    MeasurePolynomial,
    as_rational,
    binomial_tail,
    check_biased_ekr,
    check_biased_iso,
    check_chernoff,
    check_fkg_union,
    check_going_up,
    check_harris,
    check_harris_many,
    check_influence_duality,
    check_logp_monotone,
    check_russo,
    derivative_at,
    influence,
    influence_polynomial,
    integral_of_influence,
    measure_polynomial,
    mu,
    profile,
    total_influence,
)
from .shadows import (
    ColexSegment,
    ProbeResult,
    check_cross_combination,
    check_hilton,
    check_indicator_claim,
    check_kk_chain,
    check_local_lym,
    comb0,
    find_t,
    hilton_extremal_probe,
    kk_min_upper_shadow,
    level_masks,
    min_lower_shadow_size,
    upper_shadow,
)
from .search import (
    CanonicalForm,
    SearchLimits,
    SearchOutcome,
    SearchProblem,
    canonicalize,
    ff_crossover_scan,
    max_bounded_matching,
    max_intersecting,
    max_union_intersecting,
)
from .verdict import TernaryVerdict

__version__ = "0.1.0"
