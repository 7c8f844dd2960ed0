"""Isomorphisms between permutation pattern classes.

Modules
=======
perm           -- permutations, containment, shadows, symmetries, sums, wedges
classes        -- pattern classes grown level by level, bases, growth rates
engine         -- extending a bijection of R = Cl{2413, 3142} to a maximal isomorphism
constructions  -- exotic map, the explicit maps f1..f6, their classes and counts
verify         -- named verification suites
cli            -- command-line front end (``python -m patterniso``)
"""

from .classes import R, PatternClass, basis_of, downset_of, generate_levels, growth_rate_bound
from .constructions import CLASS_MAPS, TABLE2, exotic, omega_decode, omega_encode, series_formula
from .engine import (
    TABLE1, SeedBijection, SeedGroup, classify_seeds, invert_shadow, run_extension,
    run_group_extension,
)
from .perm import (
    SYMMETRIES, Symmetry, apply_symmetry, contains, direct_sum, format_perm, inflate,
    is_simple, one_point_extensions, parse_perm, shadow, skew_sum,
)

__version__ = "0.1.0"
