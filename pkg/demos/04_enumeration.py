# Counting members level by level
#
# Each level is kept as a sorted numpy array of packed keys.  A candidate
# of length n+1 is a member exactly when its whole shadow sits in the
# previous level and it is not itself a basis element, so membership is a
# handful of searchsorted calls instead of pattern matching.

import time

import numpy as np

from patterniso.classes import PatternClass, growth_rate_bound
from patterniso.constructions import PRINTED_SERIES, TABLE2, series_formula
from patterniso.perm import is_simple

a2 = PatternClass(TABLE2[2])
t = time.perf_counter()
counts = a2.counts(10)
print(counts, f"{time.perf_counter() - t:.1f}s")
print(counts == list(PRINTED_SERIES[2][:10]))
print(a2.keys(5)[:4], a2.keys(5).dtype)

# Ratios creep toward the bound coming from the generating function.
ratios = np.array(counts[1:]) / np.array(counts[:-1])
print(np.round(ratios, 3))
print(growth_rate_bound([1, -6, 1, 0, -12, -20, 8, 0, 4, 16, 16]))

# Only finitely many simple permutations live in A2.
print(sorted(p for n in range(3, 10) for p in a2.level(n) if is_simple(p)))

# A3 has a closed form from length 4 on.
a3 = PatternClass(TABLE2[3]).counts(12)
print(a3)
print([series_formula(3, n) for n in range(1, 13)] == a3)

# A5 and A6 only differ at length 5, where A5 keeps 25314 and 41352.
print(PatternClass(TABLE2[5]).counts(8))
print(PatternClass(TABLE2[6]).counts(8))
