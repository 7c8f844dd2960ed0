# Permutations, containment and shadows
#
# A permutation here is a tuple of 1..n.  parse_perm reads the usual
# one-line notation, with spaces once entries pass 9.

from patterniso.perm import (
    SYMMETRIES, Symmetry, contains, format_perm, format_perms, is_simple,
    one_point_extensions, parse_perm, shadow, sum_decompose,
)

p = parse_perm("2413")
print(p)                                  # (2, 4, 1, 3)
print(contains(p, parse_perm("132")))     # True, take entries 2, 4, 3
print(contains(parse_perm("321"), (1, 2)))  # False, no ascent at all

# The shadow is every way of deleting one point.  2413 and 3142 share one,
# which is the only clash at length 4.
print(format_perms(shadow(p)))
print(shadow(p) == shadow(parse_perm("3142")))

# Going up instead: distinct one-point insertions.
print(format_perms(one_point_extensions((1, 2))))

# The eight symmetries, as words in r, c, i read left to right.
for s in SYMMETRIES:
    print(f"{s.word or 'id':>4}  {format_perm(s.apply(parse_perm('25314')))}")
print(Symmetry("iri") is Symmetry("c"))   # words are reduced to a canonical form

# Simple permutations have no proper intervals.
print(is_simple(p), is_simple(parse_perm("13524")))
print(sum_decompose(parse_perm("13524")))  # ((1,), (1, 3, 4, 2)) -> 1 plus 2413 shifted
