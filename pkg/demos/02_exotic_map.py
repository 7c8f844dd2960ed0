# The exotic map on the wedge class Av(132, 312)
#
# Every member starts somewhere in the middle and then each later entry is
# either a new maximum (a) or a new minimum (b).  Reversing that word is an
# automorphism of the class that no symmetry produces.

from patterniso.classes import PatternClass
from patterniso.constructions import exotic, omega_decode, omega_encode
from patterniso.perm import SYMMETRIES, format_perm, parse_perm, shadow

p = parse_perm("45367821")
w = omega_encode(p)
print(w)                      # abaaabb
print(w[::-1])                # bbaaaba
print(format_perm(omega_decode(w[::-1])))  # 43256718
print(format_perm(exotic(p)))

v270 = PatternClass(["132", "312"])
print(v270.counts(10))        # powers of two: one word per member

# It commutes with taking shadows, which is what makes it order-preserving.
ok = all({exotic(q) for q in shadow(r)} == shadow(exotic(r))
         for r in v270.members(8) if len(r) > 1)
print("cover preserving:", ok)

# and it is not the restriction of any symmetry
level = v270.level(7)
matches = [s.word for s in SYMMETRIES if all(s.apply(r) == exotic(r) for r in level)]
print("symmetries agreeing with it:", matches)
