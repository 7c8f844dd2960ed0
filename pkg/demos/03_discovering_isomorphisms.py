# Finding maximal isomorphisms from a seed
#
# Any isomorphism between classes that contain 2413 and 3142 is fixed by
# what it does on the nine-element class R below them.  Each of the 96
# bijections of R that respect the order extends level by level: a new
# permutation's image must be the unique permutation whose shadow is the
# image of its shadow.  When no such image exists the permutation joins
# the basis.

from patterniso.constructions import TABLE2
from patterniso.engine import TABLE1, classify_seeds, run_extension
from patterniso.perm import format_perms

orbits = classify_seeds()
print(len(orbits), "orbits, sizes", [len(o) for o in orbits])

h2 = TABLE1["h2"]
print(h2.to_json())           # swaps 2413 and 3142, fixes everything else

iso = run_extension(h2, 7)
print("counts", iso.counts())
for n, basis in sorted(iso.basis.items()):
    if basis:
        print(n, format_perms(basis))
print("matches stored row:", iso.basis_elements() == TABLE2[2])

# The first few pairs of the map it builds.
for n, pairs in iso.to_report(5)["tables"].items():
    moved = [f"{a}->{b}" for a, b in pairs if a != b]
    if moved:
        print(n, " ".join(moved[:8]), "..." if len(moved) > 8 else "")

# All six representatives at once.
for name, seed in TABLE1.items():
    iso = run_extension(seed, 7)
    print(name, len(iso.basis_elements()), "basis elements, counts", iso.counts()[3:])
