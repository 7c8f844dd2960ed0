# Extending a whole group of seeds at once
#
# Instead of one bijection of R, take a group of them and look for the
# largest class on which every element extends.  With all 96 the answer
# is tiny: R together with sums and skew sums of two monotone pieces.

from patterniso.constructions import aut_group_A3, in_A6, map_f2, map_f3, map_f6
from patterniso.engine import TABLE1, SeedGroup, run_group_extension
from patterniso.perm import Symmetry, format_perm, format_perms, parse_perm

full = SeedGroup.full()
ext = run_group_extension(full, 9)
print(len(full), ext.counts())            # 1, 2, 6, 12 then 4n - 6
print(format_perms(ext.levels[5]))
print("pruning rounds", ext.prune_rounds)

# Smaller groups give bigger classes.
for gens in (["h2"], ["h6"], ["h2", "h3"]):
    g = SeedGroup.generate(TABLE1[x] for x in gens)
    print(gens, len(g), run_group_extension(g, 7).counts())

# f6 has order four on its own class: applying it twice is the symmetry rc.
rc = Symmetry("rc")
for text in ("2143", "13542", "42315", "51234"):
    p = parse_perm(text)
    if not in_A6(p):
        continue
    print(text, format_perm(map_f6(p)), format_perm(map_f6(map_f6(p))), format_perm(rc.apply(p)))

# On A3, complement, f2 and f3 generate a group of order 8.
group = aut_group_A3(6)
print(len(group))
# f2 moves the 2413/3142 atoms and f3 moves the wedge tail, never both at once
for text in ("13524", "12453"):
    q = parse_perm(text)
    print(text, format_perm(map_f2(q)), format_perm(map_f3(q)))
