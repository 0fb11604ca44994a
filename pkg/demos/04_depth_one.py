"""
Depth one: perfect letter groups
================================

For a transitive P acting on the letters, the iterated wreath product G_P is
finitely generated exactly when P is perfect.  Transitivity cannot be dropped.
"""

from sftgroups import perm as P
from sftgroups.criteria import classify, level_transitivity, thm_fg
from sftgroups.pattern import PatternGroup, PreconditionError


def letters(cycles, k):
    return PatternGroup.from_leaf_permutations([P.parse_cycles(c, k) for c in cycles], k, 1)


S4 = letters(["(1,2,3,4)", "(1,2)"], 4)
A5 = letters(["(1,2,3,4,5)", "(1,2,3)"], 5)

print("S4 perfect:", S4.leaf_group().is_perfect(), "->", classify(S4).verdict.tag.value)
print("A5 perfect:", A5.leaf_group().is_perfect(), "->", classify(A5, 3).verdict.tag.value)

# A5 acting on six letters with one fixed: still perfect, but not transitive
A5_6 = letters(["(2,3,4,5,6)", "(2,3,4)"], 6)
ok, trace = level_transitivity(A5_6)
print("A5 on 6 letters level-transitive:", ok)
try:
    thm_fg(A5_6, 1)
except PreconditionError as e:
    print("criterion refused:", e)
print("verdict:", classify(A5_6, 2).verdict.tag.value)
