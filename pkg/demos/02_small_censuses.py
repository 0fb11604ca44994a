"""
Pattern groups of depth 2 and 3
===============================

Every subgroup of Aut X^[d] is a pattern group.  We minimize all of them and
decide, for each minimal one, whether the group of finite type it defines is
finite, finitely generated or not.
"""

from sftgroups.classify import census
from sftgroups.criteria import Tag

# depth 2 is tiny: ten subgroups, six of them minimal
rep2 = census(2)
print(rep2.summary())
print()

# at depth 3 there are 576 subgroups of Aut X^[3] to go through
rep3 = census(3)
print(rep3.summary())
print()

# the finite groups of finite type are exactly those with a trivial
# top-level stabilizer in the pattern; here they are listed by isomorphism type
print("finite types:", rep3.finite_types())

# a group that is not finitely generated comes with a witness: an element of the
# level stabilizer whose image in the abelianization of G_n is nontrivial
r = next(r for r in rep3.records if r.verdict.tag == Tag.NOT_FG and r.verdict.witness_level == 4)
print("order", len(r.pattern), "-> not f.g., witness at level 4:", r.as_dict()["evidence"])

# stopping one level too early leaves those ten groups undecided
print(census(3, max_n=3).verdicts())
