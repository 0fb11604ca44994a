"""
Automorphisms of the binary tree
================================

Portraits, sections and leaf permutations, using the generators of the
Grigorchuk group truncated to a finite depth.
"""

from sftgroups import perm as P
from sftgroups.classify import grigorchuk_generators
from sftgroups.tree import TreeAutomorphism, words

# a, b, c, d acting on the first 5 levels of the binary tree
gens = grigorchuk_generators(5)
a, b, c, d = (gens[x] for x in "abcd")

# a swaps the two subtrees of the root and does nothing else
print("a(0110) =", a.apply((0, 1, 1, 0)))

# b acts as a on the left subtree and as c on the right one
print("b at 0 is a:", b.section((0,), 4) == a.restrict(4))
print("b at 1 is c:", b.section((1,), 4) == c.restrict(4))

# b, c, d are involutions whose product is trivial
print("bcd = 1:", (b * c * d).is_identity())

# every automorphism of X^[n] is a permutation of the 2^n leaves,
# numbered lexicographically from 1
for name, g in gens.items():
    print(name, P.format_cycles(g.restrict(3).to_leaf_permutation()))

# sections of a product follow the cocycle rule (gh)_v = g_{h(v)} h_v
g, h = a * b, c * a
for v in words(2, 2):
    assert (g * h).section(v) == g.section(h.apply(v)) * h.section(v)
print("cocycle rule checked on level 2")

# and a leaf permutation goes back to the same portrait
p = (a * d * a * c).to_leaf_permutation()
print("round trip:", TreeAutomorphism.from_leaf_permutation(p, 2, 5) == a * d * a * c)
