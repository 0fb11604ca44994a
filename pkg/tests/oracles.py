"""Independent brute-force oracles shared by the test modules."""

import itertools
from functools import lru_cache

from sftgroups.tree import TreeAutomorphism, level_offset

SWAPS = ((0, 1), (1, 0))


@lru_cache(maxsize=None)
def binary_aut(n):
    """Every portrait of Aut X^[n] for the binary alphabet, by exhaustive product."""
    return tuple(itertools.product(SWAPS, repeat=2**n - 1))


def section_portrait(portrait, v_level, v_lex, d):
    """Portrait of the depth-d restriction of the section at the vertex (level, lex index),
    read directly off the portrait slices."""
    out = []
    for lv in range(d):
        w = 2**lv
        start = level_offset(2, v_level + lv) + v_lex * w
        out.extend(portrait[start:start + w])
    return tuple(out)


@lru_cache(maxsize=None)
def section_table(n, d):
    """For each portrait of Aut X^[n], the tuple of depth-d section portraits at all vertices
    of depth <= n-d."""
    table = []
    for por in binary_aut(n):
        table.append(tuple(section_portrait(por, j, i, d) for j in range(n - d + 1) for i in range(2**j)))
    return table


def finite_type_restriction(pattern, n):
    """{g in Aut X^[n] : every depth-d section restriction lies in the pattern}, as leaf permutations."""
    d = pattern.depth
    allowed = {g.portrait for g in pattern.elements}
    out = set()
    for por, secs in zip(binary_aut(n), section_table(n, d)):
        if all(s in allowed for s in secs):
            out.add(TreeAutomorphism(2, n, por, check=False).to_leaf_permutation())
    return out


def closure(gens, degree):
    e = tuple(range(degree))
    out = {e}
    frontier = [e]
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = tuple(s[x[i]] for i in range(degree))
                if y not in out:
                    out.add(y)
                    new.append(y)
        frontier = new
    return out
