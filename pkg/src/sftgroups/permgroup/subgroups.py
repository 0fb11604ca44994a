"""Subgroup enumeration by cyclic extension.

Every non-trivial subgroup K of a solvable group has a normal subgroup N of
prime index p, so K = <N, g> for some g normalizing N with g^p in N.
Starting from the trivial group, each layer of subgroups is extended by all
such elements; subgroups are deduplicated as element sets.
"""

from __future__ import annotations

import numpy as np

from .. import perm as P
from .group import PermutationGroup, ResourceError

DEFAULT_BOUND = 1 << 13


def _prime_factors(n: int):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class _Table:
    """Multiplication table of a small group on element indices."""

    def __init__(self, elements):
        self.elements = elements
        index = {g: i for i, g in enumerate(elements)}
        n = len(elements)
        dtype = np.int32 if n > 32000 else np.int16
        self.mul = np.empty((n, n), dtype=dtype)
        for i, a in enumerate(elements):
            self.mul[i] = [index[P.mul(a, b)] for b in elements]
        self.inv = np.array([index[P.inv(a)] for a in elements], dtype=dtype)

    def power(self, i: int, e: int) -> int:
        r = 0
        for _ in range(e):
            r = int(self.mul[r, i])
        return r


def all_subgroups(G: PermutationGroup, bound: int = DEFAULT_BOUND):
    """Every subgroup of ``G`` exactly once, ordered by order.

    ``G`` must be solvable and of order at most ``bound``; each returned
    group carries its element list.
    """
    order = G.order()
    if order > bound:
        raise ResourceError(f"group of order {order} exceeds the subgroup bound {bound}; raise bound")
    elements = G.elements(limit=bound)
    if elements[0] != P.identity(G.degree):
        raise AssertionError("element list must start with the identity")
    table = _Table(elements)
    primes = _prime_factors(order)
    n = len(elements)

    trivial = frozenset([0])
    found = {trivial: []}  # element-index set -> generator indices
    layer = [trivial]
    by_order = {1: [trivial]}
    while layer:
        nxt = set()
        for N in layer:
            members = np.fromiter(sorted(N), dtype=np.int64)
            gens = found[N]
            for g in range(n):
                if g in N:
                    continue
                conj = table.mul[table.mul[g, members], table.inv[g]]
                if not np.isin(conj, members).all():
                    continue
                for p in primes:
                    if table.power(g, p) in N:
                        break
                else:
                    continue
                # K = N u gN u ... u g^(p-1)N
                K = set(N)
                gi = g
                while gi not in N:
                    K.update(int(x) for x in table.mul[gi, members])
                    gi = int(table.mul[gi, g])
                K = frozenset(K)
                if K not in found:
                    found[K] = gens + [g]
                    nxt.add(K)
        for K in nxt:
            by_order.setdefault(len(K), []).append(K)
        layer = list(nxt)

    out = []
    for size in sorted(by_order):
        for K in sorted(by_order[size], key=sorted):
            H = G.subgroup([elements[i] for i in found[K]])
            H._elements = [elements[i] for i in sorted(K)]
            out.append(H)
    return out
