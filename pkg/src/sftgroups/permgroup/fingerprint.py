"""Isomorphism invariants and a brute-force isomorphism test for small groups."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .. import perm as P
from .group import PermutationGroup, ResourceError

FINGERPRINT_LIMIT = 1 << 16
ISOMORPHISM_LIMIT = 256


@dataclass(frozen=True)
class Fingerprint:
    order: int
    abelian_invariants: tuple
    exponent: int
    derived_length: int | None
    element_orders: tuple  # sorted (order, count) pairs
    class_sizes: tuple  # sorted (size, count) pairs

    def to_json(self) -> str:
        return json.dumps(self.as_list(), separators=(",", ":"))

    def as_list(self):
        return [
            self.order,
            list(self.abelian_invariants),
            self.exponent,
            self.derived_length,
            [list(x) for x in self.element_orders],
            [list(x) for x in self.class_sizes],
        ]


def _prime_powers(n: int):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_invariants(G: PermutationGroup, limit: int = FINGERPRINT_LIMIT) -> tuple:
    """Invariants of G/[G,G] as a sorted tuple of prime powers.

    Uses |{gG' : (gG')^(p^e) = 1}| = p^(sum_i min(e, e_i)) for each prime p.
    """
    D = G.derived_subgroup()
    index = G.order() // D.order()
    elements = G.elements(limit)
    out = []
    for p, top in sorted(_prime_powers(index).items()):
        logs = [0]
        for e in range(1, top + 1):
            q = p**e
            count = sum(1 for g in elements if D.contains(P.power(g, q))) // D.order()
            r = 0
            while p ** (r + 1) <= count:
                r += 1
            logs.append(r)
            if r == top:
                break
        # at_least[e] = number of cyclic factors of order >= p^e
        at_least = [logs[e] - logs[e - 1] for e in range(1, len(logs))]
        at_least.append(0)
        for e in range(1, len(at_least)):
            out.extend([p**e] * (at_least[e - 1] - at_least[e]))
    return tuple(sorted(out))


def conjugacy_class_sizes(G: PermutationGroup, limit: int = FINGERPRINT_LIMIT):
    elements = G.elements(limit)
    index = {g: i for i, g in enumerate(elements)}
    parent = list(range(len(elements)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    gens = [(s, P.inv(s)) for s in G.generators]
    for i, g in enumerate(elements):
        for s, si in gens:
            j = index[P.mul(P.mul(s, g), si)]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return sorted(Counter(find(i) for i in range(len(elements))).values())


def fingerprint(G: PermutationGroup, limit: int = FINGERPRINT_LIMIT) -> Fingerprint:
    """Isomorphism-invariant summary; different fingerprints certify non-isomorphism."""
    elements = G.elements(limit)
    orders = Counter(P.order(g) for g in elements)
    exponent = 1
    for o in orders:
        exponent = exponent * o // _gcd(exponent, o)
    return Fingerprint(
        order=G.order(),
        abelian_invariants=abelian_invariants(G, limit),
        exponent=exponent,
        derived_length=G.derived_length(),
        element_orders=tuple(sorted(orders.items())),
        class_sizes=tuple(sorted(Counter(conjugacy_class_sizes(G, limit)).items())),
    )


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _small_generating_set(G: PermutationGroup):
    from .chain import StabChain

    ch = StabChain(G.degree)
    return [g for g in G.generators if ch.add(g)]


def brute_force_isomorphic(G: PermutationGroup, H: PermutationGroup,
                           limit: int = ISOMORPHISM_LIMIT) -> bool:
    """Decide G ~ H by backtracking over images of a generating set of G."""
    if G.order() != H.order():
        return False
    if G.order() > limit:
        raise ResourceError(f"isomorphism test limited to order {limit}")
    gens = _small_generating_set(G)
    g_elems = G.elements()
    h_elems = H.elements()
    if Counter(map(P.order, g_elems)) != Counter(map(P.order, h_elems)):
        return False
    candidates = [[y for y in h_elems if P.order(y) == P.order(x)] for x in gens]
    e_g = P.identity(G.degree)
    e_h = P.identity(H.degree)

    def extends(images):
        # grow the map along the Cayley graph; it is a homomorphism iff consistent
        phi = {e_g: e_h}
        frontier = [e_g]
        while frontier:
            nxt = []
            for x in frontier:
                fx = phi[x]
                for s, t in zip(gens, images):
                    y = P.mul(s, x)
                    fy = P.mul(t, fx)
                    seen = phi.get(y)
                    if seen is None:
                        phi[y] = fy
                        nxt.append(y)
                    elif seen != fy:
                        return False
            frontier = nxt
        return len(set(phi.values())) == len(phi)

    def search(i, images):
        if i == len(gens):
            return extends(images)
        for y in candidates[i]:
            if search(i + 1, images + [y]):
                return True
        return False

    if not gens:
        return True
    return search(0, [])
