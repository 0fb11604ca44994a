"""Stabilizer chains.

Two backends share a small interface (``sift``, ``add``, ``order``,
``strong_generators``):

``StabChain``
    Deterministic incremental Schreier-Sims for arbitrary permutation
    groups.  New base points are the least moved point, so for leaf groups
    the base follows the lexicographic order of the leaves.

``LayerChain``
    For groups of automorphisms of the binary tree X^[n] acting on the
    ``2**n`` leaves.  The chain is the level-stabilizer series
    St(0) > St(1) > ... > St(n) = 1 whose factors are elementary abelian
    2-groups; each layer keeps an echelon basis of the level portraits
    (bitmasks over the vertices of that level).  Level stabilizers of the
    group are suffixes of the chain.
"""

from __future__ import annotations

from ..perm import comm, identity, inv, is_identity, mul


class StabChain:
    def __init__(self, degree: int, base=()):
        self.degree = degree
        self.ident = identity(degree)
        self.base = []
        self.level_gens = []  # level_gens[i]: strong generators fixing base[:i]
        self.reps = []  # reps[i]: orbit point -> coset representative
        self.inv_reps = []
        self._tested = []
        for b in base:
            self._new_level(b)

    def _new_level(self, point):
        self.base.append(point)
        self.level_gens.append([])
        self.reps.append({point: self.ident})
        self.inv_reps.append({point: self.ident})
        self._tested.append(set())

    def order(self) -> int:
        result = 1
        for r in self.reps:
            result *= len(r)
        return result

    @property
    def strong_generators(self):
        return list(self.level_gens[0]) if self.level_gens else []

    def generators_from(self, i: int):
        """Strong generators of the stabilizer of ``base[:i]``."""
        if i >= len(self.base):
            return []
        return list(self.level_gens[i])

    def sift(self, g, start: int = 0):
        """Return ``(residue, level)`` where sifting stopped."""
        for i in range(start, len(self.base)):
            p = g[self.base[i]]
            r = self.inv_reps[i].get(p)
            if r is None:
                return g, i
            g = mul(r, g)
        return g, len(self.base)

    def contains(self, g) -> bool:
        res, _ = self.sift(g)
        return is_identity(res)

    def _extend_orbit(self, i):
        gens = self.level_gens[i]
        reps = self.reps[i]
        invr = self.inv_reps[i]
        queue = list(reps)
        pos = 0
        while pos < len(queue):
            p = queue[pos]
            pos += 1
            rp = reps[p]
            for s in gens:
                q = s[p]
                if q not in reps:
                    r = mul(s, rp)
                    reps[q] = r
                    invr[q] = inv(r)
                    queue.append(q)

    def _insert(self, g, j):
        """Add strong generator ``g`` fixing ``base[:j]`` to levels 0..j."""
        if j == len(self.base):
            moved = next(i for i, x in enumerate(g) if i != x)
            self._new_level(moved)
        for i in range(j + 1):
            self.level_gens[i].append(g)
            self._extend_orbit(i)

    def add(self, g) -> bool:
        """Extend the group by ``g``; return False if ``g`` was already a member."""
        res, j = self.sift(g)
        if is_identity(res):
            return False
        self._insert(res, j)
        self._complete(j)
        return True

    def _complete(self, top):
        i = top
        while i >= 0:
            restarted = False
            gens = self.level_gens[i]
            reps = self.reps[i]
            invr = self.inv_reps[i]
            tested = self._tested[i]
            for p in list(reps):
                rp = reps[p]
                for gi, s in enumerate(gens):
                    if (p, gi) in tested:
                        continue
                    q = s[p]
                    h = mul(invr[q], mul(s, rp))
                    res, j = self.sift(h, i + 1)
                    if is_identity(res):
                        tested.add((p, gi))
                        continue
                    self._insert(res, j)
                    i = j
                    restarted = True
                    break
                if restarted:
                    break
            if not restarted:
                i -= 1


class LayerChain:
    def __init__(self, n: int):
        self.n = n
        self.degree = 1 << n
        self.ident = identity(self.degree)
        # layers[j]: lowest-set-bit of the level-j portrait mask -> (mask, element)
        self.layers = [dict() for _ in range(n)]
        self.size = 0

    def order(self) -> int:
        return 1 << self.size

    @property
    def strong_generators(self):
        return self.generators_from(0)

    def generators_from(self, j: int):
        """Basis elements generating the level-``j`` stabilizer of the group."""
        out = []
        for layer in self.layers[j:]:
            out.extend(e for _, (_, e) in sorted(layer.items()))
        return out

    def mask(self, g, j: int) -> int:
        """Level-``j`` portrait of ``g``, which must fix level ``j``."""
        shift = self.n - j
        half = 1 << (shift - 1)
        m = 0
        for v, x in enumerate(g[:: 1 << shift]):
            if x & half:
                m |= 1 << v
        return m

    def sift(self, g, start: int = 0):
        """Return ``(residue, level, mask)``; the residue is the identity for members."""
        for j in range(start, self.n):
            m = self.mask(g, j)
            layer = self.layers[j]
            while m:
                low = m & -m
                entry = layer.get(low)
                if entry is None:
                    return g, j, m
                bm, b = entry
                g = mul(g, b)
                m ^= bm
        return g, self.n, 0

    def contains(self, g) -> bool:
        return self.sift(g)[1] == self.n

    def add(self, g) -> bool:
        grew = False
        queue = [g]
        while queue:
            h = queue.pop()
            res, j, m = self.sift(h)
            if j == self.n:
                continue
            others = [e for layer in self.layers for _, e in layer.values()]
            self.layers[j][m & -m] = (m, res)
            self.size += 1
            grew = True
            queue.append(mul(res, res))
            queue.extend(comm(res, b) for b in others)
        return grew
