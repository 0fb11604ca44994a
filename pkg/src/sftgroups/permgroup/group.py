"""Finite permutation groups given by generators."""

from __future__ import annotations

from collections import deque
from math import gcd

from .. import perm as P
from ..tree import is_prefix_preserving
from .chain import LayerChain, StabChain


class ResourceError(RuntimeError):
    """A computation would exceed a configured size bound."""


class BlockError(ValueError):
    """A generator does not permute the given blocks."""


def _log2_exact(n: int):
    if n < 1 or n & (n - 1):
        return None
    return n.bit_length() - 1


class PermutationGroup:
    """Permutation group on ``{0, ..., degree-1}``.

    The stabilizer chain is built lazily.  With ``backend="auto"`` groups of
    binary-tree automorphisms (degree ``2**n``, every generator preserving
    the lexicographic prefix blocks) get a :class:`LayerChain`, everything
    else a Schreier-Sims :class:`StabChain`.
    """

    def __init__(self, generators=(), degree: int | None = None, *, backend: str = "auto"):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        self.generators = tuple(g for g in gens if not P.is_identity(g))
        if backend == "auto":
            n = _log2_exact(degree)
            if n is not None and all(is_prefix_preserving(g, 2, n) for g in self.generators):
                backend = "layer"
            else:
                backend = "schreier"
        if backend not in ("layer", "schreier"):
            raise ValueError(f"unknown backend {backend!r}")
        if backend == "layer":
            n = _log2_exact(degree)
            if n is None or not all(is_prefix_preserving(g, 2, n) for g in self.generators):
                raise ValueError("layer backend needs binary-tree automorphisms")
            self._tree_levels = n
        else:
            self._tree_levels = None
        self.backend = backend
        self._chain = None
        self._elements = None
        self._derived = None

    # -- chain --------------------------------------------------------

    @property
    def chain(self):
        if self._chain is None:
            if self.backend == "layer":
                ch = LayerChain(self._tree_levels)
            else:
                ch = StabChain(self.degree)
            for g in self.generators:
                ch.add(g)
            self._chain = ch
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __len__(self):
        return self.order()

    def is_trivial(self) -> bool:
        return not self.generators

    def contains(self, p) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            raise ValueError(f"degree mismatch: {len(p)} vs {self.degree}")
        if self.backend == "layer" and not is_prefix_preserving(p, 2, self._tree_levels):
            return False
        return self.chain.contains(p)

    __contains__ = contains

    def is_subgroup(self, other: "PermutationGroup") -> bool:
        """True when ``self`` is a subgroup of ``other``."""
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup(other)
        )

    def __hash__(self):
        return hash((self.degree, self.order()))

    def __repr__(self):
        return f"<PermutationGroup degree={self.degree} ngens={len(self.generators)}>"

    def subgroup(self, generators) -> "PermutationGroup":
        backend = self.backend if self.backend == "layer" else "auto"
        return PermutationGroup(generators, self.degree, backend=backend)

    def reduced_generators(self):
        """A subset of the generators, dropping those already generated by earlier ones."""
        ch = LayerChain(self._tree_levels) if self.backend == "layer" else StabChain(self.degree)
        return [g for g in self.generators if ch.add(g)]

    def with_generators(self, extra) -> "PermutationGroup":
        return PermutationGroup(list(self.generators) + [tuple(g) for g in extra], self.degree)

    # -- elements -----------------------------------------------------

    def elements(self, limit: int = 1 << 16):
        """All elements as a list (identity first), by closure under the generators."""
        if self._elements is None:
            if self.order() > limit:
                raise ResourceError(f"group of order {self.order()} exceeds element bound {limit}")
            e = P.identity(self.degree)
            seen = {e}
            out = [e]
            queue = deque([e])
            while queue:
                x = queue.popleft()
                for s in self.generators:
                    y = P.mul(s, x)
                    if y not in seen:
                        seen.add(y)
                        out.append(y)
                        queue.append(y)
            self._elements = out
        return self._elements

    # -- orbits -------------------------------------------------------

    def orbit(self, point: int) -> set:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range")
        seen = {point}
        queue = [point]
        while queue:
            p = queue.pop()
            for g in self.generators:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen

    def is_transitive_on(self, points=None) -> bool:
        points = set(range(self.degree)) if points is None else set(points)
        if not points:
            return True
        return self.orbit(min(points)) == points

    # -- subgroup constructions ---------------------------------------

    def normal_closure(self, S) -> "PermutationGroup":
        """Smallest subgroup containing ``S`` normalized by this group."""
        S = [tuple(s) for s in S]
        for s in S:
            if not self.contains(s):
                raise ValueError(f"{P.format_cycles(s)} is not in the group")
        return self._normal_closure(S)

    def _normal_closure(self, S) -> "PermutationGroup":
        if self.backend == "layer":
            ch = LayerChain(self._tree_levels)
        else:
            ch = StabChain(self.degree)
        gens = []
        queue = deque(S)
        while queue:
            h = queue.popleft()
            if ch.add(h):
                gens.append(h)
                queue.extend(P.conj(g, h) for g in self.generators)
        H = PermutationGroup(gens, self.degree, backend=self.backend)
        H._chain = ch
        return H

    def derived_subgroup(self) -> "PermutationGroup":
        if self._derived is None:
            gens = self.generators
            comms = [P.comm(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
            self._derived = self._normal_closure(comms)
        return self._derived

    def commutator(self, H: "PermutationGroup") -> "PermutationGroup":
        """[self, H] as the normal closure in <self, H> of generator commutators."""
        joint = self.with_generators(H.generators)
        comms = [P.comm(a, b) for a in self.generators for b in H.generators]
        return joint._normal_closure(comms)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(P.mul(a, b) == P.mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_perfect(self) -> bool:
        return self.derived_subgroup().order() == self.order()

    def lower_central_series(self, max_length: int = 64):
        series = [self]
        while len(series) < max_length:
            nxt = self._normal_closure(
                [P.comm(a, b) for a in self.generators for b in series[-1].generators]
            )
            if nxt.order() == series[-1].order():
                break
            series.append(nxt)
        return series

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1].order() == 1

    def derived_length(self) -> int | None:
        """Length of the derived series, or None when it stalls above the identity."""
        G = self
        length = 0
        while G.order() > 1:
            D = G.derived_subgroup()
            if D.order() == G.order():
                return None
            G = D
            length += 1
        return length

    def exponent(self, limit: int = 1 << 16) -> int:
        result = 1
        for g in self.elements(limit):
            o = P.order(g)
            result = result * o // gcd(result, o)
        return result

    def level_stabilizer(self, j: int) -> "PermutationGroup":
        """Kernel of the action on the prefix blocks of depth ``j`` (binary tree groups)."""
        if self.backend == "layer":
            if not 0 <= j <= self._tree_levels:
                raise ValueError(f"level {j} out of range")
            gens = self.chain.generators_from(j)
            H = PermutationGroup(gens, self.degree, backend="layer")
            ch = LayerChain(self._tree_levels)
            ch.layers[j:] = [dict(layer) for layer in self.chain.layers[j:]]
            ch.size = sum(len(layer) for layer in ch.layers)
            H._chain = ch
            return H
        raise ValueError("level_stabilizer needs a tree group; use induced_action_kernel")

    def induced_action_kernel(self, blocks) -> "PermutationGroup":
        """Elements fixing every block of the partition ``blocks`` setwise."""
        blocks = [sorted(b) for b in blocks]
        owner = {}
        for bi, b in enumerate(blocks):
            for x in b:
                if x in owner:
                    raise ValueError(f"point {x} lies in two blocks")
                owner[x] = bi
        if sorted(owner) != list(range(self.degree)):
            raise ValueError("blocks do not partition the points")
        block_perms = []
        for g in self.generators:
            image = []
            for b in blocks:
                targets = {owner[g[x]] for x in b}
                if len(targets) != 1:
                    raise BlockError(f"generator {P.format_cycles(g)} splits block {b}")
                image.append(targets.pop())
            block_perms.append(tuple(image))
        if self.backend == "layer":
            n = self._tree_levels
            for j in range(n + 1):
                size = 1 << (n - j)
                if blocks == [list(range(s, s + size)) for s in range(0, self.degree, size)]:
                    return self.level_stabilizer(j)
        nb = len(blocks)
        # act on blocks and points at once; base starts with every block
        ch = StabChain(nb + self.degree, base=range(nb))
        for g, bp in zip(self.generators, block_perms):
            ch.add(bp + tuple(nb + x for x in g))
        kernel_gens = [tuple(x - nb for x in s[nb:]) for s in ch.generators_from(nb)]
        return PermutationGroup(kernel_gens, self.degree)
