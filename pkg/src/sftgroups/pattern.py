"""Pattern groups, pattern graphs, minimization and the restriction tower.

A pattern group of depth d is a subgroup P of Aut X^[d].  It defines the
profinite group G_P of all tree automorphisms whose every section acts on
X^[d] as an element of P.  This module computes the finite quotients
G_P|X^[n] as permutation groups on the leaves of X^[n].
"""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction

from . import perm as P
from .permgroup import LayerChain, PermutationGroup, StabChain
from .tree import LEX, TreeAutomorphism, level_offset, planted, words


class PreconditionError(ValueError):
    """An operation was called on a pattern group it does not accept."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed; this indicates a bug, not bad input."""


def _closure(gens, k, d):
    """All elements of the group generated by tree automorphisms ``gens``."""
    leaf_gens = [g.to_leaf_permutation() for g in gens]
    e = P.identity(k**d)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in leaf_gens:
            y = P.mul(s, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return [TreeAutomorphism.from_leaf_permutation(p, k, d) for p in seen]


class PatternGroup:
    """Subgroup of Aut X^[d] with its full element list.

    Elements are kept sorted by portrait, which is the fixed total order
    used whenever a choice between patterns has to be made.
    """

    def __init__(self, k: int, depth: int, generators=(), elements=None):
        if depth < 1:
            raise ValueError("pattern groups have depth at least 1")
        gens = [g for g in generators]
        for g in gens:
            if g.k != k or g.depth != depth:
                raise ValueError(f"generator {g!r} is not in Aut X^[{depth}] over {k} letters")
        self.k = k
        self.depth = depth
        if elements is None:
            elements = _closure(gens, k, depth)
        self.elements = tuple(sorted(elements, key=lambda g: g.portrait))
        self.generators = tuple(g for g in gens if not g.is_identity())
        if not self.generators and len(self.elements) > 1:
            self.generators = self._pick_generators(self.elements)
        self._index = {g.portrait: i for i, g in enumerate(self.elements)}
        self._leaf_group = None
        self._graph = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_leaf_permutations(cls, perms, k: int, depth: int, numbering: str = LEX):
        gens = [TreeAutomorphism.from_leaf_permutation(p, k, depth, numbering) for p in perms]
        return cls(k, depth, gens)

    @classmethod
    def full(cls, k: int, depth: int):
        from .tree import vertex_swaps

        return cls(k, depth, vertex_swaps(k, depth))

    @classmethod
    def trivial(cls, k: int, depth: int):
        return cls(k, depth, [])

    @classmethod
    def from_permgroup(cls, G: PermutationGroup, k: int, depth: int, numbering: str = LEX):
        elems = [TreeAutomorphism.from_leaf_permutation(p, k, depth, numbering) for p in G.elements()]
        gens = [TreeAutomorphism.from_leaf_permutation(p, k, depth, numbering) for p in G.generators]
        return cls(k, depth, gens, elements=elems)

    @staticmethod
    def _pick_generators(elements):
        k, d = elements[0].k, elements[0].depth
        ch = LayerChain(d) if k == 2 else StabChain(k**d)
        gens = []
        for g in elements:
            if ch.add(g.to_leaf_permutation()):
                gens.append(g)
                if ch.order() == len(elements):
                    break
        return tuple(gens)

    # -- protocol -----------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g):
        return g.portrait in self._index

    def __eq__(self, other):
        if not isinstance(other, PatternGroup):
            return NotImplemented
        return (self.k, self.depth) == (other.k, other.depth) and self._index.keys() == other._index.keys()

    def __hash__(self):
        return hash((self.k, self.depth, frozenset(self._index)))

    def __repr__(self):
        return f"<PatternGroup k={self.k} depth={self.depth} order={len(self)}>"

    def key(self):
        """Canonical sort key: order, then the sorted portrait list."""
        return (len(self), tuple(g.portrait for g in self.elements))

    def index(self, g) -> int:
        return self._index[g.portrait]

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def leaf_group(self) -> PermutationGroup:
        if self._leaf_group is None:
            gens = [g.to_leaf_permutation() for g in self.generators]
            backend = "layer" if self.k == 2 else "schreier"
            self._leaf_group = PermutationGroup(gens, self.k**self.depth, backend=backend)
        return self._leaf_group

    def stabilizer(self, j: int):
        """Elements of the level stabilizer St_P(j)."""
        return [g for g in self.elements if g.fixes_level(j)]

    def stabilizer_generators(self, j: int):
        """A small generating set of St_P(j), in element order."""
        elems = self.stabilizer(j)
        if len(elems) == 1:
            return []
        return list(self._pick_generators(elems))

    def restricted(self, m: int):
        """The set of restrictions P|X^[m]."""
        return {g.restrict(m) for g in self.elements}

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def subgroup(self, elements) -> "PatternGroup":
        return PatternGroup(self.k, self.depth, elements=list(elements))

    # -- pattern graph ------------------------------------------------

    def _section_key_indices(self, x: int):
        """Portrait indices of the depth-(d-1) restriction of the section at letter ``x``."""
        k, d = self.k, self.depth
        idx = []
        for level in range(d - 1):
            width = k**level
            start = level_offset(k, 1 + level) + x * width
            idx.extend(range(start, start + width))
        return idx

    def successor_map(self, elements=None):
        """For each element and letter, the indices of its successors in the pattern graph.

        Returns ``succ`` with ``succ[i][x]`` a sorted list of element indices.
        """
        elements = self.elements if elements is None else elements
        k, d = self.k, self.depth
        top = level_offset(k, d - 1)
        buckets = {}
        for i, b in enumerate(elements):
            buckets.setdefault(b.portrait[:top], []).append(i)
        idx = [self._section_key_indices(x) for x in range(k)]
        succ = []
        for a in elements:
            por = a.portrait
            succ.append([buckets.get(tuple(por[i] for i in idx[x]), []) for x in range(k)])
        return succ

    def graph(self) -> "PatternGraph":
        if self._graph is None:
            self._graph = PatternGraph(self)
        return self._graph

    def successors(self, a: TreeAutomorphism, x: int):
        return [self.elements[i] for i in self.graph().succ[self.index(a)][x]]


class PatternGraph:
    """The directed labelled graph on P with arcs a -x-> b when a_(x)|X^[d-1] = b|X^[d-1]."""

    def __init__(self, pattern: PatternGroup):
        self.pattern = pattern
        self.succ = pattern.successor_map()

    @property
    def vertices(self):
        return self.pattern.elements

    def arcs(self):
        for i, row in enumerate(self.succ):
            for x, targets in enumerate(row):
                for j in targets:
                    yield (i, x, j)

    def arc_count(self) -> int:
        return sum(len(t) for row in self.succ for t in row)

    def out_degrees(self):
        """Set of distinct out-degrees ``len(succ[a][x])`` over all a, x."""
        return {len(t) for row in self.succ for t in row}

    def to_dot(self, max_vertices: int = 512) -> str:
        import warnings

        P_ = self.pattern
        if len(P_) > max_vertices:
            warnings.warn(f"pattern graph has {len(P_)} vertices", stacklevel=2)
        lines = ["digraph pattern_graph {"]
        lines.append("  // legend: vertex i is the i-th element in portrait order")
        for i, g in enumerate(P_.elements):
            lines.append(f'  {i} [label="{i}", tooltip="{P.format_cycles(g.to_leaf_permutation())}"];')
        for i, x, j in self.arcs():
            lines.append(f'  {i} -> {j} [label="x={x}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- minimization -----------------------------------------------------

def is_minimal(P_: PatternGroup) -> bool:
    """Every vertex of the pattern graph has an outgoing arc for every letter."""
    return all(all(targets for targets in row) for row in P_.graph().succ)


def minimize(P_: PatternGroup) -> PatternGroup:
    """The minimal pattern group defining the same group G_P."""
    alive = list(P_.elements)
    while True:
        succ = P_.successor_map(alive)
        keep = [a for a, row in zip(alive, succ) if all(row)]
        if len(keep) == len(alive):
            break
        alive = keep
    if len(alive) == len(P_):
        return P_
    Q = P_.subgroup(alive)
    _check_closed(Q)
    return Q


def _check_closed(Q: PatternGroup):
    if Q.elements[0] != TreeAutomorphism.identity(Q.k, Q.depth):
        raise ConsistencyError("minimized pattern set lost the identity")
    for g in Q.elements:
        for s in Q.generators:
            if (g * s) not in Q:
                raise ConsistencyError("minimized pattern set is not a group")


# -- restriction tower ------------------------------------------------

def restriction_order(P_: PatternGroup, n: int) -> int:
    """|G_P|X^[n]| = |P| * m^(k + k^2 + ... + k^(n-d)) with m = |St_P(d-1)|."""
    d, k = P_.depth, P_.k
    if n < d:
        raise PreconditionError(f"level {n} is below the pattern depth {d}")
    m = len(P_.stabilizer(d - 1))
    exponent = sum(k**i for i in range(1, n - d + 1))
    return len(P_) * m**exponent


class RestrictionTower:
    """The groups G_P|X^[n] for n >= d, built level by level and cached.

    Level d is P itself.  Level n+1 is generated by lifts of the level-n
    generators (extending each pattern along the least pattern-graph
    successor) together with copies of St_P(d-1) planted at every vertex
    of depth n+1-d.
    """

    def __init__(self, P_: PatternGroup, check_minimal: bool = True):
        if check_minimal and not is_minimal(P_):
            raise PreconditionError("the restriction tower needs a minimal pattern group")
        self.pattern = P_
        self.k = P_.k
        self.d = P_.depth
        self.kernel_gens = P_.stabilizer_generators(self.d - 1)
        self._gens = {self.d: [g for g in P_.generators]}
        self._groups = {}
        self._stabilizers = {}

    def generators(self, n: int):
        """Tree-automorphism generators of G_P|X^[n]."""
        if n < self.d:
            raise PreconditionError(f"level {n} is below the pattern depth {self.d}")
        top = max(self._gens)
        while top < n:
            self._gens[top + 1] = self._next_level(top)
            top += 1
        return self._gens[n]

    def _backend(self):
        return "layer" if self.k == 2 else "schreier"

    def _lift(self, g: TreeAutomorphism) -> TreeAutomorphism:
        P_, k, d = self.pattern, self.k, self.d
        n = g.depth
        succ = P_.graph().succ
        width = k ** (d - 1)
        src = level_offset(k, d - 1)
        deepest = [None] * k**n
        for lex_w, w in enumerate(words(k, n - d)):
            i = P_.index(g.section(w, d))
            for x in range(k):
                choices = succ[i][x]
                if not choices:
                    raise ConsistencyError("pattern without successor in a minimal group")
                b = P_.elements[choices[0]]
                u = lex_w * k + x
                deepest[u * width:(u + 1) * width] = b.portrait[src:src + width]
        return TreeAutomorphism(k, n + 1, g.portrait + tuple(deepest), check=False)

    def _next_level(self, n: int):
        out = [self._lift(g) for g in self._gens[n]]
        for v in words(self.k, n + 1 - self.d):
            for c in self.kernel_gens:
                out.append(planted(c, v, n + 1))
        if self.k == 2:
            ch = LayerChain(n + 1)
        else:
            ch = StabChain(self.k ** (n + 1))
        return [g for g in out if ch.add(g.to_leaf_permutation())]

    def group(self, n: int) -> PermutationGroup:
        """G_P|X^[n] as a permutation group on ``k**n`` leaves."""
        if n not in self._groups:
            gens = [g.to_leaf_permutation() for g in self.generators(n)]
            self._groups[n] = PermutationGroup(gens, self.k**n, backend=self._backend())
        return self._groups[n]

    def planted_stabilizer(self, n: int) -> PermutationGroup:
        """St(n-1)|X^[n] as copies of St_P(d-1) planted at each vertex of depth n-d."""
        gens = [
            planted(c, v, n).to_leaf_permutation()
            for v in words(self.k, n - self.d)
            for c in self.kernel_gens
        ]
        return PermutationGroup(gens, self.k**n, backend=self._backend())

    def level_stabilizer(self, j: int, n: int) -> PermutationGroup:
        """St_{G_P}(j)|X^[n] as the kernel of the action on depth-j prefix blocks."""
        if not 0 <= j < n:
            raise PreconditionError(f"need 0 <= j < n, got j={j}, n={n}")
        key = (j, n)
        if key not in self._stabilizers:
            G = self.group(n)
            if j == 0:
                H = G
            elif G.backend == "layer":
                H = G.level_stabilizer(j)
            else:
                size = self.k ** (n - j)
                blocks = [range(s, s + size) for s in range(0, self.k**n, size)]
                H = G.induced_action_kernel(blocks)
            if j == n - 1 and n >= self.d:
                T = self.planted_stabilizer(n)
                if T.order() != H.order() or not T.is_subgroup(H):
                    raise ConsistencyError(
                        f"St({j})|X^[{n}] differs from the planted copies of St_P(d-1)"
                    )
                H = T
            self._stabilizers[key] = H
        return self._stabilizers[key]


def restriction_group(P_: PatternGroup, n: int) -> PermutationGroup:
    return RestrictionTower(P_).group(n)


def level_stabilizer_restriction(P_: PatternGroup, j: int, n: int) -> PermutationGroup:
    return RestrictionTower(P_).level_stabilizer(j, n)


def hausdorff_dimension(P_: PatternGroup):
    """lim log|G_P|X^[n]| / log|Aut X^[n]| = log m / (k^(d-1) log k!).

    Exact as a Fraction when m and k! are powers of a common integer,
    otherwise a float.
    """
    k, d = P_.k, P_.depth
    m = len(P_.stabilizer(d - 1))
    if m == 1:
        raise PreconditionError("G_P is finite; its Hausdorff dimension is zero by convention, not computed")
    kf = math.factorial(k)
    exact = _common_log(m, kf)
    if exact is not None:
        return exact / k ** (d - 1)
    return math.log(m) / (k ** (d - 1) * math.log(kf))


def _common_log(a: int, b: int):
    """log(a)/log(b) as a Fraction when a and b are powers of one integer."""
    for base in range(2, min(a, b) + 1):
        ea = _exact_log(a, base)
        eb = _exact_log(b, base)
        if ea is not None and eb is not None:
            return Fraction(ea, eb)
    return None


def _exact_log(n: int, base: int):
    e = 0
    while n % base == 0:
        n //= base
        e += 1
    return e if n == 1 else None
