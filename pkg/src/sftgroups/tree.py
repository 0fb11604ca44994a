"""Automorphisms of the truncated regular rooted tree X^[n].

An automorphism is stored by its portrait: one permutation of the alphabet
``{0, ..., k-1}`` for every vertex of depth less than ``n``.  Vertices are
words (tuples of letters) and the portrait is laid out in breadth-first
lexicographic order, so the portrait of a restriction is a prefix of the
portrait.

The action is a left action, ``(g*h)(v) == g(h(v))``, and sections obey

    g(vx) = g(v) g_(v)(x),   (gh)_(v) = g_(h(v)) h_(v),
    (g^-1)_(v) = (g_(g^-1(v)))^-1.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from . import perm as P

LEX = "lex"
REVERSED = "reversed"
NUMBERINGS = (LEX, REVERSED)


class DomainError(ValueError):
    """Depth or index outside the tree an automorphism acts on."""


class StructureError(ValueError):
    """A leaf permutation does not come from a tree automorphism."""

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


@lru_cache(maxsize=None)
def level_offset(k: int, j: int) -> int:
    """Portrait index of the first vertex of depth ``j``."""
    return (k**j - 1) // (k - 1)


def vertex_index(k: int, word) -> int:
    """Breadth-first lexicographic index of a vertex."""
    lex = 0
    for x in word:
        lex = lex * k + x
    return level_offset(k, len(word)) + lex


def words(k: int, n: int):
    """All words of length ``n`` in lexicographic order."""
    return list(product(range(k), repeat=n))


def internal_vertices(k: int, n: int):
    """Vertices of depth < n in portrait order."""
    out = []
    for j in range(n):
        out.extend(words(k, j))
    return out


def leaf_index(k: int, word, numbering: str = LEX) -> int:
    """0-based leaf number; the 1-based label is this plus one."""
    if numbering == REVERSED:
        word = tuple(reversed(word))
    elif numbering != LEX:
        raise ValueError(f"unknown leaf numbering {numbering!r}")
    lex = 0
    for x in word:
        lex = lex * k + x
    return lex


@lru_cache(maxsize=None)
def _reversal(k: int, n: int):
    """Map lexicographic leaf numbers to reversed-word leaf numbers."""
    return tuple(leaf_index(k, w, REVERSED) for w in words(k, n))


@lru_cache(maxsize=None)
def _identity_portrait(k: int, n: int):
    e = tuple(range(k))
    return (e,) * level_offset(k, n)


class TreeAutomorphism:
    """Element of Aut X^[n] for the alphabet ``{0, ..., k-1}``.

    Instances are immutable and hashable; equality is portrait equality.
    ``g * h`` composes (``h`` first), ``g(v)`` applies to a vertex.
    """

    __slots__ = ("k", "depth", "portrait", "_hash")

    def __init__(self, k: int, depth: int, portrait=None, *, check: bool = True):
        if k < 2:
            raise ValueError("alphabet needs at least two letters")
        if depth < 0:
            raise DomainError("depth must be non-negative")
        if portrait is None:
            portrait = _identity_portrait(k, depth)
        else:
            portrait = tuple(tuple(p) for p in portrait)
            if check:
                if len(portrait) != level_offset(k, depth):
                    raise ValueError(
                        f"portrait of depth {depth} needs {level_offset(k, depth)} entries, "
                        f"got {len(portrait)}"
                    )
                for p in portrait:
                    if len(p) != k:
                        raise ValueError(f"letter permutation {p} has wrong size")
                    P.check(p)
        self.k = k
        self.depth = depth
        self.portrait = portrait
        self._hash = None

    # -- construction -------------------------------------------------

    @classmethod
    def identity(cls, k: int, depth: int) -> "TreeAutomorphism":
        return cls(k, depth)

    @classmethod
    def from_vertex_perms(cls, k: int, depth: int, perms: dict) -> "TreeAutomorphism":
        """Build from ``{vertex word: letter permutation}``; other vertices act trivially."""
        portrait = list(_identity_portrait(k, depth))
        for v, p in perms.items():
            v = tuple(v)
            if len(v) >= depth:
                raise DomainError(f"vertex {v} is not internal at depth {depth}")
            portrait[vertex_index(k, v)] = tuple(p)
        return cls(k, depth, portrait)

    @classmethod
    def random(cls, k: int, depth: int, rng: random.Random | None = None) -> "TreeAutomorphism":
        rng = rng or random.Random()
        portrait = []
        for _ in range(level_offset(k, depth)):
            p = list(range(k))
            rng.shuffle(p)
            portrait.append(tuple(p))
        return cls(k, depth, portrait, check=False)

    # -- basic protocol -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TreeAutomorphism):
            return NotImplemented
        return self.k == other.k and self.depth == other.depth and self.portrait == other.portrait

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.k, self.depth, self.portrait))
        return self._hash

    def __lt__(self, other):
        return self.portrait < other.portrait

    def __repr__(self):
        moved = {
            "".join(map(str, v)): p
            for v, p in zip(internal_vertices(self.k, self.depth), self.portrait)
            if p != tuple(range(self.k))
        }
        return f"TreeAutomorphism(k={self.k}, depth={self.depth}, {moved})"

    def __mul__(self, other):
        return self.compose(other)

    def __call__(self, v):
        return self.apply(v)

    def is_identity(self) -> bool:
        return self.portrait == _identity_portrait(self.k, self.depth)

    # -- tree operations ----------------------------------------------

    def apply(self, v) -> tuple:
        """Image of the vertex ``v``; the depth is preserved."""
        v = tuple(v)
        if len(v) > self.depth:
            raise DomainError(f"vertex of depth {len(v)} outside X^[{self.depth}]")
        k = self.k
        out = []
        lex = 0
        for j, x in enumerate(v):
            out.append(self.portrait[level_offset(k, j) + lex][x])
            lex = lex * k + x
        return tuple(out)

    def _vertex_images(self, upto: int):
        """Lexicographic image numbers of every vertex, level by level, up to depth ``upto``."""
        k = self.k
        por = self.portrait
        levels = [[0]]
        for j in range(upto):
            off = level_offset(k, j)
            cur = levels[-1]
            nxt = [0] * (k * len(cur))
            for v, w in enumerate(cur):
                p = por[off + v]
                wk = w * k
                vk = v * k
                for x in range(k):
                    nxt[vk + x] = wk + p[x]
            levels.append(nxt)
        return levels

    def compose(self, other: "TreeAutomorphism") -> "TreeAutomorphism":
        """``self * other`` via (gh)_(v) = g_(h(v)) h_(v)."""
        if self.k != other.k or self.depth != other.depth:
            raise DomainError("cannot compose automorphisms of different trees")
        k = self.k
        gp = self.portrait
        hp = other.portrait
        imgs = other._vertex_images(self.depth - 1) if self.depth else []
        out = []
        for j in range(self.depth):
            off = level_offset(k, j)
            for v, w in enumerate(imgs[j]):
                gw = gp[off + w]
                out.append(tuple(map(gw.__getitem__, hp[off + v])))
        return TreeAutomorphism(k, self.depth, out, check=False)

    def inverse(self) -> "TreeAutomorphism":
        k = self.k
        gp = self.portrait
        imgs = self._vertex_images(self.depth - 1) if self.depth else []
        out = list(gp)
        for j in range(self.depth):
            off = level_offset(k, j)
            for u, w in enumerate(imgs[j]):
                out[off + w] = P.inv(gp[off + u])
        return TreeAutomorphism(k, self.depth, out, check=False)

    def section(self, v, depth: int | None = None) -> "TreeAutomorphism":
        """The section g_(v), an automorphism of depth ``depth - len(v)``.

        With ``depth`` given, return the restriction of the section to X^[depth].
        """
        v = tuple(v)
        j = len(v)
        if j > self.depth:
            raise DomainError(f"vertex of depth {j} outside X^[{self.depth}]")
        if depth is None:
            depth = self.depth - j
        elif not 0 <= depth <= self.depth - j:
            raise DomainError(f"section at depth {j} cannot be restricted to depth {depth}")
        k = self.k
        lexv = 0
        for x in v:
            lexv = lexv * k + x
        out = []
        for level in range(depth):
            start = level_offset(k, j + level) + lexv * k**level
            out.extend(self.portrait[start:start + k**level])
        return TreeAutomorphism(k, depth, out, check=False)

    def restrict(self, m: int) -> "TreeAutomorphism":
        """The restriction g|X^[m]."""
        if not 0 <= m <= self.depth:
            raise DomainError(f"cannot restrict depth {self.depth} automorphism to depth {m}")
        return TreeAutomorphism(self.k, m, self.portrait[:level_offset(self.k, m)], check=False)

    def fixes_level(self, j: int) -> bool:
        """True when every vertex of depth ``j`` is fixed."""
        if j > self.depth:
            raise DomainError(f"level {j} outside X^[{self.depth}]")
        e = tuple(range(self.k))
        return all(p == e for p in self.portrait[:level_offset(self.k, j)])

    # -- leaf permutations --------------------------------------------

    def to_leaf_permutation(self, numbering: str = LEX):
        """Action on the ``k**depth`` leaves as a 0-based permutation tuple."""
        leaves = tuple(self._vertex_images(self.depth)[-1])
        if numbering == LEX:
            return leaves
        if numbering != REVERSED:
            raise ValueError(f"unknown leaf numbering {numbering!r}")
        rev = _reversal(self.k, self.depth)
        out = [0] * len(leaves)
        for i, x in enumerate(leaves):
            out[rev[i]] = rev[x]
        return tuple(out)

    @classmethod
    def from_leaf_permutation(cls, p, k: int, n: int, numbering: str = LEX) -> "TreeAutomorphism":
        """Inverse of :meth:`to_leaf_permutation`.

        Raises StructureError naming the first level whose prefix blocks
        are not permuted.
        """
        p = tuple(p)
        if len(p) != k**n:
            raise StructureError(f"degree {len(p)} is not {k}**{n}")
        P.check(p)
        if numbering == REVERSED:
            rev = _reversal(k, n)
            lexp = [0] * len(p)
            for i in range(len(p)):
                lexp[i] = rev[p[rev[i]]]
            p = tuple(lexp)
        elif numbering != LEX:
            raise ValueError(f"unknown leaf numbering {numbering!r}")
        for j in range(1, n):
            size = k ** (n - j)
            for b in range(k**j):
                start = b * size
                target = p[start] // size
                for i in range(start + 1, start + size):
                    if p[i] // size != target:
                        raise StructureError(
                            f"leaf permutation splits the prefix block of vertex {b} at level {j}",
                            level=j,
                        )
        portrait = []
        for j in range(n):
            below = k ** (n - j - 1)
            for v in range(k**j):
                portrait.append(tuple(p[(v * k + x) * below] // below % k for x in range(k)))
        return cls(k, n, portrait, check=False)


def is_prefix_preserving(p, k: int, n: int) -> bool:
    """True when the leaf permutation ``p`` (lexicographic numbering) lies in Aut X^[n]."""
    if len(p) != k**n:
        return False
    for j in range(1, n):
        size = k ** (n - j)
        for start in range(0, len(p), size):
            target = p[start] // size
            for i in range(start + 1, start + size):
                if p[i] // size != target:
                    return False
    return True


def planted(c: TreeAutomorphism, v, depth: int) -> TreeAutomorphism:
    """Automorphism of X^[depth] acting as ``c`` below ``v`` and trivially elsewhere."""
    v = tuple(v)
    k = c.k
    if len(v) + c.depth > depth:
        raise DomainError("planted automorphism does not fit in the tree")
    portrait = list(_identity_portrait(k, depth))
    lexv = 0
    for x in v:
        lexv = lexv * k + x
    src = 0
    for level in range(c.depth):
        width = k**level
        start = level_offset(k, len(v) + level) + lexv * width
        portrait[start:start + width] = c.portrait[src:src + width]
        src += width
    return TreeAutomorphism(k, depth, portrait, check=False)


def vertex_swaps(k: int, n: int):
    """Generators of Aut X^[n]: a transposition and a k-cycle at each internal vertex."""
    gens = []
    for v in internal_vertices(k, n):
        t = list(range(k))
        t[0], t[1] = 1, 0
        gens.append(TreeAutomorphism.from_vertex_perms(k, n, {v: t}))
        if k > 2:
            cyc = tuple((x + 1) % k for x in range(k))
            gens.append(TreeAutomorphism.from_vertex_perms(k, n, {v: cyc}))
    return gens


def format_portrait(g: TreeAutomorphism) -> str:
    """Text portrait: ``k n`` then one one-line letter permutation per internal vertex."""
    lines = [f"{g.k} {g.depth}"]
    lines.extend(" ".join(map(str, p)) for p in g.portrait)
    return "\n".join(lines) + "\n"


def parse_portrait(text: str) -> TreeAutomorphism:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty portrait")
    k, n = (int(x) for x in lines[0].split())
    body = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    return TreeAutomorphism(k, n, body)
