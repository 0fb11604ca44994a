"""Decision procedures for groups of finite type G_P.

* finiteness: G_P is finite iff St_P(d-1) is trivial (P minimal);
* level-transitivity: via the decreasing chain P = P_0 > P_1 > ... > Q;
* non-finite-generation witness: some generator of St(n-1)|X^[n] outside
  the commutator subgroup of G_P|X^[n];
* finite-generation certificate (level-transitive G_P): the commutator
  subgroup of St(d-1)|X^[n] contains St(n-1)|X^[n].

:func:`classify` chains them into a verdict.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field

from . import perm as P
from .pattern import (
    ConsistencyError,
    PatternGroup,
    PreconditionError,
    RestrictionTower,
    hausdorff_dimension,
    is_minimal,
    minimize,
)
from .permgroup import PermutationGroup, fingerprint
from .tree import TreeAutomorphism


class Tag(str, enum.Enum):
    TRIVIAL = "Trivial"
    FINITE = "Finite"
    NOT_FG = "NotFG"
    FG = "FG"
    UNDECIDED = "Undecided"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Certificate:
    """St(n-1)|X^[n] contained in the commutator subgroup of St(d-1)|X^[n]."""

    level: int
    stabilizer: PermutationGroup  # St(n-1)|X^[n]
    commutator: PermutationGroup  # [S_n, S_n]

    def recheck(self) -> bool:
        return all(self.commutator.contains(t) for t in self.stabilizer.generators)


@dataclass
class Verdict:
    tag: Tag
    witness_level: int | None = None
    evidence: object = None  # NotFG: leaf permutation; FG: Certificate
    bound: int | None = None
    order: int | None = None

    def is_definite(self) -> bool:
        return self.tag != Tag.UNDECIDED


@dataclass
class TransitivityTrace:
    letter: int
    chain: list = field(default_factory=list)  # element tuples P_0, P_1, ..., P_s

    @property
    def orders(self):
        return [len(c) for c in self.chain]

    @property
    def limit(self):
        return self.chain[-1]


def _require_minimal(P_: PatternGroup):
    if not is_minimal(P_):
        raise PreconditionError("expected a minimal pattern group; call minimize() first")


def is_finite(P_: PatternGroup) -> bool:
    """G_P is finite exactly when St_P(d-1) is trivial; then G_P ~ P."""
    _require_minimal(P_)
    return len(P_.stabilizer(P_.depth - 1)) == 1


def level_transitivity(P_: PatternGroup, letter: int = 0):
    """Return ``(transitive, trace)`` for G_P using the chain fixed at ``letter``."""
    _require_minimal(P_)
    k, d = P_.k, P_.depth
    x = (letter,)
    current = P_.elements
    trace = TransitivityTrace(letter, [current])
    while True:
        stab = [b for b in current if b.portrait[0][letter] == letter]
        keys = {b.section(x, d - 1).portrait for b in stab}
        nxt = tuple(a for a in current if a.restrict(d - 1).portrait in keys)
        if len(nxt) == len(current):
            break
        current = nxt
        trace.chain.append(current)
    orbit = {letter}
    frontier = [letter]
    while frontier:
        y = frontier.pop()
        for a in current:
            z = a.portrait[0][y]
            if z not in orbit:
                orbit.add(z)
                frontier.append(z)
    return len(orbit) == k, trace


def is_level_transitive(P_: PatternGroup) -> bool:
    cached = getattr(P_, "_level_transitive", None)
    if cached is None:
        cached = level_transitivity(P_)[0]
        P_._level_transitive = cached
    return cached


def _tower(P_, tower):
    if tower is None:
        return RestrictionTower(P_)
    if tower.pattern is not P_:
        raise ValueError("tower was built for a different pattern group")
    return tower


def prop_not_fg(P_: PatternGroup, n: int, tower: RestrictionTower | None = None):
    """A generator of St(n-1)|X^[n] outside [G_n, G_n], or None.

    A returned element proves G_P is not (topologically) finitely generated.
    None proves nothing.
    """
    _require_minimal(P_)
    if n < P_.depth:
        raise PreconditionError(f"level {n} is below the pattern depth {P_.depth}")
    tower = _tower(P_, tower)
    D = tower.group(n).derived_subgroup()
    T = tower.level_stabilizer(n - 1, n)
    for t in T.generators:
        if not D.contains(t):
            return t
    return None


def thm_fg(P_: PatternGroup, n: int, tower: RestrictionTower | None = None):
    """A :class:`Certificate` of finite generation at level ``n``, or None.

    Requires a level-transitive G_P; without transitivity the containment
    does not imply finite generation.
    """
    _require_minimal(P_)
    if n < P_.depth:
        raise PreconditionError(f"level {n} is below the pattern depth {P_.depth}")
    if not is_level_transitive(P_):
        raise PreconditionError("finite generation criterion needs a level-transitive group")
    tower = _tower(P_, tower)
    d = P_.depth
    S = tower.level_stabilizer(d - 1, n)
    DS = S.derived_subgroup()
    T = tower.level_stabilizer(n - 1, n)
    if T.is_subgroup(DS):
        return Certificate(n, T, DS)
    return None


# -- shortcuts --------------------------------------------------------

def abelian_shortcut(P_: PatternGroup):
    """Verdict for abelian P without building the tower, else None."""
    _require_minimal(P_)
    if not P_.is_abelian():
        return None
    return _stabilizer_vs_commutator(P_, commutator_order=1)


def _stabilizer_vs_commutator(P_, commutator_order):
    d = P_.depth
    if P_.is_trivial():
        return Verdict(Tag.TRIVIAL, order=1)
    kernel = P_.stabilizer_generators(d - 1)
    if not kernel:
        return Verdict(Tag.FINITE, order=len(P_))
    D = P_.leaf_group().derived_subgroup()
    if D.order() != commutator_order:
        raise ConsistencyError("unexpected commutator subgroup order")
    for c in kernel:
        t = c.to_leaf_permutation()
        if not D.contains(t):
            return Verdict(Tag.NOT_FG, witness_level=d, evidence=t)
    raise ConsistencyError("no element of St_P(d-1) outside [P,P]")


def _cyclic_wreath_square(P_: PatternGroup):
    """A generator of a cyclic C <= Sym(X) with P <= C wr C, or None."""
    k = P_.k
    entries = {p for g in P_.generators for p in g.portrait}
    for c in itertools.permutations(range(k)):
        C = {tuple(range(k))}
        x = c
        while x not in C:
            C.add(x)
            x = P.mul(c, x)
        if entries <= C:
            return c
    return None


def nilpotent_wreath_shortcut(P_: PatternGroup):
    """Verdict for nilpotent P of depth 2 inside C wr C with C cyclic, else None."""
    _require_minimal(P_)
    if P_.depth != 2 or _cyclic_wreath_square(P_) is None:
        return None
    L = P_.leaf_group()
    if not L.is_nilpotent():
        return None
    if P_.is_trivial():
        return Verdict(Tag.TRIVIAL, order=1)
    kernel = P_.stabilizer_generators(1)
    if not kernel:
        return Verdict(Tag.FINITE, order=len(P_))
    D = L.derived_subgroup()
    St = PermutationGroup([c.to_leaf_permutation() for c in kernel], L.degree)
    if not D.is_subgroup(St):
        raise ConsistencyError("[P,P] is not inside St_P(1) although P/St_P(1) is cyclic")
    for c in kernel:
        t = c.to_leaf_permutation()
        if not D.contains(t):
            return Verdict(Tag.NOT_FG, witness_level=2, evidence=t)
    raise ConsistencyError("[P,P] = St_P(1) != 1 contradicts nilpotency")


# -- classifier -------------------------------------------------------

@dataclass
class ClassificationRecord:
    pattern: PatternGroup  # the minimal pattern group
    verdict: Verdict
    input_order: int
    m: int
    fingerprint: object = None
    hausdorff: object = None
    level_transitive: bool | None = None

    @property
    def depth(self):
        return self.pattern.depth

    def as_dict(self):
        v = self.verdict
        d = {
            "alphabet": self.pattern.k,
            "depth": self.pattern.depth,
            "input_order": self.input_order,
            "generators": [P.format_cycles(g.to_leaf_permutation()) for g in self.pattern.generators],
            "order_formula": {"p": len(self.pattern), "m": self.m},
            "verdict": v.tag.value,
            "witness_level": v.witness_level,
            "fingerprint": self.fingerprint.as_list() if self.fingerprint is not None else None,
        }
        if v.tag == Tag.NOT_FG:
            d["evidence"] = P.format_cycles(v.evidence)
        elif v.tag == Tag.FG:
            d["evidence"] = {
                "level": v.evidence.level,
                "stabilizer_generators": [P.format_cycles(t) for t in v.evidence.stabilizer.generators],
            }
        if v.tag == Tag.UNDECIDED:
            d["bound"] = v.bound
        if self.hausdorff is not None:
            d["hausdorff_dimension"] = str(self.hausdorff)
        if self.level_transitive is not None:
            d["level_transitive"] = self.level_transitive
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), **kw)


def default_max_n(depth: int) -> int:
    return depth + 4


def classify(P_: PatternGroup, max_n: int | None = None) -> ClassificationRecord:
    """Minimize, then decide triviality, finiteness and finite generation up to level ``max_n``."""
    d = P_.depth
    if max_n is None:
        max_n = default_max_n(d)
    if max_n < d:
        raise PreconditionError(f"max_n={max_n} is below the pattern depth {d}")
    Q = minimize(P_)
    m = len(Q.stabilizer(d - 1))
    rec = ClassificationRecord(Q, None, len(P_), m)
    if Q.is_trivial():
        rec.verdict = Verdict(Tag.TRIVIAL, order=1)
        rec.fingerprint = fingerprint(Q.leaf_group())
        return rec
    if m == 1:
        rec.verdict = Verdict(Tag.FINITE, order=len(Q))
        rec.fingerprint = fingerprint(Q.leaf_group())
        return rec
    rec.hausdorff = hausdorff_dimension(Q)
    transitive = is_level_transitive(Q)
    rec.level_transitive = transitive
    if Q.k == 2 and not transitive:
        raise ConsistencyError("infinite group over the binary alphabet is not level-transitive")
    tower = RestrictionTower(Q, check_minimal=False)
    for n in range(d, max_n + 1):
        w = prop_not_fg(Q, n, tower)
        if w is not None:
            rec.verdict = Verdict(Tag.NOT_FG, witness_level=n, evidence=w)
            return rec
        if transitive:
            c = thm_fg(Q, n, tower)
            if c is not None:
                rec.verdict = Verdict(Tag.FG, witness_level=n, evidence=c)
                return rec
    rec.verdict = Verdict(Tag.UNDECIDED, bound=max_n)
    return rec


def pattern_from_leaf_cycles(cycles, k: int, depth: int, numbering: str = "lex") -> PatternGroup:
    perms = [P.parse_cycles(c, k**depth) for c in cycles]
    gens = [TreeAutomorphism.from_leaf_permutation(p, k, depth, numbering) for p in perms]
    return PatternGroup(k, depth, gens)
thm_finitely_generated = thm_fg
