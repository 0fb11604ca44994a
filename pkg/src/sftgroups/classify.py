"""Censuses of binary pattern groups and the depth-4 catalog P_ijk."""

from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from . import perm as P
from .criteria import (
    Tag,
    classify,
    default_max_n,
    is_finite,
    level_transitivity,
    thm_fg,
)
from .pattern import (
    PatternGroup,
    RestrictionTower,
    hausdorff_dimension,
    is_minimal,
    minimize,
    restriction_order,
)
from .permgroup import PermutationGroup, all_subgroups, brute_force_isomorphic, fingerprint
from .tree import LEX, REVERSED, StructureError, TreeAutomorphism, words


class UnsupportedScaleError(ValueError):
    """The request is outside what the census can enumerate."""


# -- parallel map -----------------------------------------------------

def default_jobs() -> int:
    env = os.environ.get("SFT_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _map(fn, items, jobs):
    items = list(items)
    if jobs is None:
        jobs = 1
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # results come back in input order whatever the scheduling
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# -- small reference groups -------------------------------------------

def _references():
    def G(cycles, degree):
        return PermutationGroup([P.parse_cycles(c, degree) for c in cycles], degree)

    return {
        "1": G([], 1),
        "C2": G(["(1,2)"], 2),
        "C4": G(["(1,2,3,4)"], 4),
        "C2xC2": G(["(1,2)", "(3,4)"], 4),
        "C8": G(["(1,2,3,4,5,6,7,8)"], 8),
        "C4xC2": G(["(1,2,3,4)", "(5,6)"], 6),
        "C2xC2xC2": G(["(1,2)", "(3,4)", "(5,6)"], 6),
        "D8": G(["(1,2,3,4)", "(1,3)"], 4),
        "Q8": G(["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"], 8),
    }


@lru_cache(maxsize=None)
def _reference_fingerprints():
    return [(name, H, fingerprint(H)) for name, H in _references().items()]


def identify_small(G: PermutationGroup) -> str:
    """Name of a small reference group isomorphic to G, certified by brute force.

    Falls back to ``order<N>`` followed by the fingerprint when no reference matches.
    """
    fp = fingerprint(G)
    for name, H, fh in _reference_fingerprints():
        if fh == fp and brute_force_isomorphic(G, H):
            return name
    return f"order{fp.order}:{fp.to_json()}"


# -- census -----------------------------------------------------------

def ambient_group(d: int, k: int = 2) -> PermutationGroup:
    return PatternGroup.full(k, d).leaf_group()


def enumerate_minimal(d: int, k: int = 2, jobs: int | None = 1):
    """All minimal pattern groups of depth d obtained by minimizing every subgroup of Aut X^[d].

    Returns ``(minimal_groups, subgroup_count)``; groups are sorted by order, then elements.
    """
    if k != 2:
        raise UnsupportedScaleError("censuses are packaged for the binary alphabet only")
    if d < 1:
        raise ValueError("depth must be at least 1")
    if d > 3:
        raise UnsupportedScaleError(
            f"subgroup enumeration of Aut X^[{d}] is out of reach; "
            "use the depth-4 catalog (`catalog depth4`) or classify supplied groups")
    subs = all_subgroups(ambient_group(d, k))
    patterns = [PatternGroup.from_permgroup(H, k, d) for H in subs]
    minimal = {}
    for Q in _map(minimize, patterns, jobs):
        minimal.setdefault(Q, Q)
    return sorted(minimal, key=PatternGroup.key), len(subs)


@dataclass
class CensusReport:
    depth: int
    max_n: int
    subgroup_count: int | None
    records: list = field(default_factory=list)

    @property
    def minimal_count(self):
        return len(self.records)

    def verdicts(self):
        """Verdict histogram; NotFG and FG are broken down by witness level."""
        out = {"Trivial": 0, "Finite": 0, "NotFG": {}, "FG": {}, "Undecided": 0}
        for r in self.records:
            t = r.verdict.tag
            if t in (Tag.NOT_FG, Tag.FG):
                lv = out[t.value]
                lv[r.verdict.witness_level] = lv.get(r.verdict.witness_level, 0) + 1
            else:
                out[t.value] += 1
        for t in ("NotFG", "FG"):
            out[t] = dict(sorted(out[t].items()))
        return out

    def count(self, tag: Tag) -> int:
        return sum(1 for r in self.records if r.verdict.tag == tag)

    @property
    def finite_count(self):
        return self.count(Tag.TRIVIAL) + self.count(Tag.FINITE)

    def finite_types(self):
        """Isomorphism types of the finite groups (trivial included)."""
        c = Counter(identify_small(r.pattern.leaf_group()) for r in self.records
                    if r.verdict.tag in (Tag.TRIVIAL, Tag.FINITE))
        return dict(sorted(c.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def as_dict(self):
        v = self.verdicts()
        return {
            "depth": self.depth,
            "max_n": self.max_n,
            "subgroup_count": self.subgroup_count,
            "minimal_count": self.minimal_count,
            "verdicts": {
                "Trivial": v["Trivial"],
                "Finite": v["Finite"],
                "NotFG": {str(n): c for n, c in v["NotFG"].items()},
                "FG": {str(n): c for n, c in v["FG"].items()},
                "Undecided": v["Undecided"],
            },
            "finite_types": self.finite_types(),
            "groups": [r.as_dict() for r in self.records],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), **kw)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "depth", "order", "m", "verdict", "witness_level", "generators"])
        for i, r in enumerate(self.records):
            d = r.as_dict()
            w.writerow([i, d["depth"], d["order_formula"]["p"], d["order_formula"]["m"],
                        d["verdict"], "" if d["witness_level"] is None else d["witness_level"],
                        " ".join(d["generators"])])
        return buf.getvalue()

    def summary(self) -> str:
        v = self.verdicts()
        lines = [f"depth {self.depth} (max_n = {self.max_n})"]
        if self.subgroup_count is not None:
            lines.append(f"  subgroups:       {self.subgroup_count}")
        lines.append(f"  minimal groups:  {self.minimal_count}")
        lines.append(f"  finite:          {self.finite_count}  {self.finite_types()}")
        lines.append(f"  not f.g.:        {self.count(Tag.NOT_FG)}  by level {v['NotFG']}")
        lines.append(f"  f.g.:            {self.count(Tag.FG)}  by level {v['FG']}")
        lines.append(f"  undecided:       {v['Undecided']}")
        return "\n".join(lines)


class _Classifier:
    # picklable callable for the process pool
    def __init__(self, max_n):
        self.max_n = max_n

    def __call__(self, P_):
        return classify(P_, self.max_n)


def classify_many(patterns, max_n: int | None = None, jobs: int | None = 1, depth=None):
    """Classify externally supplied pattern groups of one depth."""
    patterns = list(patterns)
    if depth is None:
        depth = patterns[0].depth if patterns else 1
    if max_n is None:
        max_n = default_max_n(depth)
    records = _map(_Classifier(max_n), patterns, jobs)
    return CensusReport(depth, max_n, None, records)


def census(d: int, max_n: int | None = None, jobs: int | None = 1) -> CensusReport:
    groups, nsub = enumerate_minimal(d, jobs=jobs)
    report = classify_many(groups, max_n, jobs, depth=d)
    report.subgroup_count = nsub
    return report


# -- depth-4 catalog --------------------------------------------------

CATALOG_CYCLES = {
    "a1": "(1,9)(2,10)(3,11)(4,12)(5,13)(6,14)(7,15)(8,16)",
    "a2": "(1,10,2,9)(3,11)(4,12)(5,14,6,13)(7,15)(8,16)",
    "a3": "(1,10)(2,9)(3,11)(4,12)(5,13)(6,14)(7,15)(8,16)",
    "a4": "(1,9,2,10)(3,11)(4,12)(5,14,6,13)(7,15)(8,16)",
    "b1": "(1,5)(2,6)(3,7)(4,8)(9,10)",
    "b2": "(1,6)(2,5)(3,7)(4,8)(9,10)",
    "c1": "(1,3)(2,4)",
    "c2": "(1,4,2,3)",
    "c3": "(1,3)(2,4)(5,6)",
    "c4": "(1,4,2,3)(5,6)",
}

CATALOG_TRIPLES = [(i, j, k) for i in range(1, 5) for j in range(1, 3) for k in range(1, 5)]


def catalog_name(ijk) -> str:
    return "P_" + "".join(map(str, ijk))


def catalog_cycles(ijk):
    i, j, k = ijk
    return [CATALOG_CYCLES[f"a{i}"], CATALOG_CYCLES[f"b{j}"], CATALOG_CYCLES[f"c{k}"]]


def catalog_group(ijk, numbering: str = LEX) -> PatternGroup:
    perms = [P.parse_cycles(c, 16) for c in catalog_cycles(ijk)]
    return PatternGroup.from_leaf_permutations(perms, 2, 4, numbering)


@dataclass
class Depth4Catalog:
    numbering: str
    groups: dict  # (i, j, k) -> PatternGroup

    def __len__(self):
        return len(self.groups)


def depth4_catalog(numbering: str = LEX) -> Depth4Catalog:
    return Depth4Catalog(numbering, {t: catalog_group(t, numbering) for t in CATALOG_TRIPLES})


class VerificationError(AssertionError):
    pass


def _verify_one(args):
    ijk, numbering, fg_levels, growth_levels = args
    name = catalog_name(ijk)
    out = {"group": name, "numbering": numbering}
    try:
        G = catalog_group(ijk, numbering)
    except StructureError as e:
        out["failed"] = f"generators are not tree automorphisms: {e}"
        return out
    full3 = PatternGroup.full(2, 3)
    out["order"] = len(G)
    out["minimal"] = is_minimal(G)
    out["restriction_is_aut3"] = G.restricted(3) == set(full3.elements)
    if not out["minimal"]:
        out["failed"] = "not minimal"
        return out
    out["infinite"] = not is_finite(G)
    out["level_transitive"] = level_transitivity(G)[0]
    out["m"] = len(G.stabilizer(3))
    out["hausdorff_dimension"] = str(hausdorff_dimension(G)) if out["infinite"] else None
    tower = RestrictionTower(G, check_minimal=False)
    out["growth_formula"] = all(tower.group(n).order() == restriction_order(G, n) for n in growth_levels)
    if out["level_transitive"]:
        out["thm_fg"] = {str(n): thm_fg(G, n, tower) is not None for n in fg_levels}
    out["fingerprint"] = fingerprint(G.leaf_group()).as_list()
    problems = []
    if out["order"] != 4096:
        problems.append("order")
    for key in ("restriction_is_aut3", "infinite", "level_transitive", "growth_formula"):
        if not out[key]:
            problems.append(key)
    expect = {str(n): n >= 6 for n in fg_levels}
    if out.get("thm_fg") != expect:
        problems.append("thm_fg levels")
    if problems:
        out["failed"] = ", ".join(problems)
    return out


def verify_depth4(numbering: str | None = None, jobs: int | None = 1, fg_levels=(4, 5, 6),
                  growth_levels=(4, 5, 6), triples=None):
    """Check the catalog claims for every P_ijk and bucket the groups by fingerprint.

    With ``numbering=None`` the lexicographic leaf numbering is tried first
    and the reversed one only if some group fails.
    """
    triples = CATALOG_TRIPLES if triples is None else list(triples)
    conventions = [numbering] if numbering else [LEX, REVERSED]
    attempts = {}
    for conv in conventions:
        rows = _map(_verify_one, [(t, conv, tuple(fg_levels), tuple(growth_levels)) for t in triples], jobs)
        failures = [r for r in rows if "failed" in r]
        attempts[conv] = len(failures)
        if not failures or conv == conventions[-1]:
            break
    buckets = Counter(json.dumps(r["fingerprint"]) for r in rows if "fingerprint" in r)
    return {
        "numbering": conv,
        "attempts": attempts,
        "passed": not failures,
        "groups": rows,
        "fingerprint_buckets": len(buckets),
        "bucket_sizes": sorted(buckets.values(), reverse=True),
        "target_classes": 20,
    }


def format_depth4_report(report) -> str:
    lines = [f"leaf numbering: {report['numbering']}  (failures per convention tried: {report['attempts']})"]
    for r in report["groups"]:
        if "failed" in r:
            lines.append(f"{r['group']}: FAILED ({r['failed']})")
        else:
            fg = ", ".join(f"n={n}:{'yes' if ok else 'no'}" for n, ok in r["thm_fg"].items())
            lines.append(f"{r['group']}: order {r['order']}, m {r['m']}, dim {r['hausdorff_dimension']}, "
                         f"f.g. certificate {fg}")
    lines.append(f"fingerprint buckets: {report['fingerprint_buckets']} "
                 f"(sizes {report['bucket_sizes']}); isomorphism classes expected: {report['target_classes']}")
    lines.append("all checks passed" if report["passed"] else "SOME CHECKS FAILED")
    return "\n".join(lines)


# -- Grigorchuk group -------------------------------------------------

# Auxiliary data, not part of the catalog: the standard recursion
# a = swap at the root, b = (a, c), c = (a, d), d = (1, b).
_GRIGORCHUK_SECTIONS = {"b": ("a", "c"), "c": ("a", "d"), "d": ("1", "b")}


def grigorchuk_generators(depth: int = 8):
    """Truncations of a, b, c, d to X^[depth]."""
    swap, e = (1, 0), (0, 1)

    @lru_cache(maxsize=None)
    def portrait(name, n):
        if n == 0:
            return ()
        if name == "1":
            return (e,) * (2**n - 1)
        if name == "a":
            return (swap,) + (e,) * (2**n - 2)
        left, right = (portrait(s, n - 1) for s in _GRIGORCHUK_SECTIONS[name])
        out = [e]
        for level in range(n - 1):
            w = 2**level
            out += left[w - 1: 2 * w - 1] + right[w - 1: 2 * w - 1]
        return tuple(out)

    return {x: TreeAutomorphism(2, depth, portrait(x, depth)) for x in "abcd"}


def grigorchuk_check(numbering: str = LEX, depth: int = 8):
    """Compare <a,b,c,d>|X^[4] with P_123 and test the pattern condition on sections."""
    gens = grigorchuk_generators(depth)
    try:
        target = catalog_group((1, 2, 3), numbering)
    except StructureError as e:
        return {"numbering": numbering, "passed": False, "error": str(e)}
    H = PermutationGroup([g.restrict(4).to_leaf_permutation(numbering) for g in gens.values()], 16)
    same = set(H.elements()) == {g.to_leaf_permutation(numbering) for g in target.elements}
    sections_ok = all(g.section(v, 4) in target
                      for g in gens.values() for j in range(depth - 4 + 1) for v in words(2, j))
    involutions = all((g * g).is_identity() for g in gens.values())
    return {
        "numbering": numbering,
        "order": H.order(),
        "equals_P123": same,
        "sections_in_P123": sections_ok,
        "involutions": involutions,
        "passed": same and sections_ok and involutions,
    }
