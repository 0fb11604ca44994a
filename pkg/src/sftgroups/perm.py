"""Permutations as tuples of images.

A permutation of degree ``n`` is a tuple ``p`` with ``p[i]`` the image of
point ``i`` (0-based).  Products follow the left-action convention used
throughout the package: ``mul(p, q)`` applies ``q`` first, so
``mul(p, q)[i] == p[q[i]]``.

Cycle notation is 1-based on input and output, e.g. ``(1,9)(2,10)``.
"""

from __future__ import annotations

import re
from math import gcd

Perm = tuple

_CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s*[,\s]\s*\d+)*)?\s*\)")


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def is_identity(p) -> bool:
    return all(i == x for i, x in enumerate(p))


def mul(p, q) -> Perm:
    """Return the product ``p*q``: first ``q``, then ``p``."""
    return tuple(map(p.__getitem__, q))


def inv(p) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conj(g, h) -> Perm:
    """Return ``g h g^-1``."""
    return mul(mul(g, h), inv(g))


def comm(g, h) -> Perm:
    """Return the commutator ``g h g^-1 h^-1``."""
    return mul(mul(g, h), inv(mul(h, g)))


def power(p, e: int) -> Perm:
    result = identity(len(p))
    base = p
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def check(p) -> None:
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {p!r}")


def cycles(p) -> list[tuple[int, ...]]:
    """Non-trivial cycles of ``p`` (0-based), each starting at its least point."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def order(p) -> int:
    result = 1
    for c in cycles(p):
        result = result * len(c) // gcd(result, len(c))
    return result


def format_cycles(p) -> str:
    """1-based cycle notation; the identity prints as ``()``."""
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cs)


class CycleSyntaxError(ValueError):
    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse 1-based cycle notation such as ``(1,9)(2,10)`` or ``()``.

    The degree defaults to the largest point mentioned.  Cycles are
    composed left to right as written, i.e. the rightmost cycle acts first.
    """
    s = text
    pos = 0
    parsed = []
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise CycleSyntaxError(f"cannot parse cycle notation at column {pos + 1}: {text!r}", pos + 1)
        if m.group(1):
            pts = [int(x) for x in re.split(r"[,\s]+", m.group(1).strip())]
            if min(pts) < 1:
                raise CycleSyntaxError(f"points are 1-based, got 0 in {text!r}", m.start(1) + 1)
            if len(set(pts)) != len(pts):
                raise CycleSyntaxError(f"repeated point in cycle {m.group(0)!r}", m.start() + 1)
            parsed.append([x - 1 for x in pts])
        pos = m.end()
    top = max((max(c) + 1 for c in parsed), default=0)
    if degree is None:
        degree = top
    elif top > degree:
        raise CycleSyntaxError(f"point {top} exceeds degree {degree}")
    result = identity(degree)
    for c in parsed:
        img = list(range(degree))
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
        result = mul(result, tuple(img))
    return result
