"""Pattern-group files.

A file starts with a header ``k d`` and then one section::

    2 2
    leafperms:
    (1,2)(3,4)
    (1,3,2,4)

or::

    2 2
    generators:
    2 2
    1 0
    0 1
    1 0

Under ``leafperms:`` each line is a 1-based cycle-notation permutation of
the k^d leaves.  Under ``generators:`` each block is a text portrait: its
own ``k d`` line followed by one one-line letter permutation per internal
vertex.  ``#`` starts a comment.  The group is closed to its full element
list on load.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from . import perm as P
from .pattern import PatternGroup
from .tree import LEX, StructureError, TreeAutomorphism, format_portrait, level_offset


class ParseError(ValueError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


def _tokens(text):
    """Non-empty lines as (line number, column of first char, content)."""
    for no, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0].rstrip()
        stripped = content.lstrip()
        if stripped:
            yield no, len(content) - len(stripped) + 1, stripped


def _ints(line_no, col, s, count=None, what="integers"):
    out = []
    pos = 0
    for part in s.split():
        at = s.index(part, pos)
        pos = at + len(part)
        try:
            out.append(int(part))
        except ValueError:
            raise ParseError(f"expected {what}, got {part!r}", line_no, col + at) from None
    if count is not None and len(out) != count:
        raise ParseError(f"expected {count} {what}, got {len(out)}", line_no, col)
    return out


def parse_pattern(text: str, numbering: str = LEX) -> PatternGroup:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty input; expected a header 'k d'", 1)
    no, col, s = lines[0]
    k, d = _ints(no, col, s, 2, "header values 'k d'")
    if k < 2:
        raise ParseError(f"alphabet size must be at least 2, got {k}", no, col)
    if d < 1:
        raise ParseError(f"pattern depth must be at least 1, got {d}", no, col)
    if len(lines) < 2:
        raise ParseError("missing section 'generators:' or 'leafperms:'", no + 1)
    no, col, s = lines[1]
    body = lines[2:]
    if s == "leafperms:":
        gens = [_leafperm(k, d, ln, numbering) for ln in body]
    elif s == "generators:":
        gens = _portraits(k, d, body)
    else:
        raise ParseError(f"unknown section {s!r}; expected 'generators:' or 'leafperms:'", no, col)
    return PatternGroup(k, d, gens)


def _leafperm(k, d, line, numbering):
    no, col, s = line
    try:
        p = P.parse_cycles(s, k**d)
    except P.CycleSyntaxError as e:
        reason = "malformed cycle notation" if e.column else str(e)
        raise ParseError(f"{reason}: {s!r}", no, col - 1 + (e.column or 1)) from None
    try:
        return TreeAutomorphism.from_leaf_permutation(p, k, d, numbering)
    except StructureError as e:
        raise ParseError(f"not a tree automorphism: {e}", no, col) from None


def _portraits(k, d, body):
    gens = []
    need = level_offset(k, d)
    i = 0
    while i < len(body):
        no, col, s = body[i]
        kk, dd = _ints(no, col, s, 2, "portrait header values 'k d'")
        if (kk, dd) != (k, d):
            raise ParseError(f"portrait header {kk} {dd} does not match the file header {k} {d}", no, col)
        rows = body[i + 1: i + 1 + need]
        if len(rows) < need:
            raise ParseError(f"portrait needs {need} vertex lines, found {len(rows)}", no, col)
        perms = []
        for rno, rcol, rs in rows:
            row = tuple(_ints(rno, rcol, rs, k, "letter images"))
            if sorted(row) != list(range(k)):
                raise ParseError(f"{rs!r} is not a permutation of 0..{k - 1}", rno, rcol)
            perms.append(row)
        try:
            gens.append(TreeAutomorphism(k, d, perms))
        except ValueError as e:
            raise ParseError(str(e), no, col) from None
        i += 1 + need
    return gens


def format_pattern(P_: PatternGroup, style: str = "leafperms", numbering: str = LEX) -> str:
    lines = [f"{P_.k} {P_.depth}"]
    if style == "leafperms":
        lines.append("leafperms:")
        lines.extend(P.format_cycles(g.to_leaf_permutation(numbering)) for g in P_.generators)
        return "\n".join(lines) + "\n"
    if style == "generators":
        lines.append("generators:")
        return "\n".join(lines) + "\n" + "".join(format_portrait(g) for g in P_.generators)
    raise ValueError(f"unknown style {style!r}")


def load_pattern(path, numbering: str = LEX) -> PatternGroup:
    return parse_pattern(Path(path).read_text(), numbering)


def catalog_file(name: str):
    """Packaged pattern file such as ``P_123`` from the depth-4 catalog."""
    return resources.files("sftgroups").joinpath("catalog", "depth4", f"{name}.patgrp")


def catalog_text(ijk) -> str:
    from .classify import catalog_cycles, catalog_name

    head = f"# {catalog_name(ijk)} = <a{ijk[0]}, b{ijk[1]}, c{ijk[2]}>\n2 4\nleafperms:\n"
    return head + "\n".join(catalog_cycles(ijk)) + "\n"


def write_catalog(directory) -> list:
    from .classify import CATALOG_TRIPLES, catalog_name

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for t in CATALOG_TRIPLES:
        path = directory / f"{catalog_name(t)}.patgrp"
        path.write_text(catalog_text(t))
        out.append(path)
    return out
