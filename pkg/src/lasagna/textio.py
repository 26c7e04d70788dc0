"""Text format for diagrams, plus JSON inputs for modules and relations.

Diagram documents are ``key: value`` lines; ``#`` starts a comment and a
value may continue on indented lines that follow.  Keys:

    crossings:    (a, b, c, d) (e, f, g, h) ...   PD 4-tuples
    top:          labels of the top boundary points, left to right
    bottom:       labels of the bottom boundary points, left to right
    components:   labels of crossingless closed components
    orientations: (label, +1|-1) ...   +1: the arc runs from its first
                  occurrence to its second (crossing slots in order, then
                  top, then bottom)
    framing:      integer

Every key is optional and may appear once.  Values are integers only.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .diagram import DiagramError, TangleDiagram, from_pd
from .linalg import Field, GradedVectorSpace, SparseMatrix

KEYS = ("crossings", "top", "bottom", "components", "orientations", "framing")

_TOKEN = re.compile(r"\s*(?:(?P<int>[+-]?\d+)|(?P<open>\()|(?P<close>\))|(?P<comma>,)|(?P<bad>\S))")


class ParseError(DiagramError):
    """Syntax error at a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}", "syntax")
        self.line, self.column = line, column


def _tokens(text: str, line: int, col0: int):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastgroup) if m.lastgroup else m.end()
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", line, col0 + start + 1)
        if m.lastgroup:
            yield m.lastgroup, m.group(m.lastgroup), line, col0 + start + 1
        pos = m.end()


def _values(toks: list) -> list:
    """Flat integers and parenthesized integer groups, commas optional."""
    out: list = []
    group = None
    for kind, val, line, col in toks:
        if kind == "comma":
            continue
        if kind == "open":
            if group is not None:
                raise ParseError("nested parentheses", line, col)
            group = []
        elif kind == "close":
            if group is None:
                raise ParseError("unmatched ')'", line, col)
            out.append(tuple(group))
            group = None
        else:
            (group if group is not None else out).append(int(val))
    if group is not None:
        kind, val, line, col = toks[-1]
        raise ParseError("unclosed '('", line, col + 1)
    return out


def parse_fields(text: str) -> dict[str, list]:
    fields: dict[str, list] = {}
    where: dict[str, tuple[int, int]] = {}
    current = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if line[0] in " \t":
            if current is None:
                raise ParseError("continuation line without a key", ln, 1)
            fields[current].extend(_tokens(line, ln, 0))
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", ln, 1)
        key = key.strip()
        if key not in KEYS:
            raise ParseError(f"unknown key {key!r}", ln, 1)
        if key in fields:
            raise ParseError(f"key {key!r} given twice", ln, 1)
        current = key
        where[key] = (ln, 1)
        fields[key] = list(_tokens(rest, ln, len(key) + 1))
    out = {}
    for key, toks in fields.items():
        vals = _values(toks)
        ln, col = where[key]
        if key in ("top", "bottom", "components", "framing"):
            if any(isinstance(v, tuple) for v in vals):
                raise ParseError(f"{key} takes plain integers", ln, col)
        elif any(not isinstance(v, tuple) for v in vals):
            raise ParseError(f"{key} takes parenthesized tuples", ln, col)
        if key == "framing" and len(vals) != 1:
            raise ParseError("framing takes one integer", ln, col)
        if key == "crossings":
            for v in vals:
                if len(v) != 4:
                    raise ParseError(f"crossing {v} does not have 4 slots", ln, col)
        if key == "orientations":
            for v in vals:
                if len(v) != 2 or v[1] not in (1, -1):
                    raise ParseError("orientations are (label, +1|-1) pairs", ln, col)
        out[key] = vals
    return out


def parse_diagram(text: str) -> TangleDiagram:
    f = parse_fields(text)
    orient = {lab: s for lab, s in f.get("orientations", [])}
    crossings = f.get("crossings", [])
    # label rules first, so orientation inference only sees well-formed input
    TangleDiagram(crossings, f.get("top", []), f.get("bottom", []), f.get("components", []),
                  None, [1] * len(crossings))
    return from_pd(f.get("crossings", []), f.get("top", []), f.get("bottom", []),
                   f.get("components", []), orient, f.get("framing", [0])[0])


def _group(t) -> str:
    return "(" + ", ".join(str(x) for x in t) + ")"


def serialize_diagram(d: TangleDiagram) -> str:
    if d.heads is None:
        raise DiagramError("only oriented diagrams can be written", "orientation")
    lines = []
    if d.crossings:
        lines.append("crossings: " + " ".join(_group(c) for c in d.crossings))
    if d.top:
        lines.append("top: " + " ".join(map(str, d.top)))
    if d.bottom:
        lines.append("bottom: " + " ".join(map(str, d.bottom)))
    if d.loops:
        lines.append("components: " + " ".join(map(str, d.loops)))
    ors = []
    for lab in sorted(set(d.arcs()) - set(d.loops)):
        ends = d.endpoints(lab)
        ors.append((lab, 1 if d.head(lab) == ends[1] else -1))
    if ors:
        lines.append("orientations: " + " ".join(_group(o) for o in ors))
    lines.append(f"framing: {d.framing}")
    return "\n".join(lines) + "\n"


def read_diagram(path: str) -> TangleDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


# -- module and relation files (JSON) -----------------------------------------------------

def parse_module(data: Any) -> GradedVectorSpace:
    """``{"dims": [[i, q, n], ...], "graded": true}``."""
    if not isinstance(data, dict) or not isinstance(data.get("dims"), list):
        raise ValueError("module file needs a 'dims' list of [i, q, n] records")
    recs = data["dims"]
    for r in recs:
        if not (isinstance(r, list) and len(r) == 3 and all(isinstance(x, int) for x in r)):
            raise ValueError(f"bad module record {r!r}")
    return GradedVectorSpace({(i, q): n for i, q, n in recs}, bool(data.get("graded", True)))


def parse_relations(data: Any, field: Field) -> list:
    """``{"relations": [{"epsilon": e, "blocks": [{"degree": [i, q], "matrix": rows}]}]}``."""
    from .handles import ModuleRelation

    if not isinstance(data, dict) or not isinstance(data.get("relations"), list):
        raise ValueError("relations file needs a 'relations' list")
    out = []
    for rel in data["relations"]:
        blocks = {}
        for b in rel.get("blocks", []):
            deg = tuple(b["degree"])
            rows = b["matrix"]
            if len(deg) != 2 or not all(isinstance(x, int) for x in deg):
                raise ValueError(f"bad degree {b['degree']!r}")
            width = len(rows[0]) if rows else 0
            if any(len(r) != width for r in rows):
                raise ValueError(f"ragged matrix at degree {deg}")
            blocks[deg] = SparseMatrix.from_dense([[field(x) for x in r] for r in rows], field, width)
        out.append(ModuleRelation(blocks, field(rel.get("epsilon", 0))))
    return out


def load_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
