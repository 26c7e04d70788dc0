"""Reports: a fixed envelope around per-command results, rendered as sorted
JSON (machine) or ``key: value`` lines (human), plus the bigraded figure."""

from __future__ import annotations

import json

from .linalg import GradedVectorSpace

SCHEMA_VERSION = 1
COMMANDS = ("kh", "jones", "arc-algebra", "bimodule", "glue-check", "handle1", "handle2",
            "handle3", "handle4", "selftest")

_PAIRS = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
}
_RECORDS = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
}


def _result(required: list[str], **props) -> dict:
    return {"type": "object", "required": required, "properties": props}


_RESULTS = {
    "kh": _result(["dims", "poincare", "total"], dims=_RECORDS, poincare={"type": "string"},
                  total={"type": "integer"}, crossings={"type": "integer"},
                  writhe={"type": "integer"}, euler=_PAIRS),
    "jones": _result(["jones", "coefficients"], jones={"type": "string"},
                     coefficients=_PAIRS),
    "arc-algebra": _result(["n", "dims", "total", "units", "associative"], n={"type": "integer"},
                           dims=_RECORDS, total={"type": "integer"},
                           units={"type": "boolean"}, associative={"type": "boolean"}),
    "bimodule": _result(["dims", "total", "axioms"], dims=_RECORDS, total={"type": "integer"},
                        axioms={"type": "boolean"}),
    "glue-check": _result(["pass", "lhs_dims", "rhs_dims"], **{"pass": {"type": "boolean"}},
                          lhs_dims=_RECORDS, rhs_dims=_RECORDS),
    "handle1": _result(["dims", "poincare", "paths_agree"], dims=_RECORDS,
                       poincare={"type": "string"}, paths_agree={"type": "boolean"}),
    "handle2": _result(["truncation", "generator_dims", "quotient_dims", "relation_ranks",
                        "stabilization", "checks"],
                       truncation={"type": "integer"}, generator_dims=_RECORDS,
                       quotient_dims=_RECORDS, relation_ranks=_RECORDS,
                       stabilization={"type": "array"}, checks={"type": "object"}),
    "handle3": _result(["dims", "poincare"], dims=_RECORDS, poincare={"type": "string"}),
    "handle4": _result(["dims", "poincare"], dims=_RECORDS, poincare={"type": "string"}),
    "selftest": _result(["criteria", "pass"], criteria={"type": "array"},
                        **{"pass": {"type": "boolean"}}),
}

REPORT_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "lasagna report",
    "type": "object",
    "required": ["tool", "schema_version", "command", "theory", "field", "result"],
    "additionalProperties": False,
    "properties": {
        "tool": {"const": "lasagna"},
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": list(COMMANDS)},
        "theory": {"type": "string"},
        "field": {"type": "string"},
        "result": {"type": "object"},
    },
    "allOf": [
        {"if": {"properties": {"command": {"const": c}}}, "then": {"properties": {"result": s}}}
        for c, s in _RESULTS.items()
    ],
}


def envelope(command: str, theory: str, field: str, result: dict) -> dict:
    return {"tool": "lasagna", "schema_version": SCHEMA_VERSION, "command": command,
            "theory": theory, "field": field, "result": result}


def dims_result(v: GradedVectorSpace) -> dict:
    return {"dims": v.to_records(), "poincare": v.poincare(), "total": v.total}


def validate(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if the report does not fit the schema."""
    import jsonschema

    jsonschema.validate(report, REPORT_SCHEMA)


def render(report: dict, fmt: str = "human") -> str:
    if fmt == "machine":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = [f"command: {report['command']}", f"theory: {report['theory']}",
             f"field: {report['field']}"]
    for key in sorted(report["result"]):
        val = report["result"][key]
        if isinstance(val, bool):
            text = "true" if val else "false"
        elif isinstance(val, (str, int)):
            text = str(val)
        else:
            text = json.dumps(val, sort_keys=True)
        lines.append(f"{key}: {text}")
    return "\n".join(lines) + "\n"


def save_figure(v: GradedVectorSpace, path: str, title: str = "") -> None:
    """Grid of bigraded dimensions: homological degree across, quantum degree up."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    dims = v.dims
    ts = sorted({i for i, _ in dims}) or [0]
    qs = sorted({q for _, q in dims}) or [0]
    fig, ax = plt.subplots(figsize=(1 + 0.6 * len(ts), 1 + 0.4 * len(qs)))
    for (i, q), n in dims.items():
        ax.text(ts.index(i), qs.index(q), str(n), ha="center", va="center")
    ax.set_xticks(range(len(ts)), [str(t) for t in ts])
    ax.set_yticks(range(len(qs)), [str(q) for q in qs])
    ax.set_xlim(-0.5, len(ts) - 0.5)
    ax.set_ylim(-0.5, len(qs) - 0.5)
    ax.set_xlabel("t (homological)")
    ax.set_ylabel("q (quantum)" if v.graded else "q (ungraded, 0)")
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def schema_text() -> str:
    return json.dumps(REPORT_SCHEMA, sort_keys=True, indent=2) + "\n"
