"""Domain files and line-delimited report records.

Domain file::

    {
      "kappa": -1.0,
      "vertices": [
        [0.1, 0.2],
        ...
      ],
      "name": "optional"
    }
"""

from __future__ import annotations

import json
from pathlib import Path

from .cat_verifier import CheckReport
from .domain import DEFAULT_TOL, PolygonDomain, validate
from .errors import GeometryError


class DomainFormatError(GeometryError):
    pass


def parse_domain_data(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DomainFormatError("domain file must hold a JSON object")
    if "kappa" not in data or "vertices" not in data:
        raise DomainFormatError("domain file needs 'kappa' and 'vertices'")
    kappa = data["kappa"]
    if isinstance(kappa, bool) or not isinstance(kappa, (int, float)):
        raise DomainFormatError("'kappa' must be a number")
    verts = data["vertices"]
    if not isinstance(verts, list) or not all(
        isinstance(v, list)
        and len(v) == 2
        and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v)
        for v in verts
    ):
        raise DomainFormatError("'vertices' must be a list of [x, y] number pairs")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise DomainFormatError("'name' must be a string")
    return {"kappa": float(kappa), "vertices": [[float(x), float(y)] for x, y in verts], "name": name}


def parse_domain(text: str, kappa: float | None = None, tol: float = DEFAULT_TOL) -> PolygonDomain:
    data = parse_domain_data(text)
    k = data["kappa"] if kappa is None else kappa
    return validate(data["vertices"], k, tol=tol, name=data["name"])


def load_domain(path, kappa: float | None = None, tol: float = DEFAULT_TOL) -> PolygonDomain:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_domain(text, kappa, tol)


def dump_domain_data(kappa: float, vertices, name: str = "") -> str:
    """Canonical text of a domain file (what ``parse`` round-trips byte for byte)."""
    lines = ["{", f'  "kappa": {json.dumps(float(kappa))},', '  "vertices": [']
    rows = [f"    [{json.dumps(float(x))}, {json.dumps(float(y))}]" for x, y in vertices]
    lines.append(",\n".join(rows))
    if name:
        lines.append("  ],")
        lines.append(f'  "name": {json.dumps(name)}')
    else:
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_domain(domain: PolygonDomain) -> str:
    return dump_domain_data(domain.kappa, domain.vertices, domain.name)


def report_line(report: CheckReport) -> str:
    return json.dumps(report.to_record(), allow_nan=True)


def write_reports(reports, stream) -> None:
    for r in reports:
        stream.write(report_line(r) + "\n")
