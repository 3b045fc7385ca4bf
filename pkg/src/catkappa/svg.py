"""SVG debug drawings of domains, geodesics and bend markers.

Model coordinates are drawn directly, so Klein geodesics stay straight.
"""

from __future__ import annotations

from xml.sax.saxutils import escape as _text, quoteattr

from .domain import PolygonDomain
from .intrinsic_geodesics import IntrinsicPath

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e")


def _bounds(domain: PolygonDomain, paths) -> tuple[float, float, float, float]:
    pts = list(domain.vertices) + [w for p in paths for w in p.waypoints]
    if domain.kappa < 0:
        pts += [(-1.0, -1.0), (1.0, 1.0)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def render(
    domain: PolygonDomain,
    paths: list[IntrinsicPath] = (),
    labels: list[str] | None = None,
    points: dict[str, tuple[float, float]] | None = None,
    size: int = 600,
) -> str:
    """One <path> per geodesic, one <circle> per bend, y axis pointing up."""
    x0, y0, x1, y1 = _bounds(domain, list(paths))
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = 0.05 * span
    x0, y0, span = x0 - pad, y0 - pad, span + 2 * pad
    scale = size / span
    stroke = 1.5 / scale

    # flip y inside the viewBox so the drawing is not mirrored
    top = 2 * y0 + span

    def fx(p):
        return f"{p[0]:.9g}"

    def fy(p):
        return f"{top - p[1]:.9g}"

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="{x0:.9g} {y0:.9g} {span:.9g} {span:.9g}">',
        f"<title>{_text(domain.name or 'domain')} (kappa={domain.kappa:g})</title>",
    ]
    if domain.kappa < 0:
        out.append(
            f'<circle cx="0" cy="{top:.9g}" r="1" fill="none" stroke="#999999" '
            f'stroke-width="{stroke:.6g}" stroke-dasharray="{4 * stroke:.6g}"/>'
        )
    poly = " ".join(f"{fx(v)},{fy(v)}" for v in domain.vertices)
    out.append(f'<polygon points="{poly}" fill="#eeeeee" stroke="#333333" stroke-width="{stroke:.6g}"/>')
    for k, path in enumerate(paths):
        color = PALETTE[k % len(PALETTE)]
        d = "M " + " L ".join(f"{fx(w)} {fy(w)}" for w in path.waypoints)
        label = labels[k] if labels and k < len(labels) else f"geodesic-{k}"
        out.append(
            f'<path id={quoteattr(label)} d="{d}" fill="none" stroke="{color}" '
            f'stroke-width="{2 * stroke:.6g}"/>'
        )
        for b in path.bends:
            out.append(
                f'<circle class="bend" cx="{fx(b)}" cy="{fy(b)}" r="{4 * stroke:.6g}" fill="{color}"/>'
            )
    for name, p in (points or {}).items():
        out.append(f'<circle class="point" cx="{fx(p)}" cy="{fy(p)}" r="{3 * stroke:.6g}" fill="#000000"/>')
        out.append(
            f'<text x="{fx(p)}" y="{fy(p)}" font-size="{12 * stroke:.6g}" dx="{4 * stroke:.6g}">{_text(name)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
