"""Batch verification over a corpus of domains and triangles."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from . import fixtures
from .cat_verifier import (
    VERTICES,
    CheckReport,
    GeodesicTriangle,
    alexandrov_angle_estimate,
    angle_equality_check,
    angle_triangle_inequality_check,
    build_triangle,
    cat_check,
    default_scales,
    hull_containment_check,
    limit_outer_angle_estimate,
    vertex_comparison_angle,
)
from .domain import PolygonDomain
from .errors import GeometryError
from .io import load_domain

DEFAULT_TOLERANCES = {
    "cat": 1e-9,
    "hull": 1e-9,
    "angles": 1e-3,
    "monotone": 1e-12,
    "kappa-independence": 1e-4,
    "alexandrov-bound": 1e-3,
    "angle-triangle": 1e-3,
}

BUILTIN_NAMES = ("square", "l-shape", "slit-square", "needle-slit")


class ConfigError(ValueError):
    pass


def default_corpus() -> list[dict]:
    corpus: list[dict] = [
        {"builtin": name, "kappa": kappa} for kappa in (0.0, -1.0) for name in BUILTIN_NAMES
    ]
    corpus.append(
        {
            "random": {
                "count": 6,
                "vertices": [5, 12],
                "kappas": [0.0, -0.5, -1.0],
                "triangles": 2,
            }
        }
    )
    corpus.append(
        {
            "random": {
                "count": 6,
                "kind": "two-opt",
                "vertices": [5, 12],
                "kappas": [0.0, -0.5, -1.0],
                "triangles": 2,
            }
        }
    )
    return corpus


@dataclass
class SuiteConfig:
    seed: int = 42
    corpus: list = field(default_factory=default_corpus)
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    samples: int = 64
    hull_samples: int = 128
    finest_scale: float = 1e-5
    grid: int = 8
    base_dir: Path = field(default_factory=Path.cwd)

    @classmethod
    def from_dict(cls, data: dict, base_dir: Path | None = None) -> "SuiteConfig":
        if not isinstance(data, dict):
            raise ConfigError("suite config must be a JSON object")
        known = {"seed", "corpus", "tolerance", "tolerances", "samples", "hull_samples", "finest_scale", "grid"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        tolerances = dict(DEFAULT_TOLERANCES)
        if "tolerance" in data:
            tolerances = {k: data["tolerance"] for k in tolerances}
        extra = data.get("tolerances", {})
        if not isinstance(extra, dict) or set(extra) - set(DEFAULT_TOLERANCES):
            raise ConfigError(f"tolerances must be an object with keys from {sorted(DEFAULT_TOLERANCES)}")
        tolerances.update(extra)
        cfg = cls(
            seed=data.get("seed", 42),
            corpus=data.get("corpus", default_corpus()),
            tolerances=tolerances,
            samples=data.get("samples", 64),
            hull_samples=data.get("hull_samples", 128),
            finest_scale=data.get("finest_scale", 1e-5),
            grid=data.get("grid", 8),
            base_dir=base_dir or Path.cwd(),
        )
        cfg.check()
        return cfg

    def check(self) -> None:
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError("seed must be an integer")
        for key, tol in self.tolerances.items():
            if not isinstance(tol, (int, float)) or isinstance(tol, bool) or tol < 0:
                raise ConfigError(f"tolerance {key!r} must be a non-negative number")
        for key in ("samples", "hull_samples", "grid"):
            v = getattr(self, key)
            if not isinstance(v, int) or v < 1:
                raise ConfigError(f"{key} must be a positive integer")
        if not isinstance(self.finest_scale, (int, float)) or self.finest_scale <= 0:
            raise ConfigError("finest_scale must be positive")
        if not isinstance(self.corpus, list):
            raise ConfigError("corpus must be a list")
        for entry in self.corpus:
            if not isinstance(entry, dict) or len({"builtin", "file", "random"} & set(entry)) != 1:
                raise ConfigError(f"corpus entry needs exactly one of builtin/file/random: {entry!r}")
            if "random" in entry:
                gen = entry["random"]
                lo, hi = gen.get("vertices", [5, 12])
                if not (isinstance(lo, int) and isinstance(hi, int) and 3 <= lo <= hi):
                    raise ConfigError("random vertex counts must satisfy 3 <= min <= max")
                if gen.get("kind", "star") not in ("star", "convex", "two-opt"):
                    raise ConfigError("random kind must be star, convex or two-opt")
                if any(k > 0 for k in gen.get("kappas", [0.0])):
                    raise ConfigError("curvatures must be <= 0")


# --- corpus expansion -------------------------------------------------------

def random_simple_triangle(rng: random.Random, domain: PolygonDomain, tries: int = 200) -> GeodesicTriangle | None:
    for _ in range(tries):
        pts = [fixtures.random_point_in_triangulation(rng, domain) for _ in range(3)]
        try:
            tri = build_triangle(domain, *pts)
        except GeometryError:
            continue
        if tri.simple and min(tri.side_lengths) > 1e-2:
            return tri
    return None


def _label(kind: str, name: str, kappa: float) -> str:
    return f"{kind}:{name}@k={kappa:g}"


def _expand(cfg: SuiteConfig, rng: random.Random):
    """Yield (label, domain or error, explicit triangles or count)."""
    for entry in cfg.corpus:
        if "builtin" in entry:
            name, kappa = entry["builtin"], float(entry.get("kappa", 0.0))
            label = _label("builtin", name, kappa)
            try:
                domain = fixtures.named_domain(name, kappa)
            except (GeometryError, KeyError) as exc:
                yield label, exc, None
                continue
            triangles = entry.get("triangles")
            if triangles is None and name in fixtures.BUILTIN_TRIANGLES:
                triangles = [fixtures.named_triangle(name, kappa)]
            yield label, domain, triangles if triangles is not None else entry.get("random_triangles", 2)
        elif "file" in entry:
            path = cfg.base_dir / entry["file"]
            kappa = entry.get("kappa")
            label = _label("file", entry["file"], kappa if kappa is not None else float("nan"))
            try:
                domain = load_domain(path, kappa)
            except GeometryError as exc:
                yield label, exc, None
                continue
            label = _label("file", entry["file"], domain.kappa)
            yield label, domain, entry.get("triangles", entry.get("random_triangles", 2))
        else:
            gen = entry["random"]
            lo, hi = gen.get("vertices", [5, 12])
            kappas = gen.get("kappas", [0.0])
            for i in range(gen.get("count", 1)):
                kappa = float(kappas[i % len(kappas)])
                kind = gen.get("kind", "convex" if gen.get("convex") else "star")
                domain = fixtures.random_domain(rng, kappa, lo, hi, kind=kind)
                yield _label("random", f"{kind}-{i}-n{domain.n}", kappa), domain, gen.get("triangles", 2)


def _triangle_checks(cfg: SuiteConfig, tri: GeodesicTriangle, instance: str) -> list[CheckReport]:
    tols = cfg.tolerances
    reports = [cat_check(tri, n_samples=cfg.samples, tol=tols["cat"], instance=instance)]
    if tri.simple:
        reports.append(hull_containment_check(tri, cfg.hull_samples, tols["hull"], instance))
    else:
        reports.append(
            CheckReport("hull", instance, 0, 0.0, tols["hull"], False, {"reason": "non-simple triangle"}, skipped=True)
        )
    for v in VERTICES:
        vi = f"{instance}/{v}"
        sigma, tau = tri.rays(v)
        scales = default_scales((sigma.length, tau.length), finest=cfg.finest_scale)
        eq = angle_equality_check(tri, v, scales, tols["angles"], cfg.grid, instance=vi)
        reports.append(eq)
        outer = limit_outer_angle_estimate(tri, v, scales)
        worst_rise = max([b - a for a, b in zip(outer.values, outer.values[1:])], default=0.0)
        reports.append(
            CheckReport(
                "monotone", vi, len(outer.values), max(0.0, worst_rise), tols["monotone"],
                max(0.0, worst_rise) <= tols["monotone"],
                {"values": list(outer.values)},
            )
        )
        flat = alexandrov_angle_estimate(tri, v, scales, cfg.grid, k_comparison=0.0)
        hyp = alexandrov_angle_estimate(tri, v, scales, cfg.grid, k_comparison=-1.0)
        gap = abs(flat.extrapolated - hyp.extrapolated)
        reports.append(
            CheckReport(
                "kappa-independence", vi, 2, gap, tols["kappa-independence"], gap <= tols["kappa-independence"],
                {"alexandrov_k0": flat.extrapolated, "alexandrov_k-1": hyp.extrapolated},
            )
        )
        own = alexandrov_angle_estimate(tri, v, scales, cfg.grid)
        bound = vertex_comparison_angle(tri, v)
        over = max(0.0, own.extrapolated - bound)
        reports.append(
            CheckReport(
                "alexandrov-bound", vi, 1, over, tols["alexandrov-bound"], over <= tols["alexandrov-bound"],
                {"alexandrov": own.extrapolated, "comparison_angle": bound},
            )
        )
    mid = tri.sides[1].evaluate(0.5 * tri.sides[1].length)
    reports.append(
        angle_triangle_inequality_check(
            tri.domain, tri.p, [tri.q, tri.r, mid], grid=cfg.grid, tol=tols["angle-triangle"],
            instance=f"{instance}/p",
        )
    )
    return reports


def run_suite(config: SuiteConfig | None = None) -> list[CheckReport]:
    """Run every check over the corpus; deterministic for a fixed seed."""
    cfg = config or SuiteConfig()
    rng = random.Random(cfg.seed)
    reports: list[CheckReport] = []
    for label, domain, triangles in _expand(cfg, rng):
        if isinstance(domain, Exception):
            code = getattr(domain, "code", type(domain).__name__)
            reports.append(
                CheckReport("validate", label, 0, 0.0, 0.0, False, {"error": code, "message": str(domain)}, skipped=True)
            )
            continue
        if isinstance(triangles, int):
            built = []
            for _ in range(triangles):
                tri = random_simple_triangle(rng, domain)
                if tri is not None:
                    built.append(tri)
        else:
            built = []
            for pts in triangles:
                try:
                    built.append(build_triangle(domain, *pts))
                except GeometryError as exc:
                    reports.append(
                        CheckReport("triangle", label, 0, 0.0, 0.0, False, {"error": exc.code, "message": str(exc)})
                    )
        for k, tri in enumerate(built):
            try:
                reports.extend(_triangle_checks(cfg, tri, f"{label}/t{k}"))
            except GeometryError as exc:
                reports.append(
                    CheckReport("triangle", f"{label}/t{k}", 0, 0.0, 0.0, False, {"error": exc.code, "message": str(exc)})
                )
    return reports
