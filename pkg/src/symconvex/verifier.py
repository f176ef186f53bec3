"""Monte Carlo verification of Phi(Ha) = conv(W.X) + Gamma.

``run_verification`` is a pure function of its config (and the code): all
randomness comes from child streams of one ``SeedSequence``, spawned in a
fixed order whatever checks are enabled.
"""
from __future__ import annotations

import configparser
import csv
import dataclasses
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .convex_kernel import (
    Verdict, all_local_cones, build_model, distance_to_cone, distance_to_hull_plus_cone,
    dominant_vertex, is_proper_cone, membership_intersection, membership_minkowski,
    positive_cone,
)
from .lie_core import IwasawaError, build_realization, exp_g, phi
from .poisson_checks import (
    IllConditionedRank, check_manin_triple, fixed_point_check, leaf_dimensions,
    moment_identity_residual, orbit_point, pi_sharp_antisymmetry, sample_h,
)
from .restricted_roots import compute_root_datum

log = logging.getLogger(__name__)

CHECKS = ("membership", "vertices", "local_cones", "oracle_equiv", "poisson", "escape")
SECTIONS = ("config", "membership", "vertices", "local_cones", "oracle_equiv",
            "poisson", "escape", "timing")

EXIT_OK, EXIT_VIOLATION, EXIT_NUMERICAL = 0, 2, 3
NUMERICAL_FAILURE_RATE = 1e-3

STRUCTURAL_TOL = 1e-12
VERTEX_TOL = 1e-8
MOMENT_TOL = 1e-8


@dataclass
class VerificationConfig:
    preset: str = "compact"
    n: int = 3
    p: int | None = None
    q: int | None = None
    base_point: tuple = (2.0, 1.0)
    samples: int = 10_000
    scale: float = 0.7
    seed: int = 42
    tol: float = 1e-8
    window: float | None = None       # probe box half-width; default 2 |X|
    checks: tuple = CHECKS
    out_path: str | None = None
    format: str = "json"
    probes: int = 1000                # oracle-equivalence probe count
    local_radius: float = 0.1
    local_probes: int = 200           # near-vertex samples per vertex
    poisson_points: int = 20
    moment_samples: int = 100
    escape_samples: int = 500
    record_samples: bool = False
    coverage: bool = True             # grid-coverage statistic for 2-D a^{-tau}
    jobs: int = 1

    def __post_init__(self):
        self.base_point = tuple(float(x) for x in self.base_point)
        self.checks = tuple(self.checks)
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ValueError(f"unknown checks {sorted(bad)}; choose from {CHECKS}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    def to_dict(self):
        d = dataclasses.asdict(self)
        d["base_point"] = list(self.base_point)
        d["checks"] = list(self.checks)
        d.pop("jobs")
        return d


_CONFIG_TYPES = {f.name: f.type for f in dataclasses.fields(VerificationConfig)}
_KEY_ALIASES = {"out": "out_path", "base-point": "base_point"}


def parse_config_value(key, raw):
    key = _KEY_ALIASES.get(key, key.replace("-", "_"))
    if key not in _CONFIG_TYPES:
        raise ValueError(f"unknown config key {key!r}")
    raw = str(raw).strip()
    if key in ("base_point", "checks"):
        parts = [s.strip() for s in raw.split(",") if s.strip()]
        return key, tuple(float(s) for s in parts) if key == "base_point" else tuple(parts)
    if key in ("p", "q", "window", "out_path") and raw.lower() in ("", "none"):
        return key, None
    if key in ("n", "p", "q", "samples", "seed", "probes", "local_probes", "poisson_points",
               "moment_samples", "escape_samples", "jobs"):
        return key, int(raw)
    if key in ("scale", "tol", "window", "local_radius"):
        return key, float(raw)
    if key in ("record_samples", "coverage"):
        return key, raw.lower() in ("1", "true", "yes", "on")
    return key, raw


def load_config_file(path):
    """Flat ``key = value`` file (INI-style, no section header needed)."""
    text = Path(path).read_text()
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    cp.read_string("[verify]\n" + text)
    return dict(parse_config_value(k, v) for k, v in cp["verify"].items())


# --------------------------------------------------------------------------
# report


@dataclass
class SampleReport:
    config: dict
    membership: dict = field(default_factory=dict)
    vertices: dict = field(default_factory=dict)
    local_cones: dict = field(default_factory=dict)
    oracle_equiv: dict = field(default_factory=dict)
    poisson: dict = field(default_factory=dict)
    escape: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    records: list = field(default_factory=list, repr=False)
    model: dict = field(default_factory=dict, repr=False)

    def to_dict(self, include_records=None):
        include = self.config.get("record_samples", False) if include_records is None else include_records
        out = {k: getattr(self, k) for k in SECTIONS}
        if include:
            out["membership"] = dict(self.membership, records=self.records)
        return _jsonable(out)

    @classmethod
    def from_dict(cls, d):
        mem = dict(d.get("membership", {}))
        records = mem.pop("records", [])
        kw = {k: d.get(k, {}) for k in SECTIONS}
        kw["membership"] = mem
        return cls(records=records, **kw)

    @property
    def exit_code(self):
        return self.timing.get("exit_code", EXIT_OK)

    def summary_lines(self):
        lines = []
        for k in SECTIONS[1:-1]:
            sec = getattr(self, k)
            if sec:
                status = sec.get("status", "pass" if sec.get("passed") else "FAIL")
                lines.append(f"{k:13s} {status}")
        return lines


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if np.isnan(x) or np.isinf(x):
            return None if np.isnan(x) else ("inf" if x > 0 else "-inf")
        return x
    if isinstance(x, Verdict):
        return x.value
    return x


# --------------------------------------------------------------------------
# accumulation (commutative, associative)


@dataclass
class MembershipAccumulator:
    count: int = 0
    inside: int = 0
    boundary: int = 0
    outside: int = 0
    indeterminate: int = 0
    max_violation: float = 0.0
    outside_hull_only: int = 0
    global_violations: int = 0
    global_max_slack: float = 0.0
    max_norm: float = 0.0

    def add(self, rec):
        self.count += 1
        v = rec["verdict"]
        setattr(self, v, getattr(self, v) + 1)
        if v != "inside":
            self.max_violation = max(self.max_violation, rec["slack"])
        self.outside_hull_only += int(rec.get("outside_hull_only", False))
        gs = rec.get("global_slack", 0.0)
        self.global_max_slack = max(self.global_max_slack, gs)
        self.global_violations += int(rec.get("global_violation", False))
        self.max_norm = max(self.max_norm, float(np.linalg.norm(rec["phi"])))
        return self

    def merge(self, other):
        out = MembershipAccumulator()
        for f in dataclasses.fields(self):
            a, b = getattr(self, f.name), getattr(other, f.name)
            setattr(out, f.name, max(a, b) if isinstance(a, float) else a + b)
        return out


def accumulate(records):
    acc = MembershipAccumulator()
    for r in records:
        acc.add(r)
    return acc


# --------------------------------------------------------------------------
# context shared by worker processes


@dataclass(eq=False)
class _Context:
    real: object
    datum: object
    model: object
    X: np.ndarray
    a: np.ndarray
    tol: float
    dominant: np.ndarray
    gamma_plus: np.ndarray
    hull_only: bool
    cones: list
    local_radius: float


def _evaluate(ctx, index, y):
    mem = membership_minkowski(y, ctx.model)
    rec = {"index": index, "phi": y.tolist(), "verdict": mem.verdict.value, "slack": mem.slack}
    if ctx.hull_only and mem.verdict is Verdict.INSIDE:
        d, *_ = distance_to_hull_plus_cone(y, ctx.model.vertices, [])
        rec["outside_hull_only"] = bool(d > 10 * ctx.tol)
    gd, _ = distance_to_cone(y - ctx.dominant, ctx.gamma_plus)
    rec["global_slack"] = gd
    rec["global_violation"] = bool(gd > ctx.tol)
    dists = [np.linalg.norm(y - lc.apex) for lc in ctx.cones]
    j = int(np.argmin(dists))
    if dists[j] < ctx.local_radius:
        ld, _ = distance_to_cone(y - ctx.cones[j].apex, ctx.cones[j].generators)
        rec["local_vertex"] = j
        rec["local_slack"] = ld
    return rec


def _phi_batch(real, a, hs):
    out, failed = [], []
    for i, h in hs:
        try:
            out.append((i, phi(real, h @ a)))
        except (IwasawaError, np.linalg.LinAlgError, FloatingPointError):
            failed.append(i)
    return out, failed


def _eval_chunk(args):
    ctx, hs = args
    vals, failed = _phi_batch(ctx.real, ctx.a, hs)
    return [_evaluate(ctx, i, y) for i, y in vals], failed


def sample_phi(real, a, count, scale, seed, identity_first=False):
    """Phi(h a) for ``count`` draws of h; deterministic in ``seed``.

    Returns ``(values, failed_indices)``; ``values`` is an array of shape
    ``(count - len(failed), r)``.
    """
    rng = np.random.default_rng(seed)
    hs = []
    for i in range(count):
        if identity_first and i == 0:
            hs.append((i, np.eye(real.n, dtype=np.complex128)))
        else:
            hs.append((i, sample_h(real, rng, scale)))
    vals, failed = _phi_batch(real, a, hs)
    arr = np.array([v for _, v in vals]).reshape(-1, real.rank_minus)
    return arr, failed


def _draw_hs(real, rng, count, scale):
    return [(i, sample_h(real, rng, scale)) for i in range(count)]


def _map_chunks(ctx, hs, jobs):
    if jobs <= 1 or len(hs) < 200:
        return [_eval_chunk((ctx, hs))]
    size = -(-len(hs) // (4 * jobs))
    chunks = [(ctx, hs[i:i + size]) for i in range(0, len(hs), size)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_eval_chunk, chunks))


# --------------------------------------------------------------------------


def run_verification(config):
    """Run the selected checks and return a :class:`SampleReport`."""
    cfg = config
    t_start = time.perf_counter()
    timing = {}

    t0 = time.perf_counter()
    real = build_realization(cfg.preset, cfg.n, cfg.p, cfg.q)
    datum = compute_root_datum(real)
    X = np.asarray(cfg.base_point, dtype=float)
    if len(X) != real.rank_minus:
        raise ValueError(f"base point needs {real.rank_minus} coordinates, got {len(X)}")
    model = build_model(datum, X, cfg.tol)
    cones = all_local_cones(model, datum)
    timing["setup"] = time.perf_counter() - t0

    streams = np.random.SeedSequence(cfg.seed).spawn(6)
    rng_members, rng_local, rng_oracle, rng_poisson, rng_escape, rng_vertex = (
        np.random.default_rng(s) for s in streams)

    a = exp_g(real.a_minus_matrix(X))
    ctx = _Context(
        real=real, datum=datum, model=model, X=X, a=a, tol=cfg.tol,
        dominant=dominant_vertex(model, datum), gamma_plus=positive_cone(datum),
        hull_only=len(model.cone_gens) > 0, cones=cones, local_radius=cfg.local_radius,
    )
    report = SampleReport(config=cfg.to_dict())
    report.model = {"realization": real.summary(), "roots": datum.to_dict(), **model.to_dict()}
    failures = 0
    fail_rate = 0.0

    if "membership" in cfg.checks or "local_cones" in cfg.checks:
        t0 = time.perf_counter()
        hs = _draw_hs(real, rng_members, cfg.samples, cfg.scale)
        recs, failed = [], []
        for r_, f_ in _map_chunks(ctx, hs, cfg.jobs):
            recs += r_
            failed += f_
        recs.sort(key=lambda r: r["index"])
        failures = len(failed)
        fail_rate = failures / cfg.samples
        report.records = recs
        timing["sampling"] = time.perf_counter() - t0
        if "membership" in cfg.checks:
            report.membership = _membership_section(ctx, recs, failed, cfg)

    if "vertices" in cfg.checks:
        t0 = time.perf_counter()
        report.vertices = _vertex_section(real, datum, model, X, rng_vertex)
        timing["vertices"] = time.perf_counter() - t0

    if "local_cones" in cfg.checks:
        t0 = time.perf_counter()
        report.local_cones = _local_cone_section(ctx, report.records, rng_local, cfg)
        timing["local_cones"] = time.perf_counter() - t0

    if "oracle_equiv" in cfg.checks:
        t0 = time.perf_counter()
        report.oracle_equiv = _oracle_section(ctx, rng_oracle, cfg)
        timing["oracle_equiv"] = time.perf_counter() - t0

    if "poisson" in cfg.checks:
        t0 = time.perf_counter()
        report.poisson = _poisson_section(real, X, rng_poisson, cfg)
        timing["poisson"] = time.perf_counter() - t0

    if "escape" in cfg.checks:
        t0 = time.perf_counter()
        report.escape = _escape_section(real, model, a, rng_escape, cfg)
        timing["escape"] = time.perf_counter() - t0

    sections = [getattr(report, k) for k in SECTIONS[1:-1]]
    violated = any(s and s.get("passed") is False for s in sections)
    if fail_rate > NUMERICAL_FAILURE_RATE:
        code = EXIT_NUMERICAL
    elif violated:
        code = EXIT_VIOLATION
    else:
        code = EXIT_OK
    timing["total"] = time.perf_counter() - t_start
    timing["backend"] = _kernels.BACKEND
    timing["exit_code"] = code
    timing["numerical_failures"] = failures
    report.timing = timing
    return report


def _membership_section(ctx, recs, failed, cfg):
    acc = accumulate(recs)
    n_ok = acc.count
    out = {
        "samples": cfg.samples,
        "evaluated": n_ok,
        "excluded": len(failed),
        "excluded_indices": failed[:100],
        "inside_count": acc.inside,
        "boundary_count": acc.boundary,
        "outside_count": acc.outside,
        "indeterminate_count": acc.indeterminate,
        "inside_rate": acc.inside / n_ok if n_ok else 0.0,
        "max_membership_violation": acc.max_violation,
        "outside_hull_only_count": acc.outside_hull_only,
        "cone_part_exercised": acc.outside_hull_only > 0,
        "global_cone": {
            "dominant_vertex": ctx.dominant.tolist(),
            "violations": acc.global_violations,
            "max_slack": acc.global_max_slack,
        },
        "max_phi_norm": acc.max_norm,
        "model": ctx.model.to_dict(),
    }
    if cfg.coverage and ctx.model.dim == 2 and n_ok:
        out["coverage"] = _coverage(ctx, np.array([r["phi"] for r in recs]), cfg)
    out["passed"] = bool(n_ok > 0 and acc.inside == n_ok and acc.global_violations == 0)
    return out


def _probe_window(ctx, cfg):
    center = ctx.model.vertices.mean(axis=0)
    radius = cfg.window if cfg.window is not None else 2.0 * float(np.linalg.norm(ctx.X))
    return center, max(radius, 1e-3)


def _coverage(ctx, pts, cfg, spacing=0.05, reach=0.05):
    """Fraction of grid points of model-within-window lying within ``reach`` of a sample.

    Evidence for the reverse inclusion only; meaningful from about 1e5 samples.
    """
    from scipy.spatial import cKDTree

    center, radius = _probe_window(ctx, cfg)
    axes = [np.arange(c - radius, c + radius + 1e-12, spacing) for c in center]
    grid = np.array(np.meshgrid(*axes, indexing="ij")).reshape(len(center), -1).T
    inside = np.array([
        distance_to_hull_plus_cone(g, ctx.model.vertices, ctx.model.cone_gens)[0] <= ctx.tol
        for g in grid], dtype=bool)
    grid = grid[inside]
    if len(grid) == 0:
        return {"grid_points": 0, "covered_fraction": None}
    d, _ = cKDTree(pts).query(grid)
    return {
        "grid_points": int(len(grid)),
        "spacing": spacing,
        "reach": reach,
        "covered_fraction": float(np.mean(d <= reach)),
        "max_gap": float(d.max()),
    }


def _vertex_section(real, datum, model, X, rng):
    per_w = [fixed_point_check(real, datum, w, X, rng=rng) for w in range(len(datum.weyl_elements))]
    done = [r for r in per_w if not r["skipped"]]
    max_err = max((r["vertex_error"] for r in done), default=np.inf)
    max_t = max((r["t_fixed_error"] for r in done), default=np.inf)
    fid = max(datum.rep_fidelity) if datum.rep_fidelity else np.inf
    attained = []
    for v in model.vertices:
        attained.append(any(np.abs(np.array(r["phi"]) - v).max() < VERTEX_TOL for r in done))
    return {
        "weyl_order": len(datum.weyl_elements),
        "per_element": per_w,
        "skipped": len(per_w) - len(done),
        "max_vertex_error": max_err,
        "max_t_fixed_error": max_t,
        "max_rep_fidelity": fid,
        "all_vertices_attained": all(attained),
        "passed": bool(len(done) == len(per_w) and max_err < VERTEX_TOL
                       and max_t < VERTEX_TOL and fid < VERTEX_TOL and all(attained)),
    }


def _local_cone_section(ctx, recs, rng, cfg):
    cones = ctx.cones
    tested = [0] * len(cones)
    viol = [0] * len(cones)
    worst = 0.0

    def tally(rec):
        nonlocal worst
        j = rec.get("local_vertex")
        if j is None:
            return
        tested[j] += 1
        worst = max(worst, rec["local_slack"])
        if rec["local_slack"] > ctx.tol:
            viol[j] += 1

    for r in recs:
        tally(r)
    # probes k_w h a with h near 1; Phi is very sensitive near some vertices,
    # so the scale of h is drawn log-uniformly
    probe_fail = 0
    for j, lc in enumerate(cones):
        rep = ctx.datum.weyl_reps[lc.weyl_index]
        if rep is None:
            continue
        scales = 10.0 ** rng.uniform(-4.0, -1.0, cfg.local_probes)
        hs = [(i, rep @ sample_h(ctx.real, rng, s)) for i, s in enumerate(scales)]
        vals, failed = _phi_batch(ctx.real, ctx.a, hs)
        probe_fail += len(failed)
        for i, y in vals:
            if np.linalg.norm(y - lc.apex) < ctx.local_radius:
                d, _ = distance_to_cone(y - lc.apex, lc.generators)
                tally({"local_vertex": j, "local_slack": d})
    proper = [is_proper_cone(lc.generators) for lc in cones]
    return {
        "radius": ctx.local_radius,
        "cones": [
            {"apex": lc.apex.tolist(), "generators": lc.generators.tolist(),
             "proper": p, "tested": t, "violations": v}
            for lc, p, t, v in zip(cones, proper, tested, viol)
        ],
        "tested_total": sum(tested),
        "violations_total": sum(viol),
        "max_slack": worst,
        "probe_failures": probe_fail,
        "passed": bool(sum(viol) == 0 and all(t > 0 for t in tested)),
    }


def _oracle_section(ctx, rng, cfg):
    center, radius = _probe_window(ctx, cfg)
    proper = [lc for lc in ctx.cones if is_proper_cone(lc.generators)]
    counts = {"agree": 0, "band": 0, "disagree": 0, "indeterminate": 0}
    examples = []
    band = 10 * ctx.tol
    inside_m = 0
    for k in range(cfg.probes):
        y = center + rng.uniform(-radius, radius, size=len(center))
        m1 = membership_minkowski(y, ctx.model, band=band)
        m2 = membership_intersection(y, proper, tol=ctx.tol, band=band)
        v1, v2 = m1.verdict, m2.verdict
        inside_m += v1 is Verdict.INSIDE
        if Verdict.INDETERMINATE in (v1, v2):
            counts["indeterminate"] += 1
        elif v1 == v2:
            counts["agree"] += 1
        elif Verdict.BOUNDARY in (v1, v2):
            counts["band"] += 1
        else:
            counts["disagree"] += 1
            if len(examples) < 10:
                examples.append({"y": y.tolist(), "minkowski": v1.value, "intersection": v2.value,
                                 "slack_minkowski": m1.slack, "slack_intersection": m2.slack})
    return {
        "probes": cfg.probes,
        "center": center.tolist(),
        "radius": radius,
        "proper_cones": len(proper),
        "improper_cones": len(ctx.cones) - len(proper),
        "inside_fraction": inside_m / cfg.probes if cfg.probes else 0.0,
        **counts,
        "disagreement_examples": examples,
        "passed": bool(counts["disagree"] == 0 and counts["indeterminate"] == 0),
    }


def _poisson_section(real, X, rng, cfg):
    manin = check_manin_triple(real)
    expected = real.rank_plus
    codims, anti, resampled = [], 0.0, 0
    while len(codims) < cfg.poisson_points:
        pt = orbit_point(real, sample_h(real, rng, cfg.scale), X)
        try:
            orbit, leaf = leaf_dimensions(real, pt)
        except IllConditionedRank:
            resampled += 1
            if resampled > 10 * cfg.poisson_points:
                break
            continue
        codims.append(orbit - leaf)
        anti = max(anti, pi_sharp_antisymmetry(real, pt))
    a = exp_g(real.a_minus_matrix(X))
    mres = 0.0
    for _ in range(cfg.moment_samples):
        h = sample_h(real, rng, cfg.scale)
        H = real.a_minus_matrix(rng.normal(size=real.rank_minus))
        Z = 1j * H / np.linalg.norm(H)
        mres = max(mres, moment_identity_residual(real, h, a, Z))
    manin_ok = (max(manin["h_isotropy"], manin["star_isotropy"]) < STRUCTURAL_TOL
                and manin["cross_min_singular"] > 1e-6 and manin["dims_add_up"])
    transversal_ok = manin["transversal_rank"] == manin["transversal_expected"]
    codim_ok = bool(codims) and all(c == expected for c in codims)
    return {
        "manin": manin,
        "manin_ok": manin_ok,
        "transversal_ok": transversal_ok,
        "leaf_codimensions": codims,
        "expected_codimension": expected,
        "codimension_constant": len(set(codims)) == 1,
        "resampled_points": resampled,
        "pi_sharp_antisymmetry": anti,
        "moment_identity_max_residual": mres,
        "passed": bool(manin_ok and transversal_ok and codim_ok and mres < MOMENT_TOL
                       and anti < 1e-10),
    }


def _escape_section(real, model, a, rng, cfg):
    if len(model.cone_gens) == 0:
        return {"status": "not_applicable", "reason": "image is compact (no cone part)",
                "passed": True}
    m = min(cfg.samples, cfg.escape_samples)
    seeds = rng.integers(0, 2 ** 63, size=2)
    out = {}
    for key, s, sd in (("base", cfg.scale, seeds[0]), ("doubled", 2 * cfg.scale, seeds[1])):
        vals, failed = sample_phi(real, a, m, s, int(sd))
        out[key] = {"scale": s, "max_norm": float(np.linalg.norm(vals, axis=1).max()) if len(vals) else 0.0,
                    "failures": len(failed)}
    out["samples"] = m
    out["passed"] = bool(out["doubled"]["max_norm"] > out["base"]["max_norm"])
    out["status"] = "pass" if out["passed"] else "FAIL"
    return out


# --------------------------------------------------------------------------
# export


def export(report, path, fmt="json"):
    """Write the report. CSV writes one row per sample plus a ``.model.json`` sidecar."""
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
        return [path]
    if fmt != "csv":
        raise ValueError("format must be json or csv")
    r = len(report.model.get("base_point", report.config.get("base_point", [])))
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index"] + [f"phi_{i + 1}" for i in range(r)] + ["verdict", "slack"])
        for rec in report.records:
            w.writerow([rec["index"], *[repr(float(x)) for x in rec["phi"]],
                        rec["verdict"], repr(float(rec["slack"]))])
    side = path.parent / (path.stem + ".model.json")
    side.write_text(json.dumps(_jsonable(report.model), indent=2, sort_keys=True) + "\n")
    return [path, side]


def load_report(path):
    return SampleReport.from_dict(json.loads(Path(path).read_text()))


def strip_timing(d):
    d = dict(d)
    d.pop("timing", None)
    return d
