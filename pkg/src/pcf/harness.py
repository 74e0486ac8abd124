"""Verification campaigns: configuration, runners, and reports.

A campaign is one of the five commands (lemma suites, envelope sweeps,
Picard cross-validation, envelope-integral ratios, curve tracing).  Each
produces CSV artifacts with a fixed column order plus a manifest.json
echoing the configuration and the per-check verdicts.  Runs are
deterministic for a fixed (config, seed) pair: grid points are computed
in a fixed order (worker threads only change scheduling, not results)
and floats are serialized as shortest round-trip decimals.
"""

from __future__ import annotations

import cmath
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bounds, domains, picard, quasi, suites
from .errors import ConfigError, PcfError
from .quasi import SpectralParameter

__all__ = ["CampaignConfig", "ReportManifest", "run_command", "COMMANDS"]

COMMANDS = ("verify-lemmas", "sweep-estimates", "picard", "appendix-b",
            "gamma-trace")

DEFAULT_LAMBDA_GRID = ((1.0, 0.6), (4.0, 0.6), (4.0, 1.6), (16.0, 2.6))
DEFAULT_CEILINGS = {
    "estimate_ratio": 10.0,
    "olver_ratio": 10.0,
    "appendix_ratio": 10.0,
    "derivative_bound": 10.0,
    "arc_length": 5.0,
}
DEFAULT_TOLERANCES = {
    "picard_gap": 1e-2,
    "picard_change": 1e-10,
}


@dataclass
class CampaignConfig:
    command: str
    delta: float = math.pi / 6.0
    lambda_grid: tuple = DEFAULT_LAMBDA_GRID
    x_min: float = 0.05
    x_max: float = 6.0
    x_count: int = 120
    variants: tuple = ("0", "+", "-", "*")
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    ceilings: dict = field(default_factory=lambda: dict(DEFAULT_CEILINGS))
    output_dir: str = ""
    seed: int = 7
    jobs: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not 0.0 < self.delta < math.pi / 5.0:
            raise ConfigError("delta must lie in (0, pi/5)")
        if not self.lambda_grid:
            raise ConfigError("empty lambda grid")
        for m, a in self.lambda_grid:
            if m < 0.5 or not 0.0 <= a <= math.pi:
                raise ConfigError(f"bad lambda grid entry ({m}, {a})")
        if self.x_count < 1 or self.x_max <= self.x_min:
            raise ConfigError("bad x grid")
        bad = [v for v in self.variants if v not in ("0", "+", "-", "*")]
        if bad:
            raise ConfigError(f"unknown variants {bad}")
        for name, val in self.ceilings.items():
            if val <= 0:
                raise ConfigError(f"ceiling {name} must be positive")
        if not self.output_dir:
            self.output_dir = os.environ.get("PCF_OUT", "pcf-out")

    @property
    def lambdas(self) -> list[SpectralParameter]:
        return [SpectralParameter(m, a / 2.0) for m, a in self.lambda_grid]

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.x_count)


def parse_config_file(path: str) -> dict:
    """Flat key = value file; '#' starts a comment.

    Recognized keys: delta, lambda_grid (space-separated mod:arg pairs,
    arg in radians), x_min, x_max, x_count, variants (comma list), seed,
    jobs, out, and dotted ceiling.NAME / tol.NAME entries.
    """
    raw: dict = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, val = (part.strip() for part in line.split("=", 1))
        raw[key] = val
    out: dict = {}
    for key, val in raw.items():
        try:
            if key == "delta":
                out["delta"] = float(val)
            elif key == "lambda_grid":
                grid = []
                for tok in val.split():
                    m, a = tok.split(":")
                    grid.append((float(m), float(a)))
                out["lambda_grid"] = tuple(grid)
            elif key in ("x_min", "x_max"):
                out[key] = float(val)
            elif key in ("x_count", "seed", "jobs"):
                out[key] = int(val)
            elif key == "variants":
                out["variants"] = tuple(v.strip() for v in val.split(","))
            elif key == "out":
                out["output_dir"] = val
            elif key.startswith("ceiling."):
                out.setdefault("ceilings", dict(DEFAULT_CEILINGS))
                out["ceilings"][key.split(".", 1)[1]] = float(val)
            elif key.startswith("tol."):
                out.setdefault("tolerances", dict(DEFAULT_TOLERANCES))
                out["tolerances"][key.split(".", 1)[1]] = float(val)
            else:
                raise ConfigError(f"{path}: unknown key {key!r}")
        except ConfigError:
            raise
        except Exception as exc:
            raise ConfigError(f"{path}: bad value for {key!r}: {exc}") from exc
    return out


# ----------------------------------------------------------------------
# Report plumbing
# ----------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    if isinstance(value, (np.floating,)):
        return repr(float(value))
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_csv(path: Path, columns: list[str], rows: list[dict]):
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row.get(c, "")) for c in columns))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


@dataclass
class ReportManifest:
    config: dict
    checks: list = field(default_factory=list)
    artifacts: list = field(default_factory=list)

    def add_check(self, name: str, passed: bool, observed=None, limit=None,
                  note: str = ""):
        self.checks.append({
            "name": name,
            "status": "pass" if passed else "fail",
            "observed": observed,
            "limit": limit,
            "note": note,
        })

    @property
    def all_passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def write(self, outdir: Path, wallclock: float):
        import scipy

        payload = {
            "config": self.config,
            "checks": self.checks,
            "artifacts": sorted(self.artifacts),
            "versions": {
                "pcf": "0.1.0",
                "numpy": np.__version__,
                "scipy": scipy.__version__,
            },
            "kernel_normalization":
                "-2*pi*i*exp(-i*pi/3), contour oriented infinity->anchor "
                "(negated for anchor->infinity collocation)",
            "wallclock_s": wallclock,
        }
        (outdir / "manifest.json").write_text(
            json.dumps(payload, indent=2, default=_fmt) + "\n",
            encoding="utf-8")


def _config_echo(cfg: CampaignConfig) -> dict:
    return {
        "command": cfg.command,
        "delta": cfg.delta,
        "lambda_grid": [list(p) for p in cfg.lambda_grid],
        "x_grid": [cfg.x_min, cfg.x_max, cfg.x_count],
        "variants": list(cfg.variants),
        "tolerances": cfg.tolerances,
        "ceilings": cfg.ceilings,
        "seed": cfg.seed,
        "jobs": cfg.jobs,
        "output_dir": cfg.output_dir,
    }


def _lam_tag(sp: SpectralParameter) -> str:
    return f"m{sp.modulus:g}_a{sp.arg:.4f}".replace(".", "p")


def _map_ordered(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ----------------------------------------------------------------------
# Command runners
# ----------------------------------------------------------------------

def cmd_verify_lemmas(cfg: CampaignConfig, outdir: Path,
                      manifest: ReportManifest):
    results = suites.lemma_suites(delta=cfg.delta)
    cols = ["check", "status", "worst_margin", "observed", "limit",
            "n_samples", "note"]
    write_csv(outdir / "lemma_suites.csv", cols, [r.row() for r in results])
    manifest.artifacts.append("lemma_suites.csv")
    for r in results:
        manifest.add_check(r.name, r.passed, observed=r.worst_margin,
                           note=r.note)


def cmd_sweep_estimates(cfg: CampaignConfig, outdir: Path,
                        manifest: ReportManifest):
    xs = cfg.xs
    ceiling = cfg.ceilings["estimate_ratio"]
    summary = {}
    for variant in cfg.variants:
        def one(sp, variant=variant):
            return bounds.estimate_sweep(xs, [sp], variant, cfg.delta)

        per_lam = _map_ordered(one, cfg.lambdas, cfg.jobs)
        rows = []
        sup = 0.0
        for recs in per_lam:
            for r in recs:
                rows.append({"x": r.x, "lam_re": r.lam.real,
                             "lam_im": r.lam.imag, "lhs": r.lhs,
                             "rhs": r.rhs, "ratio": r.ratio,
                             "in_domain": r.in_domain,
                             "error": r.error or ""})
                if r.in_domain and math.isfinite(r.ratio):
                    sup = max(sup, r.ratio)
        name = f"estimates_{_variant_tag(variant)}.csv"
        write_csv(outdir / name,
                  ["x", "lam_re", "lam_im", "lhs", "rhs", "ratio",
                   "in_domain", "error"], rows)
        manifest.artifacts.append(name)
        summary[variant] = sup
        manifest.add_check(f"estimate_sup_ratio_{_variant_tag(variant)}",
                           sup <= ceiling, observed=sup, limit=ceiling)
    # classical two-sided envelope, valid on the whole grid
    o_rows = []
    o_sup = 0.0
    for x, lv, r1, r2 in bounds.olver_sweep(xs, [sp.value for sp in cfg.lambdas]):
        o_rows.append({"x": x, "lam_re": lv.real, "lam_im": lv.imag,
                       "ratio_value": r1, "ratio_derivative": r2})
        o_sup = max(o_sup, r1, r2)
    write_csv(outdir / "olver_ratios.csv",
              ["x", "lam_re", "lam_im", "ratio_value", "ratio_derivative"],
              o_rows)
    manifest.artifacts.append("olver_ratios.csv")
    manifest.add_check("olver_sup_ratio", o_sup <= cfg.ceilings["olver_ratio"],
                       observed=o_sup, limit=cfg.ceilings["olver_ratio"])
    _emit_polylines(cfg, outdir, manifest)
    (outdir / "summary.json").write_text(
        json.dumps({"per_variant_sup": summary, "olver_sup": o_sup},
                   indent=2) + "\n", encoding="utf-8")
    manifest.artifacts.append("summary.json")


def _variant_tag(v: str) -> str:
    return {"0": "0", "+": "plus", "-": "minus", "*": "star"}[v]


def _emit_polylines(cfg: CampaignConfig, outdir: Path,
                    manifest: ReportManifest):
    for sp in cfg.lambdas:
        gc = quasi.gamma_contour(sp, cfg.x_max * max(1.0, math.sqrt(sp.modulus)),
                                 192)
        name = f"gamma_{_lam_tag(sp)}.csv"
        write_csv(outdir / name, ["re", "im"],
                  [{"re": z.real, "im": z.imag} for z in gc.nodes])
        manifest.artifacts.append(name)
        rows = _domain_boundary_points(sp, cfg.delta)
        name = f"domain_{_lam_tag(sp)}.csv"
        write_csv(outdir / name, ["piece", "re", "im"], rows)
        manifest.artifacts.append(name)


def _domain_boundary_points(sp: SpectralParameter, delta: float) -> list[dict]:
    rows = []
    center, radius = domains.b_eps_disk(sp, domains.choose_epsilon(delta))
    for t in np.linspace(0.0, 2.0 * math.pi, 65):
        z = center + radius * cmath.exp(1j * t)
        rows.append({"piece": "disk", "re": z.real, "im": z.imag})
    eps = domains.choose_epsilon(delta)
    for sgn in (-1.0, 1.0):
        a = cmath.phase(center) + sgn * eps
        for rr in np.linspace(abs(center) * math.cos(eps),
                              3.0 * abs(center), 24):
            z = rr * cmath.exp(1j * a)
            rows.append({"piece": "shadow", "re": z.real, "im": z.imag})
    if sp.arg >= delta:
        w = domains.w_tangent(sp, +1, delta)
        alpha = math.pi / 3.0 - delta / 3.0
        yw = ((w * cmath.exp(1j * alpha)) ** 1.5).imag
        x0 = ((w * cmath.exp(1j * alpha)) ** 1.5).real
        for tau in np.linspace(x0 - 30.0, x0 + 30.0, 121):
            s = cmath.exp(-1j * alpha) * complex(tau, yw) ** (2.0 / 3.0)
            rows.append({"piece": "tangent_level", "re": s.real, "im": s.imag})
    return rows


def cmd_picard(cfg: CampaignConfig, outdir: Path, manifest: ReportManifest):
    rng = np.random.default_rng(cfg.seed)
    tol_gap = cfg.tolerances["picard_gap"]
    ceiling = cfg.ceilings["derivative_bound"]
    probes = []
    for sp in cfg.lambdas:
        tp = quasi.turning_point(sp)
        x_lo = max(0.15, 0.3 * math.sqrt(sp.modulus))
        x_hi = 2.0 * math.sqrt(sp.modulus)
        xs = [x_lo, x_hi, float(rng.uniform(1.2 * x_lo, 0.9 * x_hi))]
        if tp.r_star > 0.1:
            xs.append(0.5 * tp.x_star.real + 1e-3)
        for variant in cfg.variants:
            for x in xs:
                try:
                    z = quasi.z_of_x(float(x), sp)
                except PcfError:
                    continue
                if picard.anchor_reachable(variant, z, sp, cfg.delta):
                    probes.append((sp, variant, float(x)))

    def one(probe):
        sp, variant, x = probe
        row = {"lam_re": sp.value.real, "lam_im": sp.value.imag,
               "variant": variant, "x": x, "z_re": math.nan, "z_im": math.nan,
               "abs_a": math.nan, "deriv_bound": math.nan, "iterations": 0,
               "final_change": math.nan, "psi_gap": math.nan, "error": ""}
        try:
            z = quasi.z_of_x(x, sp)
            row["z_re"], row["z_im"] = z.real, z.imag
            run = picard.solve_a_variant(variant, z, sp, cfg.delta,
                                         tol=cfg.tolerances["picard_change"])
            a_psi, _ = bounds.a_nu_from_psi(x, sp, variant, cfg.delta)
            row["abs_a"] = abs(run.a_value)
            row["deriv_bound"] = abs(run.a_derivative) \
                * (1.0 + abs(z)) ** 1.25
            row["iterations"] = run.iterations
            row["final_change"] = run.changes[-1] if run.changes else 0.0
            row["psi_gap"] = abs(run.a_value / a_psi - 1.0)
        except PcfError as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        return row

    rows = _map_ordered(one, probes, cfg.jobs)
    cols = ["lam_re", "lam_im", "variant", "x", "z_re", "z_im", "abs_a",
            "deriv_bound", "iterations", "final_change", "psi_gap", "error"]
    write_csv(outdir / "picard_probes.csv", cols, rows)
    manifest.artifacts.append("picard_probes.csv")
    ok_rows = [r for r in rows if not r["error"]]
    gap = max((r["psi_gap"] for r in ok_rows), default=math.nan)
    dsup = max((r["deriv_bound"] for r in ok_rows), default=math.nan)
    manifest.add_check("picard_psi_gap", bool(ok_rows) and gap <= tol_gap,
                       observed=gap, limit=tol_gap,
                       note=f"{len(ok_rows)} probes")
    manifest.add_check("picard_derivative_bound",
                       bool(ok_rows) and dsup <= ceiling,
                       observed=dsup, limit=ceiling)
    manifest.add_check("picard_all_probes_ran",
                       all(not r["error"] for r in rows),
                       note="; ".join(r["error"] for r in rows if r["error"])[:200])
    # contraction scaling across |lam|
    c_rows = []
    rates = {}
    for m in (4.0, 16.0, 64.0):
        sp = SpectralParameter(m, cfg.delta)
        z = quasi.z_of_x(1.2 * math.sqrt(m), sp)
        run = picard.solve_a_variant("0", z, sp, cfg.delta)
        rate = run.contraction_ratios[0] if run.contraction_ratios else math.nan
        rates[m] = rate
        c_rows.append({"lam_abs": m, "first_ratio": rate,
                       "iterations": run.iterations})
    write_csv(outdir / "picard_contraction.csv",
              ["lam_abs", "first_ratio", "iterations"], c_rows)
    manifest.artifacts.append("picard_contraction.csv")
    scale_ok = True
    for m0, m1 in ((4.0, 16.0), (16.0, 64.0)):
        expected = (m0 / m1) ** (2.0 / 3.0)
        actual = rates[m1] / rates[m0]
        if not (expected / 3.0 <= actual <= expected * 3.0):
            scale_ok = False
    manifest.add_check("picard_contraction_scaling", scale_ok,
                       observed=rates[64.0] / rates[4.0],
                       limit=(1.0 / 16.0) ** (2.0 / 3.0),
                       note="ratio across |lam| 4 -> 64 vs |lam|^(-2/3) law")


def cmd_appendix_b(cfg: CampaignConfig, outdir: Path,
                   manifest: ReportManifest):
    rows = suites.appendix_b_rows([sp for sp in cfg.lambdas], cfg.delta)
    write_csv(outdir / "appendix_b_ratios.csv",
              ["lam_re", "lam_im", "kind", "alpha", "r", "ratio"], rows)
    manifest.artifacts.append("appendix_b_ratios.csv")
    ceiling = cfg.ceilings["appendix_ratio"]
    sups: dict = {}
    for r in rows:
        sups[r["kind"]] = max(sups.get(r["kind"], 0.0), r["ratio"])
    for kind, sup in sorted(sups.items()):
        manifest.add_check(f"appendix_ratio_{kind}", sup <= ceiling,
                           observed=sup, limit=ceiling)


def cmd_gamma_trace(cfg: CampaignConfig, outdir: Path,
                    manifest: ReportManifest):
    rows = []
    for sp in cfg.lambdas:
        tp = quasi.turning_point(sp)
        rows.append({"lam_re": sp.value.real, "lam_im": sp.value.imag,
                     "x_star": tp.x_star.real, "r_star": tp.r_star,
                     "z_star_re": tp.z_star.real, "z_star_im": tp.z_star.imag,
                     "z0_re": domains.z0_point(sp).real,
                     "z0_im": domains.z0_point(sp).imag,
                     "zE_re": domains.z_E_point(sp).real,
                     "zE_im": domains.z_E_point(sp).imag})
    write_csv(outdir / "turning_points.csv",
              ["lam_re", "lam_im", "x_star", "r_star", "z_star_re",
               "z_star_im", "z0_re", "z0_im", "zE_re", "zE_im"], rows)
    manifest.artifacts.append("turning_points.csv")
    _emit_polylines(cfg, outdir, manifest)
    manifest.add_check("gamma_trace_emitted", True)


_RUNNERS = {
    "verify-lemmas": cmd_verify_lemmas,
    "sweep-estimates": cmd_sweep_estimates,
    "picard": cmd_picard,
    "appendix-b": cmd_appendix_b,
    "gamma-trace": cmd_gamma_trace,
}


def run_command(cfg: CampaignConfig) -> tuple[ReportManifest, int]:
    """Run one campaign; returns (manifest, exit code)."""
    t0 = time.time()
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = ReportManifest(config=_config_echo(cfg))
    try:
        _RUNNERS[cfg.command](cfg, outdir, manifest)
    except PcfError as exc:
        manifest.add_check("campaign_completed", False,
                           note=f"{type(exc).__name__}: {exc}")
        manifest.write(outdir, time.time() - t0)
        return manifest, 3
    manifest.write(outdir, time.time() - t0)
    return manifest, 0 if manifest.all_passed else 1
