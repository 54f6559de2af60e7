"""Command-line interface.

Subcommands:
  theorem-check  two-oscillator sync detection vs. the analytic lock condition
  mocu           one Monte-Carlo cost-of-uncertainty estimate
  campaign       replicated strategy comparison, CSV + JSON outputs

Exit codes: 0 success, 1 configuration error, 2 runtime failure,
3 theorem-check disagreement.

Campaign outputs (all numbers printed with 17 significant digits so reruns
with the same seed are byte-identical):
  campaign.csv          per-step records
  summary.json          per-strategy mean curves and the min-attainable baseline
  config_resolved.json  the fully-resolved configuration used
"""

from __future__ import annotations

import argparse
import csv
import json
import multiprocessing
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .dynamics import CouplingMatrix, OscillatorEnsemble, SimConfig
from .mocu import BisectionConfig, estimate_mocu
from .oed import (STRATEGIES, DesignTrace, MocuParams, build_benchmark_setup,
                  comb2, min_attainable_mocu, run_episode)
from .seeding import subseed
from .uncertainty import UncertaintyClass, sample_prior

CSV_HEADER = ["replication", "strategy", "step", "pair_i", "pair_j",
              "outcome", "mocu", "mocu_stderr"]


class ConfigError(ValueError):
    """Bad configuration file or flag combination."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# configuration

@dataclass(frozen=True)
class CampaignConfig:
    """Resolved settings for `mocu` and `campaign` runs."""

    setup: str = "n5"
    d_overrides: dict = field(default_factory=dict)
    strategies: tuple[str, ...] = STRATEGIES
    budget: int | None = None          # None = all pairs
    samples: int = 2000
    replications: int = 10
    seed: int = 0
    sim: SimConfig = field(default_factory=SimConfig)
    bisection: BisectionConfig = field(default_factory=BisectionConfig)
    output_dir: str = "out"
    workers: int = 1

    def params(self) -> MocuParams:
        return MocuParams(sim=self.sim, bisection=self.bisection, samples=self.samples)

    def to_document(self) -> dict:
        return {
            "setup": self.setup,
            "d_overrides": {f"{i},{j}": v for (i, j), v in sorted(self.d_overrides.items())},
            "strategies": list(self.strategies),
            "budget": self.budget,
            "samples": self.samples,
            "replications": self.replications,
            "seed": self.seed,
            "sim": {"t_final": self.sim.t_final, "dt": self.sim.dt,
                    "sync_tol": self.sim.sync_tol, "sync_window": self.sim.sync_window},
            "bisection": {"tol": self.bisection.tol,
                          "bracket_growth": self.bisection.bracket_growth,
                          "max_doublings": self.bisection.max_doublings},
            "output_dir": self.output_dir,
            "workers": self.workers,
        }


def _require(cond: bool, message: str):
    if not cond:
        raise ConfigError(message)


def _parse_d_overrides(raw) -> dict:
    _require(isinstance(raw, dict), "field 'd_overrides' must be a mapping like {\"0,4\": 0.4}")
    out = {}
    for key, val in raw.items():
        try:
            i, j = (int(p) for p in str(key).split(","))
        except ValueError:
            raise ConfigError(f"d_overrides key {key!r} is not of the form 'i,j'")
        _require(isinstance(val, (int, float)), f"d_overrides[{key!r}] must be a number")
        out[(i, j)] = float(val)
    return out


_KNOWN_KEYS = {"setup", "d_overrides", "strategies", "budget", "samples",
               "replications", "seed", "sim", "bisection", "output_dir", "workers"}


def load_config(path: str | None, overrides: dict) -> CampaignConfig:
    """Build the resolved config from an optional JSON file plus flag overrides."""
    doc = {}
    if path is not None:
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}")
        _require(isinstance(doc, dict), f"{path}: top level must be a JSON object")
        unknown = set(doc) - _KNOWN_KEYS
        _require(not unknown, f"{path}: unknown config fields {sorted(unknown)}")
    doc.update({k: v for k, v in overrides.items() if v is not None})

    cfg = CampaignConfig()
    try:
        sim = SimConfig(**{**cfg.to_document()["sim"], **doc.get("sim", {})})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"field 'sim': {exc}")
    try:
        bis = BisectionConfig(**{**cfg.to_document()["bisection"], **doc.get("bisection", {})})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"field 'bisection': {exc}")

    raw_strategies = doc.get("strategies", STRATEGIES)
    _require(isinstance(raw_strategies, (list, tuple)),
             "field 'strategies' must be a list")
    strategies = tuple(raw_strategies)
    _require(len(strategies) > 0, "field 'strategies' must not be empty")
    for s in strategies:
        _require(s in STRATEGIES, f"field 'strategies': unknown strategy {s!r}")
    _require(len(set(strategies)) == len(strategies),
             "field 'strategies' must not repeat entries")

    budget = doc.get("budget")
    cfg = CampaignConfig(
        setup=str(doc.get("setup", cfg.setup)),
        d_overrides=_parse_d_overrides(doc.get("d_overrides", {})),
        strategies=strategies,
        budget=None if budget is None else int(budget),
        samples=int(doc.get("samples", cfg.samples)),
        replications=int(doc.get("replications", cfg.replications)),
        seed=int(doc.get("seed", cfg.seed)),
        sim=sim,
        bisection=bis,
        output_dir=str(doc.get("output_dir", cfg.output_dir)),
        workers=int(doc.get("workers", cfg.workers)),
    )
    _require(cfg.samples >= 1, "field 'samples' must be at least 1")
    _require(cfg.replications >= 1, "field 'replications' must be at least 1")
    _require(cfg.workers >= 1, "field 'workers' must be at least 1")
    return cfg


def _load_custom_setup(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read setup {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}")
    for key in ("omega", "omega_control", "bounds"):
        _require(key in doc, f"{path}: setup lacks required field '{key}'")
    try:
        cls0 = UncertaintyClass.from_document(doc)
        ens = OscillatorEnsemble(
            omega=np.asarray(doc["omega"], dtype=float),
            omega_control=float(doc["omega_control"]),
            control_mode=doc.get("control_mode", "reciprocal"))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}")
    _require(ens.n == cls0.n, f"{path}: omega has {ens.n} entries but bounds are "
             f"{cls0.n}x{cls0.n}")
    return ens, cls0


def _setup_for_rep(cfg: CampaignConfig, rep: int):
    """(ensemble, prior class, truth) for one replication; truth seed derives
    from (seed, 0, rep)."""
    if cfg.setup in ("n5", "n9"):
        return build_benchmark_setup(cfg.setup, cfg.d_overrides or None,
                                     seed=subseed(cfg.seed, 0, rep), sim=cfg.sim)
    ens, cls0 = _load_custom_setup(cfg.setup)
    truth = sample_prior(cls0, subseed(cfg.seed, 0, rep, 0))
    return ens, cls0, truth


# ---------------------------------------------------------------------------
# theorem-check

def run_theorem_check(domega_min=0.1, domega_max=10.0, domega_points=20,
                      ratio_min=0.5, ratio_max=2.0, ratio_points=20,
                      band=0.05, sim: SimConfig | None = None) -> dict:
    """Sweep two-oscillator systems over a (frequency gap, total coupling)
    grid and compare the simulated sync decision with the exact condition
    |omega_1 - omega_2| <= K.

    Points within ``band`` (relative) of the lock threshold K = gap are
    excluded from scoring: the numeric decision at finite horizon is
    legitimately undecided there.
    """
    if sim is None:
        # near-threshold locking relaxes at rate sqrt(K^2 - gap^2); the worst
        # in-grid point at band 0.05 needs a horizon of a few hundred
        sim = SimConfig(t_final=400.0)
    _require(domega_points >= 1 and ratio_points >= 1, "grid must be non-empty")
    _require(domega_min > 0, "frequency gaps must be positive")
    gaps = np.linspace(domega_min, domega_max, domega_points)
    ratios = np.linspace(ratio_min, ratio_max, ratio_points)
    gap_grid, ratio_grid = np.meshgrid(gaps, ratios, indexing="ij")
    gap_flat = gap_grid.ravel()
    k_flat = (gap_grid * ratio_grid).ravel()
    near = np.abs(k_flat - gap_flat) <= band * gap_flat
    scored = ~near
    n_scored = int(scored.sum())
    _require(n_scored > 0,
             f"all {gap_flat.size} grid points fall inside the +-{band:g} "
             "near-threshold exclusion band; nothing to score")

    gap_s = gap_flat[scored]
    k_s = k_flat[scored]
    nb = gap_s.size
    omega = np.empty((2, nb))
    omega[0] = gap_s / 2.0
    omega[1] = -gap_s / 2.0
    a = np.zeros((2, 2, nb))
    a[0, 1] = a[1, 0] = k_s / 2.0
    t0 = time.perf_counter()
    spreads = _kernels.trailing_spreads(omega, a, 2, sim.nsteps, sim.dt, sim.sync_window)
    elapsed = time.perf_counter() - t0
    simulated = spreads < sim.sync_tol
    analytic = gap_s <= k_s
    agree = simulated == analytic
    mismatches = [
        {"gap": float(gap_s[ix]), "coupling_total": float(k_s[ix]),
         "simulated": bool(simulated[ix]), "analytic": bool(analytic[ix]),
         "spread": float(spreads[ix])}
        for ix in np.flatnonzero(~agree)
    ]
    return {
        "grid_points": int(gap_flat.size),
        "excluded_near_threshold": int(near.sum()),
        "scored_points": n_scored,
        "agreement": float(agree.mean()),
        "mismatches": mismatches,
        "sim": {"t_final": sim.t_final, "dt": sim.dt,
                "sync_tol": sim.sync_tol, "sync_window": sim.sync_window},
        "elapsed_s": elapsed,
    }


def cmd_theorem_check(args) -> int:
    sim = SimConfig(t_final=args.t_final, dt=args.dt,
                    sync_tol=args.sync_tol, sync_window=args.sync_window)
    report = run_theorem_check(args.domega_min, args.domega_max, args.domega_points,
                               args.ratio_min, args.ratio_max, args.ratio_points,
                               args.band, sim)
    print(f"theorem-check: {report['scored_points']} scored points "
          f"({report['excluded_near_threshold']} near-threshold excluded), "
          f"agreement {report['agreement']:.4f}, {report['elapsed_s']:.1f}s")
    for mm in report["mismatches"][:10]:
        print(f"  mismatch at gap={mm['gap']:.4g} K={mm['coupling_total']:.4g}: "
              f"simulated={mm['simulated']} analytic={mm['analytic']}")
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "theorem_check.json").write_text(json.dumps(report, indent=2) + "\n")
    return 0 if report["agreement"] == 1.0 else 3


# ---------------------------------------------------------------------------
# mocu

def cmd_mocu(args) -> int:
    cfg = load_config(args.config, {"seed": args.seed, "samples": args.samples,
                                    "setup": args.setup, "output_dir": args.out})
    ens, cls0, _ = _setup_for_rep(cfg, 0)
    t0 = time.perf_counter()
    est = estimate_mocu(cls0, ens, cfg.sim, cfg.bisection, cfg.samples,
                        subseed(cfg.seed, 1))
    elapsed = time.perf_counter() - t0
    print(f"mocu={_fmt(est.value)} stderr={_fmt(est.stderr)} "
          f"xi_star={_fmt(est.xi_star)} samples={est.samples} wall={elapsed:.2f}s")
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    record = {
        "value": est.value, "stderr": est.stderr, "xi_star": est.xi_star,
        "samples": est.samples, "seed": cfg.seed, "setup": cfg.setup,
        "config": cfg.to_document(), "wall_time_s": elapsed,
    }
    (outdir / "mocu.json").write_text(json.dumps(record, indent=2) + "\n")
    return 0


# ---------------------------------------------------------------------------
# campaign

def _episode_job(job):
    (rep, strategy, truth_a, cls_lower, cls_upper, omega, omega_control,
     control_mode, budget, params, seed, initial, min_att) = job
    ens = OscillatorEnsemble(omega=omega, omega_control=omega_control,
                             control_mode=control_mode)
    trace = run_episode(CouplingMatrix(truth_a), strategy,
                        UncertaintyClass(cls_lower, cls_upper), ens, budget,
                        params, seed, initial_mocu=initial, min_attainable=min_att)
    return rep, strategy, trace


def run_campaign(cfg: CampaignConfig):
    """Execute the replicated strategy comparison.

    Returns (traces, failures): ``traces[(rep, strategy)] -> DesignTrace`` for
    the successful replications, and a list of failure records for the rest.
    A replication failure skips that replication's episodes entirely.
    """
    params = cfg.params()
    traces: dict[tuple[int, str], DesignTrace] = {}
    failures: list[dict] = []
    jobs = []
    for rep in range(cfg.replications):
        try:
            ens, cls0, truth = _setup_for_rep(cfg, rep)
            n_pairs = comb2(ens.n)
            budget = n_pairs if cfg.budget is None else cfg.budget
            _require(0 <= budget <= n_pairs,
                     f"field 'budget' must lie in [0, {n_pairs}] for this setup")
            initial = estimate_mocu(cls0, ens, cfg.sim, cfg.bisection, cfg.samples,
                                    subseed(cfg.seed, 1, rep))
            min_att = min_attainable_mocu(truth, cls0, ens, params,
                                          subseed(cfg.seed, 2, rep))
        except ConfigError:
            raise
        except Exception as exc:  # recorded, replication skipped
            failures.append({"replication": rep, "error": f"{type(exc).__name__}: {exc}"})
            continue
        for strategy in cfg.strategies:
            jobs.append((rep, strategy, truth.a, cls0.lower, cls0.upper,
                         ens.omega, ens.omega_control, ens.control_mode, budget,
                         params, subseed(cfg.seed, 3, rep, STRATEGIES.index(strategy)),
                         initial, min_att))

    if cfg.workers > 1 and len(jobs) > 1:
        # spawn, not fork: the compiled kernels' threading layer does not
        # survive forking
        with ProcessPoolExecutor(max_workers=cfg.workers,
                                 mp_context=multiprocessing.get_context("spawn")) as pool:
            results = list(pool.map(_episode_job, jobs))
    else:
        results = [_episode_job(job) for job in jobs]
    for rep, strategy, trace in results:
        traces[(rep, strategy)] = trace
    return traces, failures


def write_campaign_csv(path: Path, cfg: CampaignConfig,
                       traces: dict[tuple[int, str], DesignTrace]):
    """Per-step records; step 0 carries the initial estimate with empty
    pair/outcome fields."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rep in range(cfg.replications):
            for strategy in cfg.strategies:
                trace = traces.get((rep, strategy))
                if trace is None:
                    continue
                writer.writerow([rep, strategy, 0, "", "", "",
                                 _fmt(trace.initial_mocu.value),
                                 _fmt(trace.initial_mocu.stderr)])
                for st in trace.steps:
                    writer.writerow([rep, strategy, st.step, st.pair[0], st.pair[1],
                                     int(st.outcome.synchronized),
                                     _fmt(st.mocu.value), _fmt(st.mocu.stderr)])


def summarize_campaign(cfg: CampaignConfig,
                       traces: dict[tuple[int, str], DesignTrace],
                       failures: list[dict]) -> dict:
    reps_ok = sorted({rep for rep, _ in traces})
    strategies = {}
    for strategy in cfg.strategies:
        curves = np.array([traces[(rep, strategy)].mocu_curve() for rep in reps_ok])
        if curves.size == 0:
            strategies[strategy] = {"mean_mocu": [], "stderr_mocu": []}
            continue
        mean = curves.mean(axis=0)
        sem = (curves.std(axis=0, ddof=1) / np.sqrt(curves.shape[0])
               if curves.shape[0] > 1 else np.zeros(curves.shape[1]))
        strategies[strategy] = {"mean_mocu": mean.tolist(), "stderr_mocu": sem.tolist()}
    baseline = np.array([traces[(rep, cfg.strategies[0])].min_attainable_mocu.value
                         for rep in reps_ok]) if reps_ok else np.empty(0)
    return {
        "replications": cfg.replications,
        "successful_replications": len(reps_ok),
        "strategies": strategies,
        "min_attainable": {
            "mean": float(baseline.mean()) if baseline.size else None,
            "stderr": (float(baseline.std(ddof=1) / np.sqrt(baseline.size))
                       if baseline.size > 1 else 0.0),
        },
        "failures": failures,
    }


def cmd_campaign(args) -> int:
    overrides = {"seed": args.seed, "samples": args.samples, "setup": args.setup,
                 "output_dir": args.out, "replications": args.replications,
                 "budget": args.budget, "workers": args.workers}
    if args.strategies:
        overrides["strategies"] = [s.strip() for s in args.strategies.split(",")]
    cfg = load_config(args.config, overrides)
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)

    t0 = time.perf_counter()
    traces, failures = run_campaign(cfg)
    elapsed = time.perf_counter() - t0

    write_campaign_csv(outdir / "campaign.csv", cfg, traces)
    summary = summarize_campaign(cfg, traces, failures)
    summary["wall_time_s"] = elapsed
    (outdir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    (outdir / "config_resolved.json").write_text(
        json.dumps(cfg.to_document(), indent=2) + "\n")

    print(f"campaign: {summary['successful_replications']}/{cfg.replications} "
          f"replications x {len(cfg.strategies)} strategies in {elapsed:.1f}s "
          f"-> {outdir}")
    for failure in failures:
        print(f"  replication {failure['replication']} FAILED: {failure['error']}",
              file=sys.stderr)
    return 2 if failures else 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kuramoto-oed",
        description="Uncertainty quantification and experiment selection for "
                    "robust synchronization control of Kuramoto networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    tc = sub.add_parser("theorem-check",
                        help="validate sync detection against the exact pair condition")
    tc.add_argument("--domega-min", type=float, default=0.1)
    tc.add_argument("--domega-max", type=float, default=10.0)
    tc.add_argument("--domega-points", type=int, default=20)
    tc.add_argument("--ratio-min", type=float, default=0.5)
    tc.add_argument("--ratio-max", type=float, default=2.0)
    tc.add_argument("--ratio-points", type=int, default=20)
    tc.add_argument("--band", type=float, default=0.05,
                    help="relative near-threshold exclusion band (default 0.05)")
    tc.add_argument("--t-final", type=float, default=400.0)
    tc.add_argument("--dt", type=float, default=1.0 / 160.0)
    tc.add_argument("--sync-tol", type=float, default=1e-3)
    tc.add_argument("--sync-window", type=int, default=32)
    tc.add_argument("--out", type=str, default=None, help="directory for the JSON report")
    tc.set_defaults(handler=cmd_theorem_check)

    mc = sub.add_parser("mocu", help="estimate the cost of uncertainty once")
    cp = sub.add_parser("campaign", help="run the replicated strategy comparison")
    for p in (mc, cp):
        p.add_argument("--config", type=str, default=None, help="JSON config file")
        p.add_argument("--setup", type=str, default=None,
                       help="n5, n9, or path to a custom setup JSON")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--out", type=str, default=None, help="output directory")
    mc.set_defaults(handler=cmd_mocu)
    cp.add_argument("--replications", type=int, default=None)
    cp.add_argument("--budget", type=int, default=None)
    cp.add_argument("--strategies", type=str, default=None,
                    help="comma-separated subset of mocu,entropy,random")
    cp.add_argument("--workers", type=int, default=None,
                    help="process-parallel episodes (default 1)")
    cp.set_defaults(handler=cmd_campaign)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
