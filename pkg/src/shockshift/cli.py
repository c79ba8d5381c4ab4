"""Configuration-driven batch runner and command-line interface.

Commands: validate, solve, track, detect, compare, regularity. Experiments
are described by TOML configs (or a named preset); per-node solves are
dispatched to a process pool and merged in node order, so outputs are
byte-identical regardless of the worker count. Every CSV starts with
'#'-prefixed metadata lines carrying the fully resolved configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from multiprocessing import get_context
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import collocate, detect, hodograph, problem, solver
from .errors import ConfigError, ParseError, SchedulingError

# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class ProblemConfig:
    family: str = "perturbed-logistic"
    drift: float = 3.0
    amp: float = 0.2
    flux: str = "burgers"


@dataclass(frozen=True)
class GridConfig:
    R: float = 15.0
    nx: int = 1500


@dataclass(frozen=True)
class TimeConfig:
    t_end: float = 2.2
    dt_sample: float = 0.02
    cfl: float = 0.4


@dataclass(frozen=True)
class CollocationConfig:
    n_nodes: int = 10
    z0: tuple = (0.234,)
    methods: tuple = ("direct", "xshift", "xtshift")
    source: str = "hodograph"   # or "detected"
    subcell: bool = True
    decay_times: tuple = (3.0, 4.0)


@dataclass(frozen=True)
class DetectionSection:
    kappa: float = 0.25
    offset: int = 2
    exclusion: int = 5


@dataclass(frozen=True)
class OutputConfig:
    precision: int = 17


@dataclass(frozen=True)
class ExperimentConfig:
    problem: ProblemConfig = ProblemConfig()
    grid: GridConfig = GridConfig()
    time: TimeConfig = TimeConfig()
    collocation: CollocationConfig = CollocationConfig()
    detection: DetectionSection = DetectionSection()
    output: OutputConfig = OutputConfig()

    def as_dict(self) -> dict:
        return asdict(self)


_SECTIONS = {
    "problem": ProblemConfig,
    "grid": GridConfig,
    "time": TimeConfig,
    "collocation": CollocationConfig,
    "detection": DetectionSection,
    "output": OutputConfig,
}

_LIST_FIELDS = {"z0", "methods", "decay_times"}


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a TOML experiment description.

    Unknown sections or keys are rejected with their path; values are range
    checked against the preconditions of the operations they feed.
    """
    if not text.strip():
        raise ParseError("empty config")
    try:
        raw = tomllib.loads(text)
    except Exception as exc:
        raise ParseError(f"TOML parse failure: {exc}") from exc
    sections = {}
    for name, payload in raw.items():
        if name not in _SECTIONS:
            raise ParseError(f"unknown section [{name}]")
        cls = _SECTIONS[name]
        fields = {f for f in cls.__dataclass_fields__}
        kwargs = {}
        for key, value in payload.items():
            if key not in fields:
                raise ParseError(f"unknown key {name}.{key}")
            if key in _LIST_FIELDS:
                if not isinstance(value, (list, tuple)):
                    raise ParseError(f"{name}.{key} must be a list")
                value = tuple(value)
            kwargs[key] = value
        try:
            sections[name] = cls(**kwargs)
        except (TypeError, ConfigError) as exc:
            raise ParseError(f"bad section [{name}]: {exc}") from exc
    cfg = ExperimentConfig(**sections)
    _validate_config(cfg)
    return cfg


def _validate_config(cfg: ExperimentConfig) -> None:
    if cfg.problem.family not in ("perturbed-logistic", "base"):
        raise ParseError(f"problem.family: unknown family {cfg.problem.family!r}")
    if cfg.problem.flux != "burgers":
        raise ParseError(f"problem.flux: only 'burgers' is built in, got {cfg.problem.flux!r}")
    if cfg.grid.R <= 0.0:
        raise ParseError(f"grid.R must be positive, got {cfg.grid.R}")
    if cfg.grid.nx < 7:
        raise ParseError(f"grid.nx must be >= 7 (WENO stencil width), got {cfg.grid.nx}")
    if cfg.time.t_end <= 0.0:
        raise ParseError(f"time.t_end must be positive, got {cfg.time.t_end}")
    if cfg.time.dt_sample <= 0.0:
        raise ParseError(f"time.dt_sample must be positive, got {cfg.time.dt_sample}")
    if not (0.0 < cfg.time.cfl <= 1.0):
        raise ParseError(f"time.cfl must lie in (0, 1], got {cfg.time.cfl}")
    if cfg.collocation.n_nodes < 1:
        raise ParseError("collocation.n_nodes must be >= 1")
    if cfg.collocation.source not in ("hodograph", "detected"):
        raise ParseError(f"collocation.source must be hodograph|detected, got {cfg.collocation.source!r}")
    bad = set(cfg.collocation.methods) - {"direct", "xshift", "xtshift"}
    if bad:
        raise ParseError(f"collocation.methods: unknown methods {sorted(bad)}")
    if cfg.detection.kappa <= 0.0 or cfg.detection.offset < 1:
        raise ParseError("detection.kappa must be > 0 and detection.offset >= 1")
    if cfg.detection.exclusion < cfg.detection.offset:
        raise ParseError("detection.exclusion must be at least detection.offset")
    if cfg.output.precision < 1 or cfg.output.precision > 17:
        raise ParseError("output.precision must lie in [1, 17]")


PRESETS = {
    "burgers-paper5": ExperimentConfig(),
    "burgers-paper5-regularity": ExperimentConfig(
        time=TimeConfig(t_end=4.0),
        collocation=CollocationConfig(n_nodes=50, z0=(), methods=()),
    ),
}


def load_config(preset: str | None, config_path: str | None) -> ExperimentConfig:
    if preset is not None and config_path is not None:
        raise ParseError("give either --preset or --config, not both")
    if preset is not None:
        if preset not in PRESETS:
            raise ParseError(f"unknown preset {preset!r}; known: {sorted(PRESETS)}")
        return PRESETS[preset]
    if config_path is not None:
        return parse_config(Path(config_path).read_text())
    return ExperimentConfig()


def build_problem(cfg: ExperimentConfig) -> problem.ProblemSpec:
    if cfg.problem.family == "base":
        init = problem.logistic_step()
    else:
        init = problem.perturbed_logistic(drift=cfg.problem.drift, amp=cfg.problem.amp)
    return problem.ProblemSpec(flux=problem.burgers(), init=init, R=cfg.grid.R,
                               label=cfg.problem.family)


def detection_config(cfg: ExperimentConfig) -> detect.DetectionConfig:
    return detect.DetectionConfig(kappa=cfg.detection.kappa, offset=cfg.detection.offset,
                                  exclusion=cfg.detection.exclusion)


# ---------------------------------------------------------------------------
# worker tasks (everything across the process boundary is plain data)


def _node_worker(payload: dict) -> dict:
    cfg = _config_from_dict(payload["config"])
    spec = build_problem(cfg)
    z = payload["z"]
    kind = payload["kind"]
    out: dict = {"z": z}
    problem.require_valid(spec, z)
    if kind == "hodo_track":
        inv = hodograph.invert_initial(spec.init, z)
        cd = hodograph.critical_point(inv, spec.flux)
        track = hodograph.track_shock(inv, spec.flux, cd,
                                      t_end=cd.t_star + payload["t_span"])
        out["tstar"] = cd.t_star
        out["track"] = track
        return out
    t_end = payload["t_end"]
    field0 = problem.sample_initial(spec, z, cfg.grid.nx)
    ladder = payload.get("ladder", False)
    snap_times = ()
    if ladder:
        n_snap = int(np.floor(t_end / cfg.time.dt_sample + 1e-9))
        snap_times = tuple(np.round(np.arange(n_snap + 1) * cfg.time.dt_sample, 12))
    scfg = solver.SolverConfig(cfl=cfg.time.cfl, nx=cfg.grid.nx, snapshot_times=snap_times)
    final, snaps = solver.advance_to(field0, spec.flux, scfg, t_end)
    out["t"] = final.t
    out["x0"] = final.x0
    out["dx"] = final.dx
    out["values"] = final.values
    if ladder:
        dcfg = detection_config(cfg)
        rows = []
        for s in snaps:
            slope = detect.max_centered_slope(s)
            k, xc = detect.detect_xc(s)
            shocked = slope > dcfg.kappa / s.dx
            if shocked and dcfg.offset <= k < s.n - dcfg.offset:
                u1, u2 = detect.extract_u12(s, k, dcfg)
            else:
                u1 = u2 = np.nan
            rows.append((s.t, slope, k, xc, u1, u2, shocked))
        out["ladder"] = rows
    return out


def _config_from_dict(d: dict) -> ExperimentConfig:
    sections = {}
    for name, cls in _SECTIONS.items():
        payload = dict(d[name])
        for key in _LIST_FIELDS & set(payload):
            payload[key] = tuple(payload[key])
        sections[name] = cls(**payload)
    return ExperimentConfig(**sections)


def _run_tasks(tasks: list[dict], workers: int) -> list[dict]:
    if workers <= 1:
        return [_node_worker(t) for t in tasks]
    ctx = get_context("spawn")
    with ctx.Pool(processes=workers) as pool:
        return pool.map(_node_worker, tasks)


# ---------------------------------------------------------------------------
# CSV output


def _fmt(v, precision: int) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    fv = float(v)
    if np.isnan(fv):
        return ""
    return f"{fv:.{precision}g}"


def write_csv(path: Path, header_meta: dict, columns: list[str], rows, precision: int) -> None:
    lines = [f"# {k}: {v}" for k, v in header_meta.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v, precision) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _meta(cfg: ExperimentConfig, **extra) -> dict:
    meta = {"generator": "shockshift", "config": json.dumps(cfg.as_dict(), sort_keys=True)}
    meta.update(extra)
    return meta


# ---------------------------------------------------------------------------
# compare runner


def _hodograph_quantities(cfg: ExperimentConfig, zs, t_span: float, workers: int) -> dict:
    # each track runs to its own t* + t_span, covering every clock the
    # runners evaluate (plain t <= t_span and shifted t* + offset, offset <= t_span)
    tasks = [{"kind": "hodo_track", "config": cfg.as_dict(), "z": z, "t_span": t_span}
             for z in zs]
    results = _run_tasks(tasks, workers)
    return {r["z"]: r for r in results}


def run_compare(cfg: ExperimentConfig, out_dir: Path, workers: int = 1) -> dict:
    """Solve all nodes, build the three interpolants per query z0, and emit
    one CSV per method plus a summary CSV and a machine-readable manifest."""
    t_begin = time.perf_counter()
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = build_problem(cfg)
    dcfg = detection_config(cfg)
    T = cfg.time.t_end
    n = cfg.collocation.n_nodes
    nodes = collocate.chebyshev_nodes(n)
    weights = collocate.chebyshev_bary_weights(n)
    source = cfg.collocation.source
    subcell = cfg.collocation.subcell
    use_ladder = source == "detected"

    # phase 1: solves at the common time T (nodes + references), and
    # hodograph tracks covering both T and any later shifted clock
    zqs = list(cfg.collocation.z0)
    solve_tasks = [{"kind": "solve", "config": cfg.as_dict(), "z": float(z),
                    "t_end": T, "ladder": use_ladder} for z in nodes]
    solve_tasks += [{"kind": "solve", "config": cfg.as_dict(), "z": float(z0),
                     "t_end": T, "ladder": use_ladder} for z0 in zqs]
    phase1 = _run_tasks(solve_tasks, workers)
    node_solves = phase1[:n]
    ref_solves = {z0: r for z0, r in zip(zqs, phase1[n:])}

    hodo = {}
    if source == "hodograph":
        all_z = sorted({float(z) for z in nodes} | {float(z0) for z0 in zqs})
        hodo = _hodograph_quantities(cfg, all_z, T, workers)

    def field_of(res) -> problem.GridField:
        return problem.GridField(t=res["t"], x0=res["x0"], dx=res["dx"], values=res["values"])

    def detected_tstar(res):
        for (ts, slope, k, xc, u1, u2, shocked) in res["ladder"]:
            if shocked:
                return ts
        return None

    def node_payload(res, t_at: float) -> collocate.NodeData:
        fld = field_of(res)
        z = res["z"]
        if source == "hodograph":
            track = hodo[z]["track"]
            tstar = hodo[z]["tstar"]
            xc = track.center(t_at)
            shocked = t_at > tstar
            u1 = u2 = None
            if shocked:
                u1, u2, _ = track.at(t_at)
        else:
            k, xc = detect.detect_xc(fld)
            tstar = detected_tstar(res)
            shocked = tstar is not None and tstar <= t_at
            u1 = u2 = None
            if shocked and dcfg.offset <= k < fld.n - dcfg.offset:
                u1, u2 = detect.extract_u12(fld, k, dcfg)
        return collocate.NodeData(z=z, field=fld, xc=float(xc), tstar=tstar,
                                  u1=u1, u2=u2, shocked=shocked)

    ens1 = collocate.CollocationEnsemble(
        nodes=nodes, bary_weights=weights,
        node_data=tuple(node_payload(r, T) for r in node_solves), source=source)

    tstars = np.array([nd.tstar if nd.tstar is not None else np.nan
                       for nd in ens1.node_data])

    summary_rows = []
    timings = {"phase1_seconds": time.perf_counter() - t_begin}
    files = []
    for z0 in zqs:
        ref = field_of(ref_solves[z0])
        if source == "hodograph":
            xc_ref = float(hodo[float(z0)]["track"].center(T))
        else:
            xc_ref = None
        reports = []
        if "direct" in cfg.collocation.methods:
            reports.append(collocate.direct_interpolate(ens1, z0, ref, dcfg, xc_ref=xc_ref))
        if "xshift" in cfg.collocation.methods:
            reports.append(collocate.method1_interpolate(
                ens1, z0, ref, dcfg, xc_ref=xc_ref, subcell=subcell))
        if "xtshift" in cfg.collocation.methods:
            if np.any(np.isnan(tstars)):
                missing = [float(nodes[j]) for j in np.flatnonzero(np.isnan(tstars))]
                raise SchedulingError(
                    f"xtshift needs an emergence time per node; missing at z={missing}")
            tstar0 = float(collocate.barycentric_eval(nodes, weights, tstars, z0))
            t_offset = T - tstar0
            if t_offset <= 0.0:
                raise SchedulingError(
                    f"t_end={T} leaves no positive shifted clock at z0={z0}")
            phase2 = _run_tasks(
                [{"kind": "solve", "config": cfg.as_dict(), "z": float(z),
                  "t_end": float(t_offset + ts), "ladder": False}
                 for z, ts in zip(nodes, tstars)], workers)
            nd2 = []
            for res, ts in zip(phase2, tstars):
                fld = field_of(res)
                z = res["z"]
                if source == "hodograph":
                    xc = float(hodo[z]["track"].at(fld.t)[2])
                else:
                    _, xc = detect.detect_xc(fld)
                nd2.append(collocate.NodeData(z=z, field=fld, xc=xc, tstar=float(ts),
                                              shocked=True))
            ens2 = collocate.CollocationEnsemble(nodes=nodes, bary_weights=weights,
                                                 node_data=tuple(nd2), source=source)
            reports.append(collocate.method2_interpolate(
                ens2, z0, t_offset, ref, dcfg, xc_ref=xc_ref, subcell=subcell))

        for rep in reports:
            name = f"{rep.method}_z{z0:g}.csv"
            in_window = np.abs(rep.x - rep.xc_ref) <= rep.exclusion_cells * ref.dx
            rows = zip(rep.x, rep.u_ref, rep.u_interp,
                       np.abs(rep.u_interp - rep.u_ref), in_window.astype(int))
            write_csv(out_dir / name,
                      _meta(cfg, method=rep.method, z0=z0, t=rep.t, frame=rep.frame,
                            xc_ref=rep.xc_ref, shift_applied=rep.shift_applied,
                            shift_residual=rep.shift_residual, source=source),
                      ["x", "u_ref", "u_interp", "abs_error", "in_exclusion_window"],
                      rows, cfg.output.precision)
            files.append(name)
            summary_rows.append((rep.method, z0, rep.max_err_away, rep.max_err_near,
                                 rep.l1_err))

    write_csv(out_dir / "summary.csv", _meta(cfg, source=source),
              ["method", "z0", "max_err_away", "max_err_near", "l1_err"],
              summary_rows, cfg.output.precision)
    files.append("summary.csv")
    timings["total_seconds"] = time.perf_counter() - t_begin
    manifest = {"config": cfg.as_dict(), "files": files, "timings": timings,
                "workers": workers}
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    return {"summary": summary_rows, "files": files}


# ---------------------------------------------------------------------------
# regularity runner


def run_regularity(cfg: ExperimentConfig, out_dir: Path, workers: int = 1) -> dict:
    """Emit (t, z_j, u1, u2, xc) surfaces from both the hodograph engine and
    grid detection, plus a Chebyshev-decay table of the hodograph quantities.
    Entries before a node's emergence time are left empty."""
    t_begin = time.perf_counter()
    out_dir.mkdir(parents=True, exist_ok=True)
    dcfg = detection_config(cfg)
    T = cfg.time.t_end
    n = cfg.collocation.n_nodes
    nodes = collocate.chebyshev_nodes(n)
    n_snap = int(np.floor(T / cfg.time.dt_sample + 1e-9))
    t_grid = np.round(np.arange(n_snap + 1) * cfg.time.dt_sample, 12)

    hodo = _hodograph_quantities(cfg, [float(z) for z in nodes], T, workers)
    rows_h = []
    tracks = {}
    for z in nodes:
        rec = hodo[float(z)]
        track = rec["track"]
        tracks[float(z)] = track
        for t in t_grid:
            if t > rec["tstar"]:
                u1, u2, xc = track.at(float(t))
                rows_h.append((t, z, u1, u2, xc))
            else:
                rows_h.append((t, z, None, None, None))
    write_csv(out_dir / "surface_hodograph.csv", _meta(cfg, source="hodograph"),
              ["t", "z", "u1", "u2", "xc"], rows_h, cfg.output.precision)

    solves = _run_tasks([{"kind": "solve", "config": cfg.as_dict(), "z": float(z),
                          "t_end": T, "ladder": True} for z in nodes], workers)
    rows_d = []
    for z, res in zip(nodes, solves):
        for (ts, slope, k, xc, u1, u2, shocked) in res["ladder"]:
            if shocked:
                rows_d.append((ts, z, u1, u2, xc))
            else:
                rows_d.append((ts, z, None, None, None))
    write_csv(out_dir / "surface_detected.csv", _meta(cfg, source="detected"),
              ["t", "z", "u1", "u2", "xc"], rows_d, cfg.output.precision)

    decay_rows = []
    fit_rows = []
    for t_slice in cfg.collocation.decay_times:
        if t_slice > T:
            continue
        if any(t_slice <= hodo[float(z)]["tstar"] for z in nodes):
            continue  # a slice is usable only once every node has shocked
        series = {"u1": [], "u2": [], "xc": []}
        for z in nodes:
            u1, u2, xc = tracks[float(z)].at(float(t_slice))
            series["u1"].append(u1)
            series["u2"].append(u2)
            series["xc"].append(xc)
        for qty, vals in series.items():
            coeffs = collocate.chebyshev_coeffs(np.array(vals))
            for k, ck in enumerate(coeffs):
                decay_rows.append((t_slice, qty, k, abs(ck)))
            # mid-trajectory dense evaluations carry ~1e-12 integrator noise,
            # so the fit floor sits above it
            slope, r2, nuse = collocate.geometric_decay_fit(coeffs, floor=1e-10)
            fit_rows.append((t_slice, qty, slope, r2, nuse))
    write_csv(out_dir / "decay.csv", _meta(cfg), ["t", "quantity", "k", "abs_coeff"],
              decay_rows, cfg.output.precision)
    write_csv(out_dir / "decay_fit.csv", _meta(cfg),
              ["t", "quantity", "slope", "r2", "n_used"], fit_rows, cfg.output.precision)

    manifest = {"config": cfg.as_dict(),
                "files": ["surface_hodograph.csv", "surface_detected.csv",
                          "decay.csv", "decay_fit.csv"],
                "timings": {"total_seconds": time.perf_counter() - t_begin},
                "workers": workers}
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    return {"files": manifest["files"], "fits": fit_rows}


# ---------------------------------------------------------------------------
# small commands


def run_validate(cfg: ExperimentConfig, zs) -> int:
    spec = build_problem(cfg)
    status = 0
    for z in zs:
        report = problem.validate_problem(spec, z, n_check=10_000)
        flag = "PASS" if report.passed else "FAIL"
        print(f"z={z:+.6f}: {flag}  monotone={report.monotone} "
              f"unique_inflection={report.unique_inflection} "
              f"third_derivative={report.positive_third_at_inflection} "
              f"boundary_states={report.boundary_states}")
        if not report.passed:
            status = 1
            for name, xs in report.offending.items():
                print(f"  offending {name}: {xs}")
    return status


def run_solve(cfg: ExperimentConfig, z: float, out_dir: Path) -> Path:
    res = _node_worker({"kind": "solve", "config": cfg.as_dict(), "z": z,
                        "t_end": cfg.time.t_end, "ladder": False})
    fld = problem.GridField(t=res["t"], x0=res["x0"], dx=res["dx"], values=res["values"])
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"solution_z{z:g}_t{cfg.time.t_end:g}.csv"
    write_csv(path, _meta(cfg, z=z, t=fld.t), ["x", "u"],
              zip(fld.x, fld.values), cfg.output.precision)
    return path


def run_track(cfg: ExperimentConfig, z: float, out_dir: Path) -> Path:
    spec = build_problem(cfg)
    inv = hodograph.invert_initial(spec.init, z)
    cd = hodograph.critical_point(inv, spec.flux)
    track = hodograph.track_shock(inv, spec.flux, cd, t_end=cfg.time.t_end)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"track_z{z:g}.csv"
    write_csv(path,
              _meta(cfg, z=z, u_star=cd.u_star, x_star=cd.x_star, t_star=cd.t_star,
                    a=cd.a, c=cd.c),
              ["t", "u1", "u2", "xc"],
              zip(track.times, track.u1, track.u2, track.xc), cfg.output.precision)
    return path


def run_detect(cfg: ExperimentConfig, z: float, out_dir: Path) -> Path:
    res = _node_worker({"kind": "solve", "config": cfg.as_dict(), "z": z,
                        "t_end": cfg.time.t_end, "ladder": True})
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"detect_z{z:g}.csv"
    rows = [(t, slope, k, xc, u1, u2, int(shocked))
            for (t, slope, k, xc, u1, u2, shocked) in res["ladder"]]
    write_csv(path, _meta(cfg, z=z),
              ["t", "max_slope", "k_star", "xc", "u1", "u2", "shocked"],
              rows, cfg.output.precision)
    return path


# ---------------------------------------------------------------------------
# entry point


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="shockshift",
                                 description="shock tracking and shift-aligned collocation")
    ap.add_argument("command", choices=["validate", "solve", "track", "detect",
                                        "compare", "regularity"])
    ap.add_argument("--config", metavar="PATH", help="TOML experiment config")
    ap.add_argument("--preset", metavar="NAME", help=f"one of {sorted(PRESETS)}")
    ap.add_argument("--out", metavar="DIR", default="out", help="output directory")
    ap.add_argument("--workers", metavar="N", type=int, default=1)
    ap.add_argument("--z", metavar="Z", type=float, action="append",
                    help="query z (validate/solve/track/detect; repeatable)")
    args = ap.parse_args(argv)

    cfg = load_config(args.preset, args.config)
    out_dir = Path(args.out)
    zs = args.z if args.z else [0.0]

    if args.command == "validate":
        return run_validate(cfg, zs)
    if args.command == "solve":
        for z in zs:
            print(run_solve(cfg, z, out_dir))
        return 0
    if args.command == "track":
        for z in zs:
            print(run_track(cfg, z, out_dir))
        return 0
    if args.command == "detect":
        for z in zs:
            print(run_detect(cfg, z, out_dir))
        return 0
    if args.command == "compare":
        result = run_compare(cfg, out_dir, workers=args.workers)
        for row in result["summary"]:
            print("method=%s z0=%g max_err_away=%.6g max_err_near=%.6g l1=%.6g" % row)
        return 0
    if args.command == "regularity":
        result = run_regularity(cfg, out_dir, workers=args.workers)
        for row in result["fits"]:
            print("t=%g quantity=%s decay_slope=%.4f r2=%.4f n=%d" % row)
        return 0
    return 2


if __name__ == "__main__":
    sys.exit(main())
