"""Command-line front end: compile targets to circuits, run scheme
benchmarks, self-verify, and inspect Schmidt ranks.

Outputs are deterministic for a fixed configuration and seed; wall-clock
times appear only in report.json, never in hashed artifacts (circuit.qasm,
results.csv).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import gatesynth, qasm, schedules, statevec, targets
from .circuits import Circuit, simulate
from .disentangler import TruncationMode, default_truncation_mode, run_schedule
from .gatesynth import SynthMode
from .verify import run_checks

CSV_SCHEMA_VERSION = 1

SCHEME_CHOICES = ("chain", "ttn", "htn", "hen", "grid", "fig6", "graph")


@dataclass
class SynthesisReport:
    """One compilation record; serialized to report.json and CSV rows."""

    scheme: str
    target: str
    n: int
    layers: int
    u_depth: int
    infidelity: float
    cnot_count: int
    single_qubit_count: int
    cnot_count_generic: int
    single_qubit_count_generic: int
    truncation: str
    synth: str
    seed: int
    domain: tuple[float, float] | None
    retained_weights: list[float] = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self) -> str:
        payload = asdict(self)
        payload["csv_schema_version"] = CSV_SCHEMA_VERSION
        return json.dumps(payload, indent=2, sort_keys=True)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def build_schedule(scheme: str, n: int, args) -> schedules.Schedule:
    if scheme == "chain":
        return schedules.chain_schedule(n)
    if scheme == "ttn":
        return schedules.ttn_schedule(n)
    if scheme == "htn":
        return schedules.htn_schedule(n)
    if scheme == "hen":
        return schedules.hen_schedule(n)
    if scheme == "fig6":
        if n != 12:
            raise SystemExit("fig6 scheme is fixed at n = 12")
        return schedules.fig6_schedule()
    if scheme == "grid":
        rows, cols = args.grid_rows, args.grid_cols
        if rows is None or cols is None:
            raise SystemExit("grid scheme needs --grid-rows and --grid-cols")
        if rows * cols != n:
            raise SystemExit(f"grid {rows}x{cols} has {rows * cols} qubits, --n was {n}")
        return schedules.grid_schedule(rows, cols)
    if scheme == "graph":
        if args.graph is None:
            raise SystemExit("graph scheme needs --graph FILE.json")
        g = schedules.topology_from_json(Path(args.graph).read_text())
        if g.n != n:
            raise SystemExit(f"graph has {g.n} vertices, --n was {n}")
        return schedules.graph_contraction_schedule(g)
    raise SystemExit(f"unknown scheme {scheme!r}")


def random_target(n: int, rng: np.random.Generator) -> statevec.StateVector:
    """Random complex amplitudes: i.i.d. standard-normal real and imaginary
    parts, then normalized (the sampling law is recorded in reports)."""
    z = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return statevec.from_amplitudes(z)


def resolve_target(name: str, n: int, rng) -> tuple[str, statevec.StateVector, tuple | None]:
    name = name.strip()
    if name == "random":
        return "random", random_target(n, rng), None
    if name.endswith(".amps") or "/" in name:
        spec = targets.make_spec("rawfile", n, path=name)
        return f"rawfile:{name}", targets.discretize(spec), None
    spec = targets.make_spec(name, n)
    return spec.label(), targets.discretize(spec), spec.domain


def compile_one(
    target_state: statevec.StateVector,
    target_label: str,
    schedule: schedules.Schedule,
    layers: int,
    trunc: TruncationMode,
    synth: str,
    seed: int,
    domain,
) -> tuple[SynthesisReport, Circuit]:
    t0 = time.perf_counter()
    rewrite = synth == SynthMode.OPTIMIZED2
    result = run_schedule(target_state, schedule, layers, trunc, rewrite_2cx=rewrite)
    emit_mode = SynthMode.OPTIMIZED2 if rewrite else SynthMode.GENERIC3
    primitive = gatesynth.synthesize_circuit(result.circuit, emit_mode)
    cnots, singles, u_depth = gatesynth.count_gates(result.circuit, emit_mode)
    g_cnots, g_singles, _ = gatesynth.count_gates(result.circuit, SynthMode.GENERIC3)
    report = SynthesisReport(
        scheme=schedule.scheme,
        target=target_label,
        n=schedule.n,
        layers=layers,
        u_depth=u_depth,
        infidelity=result.final_infidelity,
        cnot_count=cnots,
        single_qubit_count=singles,
        cnot_count_generic=g_cnots,
        single_qubit_count_generic=g_singles,
        truncation=trunc.value,
        synth=synth,
        seed=seed,
        domain=domain,
        retained_weights=[float(w) for w in result.per_round_weights],
        wall_time=time.perf_counter() - t0,
    )
    return report, primitive


def _revalidate(qasm_path: Path, target_state, reported_infidelity: float) -> None:
    parsed, _header = qasm.parse(qasm_path.read_text())
    prepared = simulate(parsed)
    err = abs(statevec.infidelity(prepared, target_state) - reported_infidelity)
    if err > 1e-8:
        raise SystemExit(
            f"self-check failed: re-simulated {qasm_path} deviates by {err:.2e}"
        )


def cmd_compile(args) -> int:
    rng = np.random.default_rng(args.seed)
    label, state, domain = resolve_target(args.target, args.n, rng)
    schedule = build_schedule(args.scheme, args.n, args)
    trunc = (
        TruncationMode(args.trunc)
        if args.trunc
        else default_truncation_mode(schedule.scheme)
    )
    report, primitive = compile_one(
        state, label, schedule, args.layers, trunc, args.synth, args.seed, domain
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    header = {
        "scheme": report.scheme,
        "target": report.target,
        "n": report.n,
        "layers": report.layers,
        "truncation": report.truncation,
        "synth": report.synth,
        "seed": report.seed,
        "infidelity": _fmt(report.infidelity),
    }
    qasm_path = out / "circuit.qasm"
    qasm_path.write_text(qasm.emit(primitive, header))
    _revalidate(qasm_path, state, report.infidelity)
    (out / "report.json").write_text(report.to_json() + "\n")
    print(
        f"{report.scheme} n={report.n} layers={report.layers} "
        f"u_depth={report.u_depth} infidelity={report.infidelity:.3e} "
        f"cnots={report.cnot_count}"
    )
    return 0


CSV_FIELDS = [
    "target",
    "scheme",
    "n",
    "layers",
    "truncation",
    "u_depth",
    "infidelity",
    "cnot_2cx",
    "single_qubit_2cx",
    "cnot_3cx",
    "single_qubit_3cx",
    "min_retained_weight",
    "domain_lo",
    "domain_hi",
    "seed",
]


def cmd_benchmark(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    plotdir = out / "plotdata"
    plotdir.mkdir(exist_ok=True)
    target_names = [t for t in args.targets.split(",") if t]
    scheme_names = [s for s in args.schemes.split(",") if s]
    n_list = [int(x) for x in args.n_list.split(",")]
    layers_list = [int(x) for x in args.layers_list.split(",")]
    rows = []
    for n in n_list:
        for tname in target_names:
            samples = args.samples if tname == "random" else 1
            for scheme_name in scheme_names:
                schedule = build_schedule(scheme_name, n, args)
                trunc = (
                    TruncationMode(args.trunc)
                    if args.trunc
                    else default_truncation_mode(schedule.scheme)
                )
                for layers in layers_list:
                    infids, reports = [], []
                    rng = np.random.default_rng(args.seed)
                    for _s in range(samples):
                        label, state, domain = resolve_target(tname, n, rng)
                        try:
                            report, primitive = compile_one(
                                state, label, schedule, layers, trunc,
                                args.synth, args.seed, domain,
                            )
                        except Exception as exc:
                            raise SystemExit(
                                f"benchmark cell failed: target={tname} scheme={scheme_name} "
                                f"n={n} layers={layers}: {exc}"
                            )
                        infids.append(report.infidelity)
                        reports.append(report)
                    rep = reports[0]
                    last_state, last_primitive = state, primitive
                    rows.append(
                        {
                            "target": tname,
                            "scheme": scheme_name,
                            "n": n,
                            "layers": layers,
                            "truncation": trunc.value,
                            "u_depth": rep.u_depth,
                            "infidelity": _fmt(float(np.mean(infids))),
                            "cnot_2cx": rep.cnot_count
                            if args.synth == SynthMode.OPTIMIZED2
                            else "",
                            "single_qubit_2cx": rep.single_qubit_count
                            if args.synth == SynthMode.OPTIMIZED2
                            else "",
                            "cnot_3cx": rep.cnot_count_generic,
                            "single_qubit_3cx": rep.single_qubit_count_generic,
                            "min_retained_weight": _fmt(min(rep.retained_weights)),
                            "domain_lo": "" if domain is None else _fmt(domain[0]),
                            "domain_hi": "" if domain is None else _fmt(domain[1]),
                            "seed": args.seed,
                        }
                    )
                    if tname != "random" and args.plotdata:
                        prepared = simulate(last_primitive)
                        fname = plotdir / f"{tname}_{scheme_name}_n{n}_L{layers}.csv"
                        _write_plotdata(fname, last_state, prepared)
    csv_path = out / "results.csv"
    with open(csv_path, "w", newline="") as fh:
        fh.write(f"# impsprep benchmark results, schema v{CSV_SCHEMA_VERSION}\n")
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {csv_path}")
    return 0


def _write_plotdata(path: Path, target_state, prepared_state) -> None:
    # align the prepared state's global phase with the target before plotting
    overlap = np.vdot(prepared_state.amps, target_state.amps)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-12 else 1.0
    aligned = prepared_state.amps * phase
    with open(path, "w", newline="") as fh:
        fh.write("index,target_re,target_im,prepared_re,prepared_im\n")
        for i, (t, p) in enumerate(zip(target_state.amps, aligned)):
            fh.write(f"{i},{_fmt(t.real)},{_fmt(t.imag)},{_fmt(p.real)},{_fmt(p.imag)}\n")


def cmd_verify(args) -> int:
    results = run_checks(level=args.level, seed=args.seed)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "pass" if r.ok else "FAIL"
        line = f"[{status}] {r.name:<{width}}  ({r.seconds:.2f}s)"
        if not r.ok:
            line += f"  {r.detail}"
            failed += 1
        print(line)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_rank(args) -> int:
    if args.ring:
        kinds = args.ring.split(",")
        if len(kinds) != 2:
            raise SystemExit("--ring wants two comma-separated function kinds")
        domain = (args.domain_lo, args.domain_hi) if args.domain_lo is not None else (0.0, 1.0)
        f = targets.make_spec(kinds[0], args.n, domain=domain)
        g = targets.make_spec(kinds[1], args.n, domain=domain)
        rep = targets.verify_ring_bounds(f, g, tol=args.tol)
        print(json.dumps(asdict(rep), indent=2))
        return 0 if rep.additive_ok and rep.multiplicative_ok else 1
    rng = np.random.default_rng(args.seed)
    label, state, _ = resolve_target(args.target, args.n, rng)
    profile = targets.mps_rank(state, tol=args.tol)
    print(f"target {label}: chi = {profile.chi}")
    print("bond dims:", " ".join(str(d) for d in profile.bond_dims))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="impsprep",
        description="Compile amplitude vectors into shallow two-qubit-gate circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--n", type=int, required=True, help="qubit count")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--grid-rows", type=int, default=None)
        p.add_argument("--grid-cols", type=int, default=None)
        p.add_argument("--graph", default=None, help="topology JSON for --scheme graph")
        p.add_argument("--trunc", choices=("layer", "round"), default=None,
                       help="truncation mode (default: per scheme convention)")
        p.add_argument("--synth", choices=(SynthMode.OPTIMIZED2, SynthMode.GENERIC3, SynthMode.NONE),
                       default=SynthMode.OPTIMIZED2)

    p_compile = sub.add_parser("compile", help="compile one target into circuit.qasm + report.json")
    add_common(p_compile)
    p_compile.add_argument("--target", required=True,
                           help="f1..f3, g1..g3, ghz, w, exp, cos, linear, random, or an .amps file")
    p_compile.add_argument("--scheme", choices=SCHEME_CHOICES, required=True)
    p_compile.add_argument("--layers", type=int, default=1)
    p_compile.add_argument("--out", default=".")
    p_compile.set_defaults(func=cmd_compile)

    p_bench = sub.add_parser("benchmark", help="sweep targets x schemes x sizes x layers")
    add_common(p_bench)
    p_bench.add_argument("--targets", default="f1,f2,f3,g1,g2,g3")
    p_bench.add_argument("--schemes", default="chain,ttn,htn,hen")
    p_bench.add_argument("--n-list", default="8")
    p_bench.add_argument("--layers-list", default="1")
    p_bench.add_argument("--samples", type=int, default=10,
                         help="averaging count for --targets random")
    p_bench.add_argument("--plotdata", action="store_true",
                         help="emit per-index target/prepared curve files")
    p_bench.add_argument("--out", default="benchmark_out")
    p_bench.set_defaults(func=cmd_benchmark)

    p_verify = sub.add_parser("verify", help="run the invariant self-checks")
    p_verify.add_argument("--level", choices=("quick", "full"), default="quick")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    p_rank = sub.add_parser("rank", help="Schmidt ranks and ring bounds")
    p_rank.add_argument("--target", default="ghz")
    p_rank.add_argument("--n", type=int, required=True)
    p_rank.add_argument("--tol", type=float, default=1e-10)
    p_rank.add_argument("--seed", type=int, default=0)
    p_rank.add_argument("--ring", default=None, help="two function kinds, e.g. cos,linear")
    p_rank.add_argument("--domain-lo", type=float, default=None)
    p_rank.add_argument("--domain-hi", type=float, default=None)
    p_rank.set_defaults(func=cmd_rank)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")


if __name__ == "__main__":
    sys.exit(main())
