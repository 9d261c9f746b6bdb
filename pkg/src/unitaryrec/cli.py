"""Command-line entry point.

Subcommands: ``reconstruct`` (one channel from a JSON spec file),
``sweep`` (grid experiment to CSV), ``resources`` (channel-use table),
``selftest`` (quick invariant checks). Exit codes: 0 ok, 1 usage,
2 numerical failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import harness
from .channels import (
    ChoiMatrix,
    DensityMatrix,
    JumpTerm,
    KrausSet,
    NoiseSpec,
    apply_map,
    build_liouvillian,
    jump_terms_for_noise,
    kraus_to_superop,
    propagate,
    random_haar_unitary,
    scenario_hamiltonian,
    to_choi,
    unitary_superop,
)
from .errors import ConfigInvalid, IoFailure, UnitaryRecError
from .linalg import dagger, matrix_exp, principal_log_unitary
from .metrics import estimate_unitarity, gate_fidelity
from .probes import make_mixed_basis_probe, make_phase_probe
from .reconstruct import reconstruct_choi, reconstruct_mixed, reconstruct_pure

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_complex_entry(entry):
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return complex(entry[0], entry[1])
    raise ConfigInvalid(f"matrix entries must be numbers or [re, im] pairs, got {entry!r}")


def _parse_matrix(rows) -> np.ndarray:
    return np.array([[_parse_complex_entry(e) for e in row] for row in rows], dtype=complex)


def _load_channel_spec(path) -> tuple:
    """Build (superoperator, d) from a JSON channel file.

    Accepted layouts: {"kraus": [matrix, ...]} or a Lindblad description
    with "jumps" plus either an explicit "h0" matrix or a "scenario"
    {"kind", "n_qubits", "seed"}. Jumps are {"operator", "rate"} pairs or
    noise shorthands {"kind", "time_constant", "targets"}.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"{path} is not valid JSON: {exc}") from exc

    if "kraus" in data:
        ops = tuple(_parse_matrix(m) for m in data["kraus"])
        kraus = KrausSet(ops)
        return kraus_to_superop(kraus), kraus.dim

    if "h0" in data:
        h0 = _parse_matrix(data["h0"])
        n_qubits = int(np.log2(h0.shape[0]))
    elif "scenario" in data:
        sc = data["scenario"]
        n_qubits = int(sc["n_qubits"])
        h0, _ = scenario_hamiltonian(sc["kind"], n_qubits, sc.get("seed"))
    else:
        raise ConfigInvalid(
            "channel spec needs one of 'kraus', 'h0', or 'scenario'")

    d = h0.shape[0]
    jumps = []
    for entry in data.get("jumps", []):
        if "operator" in entry:
            jumps.append(JumpTerm(_parse_matrix(entry["operator"]), float(entry["rate"])))
        else:
            spec = NoiseSpec(
                kind=entry["kind"],
                time_constant=float(entry["time_constant"]),
                targets=tuple(entry["targets"]),
            )
            jumps.extend(jump_terms_for_noise(spec, n_qubits))
    generator = build_liouvillian(h0, jumps)
    return propagate(generator, data.get("time", harness.GATE_TIME)), d


def _print_unitary(label: str, u: np.ndarray) -> None:
    print(f"{label}:")
    with np.printoptions(precision=6, suppress=True, linewidth=160):
        print(u)


def _cmd_reconstruct(args) -> int:
    sop, d = _load_channel_spec(args.channel)
    chi = to_choi(sop)
    u_est = estimate_unitarity(chi, n_samples=args.unitarity_samples, seed=args.seed)
    print(f"channel dimension d = {d}")
    print(f"unitarity estimate u = {u_est.value:.6f} +/- {u_est.std_error:.6f}")
    action = lambda rho: apply_map(sop, rho)  # noqa: E731
    for method in args.methods.split(","):
        method = method.strip()
        try:
            if method == "mixed":
                res = reconstruct_mixed(action, d, deg_tol=args.deg_tol,
                                        unitarity=u_est.value)
            elif method == "pure":
                res = reconstruct_pure(action, d, deg_tol=args.deg_tol,
                                       unitarity=u_est.value)
            elif method == "choi":
                res = reconstruct_choi(chi, unitarity=u_est.value)
            else:
                print(f"error: unknown method {method!r}", file=sys.stderr)
                return EXIT_USAGE
        except UnitaryRecError as exc:
            print(f"[{method}] failed: {exc.__class__.__name__}: {exc}")
            continue
        _print_unitary(f"[{method}] reconstructed unitary", res.unitary)
        print(f"[{method}] min spectral gap = {res.diagnostics.min_spectral_gap:.6e}")
        if res.diagnostics.image_purities is not None:
            purities = ", ".join(f"{p:.6f}" for p in res.diagnostics.image_purities)
            print(f"[{method}] image purities = [{purities}]")
        if res.diagnostics.warnings:
            print(f"[{method}] warnings: {', '.join(res.diagnostics.warnings)}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise IoFailure(f"cannot read {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigInvalid(f"{args.config} is not valid JSON: {exc}") from exc
    else:
        raise ConfigInvalid("sweep needs --config pointing at a JSON sweep file")
    cfg = harness.SweepConfig.from_dict(data)
    if args.seed is not None:
        cfg = cfg.override(master_seed=args.seed)
    if args.methods:
        cfg = cfg.override(methods=tuple(m.strip() for m in args.methods.split(",")))
    records = harness.run_sweep(cfg, jobs=args.jobs)
    if args.out:
        harness.write_csv(records, args.out)
        print(f"wrote {len(records)} records to {args.out}")
    print(harness.summarize(records))
    return EXIT_OK


def _cmd_resources(args) -> int:
    r_outs = [int(r) for r in args.r_out.split(",")]
    print(f"{'N':>2s} {'d':>3s} {'mixed':>12s} {'pure(U)':>12s} {'choi(U)':>12s} "
          f"{'sqpt':>14s}  pure(general) by r_out")
    for n in range(args.n_min, args.n_max + 1):
        d = 2 ** n
        row = [
            f"{n:2d} {d:3d}",
            f"{harness.channel_uses(harness.ResourceQuery(n, d, 'mixed', 'general')):12d}",
            f"{harness.channel_uses(harness.ResourceQuery(n, 1, 'pure', 'near_unitary')):12d}",
            f"{harness.channel_uses(harness.ResourceQuery(n, 1, 'choi', 'near_unitary')):12d}",
            f"{harness.channel_uses(harness.ResourceQuery(n, 1, 'sqpt', 'general')):14d}",
        ]
        general = []
        for r in r_outs:
            if r > d:
                general.append(f"r={r}: n/a")
                continue
            uses = harness.channel_uses(harness.ResourceQuery(n, r, "pure", "general"))
            general.append(f"r={r}: {uses}")
        print(" ".join(row) + "  " + "  ".join(general))
    return EXIT_OK


def _cmd_selftest(args) -> int:
    """Quick invariant checks; much smaller than the pytest suite."""
    failures = 0

    def check(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1

    rng_seeds = range(args.seed, args.seed + 5)

    for d_qubits in (1, 2):
        d = 2 ** d_qubits
        for s in rng_seeds:
            u = random_haar_unitary(d_qubits, s)
            log = principal_log_unitary(u)
            if np.max(np.abs(matrix_exp(log) - u)) > 1e-8:
                check(f"log/exp round trip d={d}", False)
                break
        else:
            check(f"log/exp round trip d={d}", True)

    ok = True
    for s in rng_seeds:
        u0 = random_haar_unitary(2, s)
        sop = unitary_superop(u0)
        chi = to_choi(sop)
        action = lambda rho: apply_map(sop, rho)  # noqa: E731
        for res in (
            reconstruct_mixed(action, 4),
            reconstruct_pure(action, 4),
            reconstruct_choi(chi),
        ):
            ok = ok and (1.0 - gate_fidelity(u0, res.unitary) <= 1e-9)
    check("unitary-channel exactness (all methods)", ok)

    ok = True
    for s in rng_seeds:
        h0, _ = scenario_hamiltonian("random_haar", 2, s)
        spec = NoiseSpec(kind="T1", time_constant=10.0, targets=(0, 1))
        gen = build_liouvillian(h0, jump_terms_for_noise(spec, 2))
        channel = propagate(gen, 1.0)
        rho = apply_map(channel, make_mixed_basis_probe(4))
        ok = ok and abs(np.trace(rho.matrix).real - 1.0) <= 1e-8
        chi = to_choi(channel)
        ok = ok and np.linalg.eigvalsh(chi.matrix).min() >= -1e-8
    check("noisy propagation stays CPTP", ok)

    rho_p = make_phase_probe(4)
    check("phase probe is a rank-1 projector",
          np.max(np.abs(rho_p.matrix @ rho_p.matrix - rho_p.matrix)) < 1e-12)

    orderings = []
    for n in range(2, 6):
        d = 2 ** n
        pure = harness.channel_uses(harness.ResourceQuery(n, 1, "pure", "near_unitary"))
        mixed = harness.channel_uses(harness.ResourceQuery(n, d, "mixed", "general"))
        choi = harness.channel_uses(harness.ResourceQuery(n, 1, "choi", "near_unitary"))
        sqpt = harness.channel_uses(harness.ResourceQuery(n, 1, "sqpt", "general"))
        orderings.append(pure < mixed == choi < sqpt)
    check("resource ordering pure < mixed = choi < sqpt (N >= 2)", all(orderings))

    print(f"{5 - failures + 0}/{5} groups passed" if failures else "all selftest groups passed")
    return EXIT_OK if failures == 0 else EXIT_NUMERICAL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unitaryrec",
                     description="Reconstruct the unitary part of quantum channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rec = sub.add_parser("reconstruct", help="reconstruct one channel from a JSON spec")
    p_rec.add_argument("channel", help="JSON file with a Kraus list or Lindblad spec")
    p_rec.add_argument("--methods", default="mixed,pure,choi")
    p_rec.add_argument("--deg-tol", type=float, default=1e-6)
    p_rec.add_argument("--seed", type=int, default=0)
    p_rec.add_argument("--unitarity-samples", type=int, default=1000)
    p_rec.set_defaults(func=_cmd_reconstruct)

    p_sweep = sub.add_parser("sweep", help="run a sweep config and write CSV")
    p_sweep.add_argument("--config", required=True, help="JSON sweep configuration")
    p_sweep.add_argument("--out", help="CSV output path")
    p_sweep.add_argument("--seed", type=int, help="override master_seed")
    p_sweep.add_argument("--methods", help="override methods, comma separated")
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_res = sub.add_parser("resources", help="print the channel-use table")
    p_res.add_argument("--n-min", type=int, default=1)
    p_res.add_argument("--n-max", type=int, default=6)
    p_res.add_argument("--r-out", default="1,2,4", help="comma-separated output ranks")
    p_res.set_defaults(func=_cmd_resources)

    p_self = sub.add_parser("selftest", help="run quick invariant checks")
    p_self.add_argument("--seed", type=int, default=0)
    p_self.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IoFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigInvalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnitaryRecError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
