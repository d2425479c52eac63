"""Command-line entry point: analyze, edss, sweep, verify."""

import argparse
import json
import sys

import numpy as np

from .edss import AncillaSpec, ancilla_state, edss_useful, run_protocol, sweep, sweep_csv, sweep_summary
from .oracle import run_verification, verification_report
from .report import report_for_state
from .states import BellDiagonalParams, DensityMatrix, bd_params_of, bell_diagonal, is_separable_bd, load_state


def _parse_bd(text: str) -> BellDiagonalParams:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated decimals: c1,c2,c3")
    try:
        return BellDiagonalParams(*(float(x) for x in parts))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _parse_ancilla(text: str):
    if text == "auto":
        return "auto"
    parts = text.split(",")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("expected 'auto' or THETA,PHI[,R]")
    try:
        vals = [float(x) for x in parts]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    if len(vals) == 2:
        vals.append(1.0)
    return AncillaSpec.fixed(*vals)


def _resolve_state(args) -> DensityMatrix:
    if args.state is not None:
        return load_state(args.state)
    args.bd.validate()
    return bell_diagonal(args.bd)


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _cmd_analyze(args) -> int:
    rho = _resolve_state(args)
    rep = report_for_state(rho)
    if args.format == "json":
        text = json.dumps(rep.to_dict(), indent=1) + "\n"
    elif args.format == "csv":
        text = ",".join(rep.FIELDS) + "\n"
        text += ",".join(
            str(v).lower() if isinstance(v, bool) else f"{v:.12g}" for v in rep.to_dict().values()
        ) + "\n"
    else:
        text = rep.to_text()
    _emit(text, args.out)
    return 0


def _trace_doc(trace) -> dict:
    doc = {
        "success": trace.success,
        "send_step_ppt": trace.send_step_ppt,
        "final_ab_negativity": trace.final_ab_negativity,
        "stages": {},
    }
    for stage, verdicts in trace.stage_verdicts.items():
        doc["stages"][stage] = {
            v.cut: {
                "min_eigenvalue": v.min_eigenvalue,
                "is_ppt": v.is_ppt,
                "pt_spectrum": [float(x) for x in trace.pt_spectra[stage][v.cut]],
            }
            for v in verdicts
        }
    return doc


def _trace_text(doc: dict) -> str:
    lines = [
        f"success {str(doc['success']).lower()}",
        f"send_step_ppt {str(doc['send_step_ppt']).lower()}",
        f"final_ab_negativity {doc['final_ab_negativity']:.12g}",
    ]
    for stage, cuts in doc["stages"].items():
        for cut, info in cuts.items():
            spec = " ".join(f"{x:.12g}" for x in info["pt_spectrum"])
            lines.append(
                f"{stage} {cut} min_eigenvalue {info['min_eigenvalue']:.12g} "
                f"is_ppt {str(info['is_ppt']).lower()} spectrum {spec}"
            )
    return "\n".join(lines) + "\n"


def _cmd_edss(args) -> int:
    if args.state is not None:
        p = bd_params_of(load_state(args.state))
    else:
        p = args.bd
    p.validate()
    if not is_separable_bd(p):
        print("error: input state is entangled; the protocol requires a separable resource", file=sys.stderr)
        return 2

    if args.ancilla == "auto" or args.ancilla is None:
        spec = AncillaSpec.search(n_polar=args.grid, n_azimuth=2 * args.grid)
        result = edss_useful(p, spec)
        wit = result.witness if result.witness is not None else None
        if wit is not None:
            anc = ancilla_state(*wit)
        else:
            anc = ancilla_state(0.0, 0.0, 1.0)
        trace = run_protocol(bell_diagonal(p), anc)
        doc = _trace_doc(trace)
        doc["edss_useful"] = result.useful
        doc["witness"] = list(wit) if wit is not None else None
        doc["min_pt_eigenvalue"] = result.min_pt_eigenvalue
    else:
        spec = args.ancilla
        anc = ancilla_state(spec.theta, spec.phi, spec.radius)
        trace = run_protocol(bell_diagonal(p), anc)
        doc = _trace_doc(trace)
        doc["ancilla"] = [spec.theta, spec.phi, spec.radius]

    if args.format == "json":
        text = json.dumps(doc, indent=1) + "\n"
    else:
        extra = []
        for key in ("edss_useful", "witness", "min_pt_eigenvalue", "ancilla"):
            if key in doc:
                extra.append(f"{key} {doc[key]}")
        text = _trace_text(doc) + ("\n".join(extra) + "\n" if extra else "")
    _emit(text, args.out)
    return 0


def _cmd_sweep(args) -> int:
    spec = AncillaSpec.search(n_polar=args.ancilla_grid, n_azimuth=2 * args.ancilla_grid)
    rows = sweep(args.grid, spec)
    _emit(sweep_csv(rows), args.out)
    print(sweep_summary(rows), file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    checks = run_verification(seed=args.seed, samples=args.samples)
    _emit(verification_report(checks), args.out)
    return 0 if all(c.passed for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compcorr",
        description="Two-qubit correlation toolkit: complementary correlations, "
        "discord, PPT verdicts, and entanglement distribution with separable states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_state_source(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--bd", type=_parse_bd, help="Bell-diagonal triple c1,c2,c3")
        group.add_argument("--state", help="path to a state file (dims, matrix_re, matrix_im)")

    p = sub.add_parser("analyze", help="full correlation report for one state")
    add_state_source(p)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("edss", help="run the distribution protocol on a separable state")
    add_state_source(p)
    p.add_argument("--ancilla", type=_parse_ancilla, default="auto", help="'auto' or THETA,PHI[,R]")
    p.add_argument("--grid", type=int, default=24, help="polar resolution of the ancilla search")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_edss)

    p = sub.add_parser("sweep", help="evaluate the separable grid and write a CSV table")
    p.add_argument("--grid", type=int, default=9, help="resolution per axis on [-1, 1]")
    p.add_argument("--ancilla-grid", type=int, default=24, help="polar resolution of the ancilla search")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="run the oracle cross-check suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
