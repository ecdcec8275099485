import argparse
import json
import logging
import sys

from qnczero.builders.builder import build_circuit, canonical_family
from qnczero.builders.level import choose_level
from qnczero.circuit.serialize import circuit_to_json
from qnczero.constants import DEFAULT_SEED
from qnczero.dlp.instance import make_instance
from qnczero.dlp.solver import solve_dlp
from qnczero.errors import DlpError, ParameterError, QncError
from qnczero.utils import build_logger, close_log_file, set_log_level
from qnczero.verify.harness import VERIFY_MODES, exhaustive_verify, report_to_frame
from qnczero.verify.scaling import rows_to_frame, scaling_flags, scaling_table

logger = build_logger("qnczero.cli")

THRESHOLD_FAMILIES = ("exact", "th_exactsum", "th_combined", "threshold")


def add_family_args(parser, many_n=False):
    parser.add_argument("--family", type=str, required=True)
    if many_n:
        parser.add_argument("--n", type=int, nargs="+", required=True)
    else:
        parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--t", type=int, default=None)
    parser.add_argument("--l", type=int, default=None)
    parser.add_argument("--c", type=int, default=None)
    parser.add_argument("--a", type=str, default=None, help="parity mask a_0 a_1 ...")
    parser.add_argument("--table", type=str, default=None, help="truth table f(0) f(1) ...")
    parser.add_argument("--variant", type=str, default=None)
    parser.add_argument("--side", type=str, default=None)
    parser.add_argument("--kind", type=str, default=None, help="phase flag kind: A or zero")
    parser.add_argument("--m", type=int, default=None)


def add_output_args(parser):
    parser.add_argument("--format", type=str, default="json", choices=["json", "csv"])
    parser.add_argument("--out", type=str, default=None)


def build_parser():
    parser = argparse.ArgumentParser(prog="qnczero")
    parser.add_argument("--log-level", type=str, default="WARNING")
    parser.add_argument("--log-file", type=str, default=None,
                        help="also append log records here; relative paths resolve under QNCZERO_LOGDIR")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build")
    add_family_args(build)
    build.add_argument("--mode", type=str, default="gadget", choices=["gate", "gadget"])
    add_output_args(build)

    metrics = sub.add_parser("metrics")
    add_family_args(metrics, many_n=True)
    metrics.add_argument("--t-frac", type=float, default=None)
    metrics.add_argument("--mode", type=str, default="gadget", choices=["gate", "gadget"])
    metrics.add_argument("--flags", action="store_true", help="print scaling flags as well")
    add_output_args(metrics)

    verify = sub.add_parser("verify")
    add_family_args(verify, many_n=True)
    verify.add_argument("--mode", type=str, default="coherent", choices=list(VERIFY_MODES))
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--num-chunks", type=int, default=1)
    verify.add_argument("--chunk-idx", type=int, default=0)
    verify.add_argument("--timings", action="store_true", help="report wall time per parameter set")
    add_output_args(verify)

    dlp = sub.add_parser("dlp")
    dlp.add_argument("--q", type=int, required=True)
    dlp.add_argument("--gq", type=int, default=None)
    dlp.add_argument("--x", type=int, required=True)
    dlp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    dlp.add_argument("--mode", type=str, default="sample", choices=["sample", "all-branches"])
    dlp.add_argument("--all-branches", action="store_true")
    dlp.add_argument("--flags", type=str, default="oracle", choices=["oracle", "circuit"])
    add_output_args(dlp)
    return parser


def family_params(args):
    params = {}
    for name in ("t", "l", "c", "a", "variant", "side", "kind", "m"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    if args.table is not None:
        if set(args.table) - {"0", "1"}:
            raise ParameterError(f'truth table must be a bit string, got {args.table!r}')
        params["table"] = [int(ch) for ch in args.table]
    return params


def write_output(text, out):
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w") as f:
            f.write(text)


def dumps(data):
    return json.dumps(data, sort_keys=True, indent=2)


def run_build(args):
    if args.format != "json":
        raise ParameterError('circuits serialize to json only')
    circuit = build_circuit(args.family, form=args.mode, n=args.n, **family_params(args))
    write_output(circuit_to_json(circuit), args.out)
    return 0


def run_metrics(args):
    params = family_params(args)
    if args.t_frac is not None:
        params["t_frac"] = args.t_frac
    rows = scaling_table(args.family, params, args.n, form=args.mode)
    if args.format == "csv":
        write_output(rows_to_frame(rows).to_csv(index=False), args.out)
        return 0
    data = {"rows": [r.to_dict() for r in rows]}
    if args.flags:
        data["flags"] = scaling_flags(rows)
    write_output(dumps(data), args.out)
    return 0


def verify_jobs(family, n, params):
    """Parameter sets to check at size n; thresholds sweep t (and l) when not given."""
    family = canonical_family(family)
    if family not in THRESHOLD_FAMILIES or "t" in params:
        ts = [params.get("t")]
    else:
        ts = list(range(0 if family == "exact" else 1, n + 1))
    for t in ts:
        job = dict(params)
        if t is not None:
            job["t"] = t
        if family == "th_combined" and "l" not in params:
            for l in range(t.bit_length()):
                yield {**job, "l": l}
        elif family == "threshold" and "l" not in params:
            yield {**job, "l": choose_level(n, t)}
        else:
            yield job


def run_verify(args):
    params = family_params(args)
    reports = []
    for n in args.n:
        for job in verify_jobs(args.family, n, params):
            reports.append(exhaustive_verify(args.family, job, n, mode=args.mode,
                                             workers=args.workers, num_chunks=args.num_chunks,
                                             chunk_idx=args.chunk_idx))
    if args.format == "csv":
        write_output(report_to_frame(reports, timings=args.timings).to_csv(index=False), args.out)
    else:
        data = {
            "n_range": [min(args.n), max(args.n)],
            "reports": [r.to_dict(timings=args.timings) for r in reports],
        }
        if args.timings:
            data["elapsed_ms"] = round(sum(r.elapsed_ms for r in reports), 3)
        write_output(dumps(data), args.out)
    return 0 if all(r.passed for r in reports) else 1


def run_dlp(args):
    inst = make_instance(args.q, args.gq)
    mode = "all_branches" if args.all_branches or args.mode == "all-branches" else "sample"
    try:
        result = solve_dlp(inst, args.x, seed=args.seed, mode=mode, flags=args.flags)
    except DlpError as e:
        logger.error(f"dlp failed: {e}")
        return 1
    if args.format == "csv":
        raise ParameterError('dlp results serialize to json only')
    write_output(dumps({"instance": inst.to_dict(), **result.to_dict()}), args.out)
    return 0


COMMANDS = {
    "build": run_build,
    "metrics": run_metrics,
    "verify": run_verify,
    "dlp": run_dlp,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    set_log_level(getattr(logging, args.log_level.upper(), logging.WARNING))
    if args.log_file is not None:
        build_logger("qnczero", args.log_file)
    try:
        return COMMANDS[args.command](args)
    except ParameterError as e:
        logger.debug("parameter error", exc_info=True)
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"qnczero: error: {e}\n")
        return 2
    except QncError as e:
        logger.debug("failure", exc_info=True)
        sys.stderr.write(f"qnczero: error: {e}\n")
        return 1
    finally:
        if args.log_file is not None:
            close_log_file()


if __name__ == "__main__":
    sys.exit(main())
