"""Command-line front end: JSON in, JSON out.

Exit codes: 0 on success, 1 when a check battery fails, 2 for malformed
or invalid input.  Every error is one machine-readable {"error": ...}
line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .functionals import eval_kstar, load_kstar
from .lab import EXPERIMENTS, run_check_suite
from .nodes import enumerate_nodes
from .norm import jt_norm
from .vectors import EXACT, FLOAT, load_vector, scalar_to_json


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse hook
        print(json.dumps({"error": message}), file=sys.stderr)
        raise SystemExit(2)


def _emit(doc) -> None:
    print(json.dumps(doc))


def _cmd_norm(args, force_witness: bool = False) -> int:
    x = load_vector(args.vector, args.backend)
    witness = jt_norm(x, method=args.method, max_candidates=args.max_candidates)
    doc = {
        "value_squared": scalar_to_json(witness.value_squared),
        "value": witness.value,
        "method": args.method,
        "backend": args.backend,
    }
    if force_witness or args.witness:
        doc["witness"] = [str(seg) for seg in witness.family]
    _emit(doc)
    return 0


def _cmd_witness(args) -> int:
    return _cmd_norm(args, force_witness=True)


def _cmd_eval(args) -> int:
    k = load_kstar(args.functional, args.backend)
    x = load_vector(args.vector, args.backend)
    value = eval_kstar(k, x)
    _emit({"value": scalar_to_json(value), "value_decimal": float(value)})
    return 0


def _cmd_check(args) -> int:
    reports = run_check_suite(seed=args.seed)
    doc = {
        "seed": args.seed,
        "checks": [
            {"name": r.name, "verdict": "pass" if r.verdict else "fail"}
            for r in reports
        ],
        "verdict": "pass" if all(r.verdict for r in reports) else "fail",
    }
    _emit(doc)
    return 0 if all(r.verdict for r in reports) else 1


def _cmd_experiment(args) -> int:
    runner = EXPERIMENTS[args.name]
    report = runner(seed=args.seed, trials=args.trials)
    doc = report.to_json_dict()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        _emit({"name": report.name, "out": args.out, "verdict": doc["verdict"]})
    else:
        _emit(doc)
    return 0 if report.verdict else 1


def _cmd_enumerate(args) -> int:
    _emit([str(node) for node in enumerate_nodes(args.n)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jamestree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_backend(p):
        p.add_argument("--backend", choices=(EXACT, FLOAT), default=EXACT)

    p_norm = sub.add_parser("norm", help="norm of a vector file")
    p_norm.add_argument("vector")
    add_backend(p_norm)
    p_norm.add_argument("--method", choices=("dp", "oracle"), default="dp")
    p_norm.add_argument("--witness", action="store_true")
    p_norm.add_argument("--max-candidates", type=int, default=22)
    p_norm.set_defaults(func=_cmd_norm)

    p_wit = sub.add_parser("witness", help="norm plus an optimal segment family")
    p_wit.add_argument("vector")
    add_backend(p_wit)
    p_wit.add_argument("--method", choices=("dp", "oracle"), default="dp")
    p_wit.add_argument("--witness", action="store_true", help=argparse.SUPPRESS)
    p_wit.add_argument("--max-candidates", type=int, default=22)
    p_wit.set_defaults(func=_cmd_witness)

    p_eval = sub.add_parser("eval", help="apply a functional file to a vector file")
    p_eval.add_argument("functional")
    p_eval.add_argument("vector")
    add_backend(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_check = sub.add_parser("check", help="run the invariant batteries")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.set_defaults(func=_cmd_check)

    p_exp = sub.add_parser("experiment", help="run a named experiment")
    p_exp.add_argument("--name", required=True, choices=sorted(EXPERIMENTS))
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--trials", type=int, default=None)
    p_exp.add_argument("--out", default=None)
    p_exp.set_defaults(func=_cmd_experiment)

    p_enum = sub.add_parser("enumerate", help="print the first n nodes")
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.set_defaults(func=_cmd_enumerate)

    return parser


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


def console_main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    console_main()
