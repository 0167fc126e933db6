"""Command-line front end.

Exit codes: 0 success or accepted, 1 analytic negative (rejected, not a
permutation, target not met), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import invcheck, polyperm, search, seqstats, stg
from .anf import AnfSyntaxError, op_cost, parse_anf
from .mapping import (MappingFormatError, conjugate, format_mapping,
                      nlfsr_feedback_invertible, nlfsr_to_mapping,
                      parse_mapping, relabel, shift_mapping)

OK, NEGATIVE, USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read_mapping(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_mapping(text)
    except (MappingFormatError, ValueError) as e:
        raise InputError(f"{path}: {e}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_check(args) -> int:
    m = _read_mapping(args.file)
    outcome = invcheck.check_theorem1(m)
    if outcome.accepted:
        lines = ["invertible (conditions satisfied)"]
        lines += invcheck.pivot_summary(m, outcome.certificate)
    else:
        unmarked = ", ".join(f"f{i}" for i in outcome.unmarked)
        lines = ["conditions not satisfied", f"reason: {outcome.reason}",
                 f"unmarked: {unmarked}"]
    _emit(args, outcome.to_dict(), "\n".join(lines))
    return OK if outcome.accepted else NEGATIVE


def cmd_oracle(args) -> int:
    m = _read_mapping(args.file)
    report = invcheck.brute_force_invertible(m)
    if report:
        text = "bijective"
    else:
        a, b = report.collision
        text = f"not bijective: states {a} and {b} both map to {m(a)}"
    _emit(args, report.to_dict(), text)
    return OK if report else NEGATIVE


def cmd_invert(args) -> int:
    m = _read_mapping(args.file)
    y = args.state
    if not 0 <= y < (1 << m.n):
        raise InputError(f"state {y} is not an {m.n}-bit value")
    outcome = invcheck.check_theorem1(m)
    if outcome.accepted:
        x = invcheck.invert_state(m, outcome.certificate, y)
        method = "certificate"
    else:
        report = invcheck.brute_force_invertible(m)
        if not report:
            _emit(args, {"state": y, "invertible": False, **report.to_dict()},
                  f"mapping is not invertible (collision {report.collision})")
            return NEGATIVE
        x = int(invcheck.inverse_table(m)[y])
        method = "exhaustive"
    _emit(args, {"state": y, "preimage": x, "method": method}, str(x))
    return OK


def cmd_cycles(args) -> int:
    m = _read_mapping(args.file)
    report = stg.cycle_structure(m)
    counts = report.length_counts()
    lines = [f"n = {m.n}", f"cycles: {len(report.cycles)}"]
    lines += [f"  length {l}: {c}" for l, c in counts.items()]
    lines.append(f"tail states: {report.tail_states}")
    _emit(args, report.to_dict(), "\n".join(lines))
    return OK


def cmd_simulate(args) -> int:
    m = _read_mapping(args.file)
    _check_state(m, args.seed)
    bits = seqstats.output_sequence(m, args.seed, args.bit, args.len)
    _emit(args, {"seed": args.seed, "bit": args.bit, "bits": bits},
          "".join(map(str, bits)))
    return OK


def cmd_golomb(args) -> int:
    m = _read_mapping(args.file)
    _check_state(m, args.seed)
    bits = seqstats.period_sequence(m, args.seed, args.bit)
    report = seqstats.sequence_report(bits)
    lines = [
        f"period: {report.period}",
        f"ones: {report.ones_count}, zeros: {report.zeros_count}, balance_ok: {report.balance_ok}",
        "runs (length: zero-runs/one-runs): " + ", ".join(
            f"{k}: {z}/{o}" for k, (z, o) in report.run_histogram.items()),
        f"run_ok: {report.run_ok}",
        f"autocorrelation: {list(report.autocorrelation)}",
        f"two_level: {report.two_level}",
    ]
    _emit(args, report.to_dict(), "\n".join(lines))
    return OK if report.balance_ok and report.run_ok else NEGATIVE


def cmd_search(args) -> int:
    if args.config:
        try:
            cfg = search.load_config(args.config)
        except OSError as e:
            raise InputError(f"cannot read {args.config}: {e.strerror}") from None
    else:
        if args.width is None:
            raise InputError("search needs --config or --width")
        cfg = search.SearchConfig(
            n=args.width, op_budget=args.budget, max_modified=args.max_modified,
            rng_seed=args.seed, candidate_limit=args.limit,
            period_target=args.period_target, require_nonlinear=args.nonlinear)
    overrides = {}
    if args.threads is not None:
        overrides["workers"] = args.threads
    if overrides:
        cfg = search.SearchConfig.from_dict({**cfg.to_dict(), **overrides})
    result = search.run_search(cfg)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for k, f in enumerate(result.found):
            (out / f"find_{k:04d}.map").write_text(
                f"# candidate {f.index}, cost {f.total_cost}, period {f.verified_period}\n"
                + format_mapping(f.mapping, omit_shift=True))
        (out / "summary.json").write_text(result.to_json() + "\n")
    if args.json:
        print(result.to_json())
    else:
        print(f"candidates: {result.candidates_tried}, accepted by checker: "
              f"{result.accepted_by_checker}, finds: {len(result.found)}")
        for f in result.found:
            print(f"# candidate {f.index}, cost {f.total_cost}, period {f.verified_period}")
            print(format_mapping(f.mapping, omit_shift=True))
    return OK


def cmd_rivest(args) -> int:
    try:
        p = polyperm.parse_coeffs(args.coeffs, args.width)
    except ValueError as e:
        raise InputError(str(e)) from None
    if p.n > 2:
        perm = polyperm.is_rivest_permutation(p)
        method = "parity criterion"
    else:
        perm = bool(invcheck.brute_force_invertible(polyperm.poly_to_mapping(p)))
        method = "exhaustive"
    _emit(args, {"polynomial": list(p.coeffs), "width": p.n, "permutation": perm,
                 "method": method},
          f"{p}: permutation: {str(perm).lower()} ({method})")
    return OK if perm else NEGATIVE


def cmd_relabel(args) -> int:
    m = _read_mapping(args.file)
    perm = _int_list(args.perm)
    try:
        out = conjugate(m, perm) if args.conjugate else relabel(m, perm)
    except ValueError as e:
        raise InputError(str(e)) from None
    text = format_mapping(out)
    _emit(args, {"mapping": text}, text.rstrip("\n"))
    return OK


def cmd_nlfsr(args) -> int:
    try:
        fb = parse_anf(args.feedback, args.width)
    except AnfSyntaxError as e:
        raise InputError(str(e)) from None
    m = nlfsr_to_mapping(fb, args.width)
    ok = nlfsr_feedback_invertible(fb)
    text = format_mapping(m)
    _emit(args, {"mapping": text, "invertible": ok},
          text + f"# feedback invertible: {str(ok).lower()}")
    return OK if ok else NEGATIVE


def cmd_cost(args) -> int:
    m = _read_mapping(args.file)
    rows = []
    for i, f in enumerate(m.outputs):
        c = op_cost(f)
        rows.append({"output": i, "xor": c.xor, "and": c.and_, "total": c.total})
    all_total = sum(r["total"] for r in rows)
    beyond = search.total_cost(m, shift_mapping(m.n))
    lines = [f"f{r['output']}: {r['xor']} xor + {r['and']} and = {r['total']}"
             for r in rows if r["total"]]
    lines.append(f"total: {all_total}")
    lines.append(f"total beyond shift backbone: {beyond}")
    _emit(args, {"outputs": rows, "total": all_total, "total_vs_shift": beyond},
          "\n".join(lines))
    return OK


def _check_state(m, s: int) -> None:
    if not 0 <= s < (1 << m.n):
        raise InputError(f"state {s} is not an {m.n}-bit value")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON instead of text")

    parser = argparse.ArgumentParser(
        prog="invmap", parents=[common],
        description="Construct, check and analyze invertible Boolean mappings.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, file=True):
        p = sub.add_parser(name, parents=[common], help=help)
        if file:
            p.add_argument("file", help="mapping file ('-' for stdin)")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "free-variable invertibility check with certificate")
    add("oracle", cmd_oracle, "exhaustive bijectivity test")
    p = add("invert", cmd_invert, "preimage of a state")
    p.add_argument("--state", type=int, required=True)
    add("cycles", cmd_cycles, "cycle structure of the state graph")
    p = add("simulate", cmd_simulate, "output bit sequence")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--bit", type=int, default=0)
    p.add_argument("--len", type=int, default=32)
    p = add("golomb", cmd_golomb, "Golomb postulates on one output period")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--bit", type=int, default=0)

    p = add("search", cmd_search, "seeded search for full-period mappings", file=False)
    p.add_argument("--config", help="JSON search config")
    p.add_argument("--width", type=int)
    p.add_argument("--budget", type=int, default=4)
    p.add_argument("--max-modified", type=int, default=3)
    p.add_argument("--seed", type=int, default=search.DEFAULT_SEED)
    p.add_argument("--limit", type=int, default=10_000)
    p.add_argument("--period-target", type=int)
    p.add_argument("--nonlinear", action="store_true", help="skip candidates without an AND term")
    p.add_argument("--threads", type=int)
    p.add_argument("--out-dir", help="write one mapping file per find plus summary.json")

    p = add("rivest", cmd_rivest, "permutation test for a polynomial mod 2^n", file=False)
    p.add_argument("--coeffs", required=True, help="a0,a1,...,ad")
    p.add_argument("--width", type=int, required=True)

    p = add("relabel", cmd_relabel, "rename variables by a permutation")
    p.add_argument("--perm", required=True, help="image list p0,p1,... (x_j -> x_pj)")
    p.add_argument("--conjugate", action="store_true",
                   help="also move output positions (state-graph isomorphism)")

    p = add("nlfsr", cmd_nlfsr, "state mapping of a Fibonacci NLFSR", file=False)
    p.add_argument("--feedback", required=True)
    p.add_argument("--width", type=int, required=True)

    add("cost", cmd_cost, "two-input gate counts")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "json"):
        args.json = False
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
