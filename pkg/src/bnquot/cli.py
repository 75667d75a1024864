"""Command line front end.

    bnquot class --genus 1 --degree 4 --segre 0
    bnquot lab survey --degree 4 --trials 100 --seed 7
    bnquot lab dimension --degree 6 --a 2
    bnquot lab sample --degree 5 --seed 3 [--a 1]
    bnquot verify
    bnquot ledger

Exit codes: 0 ok, 1 invariant failure, 2 parameter error, 3 sampling error.
Output depends only on the arguments, so repeated runs are byte-identical.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import lab
from .discrepancies import static_ledger
from .kunneth import TruncationError
from .porteous import CodimensionError
from .scenarios import ScenarioError, StratumReport, make_scenario, stratum_report

EXIT_OK, EXIT_INVARIANT, EXIT_PARAM, EXIT_SAMPLING = 0, 1, 2, 3
MAX_LAB_DEGREE = 12


class ParameterError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage already; keep that but via our own path."""

    def error(self, message):
        raise ParameterError(f"{self.prog}: {message}")


def _common(p: argparse.ArgumentParser, *, seed: bool = False):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    if seed:
        p.add_argument("--seed", type=int, default=0, help="64-bit seed")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bnquot", description="Brill-Noether classes in Quot schemes and a genus-0 lab")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("class", help="class pipeline for one stratum")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--segre", type=int, required=True)
    p.add_argument("--truncate", type=int, default=None, help="override the truncation degree")
    _common(p)

    p_lab = sub.add_parser("lab", help="genus-0 experiments")
    lab_sub = p_lab.add_subparsers(dest="lab_command", required=True, parser_class=_Parser)

    q = lab_sub.add_parser("survey", help="splitting types of random kernels")
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--jobs", type=int, default=1)
    _common(q, seed=True)

    q = lab_sub.add_parser("dimension", help="stratum dimension formula vs parameter count")
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--a", type=int, required=True)
    _common(q, seed=True)

    q = lab_sub.add_parser("sample", help="one kernel matrix, generic or with a prescribed splitting")
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--a", type=int, default=None)
    _common(q, seed=True)

    p = sub.add_parser("verify", help="run the invariant suite and print the discrepancy ledger")
    p.add_argument("--section", type=int, action="append", default=None,
                   help="only run this section (repeatable)")
    _common(p)

    p = sub.add_parser("ledger", help="print the static discrepancy ledger")
    _common(p)
    return parser


# -- rendering -------------------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _ledger_text(entries: list[dict], indent: str = "  ") -> list[str]:
    lines = []
    for e in entries:
        lines.append(f"{indent}- {e['id']}")
        for key in ("reference", "engine", "diff", "note"):
            if e.get(key):
                lines.append(f"{indent}    {key + ':':<10} {e[key]}")
    return lines


def render_report(report: StratumReport) -> str:
    js = report.to_json()
    p, r = js["params"], js["ranks"]
    ex = js["existence"]
    lines = [
        f"stratum g={p['g']} d={p['d']} s={p['s']} a={p['a']} in Quot(G({p['m']},{p['n']})), "
        f"truncation {p['truncation']}",
        f"codimension      {js['codim']}",
        f"pushforward rank {r['pushforward']}",
        f"map ranks        source {r['source']}, target {r['target']}, fiber h0 {r['fiber_h0']}",
        f"large d          {'yes' if r['large_d_ok'] else 'no'}",
        f"existence        {ex['status']}" + (f" ({ex['rule']})" if ex["rule"] else ""),
    ]
    cls = js["class"]
    if cls is None:
        lines.append("class            none (codimension < 1)")
    else:
        lines += [
            f"class -c_p       {cls['minus_chern']}",
            f"class porteous   {cls['porteous']}",
            f"routes agree     {'yes' if cls['agree'] else 'no'}",
        ]
        if cls["discrepancies"]:
            lines.append("discrepancies (reference vs engine):")
            lines += _ledger_text(cls["discrepancies"])
    return "\n".join(lines) + "\n"


def render_survey(sv: lab.Survey) -> str:
    lines = [f"survey d={sv.d} trials={sv.trials} seed={sv.seed}"]
    for k, n in sv.counts.items():
        lines.append(f"  {k:<10} {n}")
    lines.append(f"balanced {sv.balanced}, dominant {sv.dominant}")
    return "\n".join(lines) + "\n"


# -- commands --------------------------------------------------------------------

def cmd_class(args) -> tuple[int, str]:
    sc = make_scenario(args.genus, args.degree, args.segre, args.truncate)
    report = stratum_report(sc)
    text = _dump(report.to_json()) if args.format == "json" else render_report(report)
    return EXIT_OK, text


def _check_lab_degree(d: int):
    if not 0 <= d <= MAX_LAB_DEGREE:
        raise ParameterError(f"lab degree must lie in 0..{MAX_LAB_DEGREE}, got {d}")


def cmd_lab_survey(args) -> tuple[int, str]:
    _check_lab_degree(args.degree)
    if args.trials < 1 or args.jobs < 1:
        raise ParameterError("--trials and --jobs must be positive")
    sv = lab.survey(args.degree, args.trials, args.seed, jobs=args.jobs)
    return EXIT_OK, _dump(sv.to_json()) if args.format == "json" else render_survey(sv)


def cmd_lab_dimension(args) -> tuple[int, str]:
    _check_lab_degree(args.degree)
    if not 0 <= 2 * args.a <= args.degree:
        raise ParameterError("need 0 <= a <= d/2")
    res = lab.stratum_dimension(args.degree, args.a, seed=args.seed)
    if args.format == "json":
        return EXIT_OK, _dump(res.to_json())
    if res.agree:
        note = ""
    elif 2 * args.a == args.degree:
        note = " (balanced stratum: formula exceeds the count)"
    else:
        note = " (mismatch)"
    return EXIT_OK, (f"stratum d={res.d} a={res.a}: formula 3d+2a+5 = {res.formula}, "
                     f"lab count = {res.lab}{note}\n")


def cmd_lab_sample(args) -> tuple[int, str]:
    _check_lab_degree(args.degree)
    if args.a is None:
        K = lab.sample(args.degree, args.seed)
    else:
        if not 0 <= 2 * args.a <= args.degree:
            raise ParameterError("need 0 <= a <= d/2")
        K = lab.kernel_of_surjection(lab.sample_quotient(args.degree, args.a, args.seed),
                                     (args.a, args.degree - args.a))
    st = lab.splitting_type(K)
    out = {"d": K.d, "kernel": K.to_json(), "splitting": str(st), "segre": lab.segre_p1(K),
           "euler_check": lab.euler_check(K)}
    if args.format == "json":
        return EXIT_OK, _dump(out)
    lines = [f"kernel d={K.d} column degrees {tuple(K.col_degrees)}"]
    for row in K.entries:
        lines.append("  [" + ", ".join(str(f) for f in row) + "]")
    lines += [f"splitting {st}, segre {out['segre']}, euler check {'ok' if out['euler_check'] else 'FAILED'}"]
    code = EXIT_OK if out["euler_check"] else EXIT_INVARIANT
    return code, "\n".join(lines) + "\n"


def cmd_verify(args) -> tuple[int, str]:
    from . import verify

    sections = set(args.section) if args.section else None
    checks = verify.run_all(sections=sections)
    ok = all(c.passed for c in checks)
    ledger = static_ledger()
    if args.format == "json":
        text = _dump({"passed": ok,
                      "checks": [{"section": c.section, "name": c.name, "passed": c.passed,
                                  "detail": c.detail} for c in checks],
                      "ledger": ledger})
    else:
        lines = [c.line() for c in checks]
        lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
        lines.append("discrepancy ledger (informational):")
        lines += _ledger_text(ledger)
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_INVARIANT), text


def cmd_ledger(args) -> tuple[int, str]:
    ledger = static_ledger()
    if args.format == "json":
        return EXIT_OK, _dump(ledger)
    return EXIT_OK, "\n".join(_ledger_text(ledger, indent="")) + "\n"


def _dispatch(args) -> tuple[int, str]:
    if args.command == "lab":
        return {"survey": cmd_lab_survey, "dimension": cmd_lab_dimension,
                "sample": cmd_lab_sample}[args.lab_command](args)
    return {"class": cmd_class, "verify": cmd_verify, "ledger": cmd_ledger}[args.command](args)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code, text = _dispatch(args)
    except (ParameterError, ScenarioError, CodimensionError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except lab.SamplingError as exc:
        print(f"sampling error: {exc}", file=sys.stderr)
        return EXIT_SAMPLING
    except (AssertionError, lab.InvalidKernelError) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
