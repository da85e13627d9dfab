"""Command-line front end.

Every game subcommand reads a game file (``--game``), computes one result
and prints it either as an aligned text table or as JSON.  Exit codes:

    0  success (property holds, vector is a member, ...)
    1  a negative answer or a refuted property
    2  bad input or usage
    3  enumeration budget exceeded
    4  internal consistency failure (a bug)
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Callable, Optional

from . import fixture_path
from .errors import (BudgetExceededError, GameError, InternalConsistencyError)
from .game import (Game, format_coalition, is_supermodular, marginal_vector, members,
                   random_game, random_supermodular_game, reduced_game)
from .gamefile import dump_game, parse_coalition, parse_game, parse_payoff
from .lorenz import dutta_ray_decomposition, lorenz_core_table
from .mconvex import (DEFAULT_BUDGET, canonical_decomposition,
                      canonical_decomposition_by_threshold, core_enumerate, core_membership,
                      core_violation, dec_min_by_tightening, lss)
from .vectors import VectorSet
from .verify import PROPERTIES, check_property

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4
BUDGET_ENV = "LORENZGAME_BUDGET"


class UsageError(Exception):
    pass


# -- formatting ---------------------------------------------------------------

def rational(q: Fraction) -> str:
    """``"p/q"`` in lowest terms, or ``"p"`` when the value is an integer."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vec_text(v) -> str:
    return "(" + ", ".join(str(a) for a in v) + ")"


def set_payload(vs: VectorSet) -> dict:
    return {"count": len(vs), "vectors": [list(v) for v in vs]}


def set_lines(title: str, vs: VectorSet) -> list:
    noun = "vector" if len(vs) == 1 else "vectors"
    return [f"{title}: {len(vs)} {noun}"] + ["  " + vec_text(v) for v in vs]


def braces(mask: int, labels=None) -> str:
    return "{" + format_coalition(mask, labels) + "}"


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return rational(value)
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return value.item()
    return value


def table_rows(header: list, rows: list) -> list:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]


# -- subcommands --------------------------------------------------------------
# Each returns (payload, table lines, exit code).

def _coalition_arg(g: Game, text: Optional[str]) -> int:
    if text is None:
        return g.grand
    try:
        return parse_coalition(text, g.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _payoff_arg(text: str, length: int) -> tuple:
    try:
        x = parse_payoff(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(x) != length:
        raise UsageError(f"payoff {text!r} has {len(x)} entries, expected {length}")
    return x


def cmd_check_convex(g, args):
    report = is_supermodular(g)
    if report.holds:
        return {"supermodular": True, "witness": None}, ["supermodular: yes"], EXIT_OK
    s, t = report.witness
    w = g.worth
    text = (f"v({braces(s)}) + v({braces(t)}) = {w[s] + w[t]} > "
            f"{w[s | t] + w[s & t]} = v({braces(s | t)}) + v({braces(s & t)})")
    payload = {"supermodular": False,
               "witness": {"S": format_coalition(s), "T": format_coalition(t),
                           "lhs": w[s] + w[t], "rhs": w[s | t] + w[s & t]}}
    return payload, ["supermodular: no", "violated: " + text], EXIT_NEGATIVE


def cmd_core(g, args):
    s = _coalition_arg(g, args.coalition)
    core = core_enumerate(g, s, budget=args.budget)
    payload = {"coalition": format_coalition(s), **set_payload(core)}
    return payload, set_lines(f"integer core of {braces(s)}", core), EXIT_OK


def cmd_core_member(g, args):
    s = _coalition_arg(g, args.coalition)
    x = _payoff_arg(args.payoff, len(members(s)))
    bad = core_violation(g, s, x)
    if bad is None:
        return ({"coalition": format_coalition(s), "payoff": list(x), "member": True,
                 "violation": None},
                [f"{vec_text(x)} is in the core of {braces(s)}"], EXIT_OK)
    payload = {"coalition": format_coalition(s), "payoff": list(x), "member": False,
               "violation": {"kind": bad.kind, "coalition": format_coalition(bad.coalition),
                             "payoff_sum": bad.payoff_sum, "worth": bad.worth,
                             "text": str(bad)}}
    lines = [f"{vec_text(x)} is not in the core of {braces(s)}", f"violated: {bad}"]
    return payload, lines, EXIT_NEGATIVE


def cmd_lss(g, args):
    result = lss(g, budget=args.budget)
    return set_payload(result), set_lines("Lorenz stable set", result), EXIT_OK


def cmd_decmin(g, args):
    start = marginal_vector(g, range(g.n))
    x = dec_min_by_tightening(g)
    payload = {"start": list(start), "vector": list(x)}
    lines = [f"start (greedy vertex): {vec_text(start)}",
             f"dec-min core element:  {vec_text(x)}"]
    return payload, lines, EXIT_OK


def cmd_canonical(g, args):
    dec = canonical_decomposition(g)
    other = canonical_decomposition_by_threshold(g)
    if dec != other:
        raise InternalConsistencyError(
            f"iterative decomposition {dec} differs from threshold decomposition {other}")
    payload = {"beta": list(dec.beta),
               "chain": [format_coalition(c) for c in dec.chain],
               "partition": [format_coalition(s) for s in dec.partition]}
    rows = [(k + 1, b, braces(s), braces(c))
            for k, (b, s, c) in enumerate(zip(dec.beta, dec.partition, dec.chain))]
    return payload, table_rows(["k", "beta_k", "S_k", "C_k"], rows), EXIT_OK


def cmd_egalitarian(g, args):
    table = lorenz_core_table(g, budget=args.budget)
    result = table[g.grand].egalitarian
    return set_payload(result), set_lines("egalitarian solutions E(L(N))", result), EXIT_OK


def _file_order(masks):
    return sorted(masks, key=lambda m: (bin(m).count("1"), members(m)))


def cmd_lorenz_core(g, args):
    if args.coalition is not None:
        s = _coalition_arg(g, args.coalition)
        entry = lorenz_core_table(g, s, budget=args.budget)[s]
        payload = {"coalition": format_coalition(s),
                   "lorenz_core": set_payload(entry.lorenz_core),
                   "egalitarian": set_payload(entry.egalitarian)}
        lines = (set_lines(f"Lorenz core L({braces(s)})", entry.lorenz_core)
                 + set_lines(f"egalitarian E(L({braces(s)}))", entry.egalitarian))
        return payload, lines, EXIT_OK
    table = lorenz_core_table(g, budget=args.budget)
    rows, out = [], []
    for m in _file_order(table):
        entry = table[m]
        out.append({"coalition": format_coalition(m), "worth": g.worth[m],
                    "lorenz_core_size": len(entry.lorenz_core),
                    "egalitarian": [list(v) for v in entry.egalitarian]})
        rows.append((braces(m), g.worth[m], len(entry.lorenz_core),
                     "{" + ", ".join(vec_text(v) for v in entry.egalitarian) + "}"))
    return {"coalitions": out}, table_rows(["S", "v(S)", "|L(S)|", "EL(S)"], rows), EXIT_OK


def cmd_dutta_ray(g, args):
    run = dutta_ray_decomposition(g)
    payload = {"steps": [{"coalition": format_coalition(m), "average": rational(a)}
                         for m, a in run.steps],
               "solution": [rational(q) for q in run.solution]}
    rows = [(k + 1, braces(m), rational(a)) for k, (m, a) in enumerate(run.steps)]
    lines = table_rows(["step", "S_k", "average"], rows)
    lines.append("solution: (" + ", ".join(rational(q) for q in run.solution) + ")")
    return payload, lines, EXIT_OK


def cmd_reduce(g, args):
    s = _coalition_arg(g, args.coalition)
    if s == g.grand:
        raise UsageError("the reduced game needs a proper coalition")
    x = _payoff_arg(args.payoff, g.n)
    r = reduced_game(g, s, x)
    worths = {format_coalition(t, r.labels): r.worth[t] for t in _file_order(range(1, 1 << r.n))}
    payload = {"coalition": format_coalition(s), "payoff": list(x),
               "players": [p + 1 for p in r.labels], "worths": worths}
    rows = [(braces(t, r.labels), r.worth[t]) for t in _file_order(range(1, 1 << r.n))]
    lines = [f"reduced game on {braces(s)} at x = {vec_text(x)}",
             "players renumbered " + ", ".join(f"{p + 1} -> {k + 1}" for k, p in enumerate(r.labels))]
    lines += table_rows(["T", "v_S^x(T)"], rows)
    if args.save:
        with open(args.save, "w", encoding="utf-8") as fh:
            fh.write(dump_game(r))
        payload["saved"] = args.save
        lines.append(f"saved to {args.save} (players numbered 1..{r.n})")
    return payload, lines, EXIT_OK


def cmd_verify(g, args):
    report = check_property(args.property, g, budget=args.budget, margin=args.margin)
    ce = report.counterexample
    payload = {"property": report.property, "status": report.status, "holds": report.holds,
               "skipped": report.skipped, "checked": report.checked, "note": report.note,
               "counterexample": None}
    lines = [f"{report.property}: {report.status}"]
    if report.note:
        lines.append(f"note: {report.note}")
    lines.append(f"checks: {report.checked}")
    if ce is not None:
        payload["counterexample"] = {
            "x": list(ce.x),
            "coalition": format_coalition(ce.coalition) if ce.coalition else None,
            "detail": _jsonable(ce.detail)}
        lines.append(f"counterexample x = {vec_text(ce.x)}")
        if ce.coalition:
            lines.append(f"coalition S = {braces(ce.coalition)}")
        for key, value in ce.detail.items():
            if isinstance(value, dict):
                value = ", ".join(f"v({{{k}}}) = {v}" for k, v in value.items())
            elif isinstance(value, (list, tuple)):
                value = ", ".join(vec_text(v) if isinstance(v, (list, tuple)) else str(v)
                                  for v in value)
            lines.append(f"{key}: {value}")
    return payload, lines, EXIT_OK if report.holds else EXIT_NEGATIVE


def cmd_search_egalitarian(g, args):
    hits = []
    for seed in range(args.seed, args.seed + args.count):
        h = random_supermodular_game(seed, args.n, args.bound)
        ega = lorenz_core_table(h, budget=args.budget)[h.grand].egalitarian
        if not any(core_membership(h, None, x) for x in ega):
            hits.append(seed)
    payload = {"games": args.count, "n": args.n, "bound": args.bound, "first_seed": args.seed,
               "seeds_without_core_egalitarian": hits}
    lines = [f"searched {args.count} random supermodular games (n={args.n}, bound={args.bound},"
             f" seeds {args.seed}..{args.seed + args.count - 1})",
             f"games with no egalitarian solution in the core: {len(hits)}"]
    lines += [f"  seed {s}" for s in hits]
    return payload, lines, EXIT_OK


# -- plumbing -------------------------------------------------------------------

def _budget(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"budget must be an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def _default_budget() -> int:
    text = os.environ.get(BUDGET_ENV)
    if text is None:
        return DEFAULT_BUDGET
    try:
        return _budget(text)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{BUDGET_ENV}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--budget", type=_budget, default=None,
                        help=f"candidate-vector budget (default {DEFAULT_BUDGET},"
                             f" or ${BUDGET_ENV})")
    with_game = argparse.ArgumentParser(add_help=False, parents=[common])
    with_game.add_argument("--game", required=True,
                           help="game file, '-' for stdin, or the name of a bundled example")

    parser = argparse.ArgumentParser(
        prog="lorenzgame",
        description="Cores, Lorenz stable sets and egalitarian solutions of integer games.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, func, help_text, game=True):
        p = sub.add_parser(name, parents=[with_game if game else common], help=help_text)
        p.set_defaults(func=func, needs_game=game)
        return p

    add("check-convex", cmd_check_convex, "test supermodularity")
    add("core", cmd_core, "enumerate the integer core").add_argument("--coalition")
    p = add("core-member", cmd_core_member, "test core membership of a payoff")
    p.add_argument("--payoff", required=True)
    p.add_argument("--coalition")
    add("lss", cmd_lss, "Lorenz stable set (dec-min core elements)")
    add("decmin", cmd_decmin, "one dec-min core element by 1-tightening")
    add("canonical", cmd_canonical, "canonical chain, partition and essential values")
    add("egalitarian", cmd_egalitarian, "discrete egalitarian solutions")
    add("lorenz-core", cmd_lorenz_core, "Lorenz cores of all or one coalition").add_argument(
        "--coalition")
    add("dutta-ray", cmd_dutta_ray, "continuous egalitarian solution in exact rationals")
    p = add("reduce", cmd_reduce, "reduced game on a coalition at a payoff")
    p.add_argument("--coalition", required=True)
    p.add_argument("--payoff", required=True)
    p.add_argument("--save", help="write the reduced game as a game file")
    p = add("verify", cmd_verify, "exhaustive consistency check")
    p.add_argument("--property", required=True, choices=PROPERTIES)
    p.add_argument("--margin", type=int, default=2,
                   help="box margin for converse-property candidates (default 2)")
    p = add("random", None, "print a random game file", game=False)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--noise", type=int, default=0,
                   help="perturb worths by up to this much (usually breaks convexity)")
    p = add("search-egalitarian", cmd_search_egalitarian,
            "look for random convex games without an egalitarian solution in the core",
            game=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--bound", type=int, default=6)
    return parser


def load_game(path: str) -> Game:
    if path == "-":
        return parse_game(sys.stdin.read())
    if not os.path.exists(path) and os.path.basename(path) == path:
        bundled = fixture_path(path)
        if os.path.exists(bundled):
            path = bundled
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def render(args, game: Optional[Game], payload: dict, lines: list) -> str:
    if args.format == "json":
        doc = {"command": args.command, "arguments": _echo(args)}
        if game is not None:
            doc["game"] = {"n": game.n, "supermodular": is_supermodular(game).holds}
        doc["result"] = _jsonable(payload)
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    head = [f"command: {args.command}"]
    if game is not None:
        flag = "yes" if is_supermodular(game).holds else "no"
        head.append(f"game: n={game.n}, supermodular: {flag}")
    return "\n".join(head + [""] + lines) + "\n"


def _echo(args) -> dict:
    skip = {"func", "needs_game", "command", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def main(argv: Optional[list] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(stderr)
        return EXIT_INPUT
    try:
        if args.budget is None:
            args.budget = _default_budget()
        if args.command == "random":
            maker: Callable = random_game if args.noise else random_supermodular_game
            extra = {"noise": args.noise} if args.noise else {}
            stdout.write(dump_game(maker(args.seed, args.n, args.bound, **extra)))
            return EXIT_OK
        game = load_game(args.game) if args.needs_game else None
        payload, lines, code = args.func(game, args)
        stdout.write(render(args, game, payload, lines))
        return code
    except BudgetExceededError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except InternalConsistencyError as exc:
        stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except (UsageError, GameError, OSError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
