"""Command-line front end: check, play, strategy, util, serve."""
from __future__ import annotations

import argparse
import json
import sys

from . import classical, engine, proofs
from .formulas import (
    CL1Error, FormulaSyntaxError, children, elementarize, parse_formula,
    render, resolve,
)
from .isomorphism import isomorphic

EXIT_OK = 0
EXIT_CONTENT = 1
EXIT_USAGE = 2


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_interp(text: str) -> dict[str, bool]:
    values: dict[str, bool] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, value = part.partition("=")
        if value not in ("0", "1"):
            print(f"bad interpretation entry {part!r}: use name=0 or name=1",
                  file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
        values[name.strip()] = value == "1"
    return values


def cmd_check(args) -> int:
    checked = proofs.check_text(_read_file(args.file), mode=args.mode,
                                max_atoms=args.max_atoms)
    if args.json:
        print(json.dumps({
            "valid": checked.valid,
            "mode": checked.mode,
            "lines": len(checked.lines),
            "diagnostics": [d.to_dict() for d in checked.diagnostics],
        }, indent=2))
        return EXIT_OK if checked.valid else EXIT_CONTENT
    flagged = {d.line for d in checked.diagnostics}
    for line in checked.lines:
        if line.number not in flagged:
            print(f"line {line.number}: ok")
    for d in checked.diagnostics:
        print(str(d))
    verdict = "valid" if checked.valid else "invalid"
    print(f"{len(checked.lines)} lines, {verdict} (mode={checked.mode})")
    return EXIT_OK if checked.valid else EXIT_CONTENT


def _session_lines(session: engine.GameSession) -> list[str]:
    out = [f"line {session.current_line}: {render(session.current_formula)}"
           f"   [{session.status.value}]"]
    moves = session.legal_env_moves()
    if moves:
        labels = []
        for m in moves:
            picked = children(resolve(session.current_formula, m.path))[m.component - 1]
            labels.append(f"{m.text} (pick {render(picked)})")
        out.append("your moves: " + ", ".join(labels))
    return out


def _print_state(session: engine.GameSession, as_json: bool):
    if as_json:
        print(json.dumps({
            "line": session.current_line,
            "formula": render(session.current_formula),
            "status": session.status.value,
            "legal_moves": [m.text for m in session.legal_env_moves()],
            "run": [{"role": m.role.value, "move": m.text} for m in session.run],
        }))
    else:
        for text in _session_lines(session):
            print(text)


def _print_outcome(session: engine.GameSession, as_json: bool):
    result = session.outcome()
    if as_json:
        print(json.dumps({"outcome": result.to_dict()}))
        return
    if result.forfeited:
        print("illegal move: environment forfeits, machine wins")
    elif result.machine_wins_everywhere:
        print("machine wins under every interpretation")
    elif result.winner_now is not None:
        print(f"{result.winner_now} wins under the given interpretation")
    else:
        print("machine does not win under every interpretation")


def cmd_play(args) -> int:
    checked = proofs.check_text(_read_file(args.file), mode=args.mode,
                                max_atoms=args.max_atoms)
    if not checked.valid:
        for d in checked.diagnostics:
            print(str(d), file=sys.stderr)
        print("proof is invalid; nothing to play", file=sys.stderr)
        return EXIT_CONTENT
    interpretation = _parse_interp(args.interp) if args.interp else None
    policy = "forfeit" if args.forfeit_illegal else "reject"
    session = engine.new_session(checked, interpretation, policy,
                                 max_atoms=args.max_atoms)
    _print_state(session, args.json)
    while session.status is engine.Status.AWAITING_ENVIRONMENT:
        if not args.json:
            print("> ", end="", flush=True)
        raw = sys.stdin.readline()
        if not raw:
            break
        raw = raw.strip()
        if not raw:
            continue
        if raw in ("stop", "quit"):
            break
        try:
            move = engine.parse_move(raw)
        except CL1Error as exc:
            print(f"bad move: {exc}", file=sys.stderr)
            continue
        before = len(session.run)
        try:
            session.apply_env_move(move)
        except engine.IllegalMove as exc:
            print(f"illegal move: {exc}", file=sys.stderr)
            continue
        for m in session.run[before:]:
            if m.role is engine.Role.MACHINE and not args.json:
                print(f"machine: {m.text}")
        _print_state(session, args.json)
    session.stop()
    _print_outcome(session, args.json)
    return EXIT_OK


def cmd_strategy(args) -> int:
    checked = proofs.check_text(_read_file(args.file), mode=args.mode,
                                max_atoms=args.max_atoms)
    if not checked.valid:
        for d in checked.diagnostics:
            print(str(d), file=sys.stderr)
        return EXIT_CONTENT
    graph = engine.export_strategy(checked)
    if args.format == "dot":
        print(graph.to_dot())
    else:
        print(json.dumps(graph.to_dict(), indent=2))
    return EXIT_OK


def cmd_util(args) -> int:
    try:
        if args.util == "elementarize":
            result = render(elementarize(parse_formula(args.formula)))
            payload = {"elementarization": result}
            text = result
        elif args.util == "stable":
            stable = classical.is_stable(parse_formula(args.formula),
                                         max_atoms=args.max_atoms)
            payload = {"stable": stable}
            text = "stable" if stable else "instable"
        else:  # iso
            same = isomorphic(parse_formula(args.formula),
                              parse_formula(args.other), args.mode)
            payload = {"isomorphic": same, "mode": args.mode}
            text = "isomorphic" if same else "not isomorphic"
    except (FormulaSyntaxError, classical.AtomLimitExceeded) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONTENT
    print(json.dumps(payload) if args.json else text)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cl1play",
        description="Check CL1 proofs and play the games they solve.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--mode", choices=["iso", "strict"], default="iso",
                       help="premise matching: up to commutativity (iso) or structural")
        p.add_argument("--max-atoms", type=int, default=classical.DEFAULT_MAX_ATOMS,
                       help="cap on distinct atoms for truth-table checks")
        p.add_argument("--json", action="store_true",
                       help="emit structured output")

    p_check = sub.add_parser("check", help="verify a proof file")
    p_check.add_argument("file")
    common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_play = sub.add_parser("play", help="play a verified proof on the terminal")
    p_play.add_argument("file")
    p_play.add_argument("--interp", help="interpretation, e.g. 'p=1,q=0'")
    p_play.add_argument("--forfeit-illegal", action="store_true",
                        help="an illegal environment move forfeits the game")
    common(p_play)
    p_play.set_defaults(func=cmd_play)

    p_strat = sub.add_parser("strategy", help="export the proof's strategy graph")
    p_strat.add_argument("file")
    p_strat.add_argument("--format", choices=["json", "dot"], default="json")
    common(p_strat)
    p_strat.set_defaults(func=cmd_strategy)

    p_util = sub.add_parser("util", help="single-formula helpers")
    util_sub = p_util.add_subparsers(dest="util", required=True)
    p_elem = util_sub.add_parser("elementarize")
    p_elem.add_argument("formula")
    common(p_elem)
    p_elem.set_defaults(func=cmd_util)
    p_stable = util_sub.add_parser("stable")
    p_stable.add_argument("formula")
    common(p_stable)
    p_stable.set_defaults(func=cmd_util)
    p_iso = util_sub.add_parser("iso")
    p_iso.add_argument("formula")
    p_iso.add_argument("other")
    common(p_iso)
    p_iso.set_defaults(func=cmd_util)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static-dir", help="directory with the built web UI")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CL1Error as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONTENT


if __name__ == "__main__":
    sys.exit(main())
