"""Command-line front end.

Subcommands:

* ``eval``    -- evaluate a braid-word closure or a diagram to a ring element
* ``wordeq``  -- decide equality of two braid words
* ``params``  -- print the parameter-identity report
* ``repcheck``-- check a representation file against every axiom
* ``axioms``  -- run the built-in property corpus

Exit codes: 0 on success / "equal" / all checks passing; 1 on "not-equal"
or a failing check; 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import braid, checks, diagram, reps, ring, skein


def _parse_subst(text: str) -> dict[str, Fraction]:
    env: dict[str, Fraction] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ValueError(f"bad substitution {chunk!r}; expected name=value")
        name, value = chunk.split("=", 1)
        env[name.strip()] = Fraction(value.strip())
    return env


def _table(args) -> ring.ParamTable:
    env = _parse_subst(args.subst) if getattr(args, "subst", None) else None
    if getattr(args, "reduced", False):
        if env is None:
            raise ValueError(
                "--reduced needs --subst with delta,lambda,alpha,gamma,x0"
            )
        return ring.reduced_table(env)
    table = ring.derive_params()
    if env is not None:
        table = table.substituted(env)
    return table


def format_output(value, mode: str = "text") -> str:
    """Deterministic serialization of a ring element or report list."""
    if isinstance(value, ring.LaurentPoly):
        if mode == "json":
            return json.dumps(value.to_json_obj())
        return value.to_text()
    if mode == "json":
        return json.dumps(value, indent=None, separators=(",", ":"))
    if isinstance(value, list):
        lines = []
        for entry in value:
            if isinstance(entry, dict):
                status = "holds" if entry.get("holds") else "FAILS"
                lines.append(f"{entry.get('axiom', entry)}: {status}")
            else:
                name, ok = entry
                lines.append(f"{name}: {'holds' if ok else 'FAILS'}")
        return "\n".join(lines)
    return str(value)


def _cmd_eval(args) -> int:
    table = _table(args)
    if args.word is not None:
        if args.strands is None:
            raise ValueError("--word needs --strands")
        word = braid.parse_word(args.word, args.strands)
        if args.normalize:
            value = skein.invariant(word, table)
        else:
            value = skein.evaluate(diagram.closure(word), table)
    elif args.diagram is not None:
        if args.normalize:
            raise ValueError("--normalize applies to --word input only")
        t = diagram.parse_diagram(args.diagram)
        value = skein.evaluate(t, table)
    else:
        raise ValueError("eval needs --word or --diagram")
    print(format_output(value, "json" if args.json else "text"))
    return 0


def _cmd_wordeq(args) -> int:
    left = braid.parse_word(args.left, args.strands)
    right = braid.parse_word(args.right, args.strands)
    equal = braid.equivalent(left, right)
    print("equal" if equal else "not-equal")
    return 0 if equal else 1


def _cmd_params(args) -> int:
    table = _table(args)
    report = ring.verify_identities(table)
    if args.json:
        payload = [{"identity": name, "holds": ok} for name, ok in report]
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(format_output(report))
    return 0 if all(ok for _, ok in report) else 1


def _cmd_repcheck(args) -> int:
    data = reps.load_rep(args.file)
    env = _parse_subst(args.subst) if args.subst else None
    table = ring.derive_params() if env is not None else None
    report = [
        {"axiom": "yang_baxter", "holds": reps.check_ybe(data.R)},
        {"axiom": "four_braid", "holds": reps.check_four_braid(data.R, data.F)},
    ]
    if all(v is not None for v in (data.b, data.d, data.b0, data.d0)):
        report.extend(reps.check_point_axioms(data, table, env))
    if args.json:
        print(json.dumps(report, separators=(",", ":")))
    else:
        print(format_output(report))
    return 0 if all(entry["holds"] for entry in report) else 1


def _cmd_axioms(args) -> int:
    report = checks.run_axiom_corpus(size=args.corpus_size, seed=args.seed)
    total_fail = 0
    for name, passed, failed in report:
        total_fail += failed
        print(f"{name}: {passed} passed, {failed} failed")
    print(f"total: {sum(p for _, p, _ in report)} passed, {total_fail} failed")
    return 0 if total_fail == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cylink",
        description="Cylinder braids and the exact solid-torus link invariant",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a word closure or diagram")
    p_eval.add_argument("--word", help="braid word, e.g. 't0 t1 T0'")
    p_eval.add_argument("--strands", type=int, help="strand count for --word")
    p_eval.add_argument("--diagram",
                        help="slice word, e.g. 'cup1; t+; cap1', or closure(...)")
    p_eval.add_argument("--subst", help="e.g. 'delta=2,lambda=3'")
    p_eval.add_argument("--normalize", action="store_true",
                        help="writhe-normalized invariant")
    p_eval.add_argument("--reduced", action="store_true",
                        help="reduced parameter regime (needs --subst)")
    p_eval.add_argument("--json", action="store_true")
    p_eval.set_defaults(func=_cmd_eval)

    p_eq = sub.add_parser("wordeq", help="decide equality of two braid words")
    p_eq.add_argument("--left", required=True)
    p_eq.add_argument("--right", required=True)
    p_eq.add_argument("--strands", type=int, required=True)
    p_eq.set_defaults(func=_cmd_wordeq)

    p_par = sub.add_parser("params", help="verify the parameter identities")
    p_par.add_argument("--verify", action="store_true",
                       help="accepted for compatibility; always verifies")
    p_par.add_argument("--reduced", action="store_true")
    p_par.add_argument("--subst")
    p_par.add_argument("--json", action="store_true")
    p_par.set_defaults(func=_cmd_params)

    p_rep = sub.add_parser("repcheck", help="check a representation file")
    p_rep.add_argument("--file", required=True)
    p_rep.add_argument("--subst")
    p_rep.add_argument("--json", action="store_true")
    p_rep.set_defaults(func=_cmd_repcheck)

    p_ax = sub.add_parser("axioms", help="run the built-in property corpus")
    p_ax.add_argument("--corpus-size", type=int, default=25)
    p_ax.add_argument("--seed", type=int, default=0)
    p_ax.set_defaults(func=_cmd_axioms)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
