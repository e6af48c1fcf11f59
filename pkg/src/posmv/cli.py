"""Command-line interface.

Exit codes: 0 success / PositiveMV, 2 MVMOnly, 3 NotMVM or a failed check,
1 input error, 4 budget exhausted, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

from . import __version__, kernels
from .algebra import AlgebraError, FiniteAlgebra, dump_algebra, load_algebra
from .checker import DEFAULT_BUDGET, BudgetExceeded, catalogue, classify, find_violation
from .constructions import (SearchBudgetExhausted, SizeGuardError, boolean2,
                            chang_quotient_witness, congruences, find_embedding, luk_chain,
                            product, quotient, trivial)
from .lmonoid import (WindowedLMonoid, check_cancellativity_equivalence, check_m_axioms, gamma,
                      load_lmonoid)
from .mcnaughton import (EnumerationTooLarge, count_terms, enumerate_free, grid_dedup_counts,
                         is_nondecreasing, safe_denominator)
from .terms import TermSyntaxError, parse_quasi

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_INPUT, EXIT_MVM_ONLY, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3, 4, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage().rstrip()}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _algebra(path: str) -> FiniteAlgebra:
    return load_algebra(_read(path))


def _emit_algebra(a: FiniteAlgebra, args) -> int:
    text = dump_algebra(a) + "\n"
    if getattr(args, "emit", None):
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
        _say(args, {"written": args.emit, "elements": len(a)}, f"wrote {args.emit} ({len(a)} elements)")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _say(args, payload: dict, text: str):
    if args.format == "json":
        out = {"schema_version": SCHEMA_VERSION, "command": args.command, **payload}
        sys.stdout.write(json.dumps(out, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def cmd_classify(args) -> int:
    a = _algebra(args.algebra)
    report = classify(a, budget=args.budget, jobs=args.jobs)
    lines = [f"verdict: {report.verdict.value}"]
    for v in report.violations:
        lines.append(f"  violated {v}")
    _say(args, {"elements": len(a), **report.to_dict()}, "\n".join(lines))
    return report.verdict.exit_code


def cmd_check(args) -> int:
    if args.lmonoid:
        m = load_lmonoid(_read(args.algebra))
        bad = check_m_axioms(m, strict_u3=args.strict_u3)
        rep = None
        if not bad:
            rep = check_cancellativity_equivalence(m)
        lines = [f"violated {v}" for v in bad] or ["M1-M3, U1, U2: hold"]
        if rep is not None:
            lines.append(f"cancellativity: general(windowed)={rep.cond_general} "
                         f"unit_interval={rep.cond_unit_interval} gamma={rep.cond_gamma}")
        payload = {"violations": [v.to_dict() for v in bad],
                   "cancellativity": rep.to_dict() if rep is not None else None}
        _say(args, payload, "\n".join(lines))
        return EXIT_FAIL if bad else EXIT_OK
    a = _algebra(args.algebra)
    if args.equation:
        items = [(src, parse_quasi(src)) for src in args.equation]
    else:
        items = list(catalogue().items())
    results, lines = [], []
    for key, q in items:
        v = find_violation(a, q, key, budget=args.budget, jobs=args.jobs)
        results.append({"axiom": key, "holds": v is None, "violation": v.to_dict() if v is not None else None})
        lines.append(f"{key}: holds" if v is None else f"{key}: FAILS {v}")
    _say(args, {"results": results}, "\n".join(lines))
    return EXIT_OK if all(r["holds"] for r in results) else EXIT_FAIL


def cmd_gamma(args) -> int:
    if args.lmonoid:
        m = load_lmonoid(_read(args.lmonoid))
    else:
        if args.denominator is None or args.radius is None:
            raise UsageError("gamma needs --denominator and --radius, or --lmonoid FILE")
        m = WindowedLMonoid(args.denominator, args.radius)
    a = gamma(m)
    if args.report:
        rep = check_cancellativity_equivalence(m)
        r = rep.to_dict()
        _say(args, {"gamma_elements": len(a), **r},
             f"Γ has {len(a)} elements\n"
             f"cond_general (windowed): {rep.cond_general}\n"
             f"cond_unit_interval:      {rep.cond_unit_interval}\n"
             f"cond_gamma:              {rep.cond_gamma}\n"
             f"consistent:              {rep.consistent}")
        if args.emit:
            with open(args.emit, "w", encoding="utf-8") as fh:
                fh.write(dump_algebra(a) + "\n")
        return EXIT_OK if rep.consistent else EXIT_FAIL
    return _emit_algebra(a, args)


def cmd_gen(args) -> int:
    if args.family == "luk":
        if args.n is None:
            raise UsageError("gen luk needs --n")
        return _emit_algebra(luk_chain(args.n), args)
    if args.family == "boolean":
        return _emit_algebra(boolean2(), args)
    return _emit_algebra(trivial(), args)


def cmd_witness(args) -> int:
    return _emit_algebra(chang_quotient_witness(), args)


def cmd_product(args) -> int:
    return _emit_algebra(product(_algebra(args.a), _algebra(args.b), max_size=args.max_size), args)


def cmd_congruences(args) -> int:
    a = _algebra(args.algebra)
    cs = congruences(a)
    blocks = [c.named(a) for c in cs]
    lines = [f"{len(cs)} congruences"]
    lines += ["  " + " | ".join("{" + ", ".join(b) + "}" for b in bl) for bl in blocks]
    _say(args, {"count": len(cs), "congruences": blocks}, "\n".join(lines))
    if args.emit_quotients:
        for k, c in enumerate(cs):
            with open(f"{args.emit_quotients}{k}.json", "w", encoding="utf-8") as fh:
                fh.write(dump_algebra(quotient(a, c)) + "\n")
    return EXIT_OK


def cmd_embed(args) -> int:
    a, b = _algebra(args.a), _algebra(args.b)
    emb = find_embedding(a, b, budget=args.search_budget)
    if emb is None:
        _say(args, {"embedding": None}, "no embedding")
        return EXIT_FAIL
    mapping = emb.mapping()
    _say(args, {"embedding": mapping, "inclusion": emb.is_inclusion()},
         "\n".join(f"{k} -> {v}" for k, v in mapping.items()))
    return EXIT_OK


def cmd_free(args) -> int:
    if args.vars == 1:
        res = enumerate_free(1, args.depth, max_depth=args.max_depth)
        D = safe_denominator(args.depth)
        grid = grid_dedup_counts(args.depth, D, max_point_denominator=2 ** args.depth)
        rows = [{"depth": d, "terms_generated": res.terms_generated[d],
                 "distinct_functions": res.distinct(d)} for d in range(args.depth + 1)]
        monotone = all(is_nondecreasing(f) for f in res.functions)
        extra = {"grid_denominator": D, "grid_distinct": grid,
                 "all_nondecreasing": monotone, "exact": True}
    else:
        D = args.denominator or 2
        counts = grid_dedup_counts(args.depth, D, nvars=args.vars)
        rows = [{"depth": d, "terms_generated": count_terms(d, args.vars), "distinct_functions": c}
                for d, c in enumerate(counts)]
        extra = {"grid_denominator": D, "exact": False}
    if args.emit_csv:
        with open(args.emit_csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=["depth", "terms_generated", "distinct_functions"])
            w.writeheader()
            w.writerows(rows)
    text = ["depth,terms_generated,distinct_functions"]
    text += [f"{r['depth']},{r['terms_generated']},{r['distinct_functions']}" for r in rows]
    if args.vars == 1:
        text.append(f"# grid dedup at D={extra['grid_denominator']}: {grid}; "
                    f"all non-decreasing: {extra['all_nondecreasing']}")
    else:
        text.append(f"# lower bounds from grid fingerprints at D={D} (not exact for vars >= 2)")
    _say(args, {"rows": [{k: (str(v) if k == "terms_generated" else v) for k, v in r.items()}
                         for r in rows], **extra}, "\n".join(text))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum assignments per quasi-equation (default 1e8)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for scans")

    p = _Parser(prog="posmv", description="Positive MV-algebra model checker")
    p.add_argument("--version", action="version",
                   version=f"posmv {__version__} ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common], help="classify an algebra file ('-' for stdin)")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("check", parents=[common], help="check quasi-equations on an algebra")
    s.add_argument("algebra")
    s.add_argument("-e", "--equation", action="append",
                   help="quasi-equation, e.g. 'x + z = y + z, x . z = y . z => x = y'")
    s.add_argument("--lmonoid", action="store_true", help="file is an l-monoid table")
    s.add_argument("--strict-u3", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("gamma", parents=[common], help="unit-interval algebra of an l-monoid")
    s.add_argument("--denominator", type=int)
    s.add_argument("--radius", type=int)
    s.add_argument("--lmonoid", metavar="FILE")
    s.add_argument("--emit", metavar="FILE")
    s.add_argument("--report", action="store_true", help="print the cancellativity report")
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("gen", parents=[common], help="generate a built-in algebra")
    s.add_argument("family", choices=("luk", "boolean", "trivial"))
    s.add_argument("--n", type=int)
    s.add_argument("--emit", metavar="FILE")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("witness", parents=[common], help="emit a built-in witness algebra")
    s.add_argument("name", choices=("chang",))
    s.add_argument("--emit", metavar="FILE")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("product", parents=[common], help="direct product of two algebras")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--max-size", type=int, default=4096)
    s.add_argument("--emit", metavar="FILE")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("congruences", parents=[common], help="list congruences")
    s.add_argument("algebra")
    s.add_argument("--emit-quotients", metavar="PREFIX")
    s.set_defaults(func=cmd_congruences)

    s = sub.add_parser("embed", parents=[common], help="search an embedding of A into B")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--search-budget", type=int, default=10**6)
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("free", parents=[common], help="enumerate the free algebra by depth")
    s.add_argument("--vars", type=int, default=1)
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--max-depth", type=int, default=5)
    s.add_argument("--denominator", type=int, help="grid denominator for --vars >= 2")
    s.add_argument("--emit-csv", metavar="FILE")
    s.set_defaults(func=cmd_free)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, AlgebraError, TermSyntaxError, SizeGuardError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceeded, SearchBudgetExhausted, EnumerationTooLarge) as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
