"""Command-line interface.

Subcommands: `singular` (closed-form singular vectors), `solve`
(reflection series for a word or a root), `verify` (annihilation checks
on a stored vector), `linkage` (chain search and orbit listing).

Weights are entered in shifted coordinates as comma-separated exact
rationals, or `symbolic`; `--unshifted` shifts numeric input by one.
Stdout carries the payload, stderr the diagnostics.  Exit codes:
0 success, 1 verification failed, 2 bad input or constraint violation,
3 unreadable vector file, 4 non-weight vector.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .polyseries import (
    Series,
    TruncationRequired,
    d_op,
    series_from_json,
    series_text,
    series_to_json,
)
from .pbw import (
    NonWeightVectorError,
    PBWVector,
    common_weight,
    pbw_from_json,
    pbw_text,
    pbw_to_json,
    raise_action,
    tau_map,
)
from .rootdata import (
    Root,
    SymbolicWeightError,
    Weight,
    strongly_linked_below,
    strongly_linked_chain,
)
from .singvec import PairingConstraintError, singular_vector
from .weylaction import closed_form_complete, s_alpha_closed_form, sigma_of_one

OK = 0
VERIFY_FAILED = 1
BAD_INPUT = 2
PARSE_FAILED = 3
NON_WEIGHT = 4


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def _parse_weight(spec: str, n: int, unshifted: bool) -> Weight:
    if spec == "symbolic":
        if unshifted:
            raise ValueError("--unshifted only applies to numeric weights")
        return Weight.symbolic(n)
    parts = [p.strip() for p in spec.split(",")]
    if len(parts) != n - 1:
        raise ValueError(f"expected {n - 1} coordinates, got {len(parts)}")
    values = [Fraction(p) for p in parts]
    if unshifted:
        values = [v + 1 for v in values]
    return Weight.numeric(values)


def _parse_root(spec: str, n: int) -> Root:
    parts = spec.split(",")
    if len(parts) != 2:
        raise ValueError("root must be given as k,l")
    return Root(int(parts[0]), int(parts[1])).validate(n)


def _parse_word(spec: str, n: int) -> list[int]:
    if not spec:
        return []
    letters = [int(p) for p in spec.split(",")]
    for letter in letters:
        if not 1 <= letter <= n - 1:
            raise ValueError(f"letter {letter} out of range for n={n}")
    return letters


def _emit_pbw(v: PBWVector, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(pbw_to_json(v)))
    elif fmt == "latex":
        print(pbw_text(v, latex=True))
    else:
        ordered = sorted(v.terms.items(), key=lambda kv: (-kv[0].degree(), kv[0].entries))
        if not ordered:
            print("0")
        for a, c in ordered:
            print(pbw_text(PBWVector(v.n, {a: c})))


def _emit_series(f: Series, fmt: str, complete: bool) -> None:
    if fmt == "json":
        doc = series_to_json(f)
        doc["complete"] = complete
        print(json.dumps(doc))
        return
    if fmt == "latex":
        print(series_text(f, latex=True))
    else:
        if f.is_zero():
            print("0")
        for mono, c in f.sorted_terms():
            print(series_text(Series(f.n, {mono: c})))
    print("complete" if complete else "incomplete")


def cmd_singular(args) -> int:
    try:
        root = _parse_root(args.root, args.n)
        lam = _parse_weight(args.lam, args.n, args.unshifted)
    except (ValueError, TypeError) as exc:
        return _fail(f"bad input: {exc}", BAD_INPUT)
    try:
        v = singular_vector(root.k, root.l, args.m, lam)
    except PairingConstraintError as exc:
        return _fail(str(exc), BAD_INPUT)
    if args.mode == "monic-leading":
        tops = v.max_degree_indices()
        if len(tops) != 1:
            return _fail("leading index is not unique; cannot normalize", BAD_INPUT)
        lead = v.terms[tops[0]]
        if not lead.is_constant():
            return _fail("leading coefficient is not a scalar; cannot normalize", BAD_INPUT)
        v = v * (1 / lead.constant_value())
    _emit_pbw(v, args.format)
    return OK


def cmd_solve(args) -> int:
    if (args.word is None) == (args.root is None):
        return _fail("give exactly one of --word or --root", BAD_INPUT)
    try:
        lam = _parse_weight(args.lam, args.n, args.unshifted)
    except (ValueError, TypeError) as exc:
        return _fail(f"bad input: {exc}", BAD_INPUT)

    def compute(bound):
        if args.word is not None:
            return sigma_of_one(_parse_word(args.word, args.n), lam, max_degree=bound)
        root = _parse_root(args.root, args.n)
        return s_alpha_closed_form(root, lam, bound=bound)

    try:
        try:
            result = compute(None)
            complete = True
        except TruncationRequired:
            if args.bound is None:
                return _fail(
                    "result is an infinite series; pass --bound to truncate",
                    BAD_INPUT)
            result = compute(args.bound)
            complete = False
    except (ValueError, TypeError) as exc:
        return _fail(f"bad input: {exc}", BAD_INPUT)
    _emit_series(result, args.format, complete)
    return OK


def cmd_verify(args) -> int:
    try:
        lam = _parse_weight(args.lam, args.n, args.unshifted)
    except (ValueError, TypeError) as exc:
        return _fail(f"bad input: {exc}", BAD_INPUT)
    try:
        with open(args.vector_file, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        v = pbw_from_json(doc)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        return _fail(f"cannot read vector file: {exc}", PARSE_FAILED)
    if v.n != args.n:
        return _fail(f"vector is for sl({v.n}), not sl({args.n})", PARSE_FAILED)
    if v.is_zero():
        return _fail("vector is zero", BAD_INPUT)
    try:
        common_weight(v, lam)
    except NonWeightVectorError as exc:
        return _fail(str(exc), NON_WEIGHT)

    ok = True
    fx = tau_map(v)
    for i in range(1, args.n):
        if args.oracle in ("ug", "both"):
            residual = raise_action(i, v, lam)
            ok &= residual.is_zero()
            print(f"ug i={i}: {_first_pbw_term(residual)}")
        if args.oracle in ("diff", "both"):
            residual = d_op(i, fx, lam)
            ok &= residual.is_zero()
            print(f"diff i={i}: {_first_series_term(residual)}")
    print("verdict: singular" if ok else "verdict: not-singular")
    return OK if ok else VERIFY_FAILED


def _first_pbw_term(v: PBWVector) -> str:
    if v.is_zero():
        return "0"
    a, c = v.sorted_terms()[0]
    return pbw_text(PBWVector(v.n, {a: c}))


def _first_series_term(f: Series) -> str:
    if f.is_zero():
        return "0"
    mono, c = f.sorted_terms()[0]
    return series_text(Series(f.n, {mono: c}))


def cmd_linkage(args) -> int:
    try:
        lam = _parse_weight(args.lam, args.n, args.unshifted)
        if args.mu is None and not args.orbit:
            return _fail("give --mu or --orbit", BAD_INPUT)
        if args.orbit:
            rows = strongly_linked_below(lam)
            for w, chain in rows:
                coords = _weight_out(w, args.unshifted)
                print(f"{coords} | {_chain_text(chain)}")
            return OK
        mu = _parse_weight(args.mu, args.n, args.unshifted)
        chain = strongly_linked_chain(mu, lam)
    except SymbolicWeightError as exc:
        return _fail(str(exc), BAD_INPUT)
    except (ValueError, TypeError) as exc:
        return _fail(f"bad input: {exc}", BAD_INPUT)
    if chain is None:
        print("none")
    else:
        print(_chain_text(chain))
    return OK


def _chain_text(chain) -> str:
    return ",".join(str(r) for r in chain) if chain else "(empty)"


def _weight_out(w: Weight, unshifted: bool) -> str:
    vals = w.fractions()
    if unshifted:
        vals = tuple(v - 1 for v in vals)
    return ",".join(str(v) for v in vals)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vermasv",
        description="Explicit singular vectors in highest-weight modules "
                    "over sl(n), with exact verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, required=True, help="rank parameter of sl(n)")
        p.add_argument("--lambda", dest="lam", required=True,
                       help="'symbolic' or comma-separated shifted coordinates")
        p.add_argument("--unshifted", action="store_true",
                       help="interpret numeric coordinates as unshifted values")

    p = sub.add_parser("singular", help="emit a closed-form singular vector")
    common(p)
    p.add_argument("--root", required=True, help="positive root as k,l")
    p.add_argument("--m", type=int, required=True, help="required pairing value")
    p.add_argument("--mode", choices=["raw", "monic-leading"], default="raw")
    p.add_argument("--format", choices=["json", "latex", "text"], default="text")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("solve", help="reflection series for a word or a root")
    common(p)
    p.add_argument("--word", help="comma-separated simple-reflection letters")
    p.add_argument("--root", help="positive root as k,l")
    p.add_argument("--bound", type=int, help="off-degree truncation bound")
    p.add_argument("--format", choices=["json", "latex", "text"], default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="annihilation checks on a stored vector")
    common(p)
    p.add_argument("--vector-file", required=True, help="JSON vector document")
    p.add_argument("--oracle", choices=["ug", "diff", "both"], default="both")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("linkage", help="linkage chains and orbit listing")
    common(p)
    p.add_argument("--mu", help="target weight")
    p.add_argument("--orbit", action="store_true",
                   help="list every strongly linked weight with one chain each")
    p.set_defaults(func=cmd_linkage)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def console() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console()
