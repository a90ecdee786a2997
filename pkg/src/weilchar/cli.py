"""Command-line front end: point queries, character tables, verification.

Exit codes: 0 success, 1 a verification or agreement check failed,
2 bad usage or invalid input.  Complex numbers serialize to JSON as
{"re": ..., "im": ...}; square classes as {"rep": ..., "is_square": ...}.
Matrices on the command line are row-major comma-separated residues.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .characters import AdditiveCharacter, approx_eq
from .charformula import trace_closed_form, trace_from_factor
from .errors import DimensionMismatch, EnumerationTooLarge, ZeroFormClass
from .field import Fp
from .metaplectic import split_lift
from .schrodinger import trace_oracle
from .symplectic import (
    GROUP_CAP,
    LAGRANGIAN_CAP,
    SymplecticSpace,
    displacement_disc,
    kernel_of_displacement,
)
from .verify import MAX_REP_DIM, as_json_complex, run_verification

USAGE_ERROR = 2
CHECK_ERROR = 1


class InputError(Exception):
    pass


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(";", ",").split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _matrix_from_flag(text: str, rows: int, cols: int) -> np.ndarray:
    vals = _parse_ints(text)
    if len(vals) != rows * cols:
        raise InputError(f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(vals)}")
    return np.array(vals, dtype=np.int64).reshape(rows, cols)


def _check_rep_size(p: int, n: int) -> None:
    if p**n > MAX_REP_DIM:
        raise InputError(f"p^n = {p**n} exceeds the size cap {MAX_REP_DIM}")


def _emit(args, text_lines, json_obj, csv_rows=None, csv_header=None) -> None:
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        print(json.dumps(json_obj, indent=2, sort_keys=True))
    elif fmt == "csv":
        out = io.StringIO()
        w = csv.writer(out)
        if csv_header:
            w.writerow(csv_header)
        for row in csv_rows or []:
            w.writerow(row)
        sys.stdout.write(out.getvalue())
    else:
        for line in text_lines:
            print(line)


def cmd_gamma(args) -> int:
    field = Fp(args.p)
    char = AdditiveCharacter(field, args.psi_scale)
    try:
        g = char.gamma(args.a)
        chi = char.chi(args.a)
    except ZeroFormClass as exc:
        raise InputError(str(exc)) from exc
    chi_int = 1 if chi.real > 0 else -1
    _emit(
        args,
        [f"gamma({args.a}) = {g.real:+.12f}{g.imag:+.12f}i", f"chi({args.a}) = {chi_int:+d}"],
        {"gamma": as_json_complex(g), "chi": chi_int},
        csv_rows=[[args.p, args.a, g.real, g.imag, chi_int]],
        csv_header=["p", "a", "gamma_re", "gamma_im", "chi"],
    )
    return 0


def cmd_trace(args) -> int:
    field = Fp(args.p)
    _check_rep_size(args.p, args.n)
    char = AdditiveCharacter(field, args.psi_scale)
    space = SymplecticSpace(field, args.n)
    d = space.dim
    try:
        g = space.element(_matrix_from_flag(args.g, d, d))
    except DimensionMismatch as exc:
        raise InputError(f"not in Sp: {exc}") from exc
    lag = None
    if args.l is not None:
        lag = space.lagrangian(_matrix_from_flag(args.l, space.n, d))
    sign = 1 if args.lift == "plus" else -1
    e = split_lift(char, g, sign=sign)
    oracle = trace_oracle(e, lag)
    factor = trace_from_factor(e, lag)
    closed = sign * trace_closed_form(char, g)
    scale = float(args.p) ** args.n
    ok_of = approx_eq(oracle, factor, scale=scale)
    ok_oc = approx_eq(oracle, closed, scale=scale)
    agree = ok_of and ok_oc
    _emit(
        args,
        [
            f"oracle        = {oracle.real:+.12f}{oracle.imag:+.12f}i",
            f"closed_form   = {closed.real:+.12f}{closed.imag:+.12f}i",
            f"factor_form   = {factor.real:+.12f}{factor.imag:+.12f}i",
            f"agree         = {agree}",
        ],
        {
            "oracle": as_json_complex(oracle),
            "closed_form": as_json_complex(closed),
            "factor_form": as_json_complex(factor),
            "oracle_vs_factor": ok_of,
            "oracle_vs_closed": ok_oc,
            "agree": agree,
        },
        csv_rows=[[oracle.real, oracle.imag, closed.real, closed.imag,
                   factor.real, factor.imag, agree]],
        csv_header=["oracle_re", "oracle_im", "closed_re", "closed_im",
                    "factor_re", "factor_im", "agree"],
    )
    return 0 if agree else CHECK_ERROR


def _table_rows(args, char, space):
    if space.order() <= min(GROUP_CAP, args.max_enum):
        elems = space.elements()
    else:
        rng = np.random.default_rng(np.random.SeedSequence([args.seed, args.p, args.n]))
        elems = [space.random_element(rng) for _ in range(args.samples)]
    for g in elems:
        k = kernel_of_displacement(g).dim
        disc = displacement_disc(g)
        tr = trace_closed_form(char, g)
        used = "closed-singular" if k else "closed"
        yield g, k, disc, tr, used


def cmd_table(args) -> int:
    field = Fp(args.p)
    _check_rep_size(args.p, args.n)
    char = AdditiveCharacter(field, args.psi_scale)
    space = SymplecticSpace(field, args.n)
    header = ["g", "dim_ker", "det_sigma_class", "trace_re", "trace_im", "formula_used"]
    rows = []
    json_rows = []
    for g, k, disc, tr, used in _table_rows(args, char, space):
        flat = " ".join(str(x) for x in g.mat.a.reshape(-1))
        rows.append([flat, k, disc.rep, f"{tr.real:.12g}", f"{tr.imag:.12g}", used])
        json_rows.append({
            "g": g.mat.a.tolist(),
            "dim_ker": k,
            "det_sigma_class": disc.as_dict(),
            "trace": as_json_complex(tr),
            "formula_used": used,
        })
    text = [",".join(header)] + [",".join(str(c) for c in r) for r in rows]
    _emit(args, text, json_rows, csv_rows=rows, csv_header=header)
    return 0


def cmd_verify(args) -> int:
    ps = _parse_ints(args.p)
    ns = _parse_ints(args.n)
    if not ps or not ns:
        raise InputError("need at least one p and one n")
    try:
        results = run_verification(
            ps,
            ns,
            seed=args.seed,
            samples=args.samples,
            psi_scale=args.psi_scale,
            max_enum=args.max_enum,
            corrupt_cocycle=args.corrupt_cocycle,
        )
    except DimensionMismatch as exc:
        raise InputError(str(exc)) from exc
    ok = all(r.ok for r in results)
    lines = []
    for r in results:
        status = "OK  " if r.ok else "FAIL"
        lines.append(
            f"{status} p={r.p:<3d} n={r.n} {r.suite:<13s} "
            f"checked={r.checked:<6d} failed={r.failed:<4d} "
            f"max_err={r.max_err:.3e} ({r.seconds:.2f}s)"
        )
    lines.append(f"verdict: {'pass' if ok else 'FAIL'}")
    first_bad = next((r for r in results if not r.ok), None)
    if first_bad is not None:
        lines.append("first witness: " + json.dumps(first_bad.witness, sort_keys=True, default=str))
    csv_rows = [[r.suite, r.p, r.n, r.checked, r.failed, r.max_err, round(r.seconds, 3), r.ok]
                for r in results]
    _emit(
        args,
        lines,
        {"results": [r.as_json() for r in results], "ok": ok},
        csv_rows=csv_rows,
        csv_header=["suite", "p", "n", "checked", "failed", "max_err", "seconds", "ok"],
    )
    return 0 if ok else CHECK_ERROR


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="weilchar",
        description="Weil representation over F_p: values, tables, verification.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, with_n=True):
        sp.add_argument("--psi-scale", type=int, default=1,
                        help="nonzero residue scaling the additive character")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=50)
        sp.add_argument("--max-enum", type=int, default=LAGRANGIAN_CAP,
                        help="cap for exhaustive enumerations")
        if with_n:
            sp.add_argument("--n", type=int, default=1, help="half-dimension of the space")

    g = sub.add_parser("gamma", help="normalized Gauss sum and quadratic character")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--a", type=int, required=True, help="nonzero residue")
    common(g, with_n=False)
    g.set_defaults(func=cmd_gamma)

    t = sub.add_parser("trace", help="character value of one lifted element, three ways")
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--g", type=str, required=True,
                   help="row-major comma-separated entries of a 2n x 2n matrix")
    t.add_argument("--l", type=str, default=None,
                   help="optional Lagrangian: n rows of 2n comma-separated entries")
    t.add_argument("--lift", choices=("plus", "minus"), default="plus")
    common(t)
    t.set_defaults(func=cmd_trace)

    tb = sub.add_parser("table", help="character table over the group (CSV)")
    tb.add_argument("--p", type=int, required=True)
    common(tb)
    tb.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("--p", type=str, default="3,5", help="comma-separated primes")
    v.add_argument("--n", type=str, default="1", help="comma-separated half-dimensions")
    v.add_argument("--psi-scale", type=int, default=1)
    v.add_argument("--format", choices=("text", "json", "csv"), default="text")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=50)
    v.add_argument("--max-enum", type=int, default=LAGRANGIAN_CAP)
    v.add_argument("--corrupt-cocycle", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (DimensionMismatch, EnumerationTooLarge, ZeroFormClass, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
