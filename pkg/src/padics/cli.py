"""Command-line surface: exact evaluation of single operations, distance
computation, verification suites, cell-tree export, and Haar counting.

All numeric output is exact (rational strings, exponent notation like
"2^-2").  The --decimal flag appends a clearly marked approximation and
is never consulted by verification paths.  Exit codes: 0 success or pass,
1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .affine import (AffineMap, AffineMembership, aff_L, aff_Lprime,
                     aff_apply, aff_compose, aff_inverse, aff_norm,
                     membership, to_matrix)
from .cells import (Cell, act, cell_canonical, cell_semimetric, children,
                    export_tree, meet, parent, rho, zp_cell)
from .core import (PNorm, PRational, dp, dp_log, dp_prime, pabs,
                   parse_rational, pnorm_to_json, rp, vp)
from .finite import count_triangular_ball, haar_ball
from .heisenberg import (HPoint, embed_to_triangular, h_conjugate, h_dilate,
                         h_inv, h_mul, h_norm, h_norm_tilde,
                         h_subgroup_member)
from .matrices import (PMatrix, PVector, gl_gauge, gl_gauge_capped,
                       gl_log_gauge, in_gl_j, in_gl_zp, matdet, matinv,
                       matmul, matnorm, matsub, vecnorm)
from .triangular import (SubgroupProfile, UTMatrix, diag_semimetric, dilate,
                         grade_component, haar_dimension, left_metric,
                         nilpotent_inverse, profile_subgroup_member,
                         right_metric, tplus_inverse, tri_norm)
from .values import value_str
from .verify import SUITES, run_suite


class UsageError(ValueError):
    pass


# --- operand parsing --------------------------------------------------------

def _read_payload(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return fh.read()
    if not text.lstrip().startswith(("[", "{")):
        try:
            with open(text) as fh:
                return fh.read()
        except OSError:
            pass
    return text


def _json_payload(text: str):
    try:
        return json.loads(_read_payload(text))
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad JSON operand: {exc}") from exc


def arg_rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def arg_prational(text: str, p: int) -> PRational:
    return PRational(arg_rational(text), p)


def _rows(doc) -> tuple:
    if not isinstance(doc, list):
        raise UsageError("matrix must be a JSON array of rows")
    return tuple(tuple(arg_rational(str(x)) for x in row) for row in doc)


def arg_matrix(text: str, p: int) -> PMatrix:
    return PMatrix(_rows(_json_payload(text)), p)


def arg_utmatrix(text: str, p: int) -> UTMatrix:
    return UTMatrix(arg_matrix(text, p))


def arg_vector(text: str, p: int) -> PVector:
    doc = _json_payload(text)
    if not isinstance(doc, list):
        raise UsageError("vector must be a JSON array")
    return PVector(tuple(arg_rational(str(x)) for x in doc), p)


def arg_hpoint(text: str, default_p) -> HPoint:
    doc = _json_payload(text)
    try:
        p = int(doc.get("p", default_p))
        return HPoint(
            tuple(arg_rational(str(v)) for v in doc["x"]),
            tuple(arg_rational(str(v)) for v in doc["y"]),
            arg_rational(str(doc["t"])),
            p,
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"bad group-element JSON: {exc}") from exc


def arg_affine(text: str, default_p) -> AffineMap:
    doc = _json_payload(text)
    try:
        p = int(doc.get("p", default_p))
        return AffineMap(arg_rational(str(doc["a"])),
                         arg_rational(str(doc["b"])), p)
    except (KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"bad affine-map JSON: {exc}") from exc


def arg_cell(text: str, default_p) -> Cell:
    doc = _json_payload(text)
    try:
        p = int(doc.get("p", default_p))
        return cell_canonical(arg_rational(str(doc["center"])),
                              int(doc["scale"]), p)
    except (KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"bad cell JSON: {exc}") from exc


def _need_p(ns) -> int:
    if ns.p is None:
        raise UsageError("this operation requires --p")
    return ns.p


# --- rendering --------------------------------------------------------------

def _matrix_json(m: PMatrix) -> list:
    return [[str(x) for x in row] for row in m.rows]


def render(obj, decimal: bool = False):
    """(text, jsonable) for every result type the CLI can produce."""
    if isinstance(obj, PNorm):
        text = str(obj)
        if decimal and not obj.is_zero:
            text += f" (~{float(obj.p) ** float(-obj.exponent):.6g})"
        return text, pnorm_to_json(obj)
    if isinstance(obj, bool):
        return ("true" if obj else "false"), obj
    if isinstance(obj, (int, Fraction)):
        text = str(obj)
        if decimal and isinstance(obj, Fraction) and obj.denominator != 1:
            text += f" (~{float(obj):.6g})"
        return text, str(obj)
    if isinstance(obj, float):  # only ever math.inf from vp(0)
        return "+inf", "+inf"
    if isinstance(obj, PRational):
        return str(obj), str(obj)
    if isinstance(obj, UTMatrix):
        return str(obj), _matrix_json(obj.mat)
    if isinstance(obj, PMatrix):
        return str(obj), _matrix_json(obj)
    if isinstance(obj, PVector):
        return str(obj), [str(x) for x in obj.entries]
    if isinstance(obj, HPoint):
        return str(obj), {"x": [str(v) for v in obj.x],
                          "y": [str(v) for v in obj.y],
                          "t": str(obj.t), "p": obj.p}
    if isinstance(obj, AffineMap):
        return str(obj), {"a": str(obj.a), "b": str(obj.b), "p": obj.p}
    if isinstance(obj, Cell):
        return f"cell {obj}", obj.to_json()
    if isinstance(obj, AffineMembership):
        doc = {"in_A_Zp": obj.in_A_Zp, "in_Astar_Zp": obj.in_Astar_Zp,
               "in_A_Up": obj.in_A_Up}
        return json.dumps(doc, sort_keys=True), doc
    if isinstance(obj, list):
        pairs = [render(x, decimal) for x in obj]
        return "\n".join(t for t, _ in pairs), [j for _, j in pairs]
    return value_str(obj), value_str(obj)


def _emit(obj, ns) -> int:
    text, jsonable = render(obj, getattr(ns, "decimal", False))
    if getattr(ns, "json", False):
        print(json.dumps({"value": jsonable}, sort_keys=True))
    else:
        print(text)
    return 0


# --- eval / dist dispatch ---------------------------------------------------

def _eval_op(ns) -> int:
    op, args = ns.op, list(ns.operands)

    def rat(i):
        return arg_prational(args[i], _need_p(ns))

    def frac(i):
        return arg_rational(args[i])

    def mat(i):
        return arg_matrix(args[i], _need_p(ns))

    def ut(i):
        return arg_utmatrix(args[i], _need_p(ns))

    def hp(i):
        return arg_hpoint(args[i], ns.p)

    def aff(i):
        return arg_affine(args[i], ns.p)

    def cl(i):
        return arg_cell(args[i], ns.p)

    table = {
        "vp": (1, lambda: vp(rat(0))),
        "pabs": (1, lambda: pabs(rat(0))),
        "dp": (2, lambda: dp(rat(0), rat(1))),
        "rp": (1, lambda: rp(rat(0))),
        "dp-prime": (2, lambda: dp_prime(rat(0), rat(1), ns.t)),
        "dp-log": (2, lambda: dp_log(rat(0), rat(1))),
        "vecnorm": (1, lambda: vecnorm(arg_vector(args[0], _need_p(ns)))),
        "matnorm": (1, lambda: matnorm(mat(0))),
        "matmul": (2, lambda: matmul(mat(0), mat(1))),
        "matinv": (1, lambda: matinv(mat(0))),
        "matdet": (1, lambda: matdet(mat(0))),
        "in-gl-zp": (1, lambda: in_gl_zp(mat(0))),
        "in-gl-j": (1, lambda: in_gl_j(mat(0), _int_flag(ns.j, "--j"))),
        "gl-gauge": (1, lambda: gl_gauge(mat(0))),
        "gl-gauge-capped": (1, lambda: gl_gauge_capped(mat(0), ns.t)),
        "gl-log-gauge": (1, lambda: gl_log_gauge(mat(0))),
        "grade": (1, lambda: grade_component(ut(0), _int_flag(ns.l, "--l"))),
        "dilate": (1, lambda: dilate(ut(0), _frac_flag(ns.r, "--r"))),
        "tri-norm": (1, lambda: tri_norm(ut(0))),
        "nilpotent-inverse": (1, lambda: nilpotent_inverse(ut(0))),
        "tplus-inverse": (1, lambda: tplus_inverse(ut(0))),
        "left-metric": (2, lambda: left_metric(ut(0), ut(1))),
        "right-metric": (2, lambda: right_metric(ut(0), ut(1))),
        "diag-semimetric": (2, lambda: diag_semimetric(ut(0), ut(1))),
        "haar-dim": (0, lambda: haar_dimension(_int_flag(ns.n, "--n"))),
        "profile-member": (1, lambda: profile_subgroup_member(
            ut(0), SubgroupProfile(_profile_flag(ns)))),
        "h-mul": (2, lambda: h_mul(hp(0), hp(1))),
        "h-inv": (1, lambda: h_inv(hp(0))),
        "h-dilate": (1, lambda: h_dilate(hp(0), _frac_flag(ns.r, "--r"))),
        "h-conjugate": (2, lambda: h_conjugate(hp(0), hp(1))),
        "h-norm": (1, lambda: h_norm(hp(0))),
        "h-norm-tilde": (1, lambda: h_norm_tilde(hp(0))),
        "h-member": (1, lambda: h_subgroup_member(
            hp(0), _int_flag(ns.k, "--k"), _int_flag(ns.l, "--l"))),
        "h-embed": (1, lambda: embed_to_triangular(hp(0))),
        "aff-apply": (2, lambda: aff_apply(aff(0), frac(1))),
        "aff-compose": (2, lambda: aff_compose(aff(0), aff(1))),
        "aff-inverse": (1, lambda: aff_inverse(aff(0))),
        "aff-norm": (1, lambda: aff_norm(aff(0))),
        "aff-l": (1, lambda: aff_L(aff(0))),
        "aff-lprime": (1, lambda: aff_Lprime(
            aff(0), Fraction(1) if ns.t is None else ns.t)),
        "aff-matrix": (1, lambda: to_matrix(aff(0))),
        "aff-membership": (1, lambda: membership(aff(0))),
        "cell-canonical": (2, lambda: cell_canonical(
            frac(0), int(args[1]), _need_p(ns))),
        "children": (1, lambda: children(cl(0))),
        "parent": (1, lambda: parent(cl(0))),
        "meet": (2, lambda: meet(cl(0), cl(1))),
        "rho": (2, lambda: rho(cl(0), cl(1))),
        "cell-act": (2, lambda: act(aff(0), cl(1))),
        "cell-semimetric": (2, lambda: cell_semimetric(aff(0), aff(1))),
    }
    if op not in table:
        raise UsageError(f"unknown eval operation {op!r}; "
                         f"choices: {', '.join(sorted(table))}")
    arity, fn = table[op]
    if len(args) != arity:
        raise UsageError(f"{op} takes {arity} operand(s), got {len(args)}")
    return _emit(fn(), ns)


def _int_flag(v, name: str) -> int:
    if v is None:
        raise UsageError(f"this operation requires {name}")
    return int(v)


def _frac_flag(v, name: str) -> Fraction:
    if v is None:
        raise UsageError(f"this operation requires {name}")
    return Fraction(v)


def _profile_flag(ns) -> tuple:
    if not ns.profile:
        raise UsageError("this operation requires --profile l1,l2,...")
    return tuple(int(x) for x in ns.profile.split(","))


def _dist_op(ns) -> int:
    kind, a, b = ns.kind, ns.a, ns.b
    p = ns.p
    table = {
        "dp": lambda: dp(arg_prational(a, _need_p(ns)),
                         arg_prational(b, _need_p(ns))),
        "dp-prime": lambda: dp_prime(arg_prational(a, _need_p(ns)),
                                     arg_prational(b, _need_p(ns)), ns.t),
        "dp-log": lambda: dp_log(arg_prational(a, _need_p(ns)),
                                 arg_prational(b, _need_p(ns))),
        "mat": lambda: matnorm(matsub(arg_matrix(a, _need_p(ns)),
                                      arg_matrix(b, _need_p(ns)))),
        "gl": lambda: gl_gauge_capped(
            matmul(matinv(arg_matrix(b, _need_p(ns))),
                   arg_matrix(a, _need_p(ns))), ns.t),
        "tri-left": lambda: left_metric(arg_utmatrix(a, _need_p(ns)),
                                        arg_utmatrix(b, _need_p(ns))),
        "tri-right": lambda: right_metric(arg_utmatrix(a, _need_p(ns)),
                                          arg_utmatrix(b, _need_p(ns))),
        "tri-diag": lambda: diag_semimetric(arg_utmatrix(a, _need_p(ns)),
                                            arg_utmatrix(b, _need_p(ns))),
        "heis-left": lambda: h_norm(h_mul(h_inv(arg_hpoint(b, p)),
                                          arg_hpoint(a, p))),
        "heis-right": lambda: h_norm(h_mul(arg_hpoint(a, p),
                                           h_inv(arg_hpoint(b, p)))),
        "heis-tilde": lambda: h_norm_tilde(h_mul(h_inv(arg_hpoint(b, p)),
                                                 arg_hpoint(a, p))),
        "aff": lambda: aff_norm(AffineMap(
            arg_affine(a, p).a - arg_affine(b, p).a,
            arg_affine(a, p).b - arg_affine(b, p).b,
            arg_affine(a, p).p)),
        "aff-lprime": lambda: aff_Lprime(
            aff_compose(aff_inverse(arg_affine(b, p)), arg_affine(a, p)),
            Fraction(1) if ns.t is None else ns.t),
        "cell": lambda: rho(arg_cell(a, p), arg_cell(b, p)),
        "cell-maps": lambda: cell_semimetric(arg_affine(a, p),
                                             arg_affine(b, p)),
    }
    if kind not in table:
        raise UsageError(f"unknown distance kind {kind!r}; "
                         f"choices: {', '.join(sorted(table))}")
    return _emit(table[kind](), ns)


# --- verify -----------------------------------------------------------------

def _verify_op(ns) -> int:
    if ns.suite not in SUITES:
        raise UsageError(f"unknown suite {ns.suite!r}; "
                         f"choices: {', '.join(sorted(SUITES))}")
    kwargs = {"seed": ns.seed}
    if ns.p is not None:
        kwargs["p"] = ns.p
    if ns.n is not None:
        kwargs["n"] = ns.n
    if ns.samples is not None:
        kwargs["samples"] = ns.samples
    if ns.l is not None:
        kwargs["l"] = ns.l
    if ns.m:
        kwargs["m_values"] = ns.m
        kwargs["m"] = ns.m[0]
    if ns.budget is not None:
        kwargs["budget"] = ns.budget
    report = run_suite(ns.suite, **kwargs)
    if ns.json:
        print(report.to_json())
    else:
        for line in report.lines():
            print(line)
    return 0 if report.ok else 1


# --- cells ------------------------------------------------------------------

def _cells_op(ns) -> int:
    if ns.cells_cmd == "export":
        p = _need_p(ns)
        root = arg_cell(ns.root, p) if ns.root else zp_cell(p)
        doc = export_tree(root, ns.depth, fmt=ns.format,
                          node_limit=ns.node_limit)
        sys.stdout.write(doc if doc.endswith("\n") else doc + "\n")
        return 0
    if ns.cells_cmd == "act":
        f = arg_affine(ns.f, ns.p)
        cell = arg_cell(ns.cell, ns.p if ns.p else f.p)
        return _emit(act(f, cell), ns)
    raise UsageError("cells requires a subcommand: export or act")


# --- haar -------------------------------------------------------------------

def _haar_op(ns) -> int:
    if ns.haar_cmd == "ball":
        return _emit(haar_ball(_need_p(ns), _int_flag(ns.l, "--l")), ns)
    if ns.haar_cmd == "dim":
        return _emit(haar_dimension(_int_flag(ns.n, "--n")), ns)
    if ns.haar_cmd == "count":
        p = _need_p(ns)
        n = _int_flag(ns.n, "--n")
        l = _int_flag(ns.l, "--l")
        ms = ns.m or [max(1, l * (n - 1))]
        failures = 0
        docs = []
        for m in ms:
            rep = count_triangular_ball(p, n, l, m)
            failures += 0 if rep.ok else 1
            if ns.json:
                docs.append(json.loads(rep.to_json()))
            else:
                print(f"p={p} n={n} l={l} m={m}: ratio {rep.extra['ratio']} "
                      f"expected {rep.extra['expected']} "
                      f"[{rep.mode}] {'ok' if rep.ok else 'MISMATCH'}")
        if ns.json:
            print(json.dumps(docs, sort_keys=True))
        return 1 if failures else 0
    raise UsageError("haar requires a subcommand: ball, dim, or count")


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padics",
        description="exact p-adic structures: evaluation, distances, "
                    "verification suites, cell trees, Haar counting",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, with_t=True):
        sp.add_argument("--p", type=int, help="prime context")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--decimal", action="store_true",
                        help="append marked decimal approximations")
        if with_t:
            sp.add_argument("--t", type=Fraction, help="cap parameter")

    ev = sub.add_parser("eval", help="evaluate one operation exactly")
    ev.add_argument("op")
    ev.add_argument("operands", nargs="*")
    common(ev)
    ev.add_argument("--j", type=int, help="congruence level")
    ev.add_argument("--k", type=int)
    ev.add_argument("--l", type=int)
    ev.add_argument("--n", type=int)
    ev.add_argument("--r", type=Fraction, help="dilation scalar")
    ev.add_argument("--profile", help="comma-separated profile exponents")
    ev.set_defaults(fn=_eval_op)

    di = sub.add_parser("dist", help="distance between two objects")
    di.add_argument("kind")
    di.add_argument("a")
    di.add_argument("b")
    common(di)
    di.set_defaults(fn=_dist_op)

    ve = sub.add_parser("verify", help="run a verification suite")
    ve.add_argument("suite")
    ve.add_argument("--p", type=int)
    ve.add_argument("--n", type=int)
    ve.add_argument("--samples", type=int)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--l", type=int)
    ve.add_argument("--m", type=int, action="append",
                    help="quotient precision (repeatable)")
    ve.add_argument("--budget", type=int)
    ve.add_argument("--json", action="store_true")
    ve.set_defaults(fn=_verify_op)

    ce = sub.add_parser("cells", help="cell-tree operations")
    ce_sub = ce.add_subparsers(dest="cells_cmd", required=True)
    ce_ex = ce_sub.add_parser("export", help="render a tree truncation")
    ce_ex.add_argument("--p", type=int)
    ce_ex.add_argument("--depth", type=int, required=True)
    ce_ex.add_argument("--root", help="root cell as JSON")
    ce_ex.add_argument("--format", choices=("dot", "json"), default="dot")
    ce_ex.add_argument("--node-limit", type=int, default=10000)
    ce_ex.set_defaults(fn=_cells_op)
    ce_act = ce_sub.add_parser("act", help="apply an affine map to a cell")
    ce_act.add_argument("--f", required=True, help="affine map as JSON")
    ce_act.add_argument("--cell", required=True, help="cell as JSON")
    common(ce_act, with_t=False)
    ce_act.set_defaults(fn=_cells_op)

    ha = sub.add_parser("haar", help="Haar measures and counting tables")
    ha_sub = ha.add_subparsers(dest="haar_cmd", required=True)
    ha_ball = ha_sub.add_parser("ball")
    ha_ball.add_argument("--p", type=int)
    ha_ball.add_argument("--l", type=int, required=True)
    ha_ball.add_argument("--json", action="store_true")
    ha_ball.add_argument("--decimal", action="store_true")
    ha_ball.set_defaults(fn=_haar_op)
    ha_dim = ha_sub.add_parser("dim")
    ha_dim.add_argument("--n", type=int, required=True)
    ha_dim.add_argument("--json", action="store_true")
    ha_dim.add_argument("--decimal", action="store_true")
    ha_dim.set_defaults(fn=_haar_op)
    ha_count = ha_sub.add_parser("count")
    ha_count.add_argument("--p", type=int)
    ha_count.add_argument("--n", type=int, required=True)
    ha_count.add_argument("--l", type=int, required=True)
    ha_count.add_argument("--m", type=int, action="append")
    ha_count.add_argument("--json", action="store_true")
    ha_count.set_defaults(fn=_haar_op)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.fn(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, KeyError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
