"""Verification suites: each one exercises the stated identities and
inequalities of one part of the library on seeded samples, with exact
comparisons and zero tolerance.

Suites accept the central operation as an injectable parameter where a
negative control makes sense; the documented mutants at the bottom of
this module are corrupted operations that every corresponding suite must
catch (they are exercised by the acceptance tests).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import cells as cells_mod
from . import finite
from . import sampling
from .affine import (AffineMap, aff_L, aff_Lprime, aff_apply, aff_compose,
                     aff_inverse, aff_norm, membership, to_matrix)
from .core import (PNorm, PRational, dp, dp_log, dp_prime, fraction_pabs,
                   pabs, rp, vp)
from .gauges import Semimetric, check_axioms
from .heisenberg import (HPoint, embed_to_triangular, h_conjugate, h_dilate,
                         h_inv, h_mul, h_norm, h_norm_tilde,
                         h_subgroup_member)
from .matrices import (PMatrix, PVector, gl_gauge, gl_gauge_capped,
                       gl_log_gauge, in_gl_j, in_gl_zp, matadd, matinv,
                       matmul, matnorm, matsub, matvec, vecnorm)
from .triangular import (SubgroupProfile, UTMatrix, diag_semimetric, dilate,
                         factor_diagonal_unipotent, grade_component,
                         haar_dimension, left_metric, nilpotent_inverse,
                         profile_subgroup_member, tplus_inverse, tri_norm,
                         ut_add, ut_mul)
from .values import Exact, value_str, vadd, veq, vle, vmax, vmul

__all__ = [
    "Check",
    "SuiteReport",
    "SUITES",
    "run_suite",
    "suite_ultrametric_axioms",
    "suite_norm_multiplicativity",
    "suite_matrix_norm",
    "suite_gl_gauges",
    "suite_tri_norm",
    "suite_heisenberg",
    "suite_affine",
    "suite_cells",
    "suite_haar_scaling",
    "suite_finite_groups",
    "mutant_h_mul_drop_cross",
    "mutant_h_mul_skew",
    "mutant_h_product_mod_drop",
    "mutant_h_product_mod_skew",
    "mutant_tri_norm_sum",
]

MAX_WITNESSES = 10


@dataclass
class Check:
    name: str
    samples: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, **witness):
        if len(self.violations) < MAX_WITNESSES:
            self.violations.append({k: str(v) for k, v in witness.items()})

    def expect(self, condition: bool, **witness):
        self.samples += 1
        if not condition:
            self.fail(**witness)


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def violation_count(self) -> int:
        return sum(len(c.violations) for c in self.checks)

    def to_json(self) -> str:
        return json.dumps(
            {
                "suite": self.suite,
                "params": {k: str(v) for k, v in self.params.items()},
                "passed": self.ok,
                "checks": [
                    {"name": c.name, "samples": c.samples,
                     "violations": c.violations}
                    for c in self.checks
                ],
            },
            sort_keys=True,
        )

    def lines(self) -> list:
        out = [f"suite {self.suite}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            status = "pass" if c.ok else "FAIL"
            line = f"  [{status}] {c.name} ({c.samples} samples)"
            if not c.ok:
                line += f" first witness: {c.violations[0]}"
            out.append(line)
        return out


def _from_axiom_report(report, prefix: str) -> list:
    out = []
    for r in report.results:
        c = Check(f"{prefix}:{r.axiom}", r.samples, list(r.violations))
        out.append(c)
    return out


def suite_ultrametric_axioms(p: int = 2, samples: int = 5000,
                             seed: int = 0, **_) -> SuiteReport:
    d = Semimetric(lambda x, y: fraction_pabs(x - y, p), name="d_p",
                   ultrametric=True)
    report = check_axioms(d, lambda rng: sampling.rational(rng, p),
                          samples, seed=seed)
    checks = _from_axiom_report(report, "dp")

    rng = random.Random(seed + 1)
    small = max(1, samples // 5)
    c_sym = Check("rp:inverse-symmetry")
    c_sub = Check("rp:unit-submultiplicative")
    for _ in range(small):
        x = PRational(sampling.nonzero_rational(rng, p), p)
        c_sym.expect(rp(1 / x) == rp(x), x=x)
        u = PRational(sampling.unit(rng, p), p)
        w = PRational(sampling.unit(rng, p), p)
        c_sub.expect(vle(rp(u * w), vmax([rp(u), rp(w)])), u=u, w=w)
    c_ult = Check("dp_prime:ultrametric")
    c_inv = Check("dp_prime:multiplicative-invariance")
    for _ in range(small):
        x, y, z, a = (PRational(sampling.nonzero_rational(rng, p), p)
                      for _ in range(4))
        lhs = dp_prime(x, z)
        c_ult.expect(vle(lhs, vmax([dp_prime(x, y), dp_prime(y, z)])),
                     x=x, y=y, z=z)
        c_inv.expect(veq(dp_prime(a * x, a * y), dp_prime(x, y)), a=a, x=x, y=y)
    c_log = Check("dp_log:subadditive")
    for _ in range(small):
        x, y = (PRational(sampling.nonzero_rational(rng, p), p)
                for _ in range(2))
        one = PRational(1, p)
        c_log.expect(dp_log(x * y, one) <= dp_log(x, one) + dp_log(y, one),
                     x=x, y=y)
    checks += [c_sym, c_sub, c_ult, c_inv, c_log]
    return SuiteReport("ultrametric-axioms", {"p": p, "samples": samples,
                                              "seed": seed}, checks)


def suite_norm_multiplicativity(p: int = 2, samples: int = 5000,
                                seed: int = 0, **_) -> SuiteReport:
    rng = random.Random(seed)
    c_mul = Check("pabs:multiplicative")
    c_tri = Check("pabs:strong-triangle")
    c_sharp = Check("pabs:sharp-when-norms-differ")
    for _ in range(samples):
        x = PRational(sampling.rational(rng, p), p)
        y = PRational(sampling.rational(rng, p), p)
        c_mul.expect(pabs(x * y) == pabs(x) * pabs(y), x=x, y=y)
        c_tri.expect(pabs(x + y) <= max(pabs(x), pabs(y)), x=x, y=y)
        if pabs(x) != pabs(y):
            c_sharp.expect(pabs(x + y) == max(pabs(x), pabs(y)), x=x, y=y)
    return SuiteReport("norm-multiplicativity",
                       {"p": p, "samples": samples, "seed": seed},
                       [c_mul, c_tri, c_sharp])


def suite_matrix_norm(p: int = 2, n: int = 2, samples: int = 1000,
                      seed: int = 0, **_) -> SuiteReport:
    rng = random.Random(seed)
    c_sub = Check("matnorm:submultiplicative")
    c_unit = Check("matnorm:gl-zp-invariance")
    c_op = Check("matnorm:operator-bound")
    c_attained = Check("matnorm:operator-norm-attained")
    c_invpair = Check("matnorm:inverse-product-lower-bound")
    for _ in range(samples):
        a = sampling.pmatrix(rng, p, n)
        b = sampling.pmatrix(rng, p, n)
        c_sub.expect(matnorm(matmul(a, b)) <= matnorm(a) * matnorm(b),
                     a=a, b=b)
        c = sampling.glzp_matrix(rng, p, n)
        c_unit.expect(
            matnorm(matmul(a, c)) == matnorm(a)
            and matnorm(matmul(c, a)) == matnorm(a),
            a=a, c=c)
        v = sampling.pvector(rng, p, n)
        c_op.expect(vecnorm(matvec(a, v)) <= matnorm(a) * vecnorm(v), a=a, v=v)
        basis_norms = [
            vecnorm(matvec(a, PVector(tuple(Fraction(int(i == j))
                                            for i in range(n)), p)))
            for j in range(n)
        ]
        c_attained.expect(max(basis_norms) == matnorm(a), a=a)
        inv = sampling.invertible_matrix(rng, p, n)
        c_invpair.expect(
            PNorm.one(p) <= matnorm(inv) * matnorm(matinv(inv)), a=inv)
    return SuiteReport("matrix-norm", {"p": p, "n": n, "samples": samples,
                                       "seed": seed},
                       [c_sub, c_unit, c_op, c_attained, c_invpair])


def suite_gl_gauges(p: int = 2, n: int = 2, samples: int = 1000,
                    seed: int = 0, **_) -> SuiteReport:
    rng = random.Random(seed)
    identity = PMatrix.identity(n, p)
    c_invsym = Check("gl-gauge:inverse-symmetry")
    c_branch = Check("gl-gauge:two-branch-form")
    c_capped = Check("gl-gauge-capped:max-inequality")
    c_logsub = Check("gl-log-gauge:subadditive")
    c_logzero = Check("gl-log-gauge:zero-iff-integral")
    c_leftmetric = Check("gl-gauge-capped:left-metric-is-norm-difference")
    c_glj = Check("gl-j:closed-under-product-and-inverse")

    def sample_invertible():
        if rng.random() < 0.5:
            return sampling.glzp_matrix(rng, p, n)
        return sampling.invertible_matrix(rng, p, n)

    for _ in range(samples):
        a = sample_invertible()
        b = sample_invertible()
        ainv = matinv(a)
        c_invsym.expect(gl_gauge(ainv) == gl_gauge(a), a=a)
        if in_gl_zp(a):
            expected = matnorm(matsub(a, identity))
        else:
            expected = max(matnorm(a), matnorm(ainv))
        c_branch.expect(gl_gauge(a) == expected, a=a)
        c_capped.expect(
            vle(gl_gauge_capped(matmul(a, b)),
                vmax([gl_gauge_capped(a), gl_gauge_capped(b)])),
            a=a, b=b)
        c_logsub.expect(
            gl_log_gauge(matmul(a, b)) <= gl_log_gauge(a) + gl_log_gauge(b),
            a=a, b=b)
        c_logzero.expect((gl_log_gauge(a) == 0) == in_gl_zp(a), a=a)
        az = sampling.glzp_matrix(rng, p, n)
        bz = sampling.glzp_matrix(rng, p, n)
        c_leftmetric.expect(
            veq(gl_gauge_capped(matmul(matinv(bz), az)),
                matnorm(matsub(az, bz))),
            a=az, b=bz)
        j = rng.randint(1, 3)
        gj1 = _gl_j_member(rng, p, n, j)
        gj2 = _gl_j_member(rng, p, n, j)
        c_glj.expect(
            in_gl_j(gj1, j)
            and in_gl_j(matmul(gj1, gj2), j)
            and in_gl_j(matinv(gj1), j)
            and in_gl_zp(gj1),
            j=j, a=gj1, b=gj2)
    return SuiteReport("gl-gauges", {"p": p, "n": n, "samples": samples,
                                     "seed": seed},
                       [c_invsym, c_branch, c_capped, c_logsub, c_logzero,
                        c_leftmetric, c_glj])


def _gl_j_member(rng: random.Random, p: int, n: int, j: int) -> PMatrix:
    scale = Fraction(p) ** j
    rows = tuple(
        tuple(Fraction(int(r == k)) + scale * sampling.integral(rng, p)
              for k in range(n))
        for r in range(n)
    )
    return PMatrix(rows, p)


def suite_tri_norm(p: int = 2, n: int = 3, samples: int = 1000, seed: int = 0,
                   norm: Callable = tri_norm, **_) -> SuiteReport:
    rng = random.Random(seed)
    c_dilate = Check("tri-norm:dilation-scaling")
    c_sum = Check("tri-norm:sum-bound")
    c_prod = Check("tri-norm:product-bound")
    c_inv = Check("tri-norm:inverse-preservation")
    c_powers = Check("tri-norm:power-bound")
    c_nilp = Check("nilpotent-inverse:exact")
    c_grade = Check("grading:product-degree-additive")
    c_regrade = Check("grading:components-reassemble")
    c_factor = Check("ttilde:diagonal-unipotent-factorization")
    c_ball = Check("tri-norm:ball-is-homogeneous-profile-subgroup")
    c_leftinv = Check("left-metric:left-invariance")
    c_diag = Check("diag-semimetric:bi-invariance")
    identity = UTMatrix.identity(n, p)
    for _ in range(samples):
        a = sampling.ttilde_matrix(rng, p, n)
        b = sampling.ttilde_matrix(rng, p, n)
        r = sampling.nonzero_rational(rng, p)
        c_dilate.expect(
            veq(norm(dilate(a, r)), vmul(fraction_pabs(r, p), norm(a))),
            a=a, r=r)
        c_sum.expect(vle(norm(ut_add(a, b)), vmax([norm(a), norm(b)])),
                     a=a, b=b)
        c_prod.expect(vle(norm(ut_mul(a, b)), vmax([norm(a), norm(b)])),
                      a=a, b=b)
        u = sampling.tplus_matrix(rng, p, n)
        c_inv.expect(veq(norm(tplus_inverse(u)), norm(u)), a=u)
        s = sampling.strict_upper_matrix(rng, p, n)
        for power_count in range(2, n + 1):
            mat = s
            for _ in range(power_count - 1):
                mat = ut_mul(mat, s)
            c_powers.expect(vle(norm(mat), norm(s)), b=s, l=power_count)
        c_nilp.expect(
            matmul(matsub(PMatrix.identity(n, p), s.mat),
                   nilpotent_inverse(s).mat) == PMatrix.identity(n, p),
            b=s)
        la, lb = rng.randrange(n), rng.randrange(n)
        ga, gb = grade_component(a, la), grade_component(b, lb)
        prod = ut_mul(ga, gb)
        c_grade.expect(
            prod.mat == grade_component(prod, la + lb).mat
            if la + lb < n else prod.mat == PMatrix.zero(n, p),
            a=a, la=la, lb=lb)
        total = grade_component(a, 0)
        for lvl in range(1, n):
            total = ut_add(total, grade_component(a, lvl))
        c_regrade.expect(total.mat == a.mat, a=a)
        d, uni = factor_diagonal_unipotent(a)
        c_factor.expect(
            uni.unit_diagonal and matmul(d.mat, uni.mat) == a.mat, a=a)
        l = rng.randint(0, 2)
        member = sampling.tplus_matrix(rng, p, n)
        if rng.random() < 0.5:
            member = dilate(sampling.tplus_matrix(rng, p, n), Fraction(p) ** l)
        profile = SubgroupProfile.homogeneous(l, n)
        in_ball = vle(norm(member), PNorm(p, Fraction(l)))
        c_ball.expect(
            profile_subgroup_member(member, profile) == in_ball,
            a=member, l=l)
        h = sampling.ttilde_matrix(rng, p, n)
        c_leftinv.expect(
            left_metric(ut_mul(h, a), ut_mul(h, b)) == left_metric(a, b),
            a=a, b=b, h=h)
        c_diag.expect(
            diag_semimetric(ut_mul(h, a), ut_mul(h, b)) == diag_semimetric(a, b)
            and diag_semimetric(ut_mul(a, h), ut_mul(b, h)) == diag_semimetric(a, b),
            a=a, b=b, h=h)
    c_dim = Check("haar-dimension:small-values")
    c_dim.expect(haar_dimension(2) == 1, n=2)
    c_dim.expect(haar_dimension(3) == 4, n=3)
    c_dim.expect(haar_dimension(4) == 10, n=4)
    return SuiteReport("tri-norm", {"p": p, "n": n, "samples": samples,
                                    "seed": seed},
                       [c_dilate, c_sum, c_prod, c_inv, c_powers, c_nilp,
                        c_grade, c_regrade, c_factor, c_ball, c_leftinv,
                        c_diag, c_dim])


def suite_heisenberg(p: int = 2, n: int = 1, samples: int = 1000,
                     seed: int = 0, product: Callable = h_mul,
                     **_) -> SuiteReport:
    rng = random.Random(seed)
    e = HPoint.identity(n, p)
    c_assoc = Check("group:associativity")
    c_ident = Check("group:identity")
    c_inv = Check("group:inverse")
    c_conj = Check("conjugation:closed-form-matches-composition")
    c_center = Check("conjugation:fixes-center")
    c_dil = Check("dilation:homomorphism")
    c_scale = Check("norm:dilation-scaling")
    c_nsym = Check("norm:inverse-symmetry")
    c_nprod = Check("norm:product-max-bound")
    c_sand = Check("norms:squeeze-on-integral-points")
    c_binv = Check("norm-tilde:bi-invariance-on-integral-points")
    c_left = Check("metric:left-invariance")
    c_embed = Check("embedding:homomorphism")
    for _ in range(samples):
        u = sampling.hpoint(rng, p, n)
        v = sampling.hpoint(rng, p, n)
        w = sampling.hpoint(rng, p, n)
        c_assoc.expect(
            product(product(u, v), w) == product(u, product(v, w)),
            u=u, v=v, w=w)
        c_ident.expect(product(e, u) == u and product(u, e) == u, u=u)
        c_inv.expect(
            product(u, h_inv(u)) == e and product(h_inv(u), u) == e, u=u)
        c_conj.expect(
            h_conjugate(u, v) == product(product(u, v), h_inv(u)), g=u, u=v)
        center = HPoint((0,) * n, (0,) * n, sampling.rational(rng, p), p)
        c_center.expect(h_conjugate(u, center) == center, g=u, t=center.t)
        r = sampling.rational(rng, p)
        c_dil.expect(
            h_dilate(product(u, v), r) == product(h_dilate(u, r),
                                                  h_dilate(v, r)),
            u=u, v=v, r=r)
        c_scale.expect(
            h_norm(h_dilate(u, r)) == fraction_pabs(r, p) * h_norm(u),
            u=u, r=r)
        c_nsym.expect(h_norm(h_inv(u)) == h_norm(u), u=u)
        c_nprod.expect(
            h_norm(product(u, v)) <= max(h_norm(u), h_norm(v)), u=u, v=v)
        zu = sampling.hpoint_integral(rng, p, n)
        zv = sampling.hpoint_integral(rng, p, n)
        c_sand.expect(
            h_norm(zu).power(2) <= h_norm_tilde(zu) <= h_norm(zu), u=zu)
        c_binv.expect(
            h_norm_tilde(product(h_inv(zv), zu))
            == h_norm_tilde(product(zu, h_inv(zv))),
            u=zu, v=zv)
        c_left.expect(
            h_norm(product(h_inv(product(w, v)), product(w, u)))
            == h_norm(product(h_inv(v), u)),
            u=u, v=v, w=w)
        eu, ev = embed_to_triangular(u), embed_to_triangular(v)
        c_embed.expect(
            embed_to_triangular(product(u, v)).mat == matmul(eu.mat, ev.mat),
            u=u, v=v)
    c_ball = Check("norm:ball-is-congruence-subgroup")
    grid = [Fraction(j, p) for j in range(p**4)]
    sample_grid = rng.sample(grid, min(len(grid), 12))
    for x in sample_grid:
        for y in sample_grid:
            for t in sample_grid:
                u = HPoint((x,) * n, (y,) * n, t, p)
                for k in (-1, 0, 1):
                    in_ball = vle(h_norm(u), PNorm(p, Fraction(k)))
                    c_ball.expect(
                        h_subgroup_member(u, k, 2 * k) == in_ball,
                        u=u, k=k)
    return SuiteReport("heisenberg", {"p": p, "n": n, "samples": samples,
                                      "seed": seed},
                       [c_assoc, c_ident, c_inv, c_conj, c_center, c_dil,
                        c_scale, c_nsym, c_nprod, c_sand, c_binv, c_left,
                        c_embed, c_ball])


def suite_affine(p: int = 2, samples: int = 1000, seed: int = 0,
                 **_) -> SuiteReport:
    rng = random.Random(seed)
    c_assoc = Check("semigroup:associativity")
    c_inv = Check("group:inverse")
    c_matrix = Check("matrix-identification:homomorphism")
    c_matnorm = Check("matrix-identification:difference-norm")
    c_embednorm = Check("matrix-identification:embedded-norm")
    c_sup = Check("norm:sup-formula-on-integers")
    c_iso = Check("isometry:unit-slope-maps")
    c_leftinv = Check("norm:left-composition-invariance")
    c_rightinv = Check("norm:right-composition-invariance")
    c_lsym = Check("gauge:inverse-symmetry")
    c_lsub = Check("gauge:max-subadditive")
    c_lprime = Check("capped-gauge:equals-norm-difference-on-integral-group")
    c_lprime_ultra = Check("capped-gauge:left-invariant-ultrametric")
    c_recover = Check("coefficients:recoverable-from-values")
    for _ in range(samples):
        f = sampling.affine_map(rng, p)
        g = sampling.affine_map(rng, p)
        h = sampling.affine_map(rng, p)
        c_assoc.expect(
            aff_compose(aff_compose(f, g), h) == aff_compose(f, aff_compose(g, h)),
            f=f, g=g, h=h)
        c_inv.expect(
            aff_compose(f, aff_inverse(f)) == AffineMap.identity(p), f=f)
        c_matrix.expect(
            to_matrix(aff_compose(f, g)).mat == matmul(to_matrix(f).mat,
                                                       to_matrix(g).mat),
            f=f, g=g)
        c_matnorm.expect(
            matnorm(matsub(to_matrix(f).mat, to_matrix(g).mat)) ==
            aff_norm(AffineMap(f.a - g.a, f.b - g.b, p)),
            f=f, g=g)
        c_embednorm.expect(
            matnorm(to_matrix(f).mat) == max(aff_norm(f), PNorm.one(p)), f=f)
        x0, x1 = aff_apply(f, 0), aff_apply(f, 1)
        xs = [sampling.integral(rng, p) for _ in range(5)]
        c_sup.expect(
            aff_norm(f) == max(fraction_pabs(x0, p), fraction_pabs(x1, p))
            and all(fraction_pabs(aff_apply(f, x), p) <= aff_norm(f)
                    for x in xs),
            f=f)
        alpha = sampling.affine_unit(rng, p)
        x, y = sampling.rational(rng, p), sampling.rational(rng, p)
        c_iso.expect(
            fraction_pabs(aff_apply(alpha, x) - aff_apply(alpha, y), p)
            == fraction_pabs(x - y, p),
            alpha=alpha, x=x, y=y)
        diff = AffineMap(f.a - g.a, f.b - g.b, p)
        af = aff_compose(alpha, f)
        ag = aff_compose(alpha, g)
        c_leftinv.expect(
            aff_norm(AffineMap(af.a - ag.a, af.b - ag.b, p)) == aff_norm(diff),
            alpha=alpha, f=f, g=g)
        beta = sampling.affine_star_zp(rng, p)
        fb = aff_compose(f, beta)
        gb = aff_compose(g, beta)
        c_rightinv.expect(
            aff_norm(AffineMap(fb.a - gb.a, fb.b - gb.b, p)) == aff_norm(diff),
            beta=beta, f=f, g=g)
        fu = sampling.affine_unit(rng, p)
        gu = sampling.affine_unit(rng, p)
        c_lsym.expect(aff_L(aff_inverse(fu)) == aff_L(fu), f=fu)
        c_lsub.expect(
            aff_L(aff_compose(fu, gu)) <= max(aff_L(fu), aff_L(gu)),
            f=fu, g=gu)
        fz = sampling.affine_star_zp(rng, p)
        gz = sampling.affine_star_zp(rng, p)
        c_lprime.expect(
            veq(aff_Lprime(aff_compose(aff_inverse(gz), fz)),
                aff_norm(AffineMap(fz.a - gz.a, fz.b - gz.b, p))),
            f=fz, g=gz)
        hz = sampling.affine_map(rng, p)
        lhs = aff_Lprime(aff_compose(aff_inverse(aff_compose(hz, g)),
                                     aff_compose(hz, f)))
        rhs = aff_Lprime(aff_compose(aff_inverse(g), f))
        c_lprime_ultra.expect(
            veq(lhs, rhs)
            and vle(rhs,
                    vmax([aff_Lprime(aff_compose(aff_inverse(g), hz)),
                          aff_Lprime(aff_compose(aff_inverse(hz), f))])),
            f=f, g=g, h=hz)
        c_recover.expect(
            f == AffineMap(aff_apply(f, 1) - aff_apply(f, 0),
                           aff_apply(f, 0), p),
            f=f)
    return SuiteReport("affine", {"p": p, "samples": samples, "seed": seed},
                       [c_assoc, c_inv, c_matrix, c_matnorm, c_embednorm,
                        c_sup, c_iso, c_leftinv, c_rightinv, c_lsym, c_lsub,
                        c_lprime, c_lprime_ultra, c_recover])


def suite_cells(p: int = 2, samples: int = 1000, seed: int = 0,
                **_) -> SuiteReport:
    rng = random.Random(seed)
    c_sym = Check("rho:symmetry")
    c_zero = Check("rho:zero-iff-equal")
    c_tri = Check("rho:triangle")
    c_act = Check("action:rho-invariance")
    c_tree = Check("action:commutes-with-tree-maps")
    c_round = Check("tree:child-parent-round-trip")
    c_cover = Check("tree:children-disjoint-cover")
    c_meet = Check("meet:minimal-common-ancestor")
    c_semim = Check("cell-semimetric:vanishes-on-integral-cosets")
    c_left = Check("cell-semimetric:left-invariance")
    c_sep = Check("action:distinct-maps-separated")
    c_bound = Check("bounded:witness-contains-inputs")
    for _ in range(samples):
        a = sampling.cell(rng, p)
        b = sampling.cell(rng, p)
        c = sampling.cell(rng, p)
        c_sym.expect(cells_mod.rho(a, b) == cells_mod.rho(b, a), a=a, b=b)
        c_zero.expect((cells_mod.rho(a, b) == 0) == (a == b), a=a, b=b)
        c_zero.expect(cells_mod.rho(a, a) == 0, a=a)
        c_tri.expect(
            cells_mod.rho(a, c) <= cells_mod.rho(a, b) + cells_mod.rho(b, c),
            a=a, b=b, c=c)
        f = sampling.affine_map(rng, p)
        c_act.expect(
            cells_mod.rho(cells_mod.act(f, a), cells_mod.act(f, b))
            == cells_mod.rho(a, b),
            f=f, a=a, b=b)
        kids = cells_mod.children(a)
        c_tree.expect(
            sorted(map(str, (cells_mod.act(f, kid) for kid in kids)))
            == sorted(map(str, cells_mod.children(cells_mod.act(f, a))))
            and cells_mod.parent(cells_mod.act(f, a))
            == cells_mod.act(f, cells_mod.parent(a)),
            f=f, a=a)
        c_round.expect(
            all(cells_mod.parent(kid) == a for kid in kids)
            and len(set(kids)) == p,
            a=a)
        x = a.center + Fraction(p) ** a.scale * sampling.integral(
            rng, p, zero_weight=0.3)
        holders = [kid for kid in kids if cells_mod.cell_contains(kid, x)]
        c_cover.expect(
            cells_mod.cell_contains(a, x) and len(holders) == 1, a=a, x=x)
        m = cells_mod.meet(a, b)
        contains_both = (
            m.scale <= min(a.scale, b.scale)
            and cells_mod.cell_contains(m, a.center)
            and cells_mod.cell_contains(m, b.center)
        )
        deeper = [
            kid for kid in cells_mod.children(m)
            if cells_mod.cell_contains(kid, a.center)
            and cells_mod.cell_contains(kid, b.center)
            and kid.scale <= min(a.scale, b.scale)
        ]
        c_meet.expect(contains_both and not deeper, a=a, b=b, meet=m)
        g = sampling.affine_map(rng, p)
        beta = sampling.affine_star_zp(rng, p)
        c_semim.expect(
            cells_mod.cell_semimetric(aff_compose(f, beta), f) == 0,
            f=f, beta=beta)
        h2 = sampling.affine_map(rng, p)
        c_left.expect(
            cells_mod.cell_semimetric(aff_compose(g, f), aff_compose(g, h2))
            == cells_mod.cell_semimetric(f, h2),
            f=f, g=g, h=h2)
        if f != g:
            sep = cells_mod.separating_cell(f, g)
            c_sep.expect(
                sep is not None
                and cells_mod.act(f, sep) != cells_mod.act(g, sep),
                f=f, g=g)
        witness = cells_mod.is_bounded_cellset([a, b, c])
        c_bound.expect(
            all(cells_mod.cell_contains(witness.hull, cc.center)
                and witness.hull.scale <= cc.scale for cc in (a, b, c)),
            a=a, b=b, c=c)
    return SuiteReport("cells", {"p": p, "samples": samples, "seed": seed},
                       [c_sym, c_zero, c_tri, c_act, c_tree, c_round,
                        c_cover, c_meet, c_semim, c_left, c_sep, c_bound])


def suite_haar_scaling(p: int = 2, n: int = 3, l: int = 1,
                       m_values: Optional[list] = None, seed: int = 0,
                       **_) -> SuiteReport:
    base = max(1, l * (n - 1))
    m_values = list(m_values) if m_values else [base, base + 1]
    c_ratio = Check("triangular-ball:ratio-matches-homogeneous-dimension")
    c_stable = Check("triangular-ball:ratio-independent-of-precision")
    ratios = []
    for m in m_values:
        rep = finite.count_triangular_ball(p, n, l, m)
        ratios.append(rep.extra["ratio"])
        c_ratio.expect(rep.ok and rep.extra["ratio"] == rep.extra["expected"],
                       p=p, n=n, l=l, m=m, ratio=rep.extra["ratio"])
    c_stable.expect(len(set(ratios)) == 1, ratios=ratios)
    c_ball = Check("haar-ball:children-sum-to-parent")
    rng = random.Random(seed)
    for _ in range(50):
        scale = rng.randint(-5, 5)
        c_ball.expect(
            finite.haar_ball(p, scale) == p * finite.haar_ball(p, scale + 1),
            l=scale)
    c_ball.expect(finite.haar_ball(p, 0) == 1, l=0)
    return SuiteReport("haar-scaling", {"p": p, "n": n, "l": l,
                                        "m_values": m_values},
                       [c_ratio, c_stable, c_ball])


def suite_finite_groups(p: int = 2, m: int = 2, seed: int = 0,
                        budget: Optional[int] = None, **_) -> SuiteReport:
    checks = []
    reports = [
        finite.brute_group_axioms("heisenberg", p, m, n=1, seed=seed,
                                  budget=budget),
        finite.brute_group_axioms("tplus", p, m, n=3, seed=seed,
                                  budget=budget),
        # the dilated ball (l = 2k): a subgroup, though not a normal one
        finite.brute_group_axioms("h-subgroup", p, m, n=1, k=1, l=2,
                                  seed=seed, budget=budget),
        # the congruence subgroup (l = k): normal in the integral group
        finite.brute_group_axioms("h-subgroup", p, m, n=1, k=1, l=1,
                                  seed=seed, budget=budget),
        finite.brute_group_axioms("profile-subgroup", p, m, n=3,
                                  profile=(1, 2), seed=seed, budget=budget),
    ]
    for rep in reports:
        c = Check(rep.spec, rep.total, list(rep.violations))
        checks.append(c)
    return SuiteReport("finite-groups", {"p": p, "m": m, "seed": seed},
                       checks)


SUITES = {
    "ultrametric-axioms": suite_ultrametric_axioms,
    "norm-multiplicativity": suite_norm_multiplicativity,
    "matrix-norm": suite_matrix_norm,
    "gl-gauges": suite_gl_gauges,
    "tri-norm": suite_tri_norm,
    "heisenberg": suite_heisenberg,
    "affine": suite_affine,
    "cells": suite_cells,
    "haar-scaling": suite_haar_scaling,
    "finite-groups": suite_finite_groups,
}


def run_suite(name: str, **kwargs) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choices: {sorted(SUITES)}")
    return SUITES[name](**kwargs)


# --- documented negative-control mutants -----------------------------------
#
# Each mutant corrupts one operation in a way the corresponding suite must
# detect with a concrete witness:
#   - mutant_h_mul_drop_cross: the twisted product loses its cross term,
#     which silently breaks the inverse law, conjugation, and the matrix
#     embedding (the result is a plain abelian product, so associativity
#     alone would not catch it).
#   - mutant_h_mul_skew: the cross term uses the wrong operand, which does
#     break associativity and yields a witness triple.
#   - mutant_tri_norm_sum: replaces the max over entry roots by their sum,
#     which breaks the product bound and the ball/subgroup equivalence.


def mutant_h_mul_drop_cross(u: HPoint, v: HPoint) -> HPoint:
    return HPoint(
        tuple(a + b for a, b in zip(u.x, v.x)),
        tuple(a + b for a, b in zip(u.y, v.y)),
        u.t + v.t,
        u.p,
    )


def mutant_h_mul_skew(u: HPoint, v: HPoint) -> HPoint:
    twist = sum(a * b for a, b in zip(v.x, v.y))
    return HPoint(
        tuple(a + b for a, b in zip(u.x, v.x)),
        tuple(a + b for a, b in zip(u.y, v.y)),
        u.t + v.t + twist,
        u.p,
    )


def mutant_h_product_mod_drop(ring, n: int) -> Callable:
    def product(u, v):
        q = ring.modulus
        return tuple((a + b) % q for a, b in zip(u[:-1], v[:-1])) + (
            (u[-1] + v[-1]) % q,)

    return product


def mutant_h_product_mod_skew(ring, n: int) -> Callable:
    def product(u, v):
        q = ring.modulus
        twist = sum(v[i] * v[n + i] for i in range(n))
        return tuple((a + b) % q for a, b in zip(u[:-1], v[:-1])) + (
            (u[-1] + v[-1] + twist) % q,)

    return product


def mutant_tri_norm_sum(a: UTMatrix):
    total = Exact(a.p, {})
    for j in range(a.n):
        for k in range(j + 1, a.n):
            x = a.entry(j, k)
            if x != 0:
                root = fraction_pabs(x, a.p).power(Fraction(1, k - j))
                total = total.add(Exact.from_value(root))
    return total
