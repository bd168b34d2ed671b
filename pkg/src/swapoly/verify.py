"""Verifiers, the check registry and machine-readable reports.

Every check returns a ``CheckReport``.  Status "pass" means every asserted
quantity matched exactly, "fail" means some did not, and "finding" marks an
informational comparison against a printed reference constant.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import constructions as C
from . import twobytwo as B
from .alternation import DEFAULT_BUDGET
from .exact import (
    ExactMatrix,
    TensorOperator,
    decompose_sigma2,
    fmt_scalar,
    kron,
    swap_operator,
    vectorized_det,
)
from .ncpoly import NcPoly, TensorPoly2, Var, alternate, eval_poly, eval_tensor, is_balanced, xs
from .pit import is_tpi, matrix_units, random_assignment, random_matrix, random_traceless
from .symmetric import (
    Partition,
    acts_as_identity,
    class_to_algebra,
    partitions,
    phi_of_identity,
    weingarten,
)

PASS, FAIL, FINDING = "pass", "fail", "finding"
PROVENANCES = ("reference", "trivial", "derived")
ZETA = Var("zeta", 1)


def _s(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, Fraction)):
        return fmt_scalar(v)
    return str(v)


@dataclass
class CheckReport:
    check: str
    anchor: str
    status: str = PASS
    seed: int = 0
    points: list = field(default_factory=list)
    measured: list = field(default_factory=list)
    expected: list = field(default_factory=list)

    def measure(self, name: str, value) -> None:
        self.measured.append({"name": name, "value": _s(value)})

    def expect(self, name: str, value, provenance: str) -> None:
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        self.expected.append({"name": name, "value": _s(value), "provenance": provenance})

    def require(self, ok: bool) -> bool:
        if not ok and self.status == PASS:
            self.status = FAIL
        return ok

    def compare(self, name: str, measured, expected, provenance: str) -> bool:
        self.measure(name, measured)
        self.expect(name, expected, provenance)
        return self.require(measured == expected)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "anchor": self.anchor,
            "status": self.status,
            "seed": self.seed,
            "points": list(self.points),
            "measured": list(self.measured),
            "expected": list(self.expected),
        }


def _rng(check: str, seed: int) -> random.Random:
    return random.Random(f"{check}:{seed}")


# ---------------------------------------------------------------------------
# generic verifiers


def verify_swap(
    t,
    d: int,
    trials: int = 5,
    seed: int = 0,
    scalar: Callable[[Mapping[Var, ExactMatrix]], Fraction] | None = None,
    check: str = "swap",
    anchor: str = "swap criterion: value = a Id + b (1,2) with a = 0",
) -> CheckReport:
    """Evaluate t at random points; every value must be b * swap, some b != 0."""
    if trials < 3:
        raise ValueError("verify_swap needs at least 3 trials")
    rep = CheckReport(check, anchor, seed=seed)
    rng = _rng(check, seed)
    variables = sorted(t.variables())
    nonzero = False
    for i in range(trials):
        asg = random_assignment(variables, d, rng)
        dec = decompose_sigma2(eval_tensor(t, asg, d))
        rep.points.append(i)
        rep.measure(f"a[{i}]", dec.a)
        rep.measure(f"b[{i}]", dec.b)
        rep.require(dec.a == 0 and dec.residual_zero)
        if not dec.residual_zero:
            rep.measure(f"residual[{i}]", "nonzero")
        nonzero = nonzero or dec.b != 0
        if scalar is not None:
            want = scalar(asg)
            rep.expect(f"b[{i}]", want, "reference")
            rep.require(dec.b == want)
    rep.require(nonzero)
    return rep


def verify_central(
    t,
    d: int,
    trials: int = 5,
    seed: int = 0,
    zeta: Var | None = None,
    scalar: Callable[[Mapping[Var, ExactMatrix]], Fraction] | None = None,
    check: str = "central",
    anchor: str = "sum a_i zeta b_i central and zero for traceless zeta",
) -> CheckReport:
    """Scalar-valued with a random zeta, zero for random traceless zeta.

    A TensorPoly2 sum a_i (x) b_i is contracted to sum a_i zeta b_i; an
    NcPoly is used as is, with ``zeta`` naming its distinguished variable.
    """
    if trials < 3:
        raise ValueError("verify_central needs at least 3 trials")
    if isinstance(t, TensorPoly2):
        zeta = ZETA
        poly = t.contract(NcPoly({(zeta,): 1}))
    else:
        if zeta is None:
            raise ValueError("an NcPoly needs the zeta variable named")
        poly = t
    rep = CheckReport(check, anchor, seed=seed)
    rng = _rng(check, seed)
    others = sorted(v for v in poly.variables() if v != zeta)
    nonzero = False
    for i in range(trials):
        asg = random_assignment(others, d, rng)
        asg[zeta] = random_matrix(rng, d)
        val = eval_poly(poly, asg, d)
        sv = val.scalar_value()
        rep.points.append(i)
        rep.measure(f"value[{i}]", "not scalar" if sv is None else sv)
        rep.require(sv is not None)
        nonzero = nonzero or bool(sv)
        if scalar is not None and sv is not None:
            want = asg[zeta].trace() * scalar(asg)
            rep.expect(f"value[{i}]", want, "reference")
            rep.require(sv == want)
        asg[zeta] = random_traceless(rng, d)
        zero = eval_poly(poly, asg, d).is_zero()
        rep.measure(f"traceless[{i}]", "0" if zero else "nonzero")
        rep.require(zero)
    rep.require(nonzero)
    return rep


def goldman_properties(d: int, seed: int = 0, trials: int = 5) -> CheckReport:
    """swap^2 = 1, swap (a (x) b) swap^-1 = b (x) a, also for -swap; tr(swap) = d."""
    rep = CheckReport(f"goldman.d{d}", "Goldman element: t^2 = 1, t(a(x)b)t^-1 = b(x)a, up to sign", seed=seed)
    rng = _rng(rep.check, seed)
    sw = swap_operator(d)
    ident = TensorOperator.identity(d, 2)
    for alpha in (1, -1):
        t = sw.scale(alpha)
        rep.require((t @ t) == ident)
    rep.compare("tr(swap)", sw.trace(), d, "trivial")
    for i in range(trials):
        a, b = random_matrix(rng, d), random_matrix(rng, d)
        rep.points.append(i)
        for alpha in (1, -1):
            t = sw.scale(alpha)
            # t^-1 = t since t^2 = 1
            rep.require(t @ kron(a, b) @ t == kron(b, a))
    rep.measure("sign ambiguity", "swap and -swap both satisfy")
    return rep


# ---------------------------------------------------------------------------
# symmetric group checks

# (d+1)!^2 Wg(d+1, d) as printed; the d = 4 entry at (4,1) is printed
# "+-143/168" and is read as -143/168
WEINGARTEN_REFERENCE_ROWS = {
    2: {(3,): Fraction(-7, 4), (2, 1): Fraction(1, 4), (1, 1, 1): Fraction(17, 4)},
    3: {
        (4,): Fraction(37, 15),
        (3, 1): Fraction(-3, 5),
        (2, 2): Fraction(-11, 5),
        (2, 1, 1): Fraction(-7, 3),
        (1, 1, 1, 1): Fraction(61, 5),
    },
    4: {
        (5,): Fraction(-533, 168),
        (4, 1): Fraction(-143, 168),
        (3, 2): Fraction(503, 168),
        (3, 1, 1): Fraction(61, 24),
        (2, 2, 1): Fraction(-53, 168),
        (2, 1, 1, 1): Fraction(-1417, 168),
        (1, 1, 1, 1, 1): Fraction(5227, 168),
    },
    5: {
        (6,): Fraction(1627, 420),
        (5, 1): Fraction(-451, 420),
        (4, 2): Fraction(-389, 105),
        (4, 1, 1): Fraction(-104, 35),
        (3, 3): Fraction(-1601, 420),
        (3, 2, 1): Fraction(151, 210),
        (3, 1, 1, 1): Fraction(991, 105),
        (2, 2, 2): Fraction(701, 210),
        (2, 2, 1, 1): Fraction(289, 70),
        (2, 1, 1, 1, 1): Fraction(-4649, 210),
        (1, 1, 1, 1, 1, 1): Fraction(5227, 168),
    },
}


def check_weingarten_row(d: int, seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport(f"weingarten.table.d{d}", f"(d+1)!^2 Wg(d+1, d) table row, d = {d}", seed=seed)
    wg = weingarten(d + 1, d).scaled(math.factorial(d + 1) ** 2)
    for parts, want in WEINGARTEN_REFERENCE_ROWS[d].items():
        rep.compare(str(Partition(parts)), wg[parts], want, "reference")
    return rep


def check_weingarten_even(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("weingarten.even", "d!^2 Wg(d, d) values and the full-cycle closed form", seed=seed)
    refs = {
        (2,): Fraction(-2, 3),
        (4,): Fraction(-4, 7),
        (6,): Fraction(-6, 11),
        (1, 1): Fraction(4, 3),
        (2, 2): Fraction(22, 35),
        (3, 3): Fraction(300, 539),
    }
    for parts, want in refs.items():
        d = sum(parts)
        got = weingarten(d, d)[parts] * math.factorial(d) ** 2
        rep.compare(f"d={d} {Partition(parts)}", got, want, "reference")
    for d in range(2, 9):
        rep.compare(f"full cycle d={d}", weingarten(d, d)[(d,)], C.full_cycle_coefficient(d), "reference")
    return rep


def check_weingarten_inverse(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport(
        "weingarten.inverse",
        "Phi(1) Wg(n, d) acts as the identity; sign of Wg is the permutation sign for d >= n",
        seed=seed,
    )
    for n in range(1, 6):
        for d in range(1, 6):
            g = phi_of_identity(n, d) * class_to_algebra(weingarten(n, d))
            ok = acts_as_identity(g, d)
            rep.measure(f"n={n} d={d}", "identity" if ok else "not identity")
            rep.require(ok)
            if d >= n:
                for mu in partitions(n):
                    v = weingarten(n, d)[mu]
                    rep.require(v != 0 and (v > 0) == (mu.sign() == 1))
    rep.expect("all", "identity", "reference")
    return rep


# ---------------------------------------------------------------------------
# general-d constructions


def check_constant(d: int, seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport(f"constants.T{d}", f"T_d = C_d det(vec x_1, ..., vec x_(d^2)), d = {d}", seed=seed)
    want = C.signed_constant(d)
    rep.expect("|C_d|", C.trace_constant_magnitude(d), "reference")
    rep.expect("sign", "+" if want > 0 else "-", "derived")
    if d == 2:
        # the 24-term sum, expanded in full, at the matrix units
        units = matrix_units(2)
        asg = dict(zip(xs(4), units))
        total = Fraction(0)
        full = alternate(NcPoly({xs(4): 1}), xs(4))
        for w, c in full.terms.items():
            total += c * eval_poly(NcPoly({w[:1]: 1}), asg, 2).trace() * eval_poly(NcPoly({w[1:]: 1}), asg, 2).trace()
        rep.compare("T_2(units) / det", total / vectorized_det(units), want, "derived")
        rep.compare("streamed T_2(units)", C.T_d(units), total, "derived")
    rng = _rng(rep.check, seed)
    for i in range(5):
        mats = [random_matrix(rng, d) for _ in range(d * d)]
        det = vectorized_det(mats)
        rep.points.append(i)
        if det == 0:
            rep.measure(f"point {i}", "singular, skipped")
            continue
        rep.compare(f"ratio[{i}]", C.T_d(mats, workers=workers) / det, want, "derived")
    return rep


def check_regev(d: int, seed: int = 0, workers: int = 1, points: int = 5, budget: int = DEFAULT_BUDGET) -> CheckReport:
    rep = CheckReport(f"regev.F.d{d}", "F(X,Y) = (-1)^(d-1) T_d(X) T_d(Y) / ((d!)^2 (2d-1)) Id", seed=seed)
    rng = _rng(rep.check, seed)
    want = C.regev_coefficient(d)
    for i in range(points):
        xm, ym = C.random_xy(d, rng)
        tt = C.T_d(xm, budget, workers) * C.T_d(ym, budget, workers)
        rep.points.append(i)
        F = C.regev_F_value(d, xm, ym, budget, workers)
        sv = F.scalar_value()
        if not rep.require(sv is not None and tt != 0):
            rep.measure(f"F[{i}]", "not scalar or degenerate")
            continue
        rep.compare(f"F/TT[{i}]", sv / tt, want, "reference")
        if d == 2 and i == 0:
            rep.compare("naive 576-term route", C.regev_F_naive(d, xm, ym) == F, True, "derived")
            z = random_matrix(rng, d)
            scaled = F.scale(z.det() ** d)
            rep.compare("F(zX, Y) = det(z)^d F", C.regev_F_value(d, [z @ m for m in xm], ym) == scaled, True, "reference")
            rep.compare("F(X, zY) = det(z)^d F", C.regev_F_value(d, xm, [z @ m for m in ym]) == scaled, True, "reference")
    return rep


def check_regev_weingarten(d: int, seed: int = 0, workers: int = 1, budget: int = DEFAULT_BUDGET) -> CheckReport:
    rep = CheckReport(
        f"regev.weingarten.d{d}", "Alt_Y(n_1 (x) ... (x) n_d) = T_d(Y) Wg(d, d) as operators", seed=seed
    )
    rng = _rng(rep.check, seed)
    op = C.weingarten_operator(d, d)
    for i in range(2):
        ym = [random_matrix(rng, d) for _ in range(d * d)]
        g = C.regev_tensor(d, ym, budget, workers)
        rep.points.append(i)
        rep.compare(f"operator identity[{i}]", g == op.scale(g.trace()), True, "reference")
    return rep


BAD_PROFILES = {2: [(4,), (2, 2)], 3: [(9,), (4, 5), (2, 7), (3, 6), (2, 2, 5)]}


def check_profiles(d: int, seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport(
        f"regev.profiles.d{d}", "alternated tensors vanish unless degrees regroup into 1, 3, ..., 2d-1", seed=seed
    )
    rng = _rng(rep.check, seed)
    ym = [random_matrix(rng, d) for _ in range(d * d)]
    rep.points.append(0)
    for p in BAD_PROFILES[d]:
        rep.require(not C.profile_can_be_nonzero(p, d))
        rep.compare(f"profile {p}", C.profile_tensor(p, ym).is_zero(), True, "reference")
    good = C.RegevPattern(d).profile()
    rep.compare(f"profile {good}", C.profile_tensor(good, ym).is_zero(), False, "derived")
    return rep


def _certificate_report(rep: CheckReport, cert: C.SwapCertificate) -> None:
    for name, v in cert.coefficients.items():
        rep.measure(f"coefficient {name}", v)
    for s in cert.samples:
        rep.points.append(s.point)
        rep.measure(f"a[{s.point}]", s.a)
        rep.measure(f"b/TT[{s.point}]", s.ratio)
        rep.require(s.a == 0 and s.residual_zero)
    rep.expect("b/TT", cert.predicted, "derived")
    rep.require(cert.valid)


def check_even_components(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("even.components.d2", "tr G_i = TT a_(h,h), tr((1,2) G_1) = TT a_d, tr((1,2) G_2) = 0", seed=seed)
    rng = _rng(rep.check, seed)
    an = C.even_analysis(2)
    rep.compare("a_(1,1)", an.a_hh, Fraction(1, 3), "reference")
    rep.compare("a_2", an.a_d, Fraction(-1, 6), "reference")
    want = {"a1": Fraction(5, 36), "b1": Fraction(-1, 9), "a2": Fraction(1, 9), "b2": Fraction(-1, 18)}
    for i in range(3):
        xm, ym = C.random_xy(2, rng)
        comp = C.even_pair_components(2, xm, ym, workers)
        rep.points.append(i)
        for k, v in want.items():
            rep.compare(f"{k}[{i}]", comp[k], v, "derived")
        d = 2
        rep.require(comp["a1"] * d * d + comp["b1"] * d == an.a_hh)
        rep.require(comp["a2"] * d * d + comp["b2"] * d == an.a_hh)
        rep.require(comp["a1"] * d + comp["b1"] * d * d == an.a_d)
        rep.require(comp["a2"] * d + comp["b2"] * d * d == 0)
    return rep


def check_even_swap(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("even.swap.d2", "-a_2 G_1 + a_1 G_2 = TT (-a_2 b_1 + a_1 b_2) (1,2)", seed=seed)
    cert = C.even_swap_combination(2, points=10, seed=seed, workers=workers)
    _certificate_report(rep, cert)
    an = C.even_analysis(2)
    p, q = an.integer_combination
    rep.measure(f"{p} G1 + {q} G2 over TT", an.integer_value)
    return rep


def check_even_lines(d: int, seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport(f"even.lines.d{d}", f"printed numeric swap combinations, d = {d}", FINDING, seed)
    for lc in C.compare_even_lines(d):
        p, q = lc.coefficients
        rep.measure(f"{fmt_scalar(p)} G1 + {fmt_scalar(q)} G2", lc.describe())
        rep.expect(f"{fmt_scalar(p)} G1 + {fmt_scalar(q)} G2", f"{fmt_scalar(lc.printed)} {lc.unit}", "reference")
        rep.measure("matches", lc.matches)
    rep.measure("closed form, raw Wg", C.closed_form_constant(d, scaled=False))
    rep.measure("closed form, scaled Wg", C.closed_form_constant(d, scaled=True))
    rep.measure("true d a_hh G1 + (a_d - d a_hh) G2 over TT", C.true_closed_form_constant(d))
    return rep


def check_odd_g1(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("odd.g1.d3", "tr G_1 = 0, tr((1,2) G_1) = TT a_d, d = 3", seed=seed)
    rng = _rng(rep.check, seed)
    a_d = weingarten(3, 3)[(3,)]
    rep.compare("a_3", a_d, Fraction(1, 60), "reference")
    a, b = C.odd_G1_components(3)
    rep.compare("solved (a, b)", (a, b), (Fraction(-1, 1440), Fraction(1, 480)), "reference")
    for i in range(3):
        xm, ym = C.random_xy(3, rng)
        tt = C.T_d(xm, workers=workers) * C.T_d(ym, workers=workers)
        g1 = C.eval_xy(C.odd_G1_slots(3), 3, C.xy_assignment(xm, ym), workers=workers)
        rep.points.append(i)
        rep.compare(f"tr G1[{i}]", g1.trace(), 0, "reference")
        rep.compare(f"tr((1,2)G1)/TT[{i}]", (swap_operator(3) @ g1).trace() / tt, a_d, "reference")
        dec = decompose_sigma2(g1)
        rep.compare(f"components/TT[{i}]", (dec.a / tt, dec.b / tt), (a, b), "derived")
    return rep


def check_odd_g2(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("odd.g2.d3", "M_1, M_2 sigma-cases and Alt M_i = T [..] Wg(4, 3); tr G_2 over TT", seed=seed)
    rng = _rng(rep.check, seed)
    rep.compare("(4!)^2 (-b_(1^4) + b_(3,1))", C.odd_G2_predicted() * 576, Fraction(-64, 5), "reference")
    for i in range(2):
        xm, ym = C.random_xy(3, rng)
        r = C.odd_swap_G2_d3(xm, ym, workers)
        rep.points.append(i)
        rep.compare(f"M1 cases[{i}]", _cases(r.m1_cases), "(1,2):-1 (2,4):1", "reference")
        rep.compare(f"M2 cases[{i}]", _cases(r.m2_cases), "(1,4):-1 (3,4):1", "reference")
        rep.compare(f"Alt_X M1 identity[{i}]", r.alt_x_identity_holds, True, "reference")
        rep.compare(f"Alt_Y M2 identity[{i}]", r.alt_y_identity_holds, True, "reference")
        rep.compare(f"tr((1,2)G2)[{i}]", r.swap_trace, 0, "reference")
        rep.compare(f"tr G2 / TT[{i}]", r.trace_ratio, r.predicted_ratio, "reference")
    return rep


def _cases(cases) -> str:
    return " ".join(f"{p}:{fmt_scalar(v)}" for p, v in sorted(cases.items(), key=lambda kv: str(kv[0])))


def check_odd_swap(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("odd.swap.d3", "-a_2 G_1 + a_1 G_2 is a swap polynomial, d = 3", seed=seed)
    _certificate_report(rep, C.odd_swap_combination(points=2, seed=seed, workers=workers))
    return rep


def check_odd_coefficient(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("odd.coefficient", "-b_(h,h-2,1,1) + 2 b_(h,h) - b_(h,h-3,2,1) on Wg(2h, 2h-1) is nonzero", seed=seed)
    for h in range(2, 7):
        oc = C.odd_coefficient(h)
        rep.measure(f"h={h}", oc.value)
        rep.measure(f"h={h} x (d+1)!^2", oc.scaled_d_plus_1)
        rep.require(oc.nonzero)
    rep.compare("h=3 x (6!)^2", C.odd_coefficient(3).scaled_d_plus_1, Fraction(-1867, 105), "reference")
    return rep


def check_odd_coefficient_notes(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("odd.coefficient.notes", "class formula versus direct sigma enumeration; scaling label", FINDING, seed)
    for h in range(2, 7):
        oc = C.odd_coefficient(h)
        rep.measure(f"h={h} enumeration x (d+1)!^2", oc.enumeration * math.factorial(oc.d + 1) ** 2)
        rep.measure(f"h={h} enumeration classes", " ".join(f"{s:+d}{Partition(ct)}" for s, _, ct in oc.enumeration_terms))
        rep.measure(f"h={h} agrees", oc.agrees)
    oc = C.odd_coefficient(3)
    rep.measure("h=3 x (5!)^2", oc.scaled_d)
    rep.expect("h=3 printed with (5!)^2 label", Fraction(-1867, 105), "reference")
    rep.measure("d=3 printed label b_(2,2) - b_(3,1), x (4!)^2", (weingarten(4, 3)[(2, 2)] - weingarten(4, 3)[(3, 1)]) * 576)
    return rep


def check_capelli(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("capelli.d2", "tr(x_j f_i) = delta_ij tr(f); h central, H = tr(f) swap for f = C_4", seed=seed)
    cs = C.capelli_swap(2)
    rng = _rng(rep.check, seed)
    variables = sorted(cs.f.variables())
    for i in range(5):
        asg = random_assignment(variables, 2, rng)
        trf = eval_poly(cs.f, asg).trace()
        rep.points.append(i)
        grid = all(
            eval_poly(NcPoly({(xj,): 1}) * fi, asg).trace() == (trf if a == b else 0)
            for a, fi in enumerate(cs.companions)
            for b, xj in enumerate(cs.alternated)
        )
        rep.compare(f"duality grid[{i}]", grid, True, "reference")

    def trf(asg):
        return eval_poly(cs.f, asg).trace()

    central = verify_central(cs.h, 2, 5, seed, zeta=cs.y0, scalar=trf, check="capelli.h")
    swap = verify_swap(cs.H, 2, 5, seed, scalar=trf, check="capelli.H")
    for sub in (central, swap):
        rep.measured.append({"name": sub.check, "value": sub.status})
        rep.require(sub.ok)
    rep.expect("h, H", PASS, "reference")
    return rep


DUAL_WORDS = {
    2: [(), ("x1",), ("y1",), ("x1", "y1")],
    3: [(), ("x1",), ("y1",), ("x1", "x1"), ("x1", "y1"), ("y1", "x1"), ("y1", "y1"), ("x1", "x1", "y1"), ("x1", "y1", "y1")],
}


def check_dual_basis(d: int, seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport(f"dual-basis.d{d}", "sum A_i (x) Delta A_i^* = Delta swap", seed=seed)
    from .ncpoly import var

    words = [tuple(var(s) for s in w) for w in DUAL_WORDS[d]]
    rng = _rng(rep.check, seed)
    found = 0
    tries = 0
    while found < 5:
        asg = {Var("x", 1): random_matrix(rng, d), Var("y", 1): random_matrix(rng, d)}
        cert = C.dual_basis_swap(words, asg, d)
        tries += 1
        if cert.singular:
            rep.measure(f"try {tries}", "singular Gram, resampled")
            continue
        rep.points.append(tries - 1)
        rep.compare(f"identity[{found}]", cert.holds, True, "reference")
        if d == 2:
            x, y = asg[Var("x", 1)], asg[Var("y", 1)]
            s = B.bracket_scalar(x, y)
            rep.compare(f"Delta = -s^2 [{found}]", cert.delta, -s * s, "reference")
        found += 1
    units = matrix_units(d)
    total = kron(units[0], units[0].transpose())
    for u in units[1:]:
        total = total + kron(u, u.transpose())
    rep.compare("sum e_ij (x) e_ji", total == swap_operator(d), True, "trivial")
    return rep


# ---------------------------------------------------------------------------
# two by two


def _q_scalar(asg):
    x, y = asg[B.X], asg[B.Y]
    return y.trace() ** 2 * B.bracket_scalar(x, y) ** 2


def _p_scalar(asg):
    return B.bracket_scalar(asg[B.X], asg[B.Y])


def check_P(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("twobytwo.P", "P(x, y) has value [x,y]^2 swap", seed=seed)
    P = B.P_xy()
    units = {B.X: ExactMatrix.unit(2, 0, 1), B.Y: ExactMatrix.unit(2, 1, 0)}
    rep.compare("P(e12, e21) = swap", P.evaluate(units) == swap_operator(2), True, "derived")
    for sub in (
        verify_swap(P, 2, 10, seed, _p_scalar, "twobytwo.P.swap"),
        verify_central(P, 2, 10, seed, scalar=_p_scalar, check="twobytwo.P.central"),
    ):
        rep.measured.append({"name": sub.check, "value": sub.status})
        rep.require(sub.ok)
    rep.compare("balanced", is_balanced(P), False, "reference")
    return rep


def check_Q(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("twobytwo.Q", "Q(x, y), 40 terms, value tr(y)^2 det([x,y])^2 swap", seed=seed)
    Q = B.Q_xy()
    rep.compare("terms", len(Q), 40, "reference")
    rep.compare("balanced", is_balanced(Q), True, "reference")
    rep.compare("slot degrees", sorted(Q.slot_degrees()), [(5, 5)], "reference")
    for sub in (
        verify_swap(Q, 2, 10, seed, _q_scalar, "twobytwo.Q.swap"),
        verify_central(Q, 2, 10, seed, scalar=_q_scalar, check="twobytwo.Q.central"),
    ):
        rep.measured.append({"name": sub.check, "value": sub.status})
        rep.require(sub.ok)
    return rep


def check_Q_prime(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("twobytwo.Qprime", "tr(y)^2 [x,y]^2 P with all traces absorbed: balanced, degree 10", seed=seed)
    Qp = B.balanced_Q_prime()
    pure = Qp.variables() <= {B.X, B.Y}
    rep.compare("pure in x, y", pure, True, "trivial")
    rep.compare("balanced", is_balanced(Qp), True, "reference")
    rep.compare("degree", Qp.degree(), 10, "reference")
    rep.measure("terms", len(Qp))
    sub = verify_swap(Qp, 2, 10, seed, _q_scalar, "twobytwo.Qprime.swap")
    rep.measured.append({"name": sub.check, "value": sub.status})
    rep.require(sub.ok)
    return rep


def check_Q_prime_tpi(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("twobytwo.Qprime-Q", "is Q' - Q a tensor identity? (left open)", FINDING, seed)
    diff = B.q_prime_minus_q()
    v = is_tpi(diff, 2, trials=20, seed=seed)
    rep.measure("terms of Q' - Q", len(diff))
    rep.measure("verdict", v.verdict)
    rep.points.extend(range(v.trials))
    return rep


def check_traced_split(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("twobytwo.traced-split", "printed traced distribution of tr(y)^2 [x,y]^2 P", FINDING, seed)
    rng = _rng(rep.check, seed)
    bad = 0
    for i in range(5):
        x, y = random_matrix(rng, 2), random_matrix(rng, 2)
        got = B.displayed_traced_split(x, y)
        want = swap_operator(2).scale(y.trace() ** 2 * B.bracket_scalar(x, y) ** 2)
        rep.points.append(i)
        rep.measure(f"equals tr(y)^2 s^2 swap [{i}]", got == want)
        bad += got != want
    rep.measure("points where the printed split fails", bad)
    rep.measure("replacement", "trace-basis split used by balanced_family")
    return rep


def check_balanced_family(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("twobytwo.balanced-family", "A [x,y]^4 swap is the value of a balanced swap polynomial", seed=seed)
    for h, k in [(1, 0), (1, 2), (2, 0), (2, 1)]:
        t = B.balanced_family(h, k)
        rep.compare(f"h={h} k={k} balanced", is_balanced(t), True, "reference")

        def scal(asg, h=h, k=k):
            return B.balanced_family_scalar(h, k, asg[B.X], asg[B.Y])

        sub = verify_swap(t, 2, 5, seed, scal, f"twobytwo.balanced-family.{h}.{k}")
        rep.measured.append({"name": sub.check, "value": sub.status})
        rep.require(sub.ok)
    try:
        B.balanced_family(1, 1)
        refused = False
    except ValueError:
        refused = True
    rep.compare("h=1 k=1 refused", refused, True, "trivial")
    return rep


def check_gram(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("twobytwo.gram", "det D = -[x,y]^4; dual basis of 1, x, y, xy gives P", seed=seed)
    x, y = ExactMatrix.unit(2, 0, 1), ExactMatrix.unit(2, 1, 0)
    g = B.trace_gram(x, y)
    rep.compare("D(e12, e21)", g.D.entries(), ExactMatrix([[2, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 1]]).entries(), "derived")
    rep.compare("det D(e12, e21)", g.det, -1, "derived")
    rng = _rng(rep.check, seed)
    for i in range(10):
        x, y = random_matrix(rng, 2), random_matrix(rng, 2)
        g = B.trace_gram(x, y)
        rep.points.append(i)
        rep.compare(f"det D[{i}]", g.det, -g.s**2, "reference")
        if g.dual_swap is not None:
            rep.compare(f"dual basis = P[{i}]", g.dual_swap == g.p_value, True, "reference")
    return rep


def check_lambda(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("twobytwo.lambda", "adj(D) / [x,y]^2 against the printed cofactor matrix", FINDING, seed)
    rng = _rng(rep.check, seed)
    for i in range(5):
        x, y = random_matrix(rng, 2), random_matrix(rng, 2)
        g = B.trace_gram(x, y)
        rep.points.append(i)
        if g.lam is None:
            rep.measure(f"point {i}", "s = 0, skipped")
            continue
        rep.measure(f"entries differing from -Lambda [{i}]", " ".join(map(str, g.lambda_mismatches(-1))) or "none")
        rep.measure(f"entries differing from +Lambda [{i}]", len(g.lambda_mismatches(1)))
        g1, g2, g3, g4, g5 = B.invariants(x, y)
        a = g2 * g3**2 - g5 * g1 * g3 + g1**2 * g4 - 2 * g2 * g4 + g5**2
        rep.measure(f"adj(D)[0,0]/s + A [{i}]", g.lam.entry(0, 0) + a)
    return rep


def check_poincare(seed: int = 0, workers: int = 1, maxdeg: int = 7) -> CheckReport:
    rep = CheckReport("twobytwo.poincare", "dim R_(i,j) and identity codimensions from the Poincare series", seed=seed)
    for r in B.poincare_check(maxdeg, seed):
        rep.compare(f"dim R_({r.i},{r.j})", r.rank, r.series, "reference")
        rep.compare(f"identities ({r.i},{r.j})", r.identities_measured, r.identities_series, "reference")
    return rep


def check_s_algebra(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("twobytwo.s-algebra", "S = T + Tx + Ty + Txy multiplication and trace absorption", seed=seed)
    rng = _rng(rep.check, seed)
    bases = [B.SElement.basis(i) for i in range(4)]
    f = B.BracketForm.bracket().lmul((B.X,)).rmul((B.Y,))
    e = (1, 1, 2, 0, 1)
    for i in range(10):
        x, y = random_matrix(rng, 2), random_matrix(rng, 2)
        rep.points.append(i)
        rep.require(all((a * b).evaluate(x, y) == a.evaluate(x, y) @ b.evaluate(x, y) for a in bases for b in bases))
        inv = B.invariants(x, y)
        for g in range(5):
            rep.require(B.absorb_generator(g, f).evaluate(x, y) == f.evaluate(x, y).scale(inv[g]))
        got = eval_poly(B.absorb_invariant(e, f), {B.X: x, B.Y: y})
        rep.require(got == f.evaluate(x, y).scale(B.TPoly.monomial(e).evaluate(x, y)))
    rep.measure("table and absorption", rep.status)
    rep.expect("table and absorption", PASS, "derived")
    return rep


def check_identity(name: str, seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport(f"identity.{name}", f"2x2 matrix identity {name}", seed=seed)
    rep.points.extend(range(10))
    rep.compare("holds", B.check_identity(name, seed, 10), True, "reference")
    return rep


def check_trace_zero(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport(
        "identity.trace-zero",
        "tr(a Id + b (1,2)) = 0 iff b = -d a; tr((1,2)(a Id + b (1,2))) = 0 iff a = -d b",
        seed=seed,
    )
    rng = _rng(rep.check, seed)
    for i in range(5):
        d = rng.randint(2, 4)
        a = Fraction(rng.randint(1, 9) * rng.choice((-1, 1)))
        ident, sw = TensorOperator.identity(d, 2), swap_operator(d)
        rep.points.append(i)
        rep.compare(f"tr(a Id - d a swap) d={d} [{i}]", (ident.scale(a) + sw.scale(-d * a)).trace(), 0, "trivial")
        rep.compare(f"tr(swap(-d a Id + a swap)) d={d} [{i}]", (sw @ (ident.scale(-d * a) + sw.scale(a))).trace(), 0, "trivial")
        printed = ident.scale(-d * a) + sw.scale(a)
        rep.measure(f"printed labelling, tr(-d b Id + b swap) [{i}]", printed.trace())
    rep.measure("printed labelling", "roles of a and b exchanged; tr(Id) = d^2, tr(swap) = d")
    return rep


def check_conductor(seed: int = 0, workers: int = 1) -> CheckReport:
    rep = CheckReport("identity.conductor", "det(z)^d F(X, Y) = F(zX, Y) = F(X, zY)", seed=seed)
    rng = _rng(rep.check, seed)
    for i in range(5):
        xm, ym = C.random_xy(2, rng)
        z = random_matrix(rng, 2)
        F = C.regev_F_value(2, xm, ym).scale(z.det() ** 2)
        rep.points.append(i)
        rep.compare(f"F(zX, Y) [{i}]", C.regev_F_value(2, [z @ m for m in xm], ym) == F, True, "reference")
        rep.compare(f"F(X, zY) [{i}]", C.regev_F_value(2, xm, [z @ m for m in ym]) == F, True, "reference")
    return rep


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class CheckSpec:
    id: str
    anchor: str
    dims: tuple[int, ...] | None
    group: str
    run: Callable[..., CheckReport]
    args: tuple = ()


def _specs() -> list[CheckSpec]:
    out = []

    def add(cid, anchor, dims, group, fn, *args):
        out.append(CheckSpec(cid, anchor, dims, group, fn, args))

    for d in (2, 3, 4, 5):
        add(f"weingarten.table.d{d}", f"(d+1)!^2 Wg(d+1, d) table row, d = {d}", (d,), "weingarten", check_weingarten_row, d)
    add("weingarten.even", "d!^2 Wg(d, d) values and the full-cycle closed form", None, "weingarten", check_weingarten_even)
    add("weingarten.inverse", "Phi(1) Wg(n, d) = 1 and sign pattern", None, "weingarten", check_weingarten_inverse)
    for d in (2, 3):
        add(f"constants.T{d}", f"T_d = C_d det, d = {d}", (d,), "constructions", check_constant, d)
        add(f"regev.F.d{d}", "F(X,Y) multiplier", (d,), "constructions", check_regev, d)
        add(f"regev.weingarten.d{d}", "Alt_Y(n_1 (x) ... (x) n_d) = T_d(Y) Wg(d, d)", (d,), "constructions", check_regev_weingarten, d)
        add(f"regev.profiles.d{d}", "vanishing for bad degree profiles", (d,), "constructions", check_profiles, d)
        add(f"dual-basis.d{d}", "dual basis swap certificate", (d,), "identities", check_dual_basis, d)
    add("even.components.d2", "G_1, G_2 trace constraints", (2,), "swap", check_even_components)
    add("even.swap.d2", "even swap combination", (2,), "swap", check_even_swap)
    for d in (2, 4, 6):
        add(f"even.lines.d{d}", "printed even-d combinations", (d,), "findings", check_even_lines, d)
    add("odd.g1.d3", "odd G_1", (3,), "swap", check_odd_g1)
    add("odd.g2.d3", "odd G_2", (3,), "swap", check_odd_g2)
    add("odd.swap.d3", "odd swap combination", (3,), "swap", check_odd_swap)
    add("odd.coefficient", "odd coefficient nonzero", None, "constructions", check_odd_coefficient)
    add("odd.coefficient.notes", "odd coefficient notes", None, "findings", check_odd_coefficient_notes)
    add("capelli.d2", "Capelli route", (2,), "central", check_capelli)
    for d in (2, 3, 4):
        add(f"goldman.d{d}", "Goldman element properties", (d,), "goldman", goldman_properties_check, d)
    add("twobytwo.P", "P(x, y)", (2,), "swap", check_P)
    add("twobytwo.Q", "Q(x, y)", (2,), "swap", check_Q)
    add("twobytwo.Qprime", "balanced Q'", (2,), "swap", check_Q_prime)
    add("twobytwo.Qprime-Q", "Q' - Q verdict", (2,), "findings", check_Q_prime_tpi)
    add("twobytwo.traced-split", "printed traced split", (2,), "findings", check_traced_split)
    add("twobytwo.balanced-family", "balanced family", (2,), "swap", check_balanced_family)
    add("twobytwo.gram", "trace Gram matrix", (2,), "identities", check_gram)
    add("twobytwo.lambda", "cofactor matrix", (2,), "findings", check_lambda)
    add("twobytwo.poincare", "Poincare series", (2,), "identities", check_poincare)
    add("twobytwo.s-algebra", "trace algebra", (2,), "identities", check_s_algebra)
    for name in B.IDENTITY_NAMES:
        add(f"identity.{name}", f"2x2 identity {name}", (2,), "identities", check_identity, name)
    add("identity.trace-zero", "trace-zero equivalences", None, "identities", check_trace_zero)
    add("identity.conductor", "conductor identity", (2,), "identities", check_conductor)
    return sorted(out, key=lambda s: s.id)


def goldman_properties_check(d: int, seed: int = 0, workers: int = 1) -> CheckReport:
    return goldman_properties(d, seed)


CHECKS: dict[str, CheckSpec] = {s.id: s for s in _specs()}

GROUPS = {
    "all": None,
    "swap": ("swap",),
    "central": ("central",),
    "identities": ("identities",),
    "goldman": ("goldman",),
}


def select_checks(group: str = "all", d: int | None = None) -> list[CheckSpec]:
    groups = GROUPS[group]
    out = []
    for s in CHECKS.values():
        if groups is not None and s.group not in groups:
            continue
        if d is not None and s.dims is not None and d not in s.dims:
            continue
        out.append(s)
    return sorted(out, key=lambda s: s.id)


def _run_one(args) -> CheckReport:
    cid, seed, workers = args
    s = CHECKS[cid]
    rep = s.run(*s.args, seed=seed, workers=workers)
    rep.check = cid
    return rep


def run_checks(specs: Sequence[CheckSpec], seed: int = 0, threads: int = 1) -> list[CheckReport]:
    """Run checks, in parallel when threads > 1; reports sorted by check id."""
    jobs = [(s.id, seed, 1) for s in sorted(specs, key=lambda s: s.id)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            reports = list(ex.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    return sorted(reports, key=lambda r: r.check)


def identity_suite(seed: int = 0) -> list[CheckReport]:
    return run_checks(select_checks("identities"), seed)


def reports_json(reports: Sequence[CheckReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=1, sort_keys=False) + "\n"
