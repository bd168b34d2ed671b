"""Swap and central polynomials for d x d matrices built from alternations.

The basic blocks are the monomials m_i(X) = x_{(i-1)^2+1} ... x_{i^2} of
degrees 1, 3, ..., 2d-1 and the invariant T_d(X), the full alternation of
tr(m_1(X)) ... tr(m_d(X)).  Two-family alternated products are evaluated
by splitting them into an X pattern and a Y pattern (see
``alternation.split_alt_eval``).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .alternation import DEFAULT_BUDGET, MonomialPattern, alt_eval_naive, alt_eval_stream, split_alt_eval
from .exact import (
    ExactMatrix,
    TensorOperator,
    decompose_sigma2,
    fmt_scalar,
    kron,
    swap_operator,
    vectorized_det,
)
from .ncpoly import NcPoly, TensorPoly2, Var, capelli_poly, eval_poly, xs
from .pit import random_matrix
from .symmetric import (
    GroupAlgebraElement,
    Permutation,
    algebra_to_operator,
    class_to_algebra,
    phi_transform,
    weingarten,
)

#: sign of T_d relative to C_d * det, computed once from the evaluation oracle
T_SIGN = {1: 1, 2: -1, 3: 1}


# ---------------------------------------------------------------------------
# monomials and the invariant T_d


def regev_monomial(i: int, family: str = "x") -> tuple[Var, ...]:
    """m_i = v_{(i-1)^2+1} ... v_{i^2}, of degree 2i - 1."""
    if i < 1:
        raise ValueError("monomial index starts at 1")
    return tuple(Var(family, k) for k in range((i - 1) ** 2 + 1, i * i + 1))


def profile_monomials(profile: Sequence[int], family: str = "x") -> list[tuple[Var, ...]]:
    """Consecutive monomials of the given degrees over v_1, v_2, ..."""
    out, start = [], 1
    for h in profile:
        if h < 1:
            raise ValueError("profile entries must be positive")
        out.append(tuple(Var(family, k) for k in range(start, start + h)))
        start += h
    return out


@dataclass(frozen=True)
class RegevPattern:
    """The degree profile (1, 3, ..., 2d-1) monomials in two families."""

    d: int

    def m(self, i: int) -> tuple[Var, ...]:
        return regev_monomial(i, "x")

    def n(self, i: int) -> tuple[Var, ...]:
        return regev_monomial(i, "y")

    @property
    def X(self) -> tuple[Var, ...]:
        return xs(self.d * self.d, family="x")

    @property
    def Y(self) -> tuple[Var, ...]:
        return xs(self.d * self.d, family="y")

    def profile(self) -> tuple[int, ...]:
        return tuple(2 * i - 1 for i in range(1, self.d + 1))

    def product_word(self) -> tuple[Var, ...]:
        """m_1(X) m_1(Y) m_2(X) m_2(Y) ... m_d(X) m_d(Y)."""
        w: tuple[Var, ...] = ()
        for i in range(1, self.d + 1):
            w += self.m(i) + self.n(i)
        return w


def _named(mats: Sequence[ExactMatrix], family: str) -> dict[Var, ExactMatrix]:
    return {Var(family, k + 1): m for k, m in enumerate(mats)}


def _dim_of(mats: Sequence[ExactMatrix]) -> int:
    n = len(mats)
    d = math.isqrt(n)
    if d * d != n or d < 1:
        raise ValueError("need d^2 matrices")
    if any(m.shape != (d, d) for m in mats):
        raise ValueError(f"all matrices must be {d}x{d}")
    return d


def t_pattern(d: int, family: str = "x") -> MonomialPattern:
    return MonomialPattern([regev_monomial(i, family) for i in range(1, d + 1)], [xs(d * d, family=family)])


def T_d(mats: Sequence[ExactMatrix], budget: int = DEFAULT_BUDGET, workers: int = 1) -> Fraction:
    """sum_sigma sign(sigma) prod_i tr(m_i(X_sigma)) for d^2 matrices of size d."""
    d = _dim_of(mats)
    val = alt_eval_stream(t_pattern(d), _named(mats, "x"), budget, workers)
    return val.trace()


def primitive_T(k: int, mats: Sequence[ExactMatrix]) -> Fraction:
    """T_k = tr(St_k(x_1, ..., x_k))."""
    if len(mats) != k:
        raise ValueError(f"need {k} matrices")
    pat = MonomialPattern([xs(k)], [xs(k)])
    return alt_eval_stream(pat, _named(mats, "x")).trace()


def trace_constant_magnitude(d: int) -> int:
    """1! 3! ... (2d-1)! / (1! 2! ... (d-1)!), the size of T_d / det."""
    num = math.prod(math.factorial(2 * i - 1) for i in range(1, d + 1))
    den = math.prod(math.factorial(i) for i in range(1, d))
    return num // den


def signed_constant(d: int) -> int:
    """C_d with the sign fixed by evaluation (T_d = C_d * det)."""
    if d not in T_SIGN:
        raise ValueError(f"sign of C_d only determined for d <= {max(T_SIGN)}")
    return T_SIGN[d] * trace_constant_magnitude(d)


def full_cycle_coefficient(d: int) -> Fraction:
    """(-1)^(d-1) d / ((d!)^2 (2d-1)), the Weingarten value at the full cycle."""
    return Fraction((-1) ** (d - 1) * d, math.factorial(d) ** 2 * (2 * d - 1))


def regev_coefficient(d: int) -> Fraction:
    """(-1)^(d-1) / ((d!)^2 (2d-1)): F(X, Y) = this * T_d(X) T_d(Y) Id."""
    return Fraction((-1) ** (d - 1), math.factorial(d) ** 2 * (2 * d - 1))


# ---------------------------------------------------------------------------
# two-family alternations


def split_layout(slots: Sequence[Sequence[Var]], x_family: str = "x", y_family: str = "y"):
    """Cut each slot word into maximal one-family runs.

    Returns (x slots, y slots, chains) suitable for ``split_alt_eval``.
    """
    xsl: list[tuple[Var, ...]] = []
    ysl: list[tuple[Var, ...]] = []
    chains = []
    for w in slots:
        chain = []
        for fam, run in itertools.groupby(w, key=lambda v: v.family):
            run = tuple(run)
            if fam == x_family:
                chain.append(("x", len(xsl)))
                xsl.append(run)
            elif fam == y_family:
                chain.append(("y", len(ysl)))
                ysl.append(run)
            else:
                raise ValueError(f"unexpected variable family {fam!r}")
        chains.append(chain)
    return xsl, ysl, chains


def eval_xy(
    slots: Sequence[Sequence[Var]],
    d: int,
    assignment: Mapping[Var, ExactMatrix],
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
):
    """Alt_X Alt_Y (slot_1 (x) ... ) with X, Y the first d^2 x- and y-variables."""
    xsl, ysl, chains = split_layout(slots)
    xp = MonomialPattern(xsl, [xs(d * d, family="x")])
    yp = MonomialPattern(ysl, [xs(d * d, family="y")])
    return split_alt_eval(xp, yp, chains, assignment, budget, workers)


def xy_assignment(xmats: Sequence[ExactMatrix], ymats: Sequence[ExactMatrix]) -> dict[Var, ExactMatrix]:
    out = _named(xmats, "x")
    out.update(_named(ymats, "y"))
    return out


def random_xy(d: int, rng: random.Random) -> tuple[list[ExactMatrix], list[ExactMatrix]]:
    return (
        [random_matrix(rng, d) for _ in range(d * d)],
        [random_matrix(rng, d) for _ in range(d * d)],
    )


def regev_F_value(
    d: int,
    xmats: Sequence[ExactMatrix],
    ymats: Sequence[ExactMatrix],
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> ExactMatrix:
    """F(X, Y) = Alt_X Alt_Y (m_1(X) m_1(Y) ... m_d(X) m_d(Y))."""
    asg = xy_assignment(xmats, ymats)
    return eval_xy([RegevPattern(d).product_word()], d, asg, budget, workers)


def regev_F_naive(d: int, xmats, ymats, cap: int = 10**6) -> ExactMatrix:
    """Same value by expanding all (d^2)!^2 terms; only for d = 2."""
    rp = RegevPattern(d)
    pat = MonomialPattern([rp.product_word()], [rp.X, rp.Y])
    return alt_eval_naive(pat, xy_assignment(xmats, ymats), cap=cap)


def regev_tensor(d: int, ymats: Sequence[ExactMatrix], budget: int = DEFAULT_BUDGET, workers: int = 1) -> TensorOperator:
    """Alt_Y (n_1(Y) (x) ... (x) n_d(Y)) as an operator on (F^d)^(x)d."""
    return alt_eval_stream(t_pattern(d, "y"), _named(ymats, "y"), budget, workers)


def weingarten_operator(n: int, d: int) -> TensorOperator:
    return algebra_to_operator(class_to_algebra(weingarten(n, d)), d)


def profile_can_be_nonzero(profile: Sequence[int], d: int) -> bool:
    """Whether the parts can be grouped into blocks of sums 1, 3, ..., 2d-1."""
    targets = [2 * i - 1 for i in range(1, d + 1)]
    parts = sorted(profile, reverse=True)
    if sum(parts) != d * d:
        return False

    def place(k: int, left: list[int]) -> bool:
        if k == len(parts):
            return all(v == 0 for v in left)
        tried = set()
        for j, v in enumerate(left):
            if v >= parts[k] and v not in tried:
                tried.add(v)
                left[j] -= parts[k]
                ok = place(k + 1, left)
                left[j] += parts[k]
                if ok:
                    return True
        return False

    return place(0, targets)


def profile_tensor(profile: Sequence[int], ymats: Sequence[ExactMatrix]):
    """Alt_Y of the tensor product of consecutive monomials of the given degrees."""
    d = _dim_of(ymats)
    pat = MonomialPattern(profile_monomials(profile, "y"), [xs(d * d, family="y")])
    return alt_eval_stream(pat, _named(ymats, "y"))


# ---------------------------------------------------------------------------
# certificates


@dataclass
class SwapSample:
    point: int
    a: Fraction
    b: Fraction
    residual_zero: bool
    tt: Fraction

    @property
    def ratio(self) -> Fraction | None:
        return self.b / self.tt if self.tt else None


@dataclass
class SwapCertificate:
    """Evaluated (or analytic) record for a combination of alternated tensors."""

    construction: str
    d: int
    coefficients: dict[str, Fraction]
    predicted: Fraction | None
    samples: list[SwapSample] = field(default_factory=list)
    analytic_only: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        if self.analytic_only or not self.samples:
            return False
        if any(s.a != 0 or not s.residual_zero for s in self.samples):
            return False
        ratios = {s.ratio for s in self.samples}
        if None in ratios or len(ratios) != 1:
            return False
        (r,) = ratios
        return r != 0 and (self.predicted is None or r == self.predicted)


def _components(op: TensorOperator, tt: Fraction) -> tuple[Fraction, Fraction]:
    dec = decompose_sigma2(op)
    if not dec.residual_zero:
        raise ArithmeticError("operator is not in span(Id, swap)")
    return dec.a / tt, dec.b / tt


def _solve_components(d: int, trace: Fraction, swap_trace: Fraction) -> tuple[Fraction, Fraction]:
    """(a, b) with a d^2 + b d = trace and a d + b d^2 = swap_trace."""
    m = ExactMatrix([[d * d, d], [d, d * d]])
    sol = m.solve(ExactMatrix([[trace], [swap_trace]]))
    return sol.entry(0, 0), sol.entry(1, 0)


def _combine(ops: Sequence[TensorOperator], coeffs: Sequence[Fraction]) -> TensorOperator:
    out = ops[0].scale(coeffs[0])
    for op, c in zip(ops[1:], coeffs[1:]):
        out = out + op.scale(c)
    return out


# ---------------------------------------------------------------------------
# even d


def even_swap_pair(d: int) -> tuple[list[tuple[Var, ...]], list[tuple[Var, ...]]]:
    """Slots (A, B) of G_1 and (A, C) of G_2 for even d.

    A = m_1(X) m_2(Y) m_3(X) ... m_{d-1}(X) m_d(Y)
    B = m_d(X) m_{d-1}(Y) ... m_3(Y) m_2(X) m_1(Y)
    C = m_1(Y) m_d(X) m_{d-1}(Y) ... m_3(Y) m_2(X)
    """
    if d < 2 or d % 2:
        raise ValueError("even_swap_pair needs an even d >= 2")
    fam = lambda i: "x" if i % 2 else "y"  # noqa: E731
    a: tuple[Var, ...] = ()
    for i in range(1, d + 1):
        a += regev_monomial(i, fam(i))
    tail: tuple[Var, ...] = ()
    for i in range(d, 1, -1):
        tail += regev_monomial(i, "x" if i % 2 == 0 else "y")
    b = tail + regev_monomial(1, "y")
    c = regev_monomial(1, "y") + tail
    return [a, b], [a, c]


@dataclass
class EvenAnalysis:
    d: int
    a_d: Fraction
    a_hh: Fraction
    g1: tuple[Fraction, Fraction]
    g2: tuple[Fraction, Fraction]
    combination: tuple[Fraction, Fraction]
    value: Fraction
    integer_combination: tuple[int, int]
    integer_value: Fraction

    def scaled(self) -> tuple[Fraction, Fraction]:
        f = math.factorial(self.d) ** 2
        return self.a_d * f, self.a_hh * f


def _primitive(pair: Sequence[Fraction]) -> tuple[tuple[int, int], Fraction]:
    den = math.lcm(*(Fraction(v).denominator for v in pair))
    ints = [int(v * den) for v in pair]
    g = math.gcd(*ints)
    if ints[0] < 0:
        g = -g
    return (ints[0] // g, ints[1] // g), Fraction(den, g)


def even_analysis(d: int) -> EvenAnalysis:
    """Coefficients of G_1, G_2 and of their swap combination from Wg(d, d).

    tr G_1 = tr G_2 = TT a_{h,h},  tr((1,2) G_1) = TT a_d,  tr((1,2) G_2) = 0.
    The combination -a_2 G_1 + a_1 G_2 equals TT (-a_2 b_1 + a_1 b_2) (1,2).
    """
    if d < 2 or d % 2:
        raise ValueError("even_analysis needs an even d >= 2")
    h = d // 2
    wg = weingarten(d, d)
    a_d, a_hh = wg[(d,)], wg[(h, h)]
    a1, b1 = _solve_components(d, a_hh, a_d)
    a2, b2 = _solve_components(d, a_hh, Fraction(0))
    combo = (-a2, a1)
    value = -a2 * b1 + a1 * b2
    ints, k = _primitive(combo)
    return EvenAnalysis(d, a_d, a_hh, (a1, b1), (a2, b2), combo, value, ints, value * k)


def _tt(d: int, xmats, ymats, workers: int = 1) -> Fraction:
    return T_d(xmats, workers=workers) * T_d(ymats, workers=workers)


def even_swap_combination(d: int, points: int = 3, seed: int = 0, workers: int = 1) -> SwapCertificate:
    """Swap certificate for -a_2 G_1 + a_1 G_2; evaluated only for d = 2."""
    an = even_analysis(d)
    cert = SwapCertificate(
        "even-swap",
        d,
        {"G1": an.combination[0], "G2": an.combination[1]},
        an.value,
        analytic_only=d > 2,
    )
    if d > 2:
        cert.notes.append("exact evaluation out of budget; analytic coefficients only")
        return cert
    s1, s2 = even_swap_pair(d)
    rng = random.Random(seed)
    i = 0
    while len(cert.samples) < points:
        xm, ym = random_xy(d, rng)
        tt = _tt(d, xm, ym, workers)
        if tt == 0:
            cert.notes.append(f"resampled degenerate point {i}")
            i += 1
            continue
        asg = xy_assignment(xm, ym)
        g1 = eval_xy(s1, d, asg, workers=workers)
        g2 = eval_xy(s2, d, asg, workers=workers)
        dec = decompose_sigma2(_combine([g1, g2], an.combination))
        cert.samples.append(SwapSample(i, dec.a, dec.b, dec.residual_zero, tt))
        i += 1
    return cert


def even_pair_components(d: int, xmats, ymats, workers: int = 1) -> dict[str, Fraction]:
    """Measured (a_i, b_i) of G_1, G_2 divided by T_d(X) T_d(Y)."""
    s1, s2 = even_swap_pair(d)
    asg = xy_assignment(xmats, ymats)
    tt = _tt(d, xmats, ymats, workers)
    a1, b1 = _components(eval_xy(s1, d, asg, workers=workers), tt)
    a2, b2 = _components(eval_xy(s2, d, asg, workers=workers), tt)
    return {"a1": a1, "b1": b1, "a2": a2, "b2": b2, "tt": tt}


# reference numeric lines to compare against: (coefficient of G_1,
# coefficient of G_2, printed constant, unit) with unit "TT" = T_d(X)T_d(Y)
# and "DD" = det(X vec) det(Y vec)
EVEN_REFERENCE_LINES = {
    2: [
        (Fraction(8, 3), Fraction(-10, 3), Fraction(-8, 9), "TT"),
        (Fraction(8, 3), Fraction(-10, 3), Fraction(-32), "DD"),
        (Fraction(4), Fraction(-5), Fraction(-48), "DD"),
    ],
    4: [
        (Fraction(-22), Fraction(27), Fraction(22 * 20, 3 * 15 * 16**2), "TT"),
        (Fraction(-22), Fraction(27), Fraction(11, 3 * 5 * 2**5), "TT"),
    ],
    6: [(Fraction(800), Fraction(-2094), Fraction(-43, 3395700), "TT")],
}


@dataclass
class LineComparison:
    d: int
    coefficients: tuple[Fraction, Fraction]
    printed: Fraction
    unit: str
    proportional: bool
    true_value: Fraction
    true_coefficients: tuple[Fraction, Fraction]

    @property
    def matches(self) -> bool:
        return self.proportional and self.true_value == self.printed

    def describe(self) -> str:
        p, q = (fmt_scalar(v) for v in self.true_coefficients)
        return f"{p} G1 + {q} G2 = {fmt_scalar(self.true_value)} {self.unit}"


def compare_even_lines(d: int) -> list[LineComparison]:
    """True constants of the reference combinations p G_1 + q G_2."""
    an = even_analysis(d)
    c1, c2 = an.combination
    out = []
    for p, q, printed, unit in EVEN_REFERENCE_LINES.get(d, []):
        prop = p * c2 == q * c1
        # keep the G_2 coefficient; the G_1 coefficient is corrected if needed
        k = q / c2
        true = an.value * k
        if unit == "DD":
            true *= Fraction(signed_constant(d)) ** 2
        out.append(LineComparison(d, (p, q), printed, unit, prop, true, (c1 * k, q)))
    return out


def closed_form_constant(d: int, scaled: bool) -> Fraction:
    """a_{h,h}(d a_d - a_{h,h}) / ((1-d)(1-d^2) d!^2) with raw or d!^2-scaled inputs."""
    an = even_analysis(d)
    a_d, a_hh = an.scaled() if scaled else (an.a_d, an.a_hh)
    return a_hh * (d * a_d - a_hh) / ((1 - d) * (1 - d * d) * math.factorial(d) ** 2)


def true_closed_form_constant(d: int) -> Fraction:
    """Value over TT of d a_{h,h} G_1 + (a_d - d a_{h,h}) G_2 with raw Wg entries."""
    an = even_analysis(d)
    return an.value * d * (1 - d * d)


# ---------------------------------------------------------------------------
# odd d


def odd_G1_slots(d: int) -> list[tuple[Var, ...]]:
    """A = m_1(X) m_2(Y) ... m_{d-1}(Y) m_d(X),  B = m_d(Y) m_{d-1}(X) ... m_2(X) m_1(Y)."""
    if d < 3 or d % 2 == 0:
        raise ValueError("odd construction needs an odd d >= 3")
    a: tuple[Var, ...] = ()
    for i in range(1, d + 1):
        a += regev_monomial(i, "x" if i % 2 else "y")
    b: tuple[Var, ...] = ()
    for i in range(d, 0, -1):
        b += regev_monomial(i, "y" if i % 2 else "x")
    return [a, b]


def odd_G1_components(d: int) -> tuple[Fraction, Fraction]:
    """(a, b) = (a_d / (d (1 - d^2)), -a_d / (1 - d^2)) with a_d from Wg(d, d)."""
    a_d = weingarten(d, d)[(d,)]
    return _solve_components(d, Fraction(0), a_d)


def _v(fam: str, *idx: int) -> tuple[Var, ...]:
    return tuple(Var(fam, i) for i in idx)


def odd_G2_slots() -> list[tuple[Var, ...]]:
    """A = x1 y1 x3 x4 m_3(Y),  B = y2 x2 y3 y4 m_3(X)  (d = 3)."""
    a = _v("x", 1) + _v("y", 1) + _v("x", 3, 4) + regev_monomial(3, "y")
    b = _v("y", 2) + _v("x", 2) + _v("y", 3, 4) + regev_monomial(3, "x")
    return [a, b]


def m1_pattern() -> MonomialPattern:
    """x1 (x) x3 x4 (x) m_3(X) (x) x2, alternated in X (d = 3)."""
    return MonomialPattern([_v("x", 1), _v("x", 3, 4), regev_monomial(3, "x"), _v("x", 2)], [xs(9)])


def m2_pattern() -> MonomialPattern:
    """y1 (x) m_3(Y) (x) y2 (x) y3 y4, alternated in Y (d = 3)."""
    return MonomialPattern([_v("y", 1), regev_monomial(3, "y"), _v("y", 2), _v("y", 3, 4)], [xs(9, family="y")])


def _t(n: int, *cyc: int) -> Permutation:
    return Permutation.from_cycles(n, cyc) if cyc else Permutation.identity(n)


def lemma_cases(op: TensorOperator, t_value: Fraction) -> dict[Permutation, Fraction]:
    """Nonzero tr(sigma o op) / T over the 24 sigma in S_4."""
    phi = phi_transform(op)
    return {s.inverse(): v / t_value for s, v in phi.coeffs.items() if v}


@dataclass
class OddG2Report:
    m1_cases: dict[Permutation, Fraction]
    m2_cases: dict[Permutation, Fraction]
    alt_x_identity_holds: bool
    alt_y_identity_holds: bool
    trace_ratio: Fraction
    swap_trace: Fraction
    predicted_ratio: Fraction

    @property
    def ok(self) -> bool:
        m1 = {_t(4, 2, 4): 1, _t(4, 1, 2): -1}
        m2 = {_t(4, 3, 4): 1, _t(4, 1, 4): -1}
        return (
            self.m1_cases == m1
            and self.m2_cases == m2
            and self.alt_x_identity_holds
            and self.alt_y_identity_holds
            and self.swap_trace == 0
            and self.trace_ratio == self.predicted_ratio
        )


def odd_G2_predicted() -> Fraction:
    """-b_{1^4} + b_{3,1} on Wg(4, 3)."""
    wg = weingarten(4, 3)
    return -wg[(1, 1, 1, 1)] + wg[(3, 1)]


def odd_swap_G2_d3(xmats, ymats, workers: int = 1) -> OddG2Report:
    """Check the structure of G_2 for d = 3 at one point."""
    asg = xy_assignment(xmats, ymats)
    tx, ty = T_d(xmats, workers=workers), T_d(ymats, workers=workers)
    alt1 = alt_eval_stream(m1_pattern(), asg, workers=workers)
    alt2 = alt_eval_stream(m2_pattern(), asg, workers=workers)
    wg = class_to_algebra(weingarten(4, 3))

    def gen(c1, c2):
        return GroupAlgebraElement.basis(_t(4, *c1)) - GroupAlgebraElement.basis(_t(4, *c2))

    alt_x_expected = algebra_to_operator(gen((2, 4), (1, 2)) * wg, 3).scale(tx)
    alt_y_expected = algebra_to_operator(gen((3, 4), (1, 4)) * wg, 3).scale(ty)
    g2 = eval_xy(odd_G2_slots(), 3, asg, workers=workers)
    return OddG2Report(
        lemma_cases(alt1, tx),
        lemma_cases(alt2, ty),
        alt1 == alt_x_expected,
        alt2 == alt_y_expected,
        g2.trace() / (tx * ty),
        (swap_operator(3) @ g2).trace(),
        odd_G2_predicted(),
    )


def odd_analysis() -> dict[str, Fraction]:
    """Components of G_1, G_2 (d = 3) and of the swap combination."""
    a1, b1 = odd_G1_components(3)
    a2, b2 = _solve_components(3, odd_G2_predicted(), Fraction(0))
    return {"a1": a1, "b1": b1, "a2": a2, "b2": b2, "c1": -a2, "c2": a1, "value": -a2 * b1 + a1 * b2}


def odd_swap_combination(points: int = 2, seed: int = 0, workers: int = 1) -> SwapCertificate:
    """-a_2 G_1 + a_1 G_2 for d = 3, evaluated exactly at random points."""
    an = odd_analysis()
    cert = SwapCertificate("odd-swap", 3, {"G1": an["c1"], "G2": an["c2"]}, an["value"])
    rng = random.Random(seed)
    i = 0
    while len(cert.samples) < points:
        xm, ym = random_xy(3, rng)
        tt = _tt(3, xm, ym, workers)
        if tt == 0:
            cert.notes.append(f"resampled degenerate point {i}")
            i += 1
            continue
        asg = xy_assignment(xm, ym)
        g1 = eval_xy(odd_G1_slots(3), 3, asg, workers=workers)
        g2 = eval_xy(odd_G2_slots(), 3, asg, workers=workers)
        dec = decompose_sigma2(_combine([g1, g2], [an["c1"], an["c2"]]))
        cert.samples.append(SwapSample(i, dec.a, dec.b, dec.residual_zero, tt))
        i += 1
    return cert


def tau(h: int) -> Permutation:
    """(1, 2, ..., h)(h+1, ..., 2h)."""
    return Permutation.from_cycles(2 * h, tuple(range(1, h + 1)), tuple(range(h + 1, 2 * h + 1)))


@dataclass
class OddCoefficient:
    h: int
    d: int
    value: Fraction
    enumeration: Fraction
    enumeration_terms: list[tuple[int, Permutation, tuple[int, ...]]]
    class_formula: bool

    @property
    def scaled_d_plus_1(self) -> Fraction:
        return self.value * math.factorial(self.d + 1) ** 2

    @property
    def scaled_d(self) -> Fraction:
        return self.value * math.factorial(self.d) ** 2

    @property
    def nonzero(self) -> bool:
        return self.value != 0

    @property
    def agrees(self) -> bool:
        return self.value == self.enumeration


def _drop_zero(parts: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((p for p in parts if p > 0), reverse=True))


def odd_coefficient(h: int) -> OddCoefficient:
    """The coefficient of T_d(X) T_d(Y) in tr(G_2) for d = 2h - 1.

    For h >= 3: -b_{h,h-2,1,1} + 2 b_{h,h} - b_{h,h-3,2,1} on Wg(2h, 2h-1).
    For h = 2 the class formula has a negative part, and the value comes
    from the four permutations sigma = t t' tau_h directly.  The direct
    enumeration is always reported alongside.
    """
    if h < 2:
        raise ValueError("h must be at least 2")
    n, d = 2 * h, 2 * h - 1
    wg = weingarten(n, d)
    terms = []
    enum = Fraction(0)
    for sign, a, b in [(-1, (3, 4), (1, 2)), (1, (3, 4), (2, 4)), (1, (1, 4), (1, 2)), (-1, (1, 4), (2, 4))]:
        sigma = _t(n, *a) * _t(n, *b) * tau(h)
        ct = tuple(sigma.cycle_type())
        terms.append((sign, sigma, ct))
        enum += sign * wg.at(sigma)
    if h >= 3:
        value = (
            -wg[_drop_zero((h, h - 2, 1, 1))]
            + 2 * wg[(h, h)]
            - wg[_drop_zero((h, h - 3, 2, 1))]
        )
    else:
        value = enum
    return OddCoefficient(h, d, value, enum, terms, h >= 3)


# ---------------------------------------------------------------------------
# Capelli route


@dataclass
class CapelliSwap:
    f: NcPoly
    alternated: tuple[Var, ...]
    companions: list[NcPoly]
    h: NcPoly
    H: TensorPoly2
    y0: Var


def companion(f: NcPoly, v: Var) -> NcPoly:
    """sum over terms c a v b of f of c b a (v occurs once per term)."""
    out = NcPoly()
    for w, c in f.terms.items():
        k = [i for i, u in enumerate(w) if u == v]
        if len(k) != 1:
            raise ValueError(f"{v} must occur exactly once in every term")
        i = k[0]
        out = out + NcPoly({w[i + 1 :] + w[:i]: c})
    return out


def capelli_swap(d: int = 2) -> CapelliSwap:
    """h = sum x_i y0 f_i and H = sum x_i (x) f_i for f = C_{d^2}.

    tr(x_j f_i) = delta_ij tr(f), so h = tr(y0) tr(f) Id and H = tr(f) swap.
    The extra variable y0 is z1.
    """
    m = d * d
    f = capelli_poly(m)
    xv = xs(m)
    comps = [companion(f, v) for v in xv]
    y0 = Var("z", 1)
    h = NcPoly()
    H = TensorPoly2()
    for v, fi in zip(xv, comps):
        h = h + NcPoly({(v, y0): 1}) * fi
        H = H + TensorPoly2.tensor(NcPoly({(v,): 1}), fi)
    return CapelliSwap(f, xv, comps, h, H, y0)


# ---------------------------------------------------------------------------
# dual bases


@dataclass
class DualBasisCertificate:
    d: int
    delta: Fraction
    singular: bool
    holds: bool
    duals: list[ExactMatrix] = field(default_factory=list)


def dual_basis_swap(words: Sequence[Sequence[Var]], assignment: Mapping[Var, ExactMatrix], d: int) -> DualBasisCertificate:
    """sum A_i (x) B_i = Delta * swap with B_i = Delta * A_i^*, Delta = det(tr(A_i A_j))."""
    if len(words) != d * d:
        raise ValueError("need d^2 words")
    mats = [eval_poly(NcPoly({tuple(w): 1}), assignment, d) for w in words]
    gram = ExactMatrix([[(a @ b).trace() for b in mats] for a in mats])
    delta = gram.det()
    if delta == 0:
        return DualBasisCertificate(d, delta, True, False)
    inv = gram.inverse()
    duals = []
    for i in range(d * d):
        m = ExactMatrix.zeros(d)
        for k in range(d * d):
            m = m + mats[k].scale(inv.entry(k, i) * delta)
        duals.append(m)
    total = kron(mats[0], duals[0])
    for a, b in zip(mats[1:], duals[1:]):
        total = total + kron(a, b)
    return DualBasisCertificate(d, delta, False, total == swap_operator(d).scale(delta), duals)
