"""Two generic 2x2 matrices x, y: invariants, trace algebra, brackets.

Invariant generators: g1 = tr(x), g2 = det(x), g3 = tr(y), g4 = det(y),
g5 = tr(xy).  The letters ``x1`` and ``y1`` play the roles of x and y, and
c denotes the bracket [x, y] = xy - yx.  For 2x2 matrices c is traceless, so
c^2 = s * Id with the scalar s = -det(c).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import ExactMatrix, TensorOperator, as_scalar, fmt_scalar, integer_rank, kron, swap_operator
from .ncpoly import NcPoly, TensorPoly2, Var, eval_poly, is_balanced, parse_poly
from .pit import random_matrix

X = Var("x", 1)
Y = Var("y", 1)
GENERATORS = ("tr(x)", "det(x)", "tr(y)", "det(y)", "tr(xy)")
WEIGHTS = ((1, 0), (2, 0), (0, 1), (0, 2), (1, 1))
ABSORB_ORDER = (2, 4, 1, 0, 3)  # g3, g5, g2, g1, g4 (zero based)

Q_TEXT = """\
1 x1.y1.y1.x1.y1 | x1.y1.y1.x1.y1
-1 x1.y1.y1.x1.y1 | y1.y1.x1.x1.y1
-1 x1.y1.y1.y1.x1 | x1.y1.y1.x1.y1
1 x1.y1.y1.y1.x1 | x1.y1.y1.y1.x1
1 x1.y1.y1.y1.x1 | y1.x1.y1.x1.y1
-1 x1.y1.y1.y1.x1 | y1.y1.x1.y1.x1
-1 x1.y1.y1.y1.y1 | x1.y1.x1.y1.x1
1 x1.y1.y1.y1.y1 | y1.x1.x1.y1.x1
-1 y1.x1.y1.y1.x1 | x1.y1.y1.x1.y1
-1 y1.x1.y1.y1.x1 | x1.y1.y1.y1.x1
1 y1.x1.y1.y1.x1 | y1.x1.y1.x1.y1
1 y1.x1.y1.y1.x1 | y1.y1.y1.x1.x1
-1 y1.x1.y1.y1.y1 | x1.y1.x1.y1.x1
1 y1.x1.y1.y1.y1 | x1.y1.y1.x1.x1
1 y1.x1.y1.y1.y1 | y1.x1.y1.x1.x1
-1 y1.x1.y1.y1.y1 | y1.y1.x1.x1.x1
1 y1.y1.x1.y1.x1 | x1.y1.y1.x1.y1
-1 y1.y1.x1.y1.x1 | x1.y1.y1.y1.x1
-1 y1.y1.x1.y1.x1 | y1.x1.y1.x1.y1
1 y1.y1.x1.y1.x1 | y1.x1.y1.y1.x1
-1 y1.y1.x1.y1.y1 | x1.y1.x1.x1.y1
1 y1.y1.x1.y1.y1 | x1.y1.x1.y1.x1
1 y1.y1.x1.y1.y1 | y1.x1.x1.x1.y1
-1 y1.y1.x1.y1.y1 | y1.x1.x1.y1.x1
1 y1.y1.y1.x1.x1 | x1.y1.y1.y1.x1
-1 y1.y1.y1.x1.x1 | y1.x1.y1.x1.y1
1 y1.y1.y1.x1.x1 | y1.y1.x1.x1.y1
-1 y1.y1.y1.x1.x1 | y1.y1.y1.x1.x1
1 y1.y1.y1.x1.y1 | x1.y1.x1.y1.x1
-1 y1.y1.y1.x1.y1 | x1.y1.y1.x1.x1
-1 y1.y1.y1.x1.y1 | y1.x1.y1.x1.x1
1 y1.y1.y1.x1.y1 | y1.y1.x1.x1.x1
-1 y1.y1.y1.y1.x1 | x1.x1.y1.y1.x1
1 y1.y1.y1.y1.x1 | x1.y1.x1.x1.y1
1 y1.y1.y1.y1.x1 | x1.y1.x1.y1.x1
-1 y1.y1.y1.y1.x1 | y1.x1.x1.x1.y1
-1 y1.y1.y1.y1.x1 | y1.x1.y1.x1.x1
1 y1.y1.y1.y1.x1 | y1.y1.x1.x1.x1
1 y1.y1.y1.y1.y1 | x1.x1.y1.x1.x1
-1 y1.y1.y1.y1.y1 | x1.y1.x1.x1.x1
"""


def invariants(x: ExactMatrix, y: ExactMatrix) -> tuple[Fraction, ...]:
    """(tr x, det x, tr y, det y, tr xy) at a point."""
    return (x.trace(), x.det(), y.trace(), y.det(), (x @ y).trace())


def bracket_scalar(x: ExactMatrix, y: ExactMatrix) -> Fraction:
    """The scalar s with [x,y]^2 = s * Id, i.e. s = -det([x,y])."""
    return -(x @ y - y @ x).det()


# ---------------------------------------------------------------------------
# the invariant ring T


def _mono_degree(e: Sequence[int]) -> int:
    return sum(k * (w[0] + w[1]) for k, w in zip(e, WEIGHTS))


def mono_bidegree(e: Sequence[int]) -> tuple[int, int]:
    return (
        sum(k * w[0] for k, w in zip(e, WEIGHTS)),
        sum(k * w[1] for k, w in zip(e, WEIGHTS)),
    )


class TPoly:
    """Polynomial in g1..g5 with exact coefficients; keys are exponent 5-tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        self.terms: dict[tuple[int, ...], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for e, c in items:
            e = tuple(e)
            if len(e) != 5 or any(k < 0 for k in e):
                raise ValueError(f"bad exponent vector {e}")
            v = self.terms.get(e, Fraction(0)) + as_scalar(c)
            if v:
                self.terms[e] = v
            else:
                self.terms.pop(e, None)

    @classmethod
    def const(cls, c) -> "TPoly":
        return cls({(0, 0, 0, 0, 0): c})

    @classmethod
    def gen(cls, i: int) -> "TPoly":
        e = [0] * 5
        e[i] = 1
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, e, c=1) -> "TPoly":
        return cls({tuple(e): c})

    def __add__(self, other) -> "TPoly":
        other = _as_tpoly(other)
        out = TPoly(self.terms)
        return TPoly(list(out.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "TPoly":
        return self.scale(-1)

    def __sub__(self, other) -> "TPoly":
        return self + (-_as_tpoly(other))

    def __rsub__(self, other) -> "TPoly":
        return _as_tpoly(other) - self

    def scale(self, c) -> "TPoly":
        c = as_scalar(c)
        return TPoly({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "TPoly":
        other = _as_tpoly(other)
        out = []
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return TPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TPoly":
        out = TPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TPoly.const(other)
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, x: ExactMatrix, y: ExactMatrix) -> Fraction:
        return self.evaluate_at(invariants(x, y))

    def evaluate_at(self, g: Sequence[Fraction]) -> Fraction:
        tot = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for gi, k in zip(g, e):
                if k:
                    term *= gi**k
            tot += term
        return tot

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                GENERATORS[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            parts.append(f"{fmt_scalar(c)}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__


def _as_tpoly(p) -> TPoly:
    return p if isinstance(p, TPoly) else TPoly.const(p)


G = [TPoly.gen(i) for i in range(5)]

#: s = [x,y]^2 as an element of T
S_POLY = G[4] ** 2 - G[0] * G[2] * G[4] + G[1] * G[2] ** 2 + G[0] ** 2 * G[3] - 4 * G[1] * G[3]


# ---------------------------------------------------------------------------
# the trace algebra S = T + Tx + Ty + Txy


def _s(c1=0, cx=0, cy=0, cxy=0):
    return tuple(_as_tpoly(v) for v in (c1, cx, cy, cxy))


g1, g2, g3, g4, g5 = G
# product of basis elements b_i * b_j, basis order (1, x, y, xy)
_TABLE = {
    (1, 1): _s(-g2, g1),
    (1, 2): _s(0, 0, 0, 1),
    (1, 3): _s(0, 0, -g2, g1),
    (2, 1): _s(g5 - g1 * g3, g3, g1, -1),
    (2, 2): _s(-g4, 0, g3),
    (2, 3): _s(-g1 * g4, g4, g5),
    (3, 1): _s(-g2 * g3, g5, g2),
    (3, 2): _s(0, -g4, 0, g3),
    (3, 3): _s(-g2 * g4, 0, 0, g5),
}
del g1, g2, g3, g4, g5


@dataclass(frozen=True, eq=False)
class SElement:
    """c1 * 1 + cx * x + cy * y + cxy * xy with coefficients in T."""

    coeffs: tuple

    def __init__(self, c1=0, cx=0, cy=0, cxy=0):
        object.__setattr__(self, "coeffs", _s(c1, cx, cy, cxy))

    @classmethod
    def basis(cls, i: int) -> "SElement":
        c = [0, 0, 0, 0]
        c[i] = 1
        return cls(*c)

    def __add__(self, other: "SElement") -> "SElement":
        return SElement(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, t) -> "SElement":
        t = _as_tpoly(t)
        return SElement(*(t * a for a in self.coeffs))

    def __mul__(self, other: "SElement") -> "SElement":
        return s_multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SElement):
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def is_scalar(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def evaluate(self, x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
        g = invariants(x, y)
        basis = [ExactMatrix.identity(2), x, y, x @ y]
        out = ExactMatrix.zeros(2)
        for c, b in zip(self.coeffs, basis):
            out = out + b.scale(c.evaluate_at(g))
        return out

    def __str__(self) -> str:
        names = ("1", "x", "y", "xy")
        return " + ".join(f"({c})*{n}" for c, n in zip(self.coeffs, names) if not c.is_zero()) or "0"


def s_multiply(a: SElement, b: SElement) -> SElement:
    """Product in S, reduced with Cayley-Hamilton and yx = -xy + ..."""
    out = [TPoly() for _ in range(4)]
    for i, ca in enumerate(a.coeffs):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b.coeffs):
            if cb.is_zero():
                continue
            coef = ca * cb
            if i == 0:
                out[j] = out[j] + coef
            elif j == 0:
                out[i] = out[i] + coef
            else:
                for k, t in enumerate(_TABLE[(i, j)]):
                    if not t.is_zero():
                        out[k] = out[k] + coef * t
    return SElement(*out)


def nc_to_s(p: NcPoly) -> SElement:
    """Image in S of a polynomial in x1, y1."""
    if p.variables() - {X, Y}:
        raise ValueError("nc_to_s needs a polynomial in x1 and y1 only")
    bx, by = SElement.basis(1), SElement.basis(2)
    cache: dict[tuple, SElement] = {(): SElement(1)}
    out = SElement()
    for w, c in sorted(p.terms.items()):
        k = len(w)
        while w[:k] not in cache:
            k -= 1
        cur = cache[w[:k]]
        for i in range(k, len(w)):
            cur = s_multiply(cur, bx if w[i] == X else by)
            cache[w[: i + 1]] = cur
        out = out + cur.scale(c)
    return out


# ---------------------------------------------------------------------------
# bracket forms and trace absorption


class BracketForm:
    """sum c * w [x,y] w' with w, w' words in x1, y1."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        self.terms: dict[tuple[tuple, tuple], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for (w, w2), c in items:
            key = (tuple(w), tuple(w2))
            v = self.terms.get(key, Fraction(0)) + as_scalar(c)
            if v:
                self.terms[key] = v
            else:
                self.terms.pop(key, None)

    @classmethod
    def bracket(cls) -> "BracketForm":
        return cls({((), ()): 1})

    def __add__(self, other: "BracketForm") -> "BracketForm":
        return BracketForm(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "BracketForm":
        return self.scale(-1)

    def __sub__(self, other: "BracketForm") -> "BracketForm":
        return self + (-other)

    def scale(self, c) -> "BracketForm":
        c = as_scalar(c)
        return BracketForm({k: v * c for k, v in self.terms.items()})

    def lmul(self, w: Sequence[Var]) -> "BracketForm":
        w = tuple(w)
        return BracketForm({(w + a, b): c for (a, b), c in self.terms.items()})

    def rmul(self, w: Sequence[Var]) -> "BracketForm":
        w = tuple(w)
        return BracketForm({(a, b + w): c for (a, b), c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, BracketForm):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def expand(self) -> NcPoly:
        out = NcPoly()
        for (a, b), c in self.terms.items():
            out = out + NcPoly({a + (X, Y) + b: c, a + (Y, X) + b: -c})
        return out

    def evaluate(self, x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
        return eval_poly(self.expand(), {X: x, Y: y})

    def __len__(self) -> int:
        return len(self.terms)


def _generator_index(g) -> int:
    if isinstance(g, int):
        if not 0 <= g < 5:
            raise ValueError("generator index must be 0..4")
        return g
    try:
        return GENERATORS.index(g)
    except ValueError:
        raise ValueError(f"unknown generator {g!r}") from None


def absorb_generator(g, f: BracketForm) -> BracketForm:
    """g * f rewritten as a bracket form.

    tr(x) c = c x + x c,  tr(y) c = c y + y c,  det(x) c = x c x,
    det(y) c = y c y,  tr(xy) c = c xy + yx c.
    """
    i = _generator_index(g)
    out = []
    for (a, b), c in f.terms.items():
        if i == 0:
            out += [((a, (X,) + b), c), ((a + (X,), b), c)]
        elif i == 2:
            out += [((a, (Y,) + b), c), ((a + (Y,), b), c)]
        elif i == 1:
            out.append(((a + (X,), (X,) + b), c))
        elif i == 3:
            out.append(((a + (Y,), (Y,) + b), c))
        else:
            out += [((a, (X, Y) + b), c), ((a + (Y, X), b), c)]
    return BracketForm(out)


def absorb_invariant_bracket(e: Sequence[int], f: BracketForm) -> BracketForm:
    e = list(e)
    for i in ABSORB_ORDER:
        for _ in range(e[i]):
            f = absorb_generator(i, f)
    return f


def absorb_invariant(e: Sequence[int], f: BracketForm) -> NcPoly:
    """Pure NC polynomial equal to (g^e) * f as a function of 2x2 matrices."""
    return absorb_invariant_bracket(e, f).expand()


def absorb_tpoly(t: TPoly, f: BracketForm) -> NcPoly:
    out = NcPoly()
    for e, c in sorted(t.terms.items()):
        out = out + absorb_invariant(e, f).scale(c)
    return out


# ---------------------------------------------------------------------------
# swap polynomials in two variables

_C = BracketForm.bracket()
_C2 = BracketForm({((), (X, Y)): 1, ((), (Y, X)): -1})  # c * c


def _ncx(*letters) -> NcPoly:
    return NcPoly({tuple(letters): 1})


def bracket_poly() -> NcPoly:
    return _C.expand()


def P_xy() -> TensorPoly2:
    """1 (x) (c^2 + x c y) - y (x) x c - x (x) c y + xy (x) c, c = [x,y]."""
    c = bracket_poly()
    x, y = _ncx(X), _ncx(Y)
    return (
        TensorPoly2.tensor(1, c * c + x * c * y)
        - TensorPoly2.tensor(y, x * c)
        - TensorPoly2.tensor(x, c * y)
        + TensorPoly2.tensor(x * y, c)
    )


def Q_xy() -> TensorPoly2:
    """The 40-term balanced swap polynomial of degree 5 + 5."""
    return parse_poly(Q_TEXT)


def split_monomial(e: Sequence[int], left_degree: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Deterministically split g^e = g^a * g^b with deg(g^a) = left_degree."""
    for a in itertools.product(*(range(k + 1) for k in e)):
        if _mono_degree(a) == left_degree:
            return tuple(a), tuple(k - j for k, j in zip(e, a))
    raise ValueError(f"cannot split monomial {e} with left degree {left_degree}")


def _pair(left: list, right: list) -> TensorPoly2:
    """sum over (t, f) pairs of absorbed pieces, tensored."""
    lp = NcPoly()
    for t, f in left:
        lp = lp + absorb_tpoly(t, f)
    rp = NcPoly()
    for t, f in right:
        rp = rp + absorb_tpoly(t, f)
    return TensorPoly2.tensor(lp, rp)


def balanced_family_monomial(h: int, k: int, monomial: Sequence[int] | None = None) -> tuple[int, ...]:
    if monomial is None:
        return (0, 0, 2 * h, 0, k)
    e = tuple(monomial)
    if len(e) != 5 or e[0] + e[2] != 2 * h or e[1] + e[3] + e[4] != k:
        raise ValueError("monomial must have 2h linear and k quadratic generator factors")
    return e


def check_family_hypotheses(h: int, k: int) -> None:
    if h < 1 or k < 0:
        raise ValueError("need h >= 1 and k >= 0")
    if k % 2 == 1 and h < 2:
        raise ValueError("k odd requires h >= 2")


def balanced_family(h: int, k: int, monomial: Sequence[int] | None = None) -> TensorPoly2:
    """Balanced pure-NC swap polynomial with value A * s^2 * swap.

    A = g^monomial is a product of 2h traces of degree 1 and k degree-2
    invariants (default tr(y)^{2h} tr(xy)^k).  Built from s * P written in
    bracket pieces, with xy (x) c = (1/2)(c (x) c + y (x) g1 c + x (x) g3 c
    + 1 (x) (g5 - g1 g3) c); then invariants are distributed so each side
    has degree h + k + 4 and absorbed into the brackets.
    """
    check_family_hypotheses(h, k)
    e = balanced_family_monomial(h, k, monomial)
    A = TPoly.monomial(e)
    half = h + k
    one = TPoly.const(1)
    x, y = (X,), (Y,)
    r0 = [(one, _C2 + BracketForm({(x, y): 1})), (G[4].scale(Fraction(1, 2)) - (G[0] * G[2]).scale(Fraction(1, 2)), _C)]
    ry = [(one, -_C.lmul(x)), (G[0].scale(Fraction(1, 2)), _C)]
    rx = [(one, -_C.rmul(y)), (G[2].scale(Fraction(1, 2)), _C)]

    out = TensorPoly2()
    al, ar = split_monomial(e, half)
    out = out + _pair([(TPoly.monomial(al), _C2)], [(TPoly.monomial(ar) * t, f) for t, f in r0])
    al, ar = split_monomial(e, half - 1)
    out = out + _pair([(TPoly.monomial(al), _C2.rmul(y))], [(TPoly.monomial(ar) * t, f) for t, f in ry])
    out = out + _pair([(TPoly.monomial(al), _C2.rmul(x))], [(TPoly.monomial(ar) * t, f) for t, f in rx])
    for m, c in sorted((S_POLY * A).terms.items()):
        ml, mr = split_monomial(m, half + 2)
        out = out + _pair([(TPoly.monomial(ml, c / 2), _C)], [(TPoly.monomial(mr), _C)])
    return out


def balanced_family_scalar(h: int, k: int, x: ExactMatrix, y: ExactMatrix, monomial=None) -> Fraction:
    e = balanced_family_monomial(h, k, monomial)
    return TPoly.monomial(e).evaluate(x, y) * bracket_scalar(x, y) ** 2


def balanced_Q_prime() -> TensorPoly2:
    """Degree 5 + 5 balanced swap polynomial with the value of Q."""
    return balanced_family(1, 0)


def displayed_traced_split(x: ExactMatrix, y: ExactMatrix) -> TensorOperator:
    """Value of the printed traced distribution of tr(y)^2 [x,y]^2 P.

    tr(y) c^2 (x) (c^2 + x c y) tr(y) - c^2 y (x) tr(y)^2 x c
    - c^2 x (x) tr(y)^2 c y + tr(y) c xy (x) tr(y) c^2.
    """
    c = x @ y - y @ x
    c2 = c @ c
    t = y.trace()
    return (
        kron(c2.scale(t), (c2 + x @ c @ y).scale(t))
        - kron(c2 @ y, (x @ c).scale(t * t))
        - kron(c2 @ x, (c @ y).scale(t * t))
        + kron((c @ x @ y).scale(t), c2.scale(t))
    )


# ---------------------------------------------------------------------------
# trace Gram matrix of the basis 1, x, y, xy


def displayed_lambda(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    """The displayed matrix Lambda with its entry A, evaluated at a point."""
    g1, g2, g3, g4, g5 = invariants(x, y)
    a = g2 * g3**2 - g5 * g1 * g3 + g1**2 * g4 - 2 * g2 * g4 + g5**2
    return ExactMatrix(
        [
            [2 * a, -g1 * g4, -g2 * g3, g1 * g3 - g5],
            [-g1 * g4, 2 * g4, g5, -g3],
            [-g2 * g3, g5, 2 * g2, -g1],
            [g1 * g3 - g5, -g3, -g1, 2],
        ]
    )


@dataclass
class GramReport:
    D: ExactMatrix
    det: Fraction
    s: Fraction
    adjugate: ExactMatrix
    lam: ExactMatrix | None
    lam_displayed: ExactMatrix
    dual_swap: TensorOperator | None
    p_value: TensorOperator

    @property
    def det_matches(self) -> bool:
        return self.det == -self.s**2

    def lambda_mismatches(self, sign: int = -1) -> list[tuple[int, int]]:
        """Entries where adj(D)/s differs from sign * (displayed Lambda)."""
        if self.lam is None:
            return []
        return [
            (i, j)
            for i in range(4)
            for j in range(4)
            if self.lam.entry(i, j) != sign * self.lam_displayed.entry(i, j)
        ]


def trace_gram(x: ExactMatrix, y: ExactMatrix) -> GramReport:
    basis = [ExactMatrix.identity(2), x, y, x @ y]
    D = ExactMatrix([[(a @ b).trace() for b in basis] for a in basis])
    det = D.det()
    s = bracket_scalar(x, y)
    adj = D.adjugate()
    lam = adj.scale(1 / s) if s else None
    dual = None
    if det:
        inv = D.inverse()
        # dual basis b*_i = sum_k inv[k, i] b_k, so tr(b_j b*_i) = delta_ij
        duals = []
        for i in range(4):
            m = ExactMatrix.zeros(2)
            for k in range(4):
                m = m + basis[k].scale(inv.entry(k, i))
            duals.append(m)
        dual = kron(basis[0], duals[0].scale(s))
        for i in range(1, 4):
            dual = dual + kron(basis[i], duals[i].scale(s))
    p_val = P_xy().evaluate({X: x, Y: y})
    return GramReport(D, det, s, adj, lam, displayed_lambda(x, y), dual, p_val)


# ---------------------------------------------------------------------------
# Poincare series


class Series2:
    """Truncated bivariate power series sum c_{ij} t^i s^j, i + j <= maxdeg."""

    def __init__(self, maxdeg: int, coeffs: Mapping[tuple[int, int], Fraction] | None = None):
        self.maxdeg = maxdeg
        self.c: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (coeffs or {}).items():
            if i + j <= maxdeg and v:
                self.c[(i, j)] = Fraction(v)

    @classmethod
    def poly(cls, maxdeg: int, coeffs) -> "Series2":
        return cls(maxdeg, coeffs)

    def __add__(self, other: "Series2") -> "Series2":
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return Series2(self.maxdeg, out)

    def __sub__(self, other: "Series2") -> "Series2":
        return self + other.scale(-1)

    def scale(self, c) -> "Series2":
        return Series2(self.maxdeg, {k: v * c for k, v in self.c.items()})

    def __mul__(self, other: "Series2") -> "Series2":
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), a in self.c.items():
            for (k, l), b in other.c.items():
                if i + j + k + l <= self.maxdeg:
                    out[(i + k, j + l)] = out.get((i + k, j + l), 0) + a * b
        return Series2(self.maxdeg, out)

    def inverse(self) -> "Series2":
        """1 / self, requires a nonzero constant term."""
        a0 = self.c.get((0, 0), 0)
        if not a0:
            raise ZeroDivisionError("series has no constant term")
        out: dict[tuple[int, int], Fraction] = {}
        for tot in range(self.maxdeg + 1):
            for i in range(tot + 1):
                j = tot - i
                if (i, j) == (0, 0):
                    out[(0, 0)] = 1 / Fraction(a0)
                    continue
                acc = Fraction(0)
                for (k, l), a in self.c.items():
                    if (k, l) != (0, 0) and k <= i and l <= j:
                        acc += a * out.get((i - k, j - l), 0)
                out[(i, j)] = -acc / a0
        return Series2(self.maxdeg, out)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.c.get(key, Fraction(0))


def _one_minus(maxdeg: int, *monos: tuple[int, int]) -> Series2:
    coeffs = {(0, 0): 1}
    for m in monos:
        coeffs[m] = coeffs.get(m, 0) - 1
    return Series2(maxdeg, coeffs)


def series_T(maxdeg: int) -> Series2:
    den = Series2(maxdeg, {(0, 0): 1})
    for m in [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1)]:
        den = den * _one_minus(maxdeg, m)
    return den.inverse()


def series_S(maxdeg: int) -> Series2:
    return Series2(maxdeg, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}) * series_T(maxdeg)


def series_R(maxdeg: int) -> Series2:
    base = (_one_minus(maxdeg, (1, 0)) * _one_minus(maxdeg, (0, 1))).inverse()
    return base + Series2(maxdeg, {(1, 1): 1}) * series_S(maxdeg)


def series_center(maxdeg: int) -> Series2:
    return Series2(maxdeg, {(0, 0): 1}) + Series2(maxdeg, {(2, 2): 1}) * series_T(maxdeg)


def series_free(maxdeg: int) -> Series2:
    return _one_minus(maxdeg, (1, 0), (0, 1)).inverse()


def series_identities(maxdeg: int) -> Series2:
    """s^2 t^2 (s + t - st) (1-s)^-2 (1-t)^-2 (1-st)^-1 (1-s-t)^-1."""
    num = Series2(maxdeg, {(3, 2): 1, (2, 3): 1, (3, 3): -1})
    den = (
        _one_minus(maxdeg, (1, 0)) * _one_minus(maxdeg, (1, 0))
        * _one_minus(maxdeg, (0, 1)) * _one_minus(maxdeg, (0, 1))
        * _one_minus(maxdeg, (1, 1)) * _one_minus(maxdeg, (1, 0), (0, 1))
    )
    return num * den.inverse()


def bidegree_words(i: int, j: int) -> list[tuple]:
    out = []
    for pos in itertools.combinations(range(i + j), i):
        w = [Y] * (i + j)
        for p in pos:
            w[p] = X
        out.append(tuple(w))
    return out


def rank_dimension(i: int, j: int, seed: int, start_points: int = 6) -> tuple[int, int]:
    """dim R_{i,j} by exact rank of word values at random pairs.

    Points are added until one more point leaves the rank unchanged and the
    rank is below the 4 * points ceiling.  Returns (rank, points used).
    """
    words = bidegree_words(i, j)
    rng = random.Random(seed * 1_000_003 + 1009 * i + j)
    pts = [(random_matrix(rng, 2), random_matrix(rng, 2)) for _ in range(start_points)]

    def rank_for(ps):
        rows = []
        for w in words:
            row = []
            for x, y in ps:
                m = ExactMatrix.identity(2)
                for l in w:
                    m = m @ (x if l == X else y)
                row += [int(v) for v in m.entries()]
            rows.append(row)
        return integer_rank(rows)

    r = rank_for(pts)
    while True:
        pts.append((random_matrix(rng, 2), random_matrix(rng, 2)))
        r2 = rank_for(pts)
        if r2 == r and r < 4 * (len(pts) - 1):
            return r, len(pts) - 1
        r = r2


@dataclass
class PoincareRow:
    i: int
    j: int
    words: int
    rank: int
    series: int
    identities_measured: int
    identities_series: int
    points: int

    @property
    def ok(self) -> bool:
        return self.rank == self.series and self.identities_measured == self.identities_series


def poincare_check(maxdeg: int = 7, seed: int = 0) -> list[PoincareRow]:
    R = series_R(maxdeg)
    I = series_identities(maxdeg)
    rows = []
    for tot in range(maxdeg + 1):
        for i in range(tot + 1):
            j = tot - i
            nwords = math.comb(i + j, i)
            rank, npts = rank_dimension(i, j, seed)
            rows.append(
                PoincareRow(i, j, nwords, rank, int(R[(i, j)]), nwords - rank, int(I[(i, j)]), npts)
            )
    return rows


# ---------------------------------------------------------------------------
# identities between 2x2 matrices


def _comm(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b - b @ a


def _identity_sides(name: str, rng: random.Random) -> tuple[ExactMatrix, ExactMatrix]:
    x, y, z = (random_matrix(rng, 2) for _ in range(3))
    i2 = ExactMatrix.identity(2)
    c = _comm(x, y)
    if name == "bracket-x":
        return c @ x, c.scale(x.trace()) - x @ c
    if name == "bracket-y":
        return c @ y, c.scale(y.trace()) - y @ c
    if name == "det-x":
        return c.scale(x.det()), x @ c @ x
    if name == "det-y":
        return c.scale(y.det()), y @ c @ y
    if name == "trace-xy":
        return c.scale((x @ y).trace()), x @ y @ x @ y - y @ x @ y @ x
    if name == "cayley-hamilton":
        return x @ x, x.scale(x.trace()) - i2.scale(x.det())
    if name == "yx-rewrite":
        rhs = -(x @ y) + y.scale(x.trace()) + x.scale(y.trace())
        return y @ x, rhs + i2.scale((x @ y).trace() - x.trace() * y.trace())
    if name == "bracket-square":
        return c @ c, i2.scale(-c.det())
    if name == "anticommutator-bracket":
        x1, x2, x3 = x, y, random_matrix(rng, 2)
        k = _comm(x1, x2)
        return _comm(z @ k + k @ z, x3), _comm(k, x3).scale(z.trace())
    if name == "trace-insertion":
        lhs = (c @ c).scale(z.trace())
        mid = _comm(z @ x @ c + x @ c @ z, y) - x @ _comm(z @ c + c @ z, y)
        return lhs, mid
    if name == "trace-insertion-expanded":
        lhs = (c @ c).scale(z.trace())
        rhs = z @ x @ c @ y - y @ z @ x @ c - x @ z @ c @ y + x @ y @ z @ c + c @ c @ z
        return lhs, rhs
    raise ValueError(f"unknown identity {name!r}")


IDENTITY_NAMES = (
    "bracket-x",
    "bracket-y",
    "det-x",
    "det-y",
    "trace-xy",
    "cayley-hamilton",
    "yx-rewrite",
    "bracket-square",
    "anticommutator-bracket",
    "trace-insertion",
    "trace-insertion-expanded",
)


def check_identity(name: str, seed: int = 0, points: int = 10) -> bool:
    """True when the named identity holds exactly at ``points`` random triples."""
    rng = random.Random(f"{name}:{seed}")
    for _ in range(points):
        lhs, rhs = _identity_sides(name, rng)
        if lhs != rhs:
            return False
    return True


def q_prime_minus_q() -> TensorPoly2:
    return balanced_Q_prime() - Q_xy()
