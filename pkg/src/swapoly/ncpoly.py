"""Noncommutative polynomials and 2-tensor polynomials with exact coefficients.

Letters are :class:`Var` pairs ``(family, index)`` with family one of
``x``, ``y``, ``z``, ``zeta``.  A word is a tuple of letters, the empty word
being 1.  Text format, one term per line::

    3/2 x1.y2.x1 | y1
    -1 1 | x1

with ``1`` for the empty word and ``|`` separating the two tensor slots.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .exact import DimensionError, ExactMatrix, TensorOperator, as_scalar, fmt_scalar, kron

FAMILIES = ("x", "y", "z", "zeta")
DEFAULT_TERM_CAP = 10**7


class Var(NamedTuple):
    family: str
    index: int

    def __str__(self) -> str:
        return f"{self.family}{self.index}"


Word = tuple  # tuple[Var, ...]


def var(name: str) -> Var:
    """Parse a letter such as ``x3`` or ``zeta1``."""
    m = re.fullmatch(r"(zeta|x|y|z)(\d+)", name.strip())
    if not m or int(m.group(2)) < 1:
        raise ValueError(f"bad letter {name!r}")
    return Var(m.group(1), int(m.group(2)))


def xs(n: int, start: int = 1, family: str = "x") -> tuple[Var, ...]:
    return tuple(Var(family, i) for i in range(start, start + n))


def word(*letters) -> tuple:
    """Build a word from Vars or letter strings; ``word()`` is 1."""
    out = []
    for l in letters:
        if isinstance(l, Var):
            out.append(l)
        elif isinstance(l, str):
            out.extend(var(t) for t in l.split(".") if t and t != "1")
        else:
            out.extend(l)
    return tuple(out)


def word_str(w: Sequence[Var]) -> str:
    return ".".join(map(str, w)) if w else "1"


def parse_word(text: str) -> tuple:
    text = text.strip()
    if text == "1":
        return ()
    return tuple(var(t) for t in text.split("."))


def multidegree(w: Sequence[Var]) -> dict[Var, int]:
    out: dict[Var, int] = {}
    for l in w:
        out[l] = out.get(l, 0) + 1
    return out


def _term_key(w: Sequence[Var]):
    return (len(w), tuple(w))


class TermCapExceeded(RuntimeError):
    pass


class UnassignedVariable(KeyError):
    pass


# ---------------------------------------------------------------------------


class NcPoly:
    """Finite sum of words with nonzero Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        self.terms: dict[tuple, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for w, c in items:
            self._add(tuple(w), as_scalar(c))

    def _add(self, w, c):
        v = self.terms.get(w, Fraction(0)) + c
        if v:
            self.terms[w] = v
        else:
            self.terms.pop(w, None)

    @classmethod
    def monomial(cls, w, c=1) -> "NcPoly":
        return cls({word(w) if not isinstance(w, tuple) else w: c})

    @classmethod
    def one(cls) -> "NcPoly":
        return cls({(): 1})

    @classmethod
    def letter(cls, v: Var) -> "NcPoly":
        return cls({(v,): 1})

    # algebra --------------------------------------------------------------
    def __add__(self, other) -> "NcPoly":
        other = _as_ncpoly(other)
        out = NcPoly(self.terms)
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    __radd__ = __add__

    def __neg__(self) -> "NcPoly":
        return self.scale(-1)

    def __sub__(self, other) -> "NcPoly":
        return self + (-_as_ncpoly(other))

    def __rsub__(self, other) -> "NcPoly":
        return _as_ncpoly(other) - self

    def scale(self, c) -> "NcPoly":
        c = as_scalar(c)
        if not c:
            return NcPoly()
        return NcPoly({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other) -> "NcPoly":
        if not isinstance(other, NcPoly):
            return self.scale(other)
        out = NcPoly()
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._add(w1 + w2, c1 * c2)
        return out

    def __rmul__(self, c) -> "NcPoly":
        return self.scale(c)

    def __pow__(self, k: int) -> "NcPoly":
        out = NcPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = _as_ncpoly(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure --------------------------------------------------------------
    def variables(self) -> set[Var]:
        return {l for w in self.terms for l in w}

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def substitute(self, mapping: Mapping[Var, Var]) -> "NcPoly":
        """Rename letters."""
        return NcPoly(
            (tuple(mapping.get(l, l) for l in w), c) for w, c in self.terms.items()
        )

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def evaluate(self, assignment: Mapping[Var, ExactMatrix]) -> ExactMatrix:
        return eval_poly(self, assignment)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"NcPoly({len(self.terms)} terms)"


def _as_ncpoly(p) -> NcPoly:
    if isinstance(p, NcPoly):
        return p
    if isinstance(p, Var):
        return NcPoly.letter(p)
    return NcPoly({(): p})


def commutator(a, b) -> NcPoly:
    a, b = _as_ncpoly(a), _as_ncpoly(b)
    return a * b - b * a


class TensorPoly2:
    """Finite sum of ``c * A (x) B`` over pairs of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        self.terms: dict[tuple[tuple, tuple], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for (a, b), c in items:
            self._add((tuple(a), tuple(b)), as_scalar(c))

    def _add(self, key, c):
        v = self.terms.get(key, Fraction(0)) + c
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    @classmethod
    def tensor(cls, a, b) -> "TensorPoly2":
        """Tensor product of two NcPolys (or letters/scalars)."""
        a, b = _as_ncpoly(a), _as_ncpoly(b)
        out = cls()
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                out._add((wa, wb), ca * cb)
        return out

    def __add__(self, other: "TensorPoly2") -> "TensorPoly2":
        out = TensorPoly2(self.terms)
        for k, c in other.terms.items():
            out._add(k, c)
        return out

    def __neg__(self) -> "TensorPoly2":
        return self.scale(-1)

    def __sub__(self, other: "TensorPoly2") -> "TensorPoly2":
        return self + (-other)

    def scale(self, c) -> "TensorPoly2":
        c = as_scalar(c)
        if not c:
            return TensorPoly2()
        return TensorPoly2({k: v * c for k, v in self.terms.items()})

    __rmul__ = scale

    def __mul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorPoly2):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[Var]:
        return {l for (a, b) in self.terms for l in a + b}

    def degree(self) -> int:
        return max((len(a) + len(b) for a, b in self.terms), default=0)

    def slot_degrees(self) -> set[tuple[int, int]]:
        return {(len(a), len(b)) for a, b in self.terms}

    def substitute(self, mapping: Mapping[Var, Var]) -> "TensorPoly2":
        f = lambda w: tuple(mapping.get(l, l) for l in w)
        return TensorPoly2(((f(a), f(b)), c) for (a, b), c in self.terms.items())

    def left_right(self) -> list[tuple[NcPoly, NcPoly]]:
        """Pairs (A_i, B_i) grouped by left word: sum A_i (x) B_i."""
        groups: dict[tuple, dict] = {}
        for (a, b), c in self.terms.items():
            groups.setdefault(a, {})[b] = c
        return [(NcPoly({a: 1}), NcPoly(bs)) for a, bs in sorted(groups.items(), key=lambda kv: _term_key(kv[0]))]

    def contract(self, middle) -> NcPoly:
        """sum_i c_i A_i * middle * B_i."""
        mid = _as_ncpoly(middle)
        out = NcPoly()
        for (a, b), c in self.terms.items():
            for wm, cm in mid.terms.items():
                out._add(a + wm + b, c * cm)
        return out

    def multiply(self) -> NcPoly:
        """sum_i c_i A_i B_i."""
        return self.contract(NcPoly.one())

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (len(kv[0][0]) + len(kv[0][1]), kv[0][0], kv[0][1]),
        )

    def evaluate(self, assignment: Mapping[Var, ExactMatrix]) -> TensorOperator:
        return eval_tensor(self, assignment)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"TensorPoly2({len(self.terms)} terms)"


# ---------------------------------------------------------------------------
# balance


def is_balanced(t: TensorPoly2, by: str = "degree") -> bool:
    """Balanced tensor polynomial.

    ``by="degree"`` (default): every left word and every right word has one
    common total degree.  ``by="multidegree"``: additionally each term has the
    same multidegree on both sides and all terms share it.
    """
    if not t.terms:
        return True
    degs = {len(a) for a, _ in t.terms} | {len(b) for _, b in t.terms}
    if len(degs) != 1:
        return False
    if by == "degree":
        return True
    if by != "multidegree":
        raise ValueError(f"unknown balance notion {by!r}")
    md = {tuple(sorted(multidegree(a).items())) for a, _ in t.terms}
    md |= {tuple(sorted(multidegree(b).items())) for _, b in t.terms}
    return len(md) == 1


# ---------------------------------------------------------------------------
# evaluation


def _check_assignment(variables, assignment) -> int:
    d = None
    for v in variables:
        if v not in assignment:
            raise UnassignedVariable(f"variable {v} is not assigned")
        m = assignment[v]
        if not m.is_square():
            raise DimensionError(f"value of {v} is not square")
        if d is None:
            d = m.rows
        elif m.rows != d:
            raise DimensionError("assigned matrices have different sizes")
    return d


class _WordEvaluator:
    """Evaluates words with a shared prefix-product cache."""

    def __init__(self, assignment: Mapping[Var, ExactMatrix], d: int):
        self.assignment = assignment
        self.cache: dict[tuple, object] = {(): ExactMatrix.identity(d).a}

    def __call__(self, w: tuple):
        got = self.cache.get(w)
        if got is not None:
            return got
        k = len(w) - 1
        while w[:k] not in self.cache:
            k -= 1
        cur = self.cache[w[:k]]
        for i in range(k, len(w)):
            cur = cur.dot(self.assignment[w[i]].a) if i else self.assignment[w[0]].a
            self.cache[w[: i + 1]] = cur
        return cur


def _dim(assignment, variables, d=None) -> int:
    got = _check_assignment(variables, assignment)
    if got is None:
        if d is None:
            d = next(iter(assignment.values())).rows if assignment else None
        if d is None:
            raise DimensionError("cannot infer matrix size from an empty assignment")
        return d
    return got


def eval_poly(p: NcPoly, assignment: Mapping[Var, ExactMatrix], d: int | None = None) -> ExactMatrix:
    """Evaluate an NcPoly at matrices; the empty word evaluates to the identity."""
    d = _dim(assignment, p.variables(), d)
    ev = _WordEvaluator(assignment, d)
    acc = ExactMatrix.zeros(d).a
    for w, c in sorted(p.terms.items()):
        c = c.numerator if c.denominator == 1 else c
        acc = acc + ev(w) * c
    return ExactMatrix(acc)


def eval_tensor(t: TensorPoly2, assignment: Mapping[Var, ExactMatrix], d: int | None = None) -> TensorOperator:
    """Evaluate sum c A (x) B to an order-2 tensor operator."""
    d = _dim(assignment, t.variables(), d)
    ev = _WordEvaluator(assignment, d)
    groups: dict[tuple, object] = {}
    for (a, b), c in sorted(t.terms.items()):
        c = c.numerator if c.denominator == 1 else c
        cur = groups.get(a)
        val = ev(b) * c
        groups[a] = val if cur is None else cur + val
    out = TensorOperator.zero(d, 2).mat.a
    for a, right in groups.items():
        out = out + np.kron(ev(a), right)
    return TensorOperator(d, 2, ExactMatrix(out))


# ---------------------------------------------------------------------------
# alternation and standard polynomials


def _is_multilinear_in(words: Iterable[tuple], vars_: Sequence[Var]) -> bool:
    vs = set(vars_)
    for w in words:
        cnt = [l for l in w if l in vs]
        if len(cnt) != len(vs) or set(cnt) != vs:
            return False
    return True


def alternate(p, vars_: Sequence[Var], cap: int = DEFAULT_TERM_CAP):
    """Alt over ``vars_``: sum_sigma sign(sigma) p(v_i -> v_sigma(i))."""
    vars_ = tuple(vars_)
    if len(set(vars_)) != len(vars_):
        raise ValueError("alternation variables must be distinct")
    tensor = isinstance(p, TensorPoly2)
    words = [a + b for a, b in p.terms] if tensor else list(p.terms)
    if not _is_multilinear_in(words, vars_):
        raise ValueError("polynomial is not multilinear in the alternation variables")
    cost = len(p.terms) * math.factorial(len(vars_))
    if cost > cap:
        raise TermCapExceeded(f"alternation would produce {cost} terms (cap {cap})")
    out = TensorPoly2() if tensor else NcPoly()
    for perm in itertools.permutations(range(len(vars_))):
        sign = _perm_sign(perm)
        mapping = {vars_[i]: vars_[perm[i]] for i in range(len(vars_))}
        if tensor:
            for (a, b), c in p.terms.items():
                key = (tuple(mapping.get(l, l) for l in a), tuple(mapping.get(l, l) for l in b))
                out._add(key, c * sign)
        else:
            for w, c in p.terms.items():
                out._add(tuple(mapping.get(l, l) for l in w), c * sign)
    return out


def _perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def standard_poly(k: int, family: str = "x", cap: int = DEFAULT_TERM_CAP) -> NcPoly:
    """St_k = sum_sigma sign(sigma) x_sigma(1) ... x_sigma(k)."""
    if k < 1:
        raise ValueError("k must be positive")
    v = xs(k, family=family)
    return alternate(NcPoly({v: 1}), v, cap=cap)


def capelli_poly(m: int, x_family: str = "x", y_family: str = "y", cap: int = DEFAULT_TERM_CAP) -> NcPoly:
    """C_m = sum_sigma sign(sigma) x_s(1) y_1 x_s(2) y_2 ... y_{m-1} x_s(m)."""
    if m < 1:
        raise ValueError("m must be positive")
    xv = xs(m, family=x_family)
    yv = xs(m - 1, family=y_family)
    w = [xv[0]]
    for i in range(1, m):
        w += [yv[i - 1], xv[i]]
    return alternate(NcPoly({tuple(w): 1}), xv, cap=cap)


# ---------------------------------------------------------------------------
# text format


def format_poly(p) -> str:
    lines = []
    if isinstance(p, TensorPoly2):
        for (a, b), c in p.sorted_terms():
            lines.append(f"{fmt_scalar(c)} {word_str(a)} | {word_str(b)}")
    else:
        for w, c in p.sorted_terms():
            lines.append(f"{fmt_scalar(c)} {word_str(w)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_poly(text: str):
    """Parse the line format; returns TensorPoly2 if any line has ``|``."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append(line)
    tensor = any("|" in r for r in rows)
    if tensor and not all("|" in r for r in rows):
        raise ValueError("mixed tensor and plain lines")
    out = TensorPoly2() if tensor else NcPoly()
    for r in rows:
        try:
            coeff, rest = r.split(None, 1)
        except ValueError:
            raise ValueError(f"bad term line {r!r}") from None
        c = Fraction(coeff)
        if tensor:
            left, right = rest.split("|")
            out._add((parse_word(left), parse_word(right)), c)
        else:
            out._add(parse_word(rest), c)
    return out
