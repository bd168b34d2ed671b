"""Symmetric groups: partitions, permutations, characters and Weingarten data."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import numpy as np

from .exact import ExactMatrix, TensorOperator, as_scalar, fmt_scalar, permute_index


@dataclass(frozen=True, order=False)
class Partition:
    """An integer partition with parts stored in weakly decreasing order."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        ps = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p <= 0 for p in ps):
            raise ValueError(f"partition parts must be positive: {ps}")
        object.__setattr__(self, "parts", ps)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def height(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))

    def hook(self, i: int, j: int) -> int:
        """Hook length of cell (i, j), zero based."""
        return self.parts[i] - j + self.conjugate().parts[j] - i - 1

    def centralizer_size(self) -> int:
        """z_mu = prod_k k^{m_k} m_k!"""
        z = 1
        for k, grp in itertools.groupby(self.parts):
            m = len(list(grp))
            z *= k**m * math.factorial(m)
        return z

    def class_size(self) -> int:
        return math.factorial(self.n) // self.centralizer_size()

    def sign(self) -> int:
        """Sign of any permutation with this cycle type."""
        return -1 if (self.n - len(self.parts)) % 2 else 1

    def key(self) -> tuple[int, ...]:
        return self.parts

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


def as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(p)


def partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order, e.g. (3), (2,1), (1,1,1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return [Partition(p) for p in gen(n, n)]


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..n}; ``images[k-1]`` is sigma(k)."""

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        im = tuple(int(v) for v in images)
        if sorted(im) != list(range(1, len(im) + 1)):
            raise ValueError(f"not a permutation: {im}")
        object.__setattr__(self, "images", im)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Iterable[int]) -> "Permutation":
        im = list(range(1, n + 1))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                im[a - 1] = b
        return cls(im)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition, ``(s*t)(k) = s(t(k))``."""
        if self.n != other.n:
            raise ValueError("permutations of different degree")
        return Permutation(self.images[t - 1] for t in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            k = self(start)
            while k != start:
                cyc.append(k)
                seen.add(k)
                k = self(k)
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> Partition:
        return Partition(len(c) for c in self.cycles())

    def num_cycles(self) -> int:
        return len(self.cycles())

    def sign(self) -> int:
        return -1 if (self.n - self.num_cycles()) % 2 else 1

    def __str__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


def all_permutations(n: int) -> list[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def sequence_sign(seq) -> int:
    """Sign of a sequence of distinct comparable items (parity of inversions)."""
    inv = 0
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                inv += 1
    return -1 if inv % 2 else 1


# ---------------------------------------------------------------------------
# characters


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        t = b - r
        if t < 0 or t in beads:
            continue
        between = sum(1 for c in beta if t < c < b)
        new = tuple(sorted((beads - {b}) | {t}))
        total += (-1) ** between * _mn(new, rest)
    return total


def character(lam, mu) -> int:
    """chi_lambda evaluated on the class mu (Murnaghan-Nakayama, beta-numbers)."""
    lam, mu = as_partition(lam), as_partition(mu)
    if lam.n != mu.n:
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    L = len(lam.parts)
    beta = tuple(sorted(p + L - 1 - i for i, p in enumerate(lam.parts)))
    return _mn(beta, mu.parts)


def character_degree(lam) -> int:
    lam = as_partition(lam)
    return character(lam, Partition([1] * lam.n))


def gl_dimension(lam, d: int) -> int:
    """Dimension of the GL(d) irreducible with highest weight lambda (hook-content)."""
    lam = as_partition(lam)
    if lam.height > d:
        return 0
    num = Fraction(1)
    for i, row in enumerate(lam.parts):
        for j in range(row):
            num *= Fraction(d + j - i, lam.hook(i, j))
    assert num.denominator == 1
    return int(num)


# ---------------------------------------------------------------------------
# class functions and group algebra


@dataclass(frozen=True)
class ClassFunction:
    n: int
    values: Mapping[Partition, Fraction]

    def __getitem__(self, mu) -> Fraction:
        return self.values[as_partition(mu)]

    def scaled(self, c) -> "ClassFunction":
        c = as_scalar(c)
        return ClassFunction(self.n, {k: v * c for k, v in self.values.items()})

    def items(self) -> list[tuple[Partition, Fraction]]:
        """Entries in canonical (reverse-lexicographic) partition order."""
        return [(p, self.values[p]) for p in partitions(self.n)]

    def at(self, sigma: Permutation) -> Fraction:
        return self.values[sigma.cycle_type()]

    def __str__(self) -> str:
        return " ".join(f"{p}:{fmt_scalar(v)}" for p, v in self.items())


def weingarten(n: int, d: int) -> ClassFunction:
    """Weingarten class function Wg(n, d).

    a_mu = sum over lambda |- n with at most d rows of
    chi_lambda(1)^2 chi_lambda(mu) / s_lambda(1^d), divided by (n!)^2.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    return _weingarten(n, d)


@lru_cache(maxsize=None)
def _weingarten(n: int, d: int) -> ClassFunction:
    norm = math.factorial(n) ** 2
    lams = [lam for lam in partitions(n) if lam.height <= d]
    vals = {}
    for mu in partitions(n):
        tot = Fraction(0)
        for lam in lams:
            deg = character_degree(lam)
            tot += Fraction(deg * deg * character(lam, mu), gl_dimension(lam, d))
        vals[mu] = tot / norm
    return ClassFunction(n, vals)


class GroupAlgebraElement:
    """Finitely supported element sum_sigma c_sigma sigma of Q[S_n]."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping[Permutation, object] | None = None):
        self.n = n
        self.coeffs: dict[Permutation, Fraction] = {}
        for p, c in (coeffs or {}).items():
            if p.n != n:
                raise ValueError("permutation degree differs from n")
            c = as_scalar(c)
            if c:
                self.coeffs[p] = self.coeffs.get(p, Fraction(0)) + c
        self.coeffs = {p: c for p, c in self.coeffs.items() if c}

    @classmethod
    def basis(cls, sigma: Permutation, c=1) -> "GroupAlgebraElement":
        return cls(sigma.n, {sigma: c})

    def __getitem__(self, sigma: Permutation) -> Fraction:
        return self.coeffs.get(sigma, Fraction(0))

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, Fraction(0)) + c
        return GroupAlgebraElement(self.n, out)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + other.scale(-1)

    def scale(self, c) -> "GroupAlgebraElement":
        c = as_scalar(c)
        return GroupAlgebraElement(self.n, {p: v * c for p, v in self.coeffs.items()})

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if not isinstance(other, GroupAlgebraElement):
            return self.scale(other)
        if self.n != other.n:
            raise ValueError("group algebra elements of different degree")
        out: dict[Permutation, Fraction] = {}
        for p, a in self.coeffs.items():
            for q, b in other.coeffs.items():
                r = p * q
                out[r] = out.get(r, Fraction(0)) + a * b
        return GroupAlgebraElement(self.n, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = sorted(self.coeffs.items(), key=lambda kv: kv[0].images)
        return " + ".join(f"{fmt_scalar(c)}*{p}" for p, c in terms) or "0"


def class_to_algebra(c: ClassFunction) -> GroupAlgebraElement:
    return GroupAlgebraElement(
        c.n, {p: c.at(p) for p in all_permutations(c.n)}
    )


def algebra_to_operator(g: GroupAlgebraElement, d: int) -> TensorOperator:
    n = g.n
    size = d**n
    arr = np.empty((size, size), dtype=object)
    arr.fill(0)
    for sigma, c in g.coeffs.items():
        c = c.numerator if c.denominator == 1 else c
        for j in range(size):
            i = permute_index(sigma.images, j, d)
            arr[i, j] += c
    return TensorOperator(d, n, ExactMatrix(arr))


def acts_as_identity(g: GroupAlgebraElement, d: int) -> bool:
    """True iff sum_sigma g_sigma P_sigma is the identity on (F^d)^{(x)n}.

    Checked column by column without forming the dense matrix.
    """
    n = g.n
    items = list(g.coeffs.items())
    for j in range(d**n):
        col: dict[int, Fraction] = {}
        for sigma, c in items:
            i = permute_index(sigma.images, j, d)
            col[i] = col.get(i, Fraction(0)) + c
        for i, v in col.items():
            if v != (1 if i == j else 0):
                return False
        if col.get(j, 0) != 1:
            return False
    return True


def phi_transform(a: TensorOperator) -> GroupAlgebraElement:
    """Phi(A) = sum_sigma tr(P_sigma A) sigma^{-1}."""
    d, n = a.d, a.n
    arr = a.mat.a
    size = d**n
    out = {}
    for sigma in all_permutations(n):
        # (P_sigma A)[pi(j), k] = A[j, k] so tr = sum_j A[j, pi(j)]
        tr = sum(arr[j, permute_index(sigma.images, j, d)] for j in range(size))
        out[sigma.inverse()] = as_scalar(tr)
    return GroupAlgebraElement(n, out)


def phi_of_identity(n: int, d: int) -> GroupAlgebraElement:
    """Phi(1) = sum_sigma d^{#cycles(sigma)} sigma^{-1}, without building operators."""
    return GroupAlgebraElement(
        n, {p.inverse(): d ** p.num_cycles() for p in all_permutations(n)}
    )
