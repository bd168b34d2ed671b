"""Randomized and exhaustive identity testing over d x d matrices."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exact import ExactMatrix
from .ncpoly import NcPoly, TensorPoly2, Var

ENTRY_RANGE = (-9, 9)

NOT_IDENTITY = "not identity"
PLAUSIBLE = "plausibly identity"
PROVED = "proved identity"


def random_matrix(rng: random.Random, d: int, lo: int = ENTRY_RANGE[0], hi: int = ENTRY_RANGE[1]) -> ExactMatrix:
    return ExactMatrix([[rng.randint(lo, hi) for _ in range(d)] for _ in range(d)])


def random_traceless(rng: random.Random, d: int) -> ExactMatrix:
    m = random_matrix(rng, d)
    m.a[d - 1, d - 1] -= m.trace()
    return m


def random_assignment(variables, d: int, rng: random.Random) -> dict[Var, ExactMatrix]:
    return {v: random_matrix(rng, d) for v in sorted(variables)}


def matrix_units(d: int) -> list[ExactMatrix]:
    return [ExactMatrix.unit(d, i, j) for i in range(d) for j in range(d)]


def _words(p) -> list[tuple]:
    if isinstance(p, TensorPoly2):
        return [a + b for a, b in p.terms]
    return list(p.terms)


def is_multilinear(p) -> bool:
    """Every term contains every variable of p exactly once."""
    vs = p.variables()
    for w in _words(p):
        if len(w) != len(vs) or set(w) != vs:
            return False
    return True


@dataclass
class TPIVerdict:
    verdict: str
    trials: int
    witness: dict | None = None
    value: object = None
    exhaustive_points: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def is_identity(self) -> bool:
        return self.verdict != NOT_IDENTITY


def _zero(val) -> bool:
    return val.is_zero()


def is_tpi(
    t,
    d: int,
    trials: int = 20,
    seed: int = 0,
    exhaust_limit: int = 200_000,
) -> TPIVerdict:
    """Decide (or bound) whether ``t`` vanishes on all d x d matrices.

    Any nonzero value at a random integer point is a certificate of
    non-identity.  If all trials vanish and ``t`` is multilinear, evaluating
    at all tuples of matrix units settles the question exactly.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    variables = sorted(t.variables())
    for _ in range(trials):
        asg = random_assignment(variables, d, rng)
        val = t.evaluate(asg) if variables else t.evaluate({Var("x", 1): ExactMatrix.identity(d)})
        if not _zero(val):
            return TPIVerdict(NOT_IDENTITY, trials, witness=asg, value=val)
    out = TPIVerdict(PLAUSIBLE, trials)
    if isinstance(t, (NcPoly, TensorPoly2)) and is_multilinear(t):
        units = matrix_units(d)
        count = len(units) ** len(variables)
        if count <= exhaust_limit:
            for combo in itertools.product(units, repeat=len(variables)):
                asg = dict(zip(variables, combo))
                val = t.evaluate(asg) if variables else t.evaluate({Var("x", 1): ExactMatrix.identity(d)})
                if not _zero(val):
                    return TPIVerdict(NOT_IDENTITY, trials, witness=asg, value=val, exhaustive_points=count)
            out.verdict = PROVED
            out.exhaustive_points = count
        else:
            out.notes.append(f"matrix-unit exhaustion needs {count} points, limit {exhaust_limit}")
    return out


def format_assignment(asg: Mapping[Var, ExactMatrix]) -> dict[str, list[str]]:
    from .exact import fmt_scalar

    return {str(v): [fmt_scalar(e) for e in m.entries()] for v, m in sorted(asg.items())}


def points(variables: Sequence[Var], d: int, count: int, seed: int) -> list[dict[Var, ExactMatrix]]:
    rng = random.Random(seed)
    return [random_assignment(variables, d, rng) for _ in range(count)]
