"""Evaluation of alternated monomial patterns without expanding terms.

For an alternation set whose variables sit in contiguous segments of the
pattern, summing over all orderings inside a segment produces a standard
polynomial.  Hence

    Alt_S P = sign(w0) * sum over ordered set partitions (B_1, ..., B_r)
              of sign(sorted B_1 + ... + sorted B_r) * P[segment_j <- St(B_j)]

where w0 is the reading-order sequence of the set's variables.  This is the
same exact sum as the full permutation expansion; only the grouping differs.
"""

from __future__ import annotations

import itertools
import math
import string
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .exact import DimensionError, ExactMatrix, TensorOperator
from .ncpoly import NcPoly, TensorPoly2, Var, alternate
from .symmetric import sequence_sign

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    """Raised when a streamed evaluation would exceed its work budget."""

    def __init__(self, cost: int, budget: int, what: str = "evaluation"):
        super().__init__(f"{what} needs about {cost} work units, budget is {budget}")
        self.cost = cost
        self.budget = budget


@dataclass(frozen=True)
class MonomialPattern:
    """Tensor slots of words plus the alternation sets acting on them."""

    slots: tuple[tuple[Var, ...], ...]
    alt_sets: tuple[tuple[Var, ...], ...]

    def __init__(self, slots: Sequence[Sequence[Var]], alt_sets: Sequence[Sequence[Var]]):
        object.__setattr__(self, "slots", tuple(tuple(s) for s in slots))
        object.__setattr__(self, "alt_sets", tuple(tuple(a) for a in alt_sets))
        self._validate()

    def _validate(self):
        if not self.slots:
            raise ValueError("pattern needs at least one slot")
        seen: set[Var] = set()
        for s in self.alt_sets:
            if len(set(s)) != len(s) or seen & set(s):
                raise ValueError("alternation sets must be disjoint lists of distinct variables")
            seen |= set(s)
        letters = [l for slot in self.slots for l in slot]
        for v in seen:
            if letters.count(v) != 1:
                raise ValueError(f"pattern is not multilinear in alternated variable {v}")

    @property
    def order(self) -> int:
        return len(self.slots)

    def variables(self) -> set[Var]:
        return {l for s in self.slots for l in s}

    def fixed_variables(self) -> set[Var]:
        alt = {v for s in self.alt_sets for v in s}
        return self.variables() - alt

    def set_of(self, v: Var) -> int | None:
        for i, s in enumerate(self.alt_sets):
            if v in s:
                return i
        return None

    def segments(self):
        """Per slot: list of items ('fixed', var) or ('seg', set_index, [positions])."""
        out = []
        for slot in self.slots:
            items = []
            for l in slot:
                k = self.set_of(l)
                if k is None:
                    items.append(("fixed", l))
                    continue
                pos = self.alt_sets[k].index(l)
                if items and items[-1][0] == "seg" and items[-1][1] == k:
                    items[-1][2].append(pos)
                else:
                    items.append(("seg", k, [pos]))
            out.append(items)
        return out

    def is_pure(self) -> bool:
        """One alternation set, no fixed letters, each slot a single segment."""
        if len(self.alt_sets) != 1 or self.fixed_variables():
            return False
        return all(len(items) == 1 for items in self.segments())

    def segment_lengths(self, k: int) -> list[int]:
        return [len(it[2]) for items in self.segments() for it in items if it[0] == "seg" and it[1] == k]

    def degree_profile(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.slots)

    def to_tensor_poly(self):
        """The unalternated monomial as NcPoly (1 slot) or TensorPoly2 (2 slots)."""
        if self.order == 1:
            return NcPoly({self.slots[0]: 1})
        if self.order == 2:
            return TensorPoly2({(self.slots[0], self.slots[1]): 1})
        raise ValueError("only 1- and 2-slot patterns have a polynomial form")

    def work_estimate(self) -> int:
        cost = 1
        for k in range(len(self.alt_sets)):
            cost *= _multinomial(self.segment_lengths(k))
        return cost * max(1, self.order)


def _multinomial(parts: Sequence[int]) -> int:
    out = math.factorial(sum(parts))
    for p in parts:
        out //= math.factorial(p)
    return out


# ---------------------------------------------------------------------------
# standard polynomial values on subsets


class _StandardTable:
    """St of the matrices indexed by a bitmask, memoized by first-letter expansion."""

    def __init__(self, mats: Sequence[np.ndarray], d: int):
        self.mats = list(mats)
        self.d = d
        self.cache: dict[int, np.ndarray] = {}

    def __call__(self, mask: int) -> np.ndarray:
        got = self.cache.get(mask)
        if got is not None:
            return got
        idx = [i for i in range(len(self.mats)) if mask >> i & 1]
        if len(idx) == 1:
            val = self.mats[idx[0]]
        else:
            val = None
            for pos, i in enumerate(idx):
                term = self.mats[i].dot(self(mask & ~(1 << i)))
                if pos % 2:
                    term = -term
                val = term if val is None else val + term
        self.cache[mask] = val
        return val


def _ordered_partitions(n: int, lengths: Sequence[int]):
    """Yield (sign, [mask_1, ..., mask_r]) for ordered set partitions of range(n)."""

    def rec(avail: tuple[int, ...], j: int):
        if j == len(lengths):
            yield 1, []
            return
        for block in itertools.combinations(avail, lengths[j]):
            rest = tuple(a for a in avail if a not in block)
            inv = sum(1 for a in block for b in rest if a > b)
            mask = sum(1 << a for a in block)
            for s, tail in rec(rest, j + 1):
                yield (-s if inv % 2 else s), [mask] + tail

    yield from rec(tuple(range(n)), 0)


# ---------------------------------------------------------------------------
# evaluators


def _prepare(pattern: MonomialPattern, assignment: Mapping[Var, ExactMatrix]) -> int:
    d = None
    for v in pattern.variables():
        if v not in assignment:
            raise KeyError(f"variable {v} is not assigned")
        m = assignment[v]
        if d is None:
            d = m.rows
        elif m.rows != d or m.cols != d:
            raise DimensionError("assigned matrices have different sizes")
    return d


def _wrap(arr: np.ndarray, d: int, order: int):
    if order == 1:
        return ExactMatrix(arr)
    return TensorOperator(d, order, ExactMatrix(arr))


def alt_eval_stream(
    pattern: MonomialPattern,
    assignment: Mapping[Var, ExactMatrix],
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
):
    """Exact value of Alt_{S_1} ... Alt_{S_m} (slot_1 (x) ... (x) slot_n).

    Returns an ExactMatrix for one-slot patterns and a TensorOperator otherwise.
    """
    d = _prepare(pattern, assignment)
    cost = pattern.work_estimate()
    if cost > budget:
        raise BudgetExceeded(cost, budget, "alternation sum")
    if pattern.is_pure():
        arr = _eval_pure(pattern, assignment, d)
    else:
        arr = _eval_general(pattern, assignment, d, workers)
    return _wrap(arr, d, pattern.order)


def _eval_pure(pattern: MonomialPattern, assignment, d: int) -> np.ndarray:
    (aset,) = pattern.alt_sets
    segs = pattern.segments()
    positions = [items[0][2] for items in segs]
    w0 = [p for pos in positions for p in pos]
    lengths = [len(p) for p in positions]
    st = _StandardTable([assignment[v].a for v in aset], d)
    K = len(lengths)

    @lru_cache(maxsize=None)
    def rec(avail: tuple[int, ...], k: int):
        if k == K - 1:
            return st(sum(1 << a for a in avail))
        acc = None
        for block in itertools.combinations(avail, lengths[k]):
            rest = tuple(a for a in avail if a not in block)
            inv = sum(1 for a in block for b in rest if a > b)
            term = np.kron(st(sum(1 << a for a in block)), rec(rest, k + 1))
            if inv % 2:
                term = -term
            acc = term if acc is None else acc + term
        return acc

    out = rec(tuple(range(len(aset))), 0)
    return out if sequence_sign(w0) == 1 else -out


def _general_setup(pattern: MonomialPattern, assignment, d: int):
    segs = pattern.segments()
    tables = [
        _StandardTable([assignment[v].a for v in aset], d) for aset in pattern.alt_sets
    ]
    seq_signs = []
    part_lists = []
    for k, aset in enumerate(pattern.alt_sets):
        w0 = [p for items in segs for it in items if it[0] == "seg" and it[1] == k for p in it[2]]
        seq_signs.append(sequence_sign(w0))
        part_lists.append(list(_ordered_partitions(len(aset), pattern.segment_lengths(k))))
    return segs, tables, seq_signs, part_lists


def _general_chunk(args):
    pattern, assignment, d, chunk = args
    segs, tables, seq_signs, part_lists = _general_setup(pattern, assignment, d)
    first = [part_lists[0][i] for i in chunk] if part_lists else [(1, [])]
    rest_lists = part_lists[1:]
    ident = ExactMatrix.identity(d).a
    acc = None
    for combo in itertools.product(first, *rest_lists):
        sign = 1
        for s, _ in combo:
            sign *= s
        counters = [0] * len(combo)
        mats = []
        for items in segs:
            cur = None
            for it in items:
                if it[0] == "fixed":
                    m = assignment[it[1]].a
                else:
                    k = it[1]
                    m = tables[k](combo[k][1][counters[k]])
                    counters[k] += 1
                cur = m if cur is None else cur.dot(m)
            mats.append(ident if cur is None else cur)
        val = mats[0]
        for m in mats[1:]:
            val = np.kron(val, m)
        if sign < 0:
            val = -val
        acc = val if acc is None else acc + val
    return acc


def _eval_general(pattern: MonomialPattern, assignment, d: int, workers: int) -> np.ndarray:
    segs, tables, seq_signs, part_lists = _general_setup(pattern, assignment, d)
    n_first = len(part_lists[0]) if part_lists else 1
    idx = list(range(n_first))
    if workers > 1 and n_first > 1:
        chunks = [idx[i::workers] for i in range(workers) if idx[i::workers]]
        plain = {v: assignment[v] for v in pattern.variables()}
        with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
            parts = list(ex.map(_general_chunk, [(pattern, plain, d, c) for c in chunks]))
        acc = parts[0]
        for p in parts[1:]:
            acc = acc + p
    else:
        acc = _general_chunk((pattern, assignment, d, idx))
    sign = 1
    for s in seq_signs:
        sign *= s
    return acc if sign == 1 else -acc


def alt_eval_naive(pattern: MonomialPattern, assignment: Mapping[Var, ExactMatrix], cap: int = 10**6):
    """Reference route: expand the alternations symbolically, then evaluate."""
    from .ncpoly import eval_poly, eval_tensor

    p = pattern.to_tensor_poly()
    for s in pattern.alt_sets:
        p = alternate(p, s, cap=cap)
    d = _prepare(pattern, assignment)
    if pattern.order == 1:
        return eval_poly(p, assignment, d)
    return eval_tensor(p, assignment, d)


# ---------------------------------------------------------------------------
# split evaluation


def _as_tensor_array(val, d: int, order: int) -> np.ndarray:
    arr = val.a if isinstance(val, ExactMatrix) else val.mat.a
    return arr.reshape((d,) * (2 * order))


def split_alt_eval(
    xpattern: MonomialPattern,
    ypattern: MonomialPattern,
    interleave: Sequence[Sequence[tuple[str, int]]],
    assignment: Mapping[Var, ExactMatrix],
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
):
    """Alt_X Alt_Y of an interleaved product, via T_X and T_Y.

    ``interleave`` lists the output slots; each is a chain of references
    ``("x", i)`` / ``("y", j)`` to slots of the two patterns, multiplied left
    to right.  Every reference must be used exactly once.
    """
    p, q = xpattern.order, ypattern.order
    refs = [r for chain in interleave for r in chain]
    want = [("x", i) for i in range(p)] + [("y", j) for j in range(q)]
    if sorted(refs) != sorted(want) or any(not chain for chain in interleave):
        raise ValueError("interleave descriptor must use every pattern slot exactly once")
    sx = {v for s in xpattern.alt_sets for v in s}
    sy = {v for s in ypattern.alt_sets for v in s}
    if sx & ypattern.variables() or sy & xpattern.variables():
        raise ValueError("alternated variables of one pattern appear in the other")
    d = _prepare(xpattern, assignment)
    tx = _as_tensor_array(alt_eval_stream(xpattern, assignment, budget, workers), d, p)
    ty = _as_tensor_array(alt_eval_stream(ypattern, assignment, budget, workers), d, q)

    letters = iter(string.ascii_letters)
    row = {r: None for r in want}
    col = {r: None for r in want}
    out_rows, out_cols = [], []
    for chain in interleave:
        r0 = next(letters)
        row[chain[0]] = r0
        out_rows.append(r0)
        for a, b in zip(chain, chain[1:]):
            bond = next(letters)
            col[a] = bond
            row[b] = bond
        c0 = next(letters)
        col[chain[-1]] = c0
        out_cols.append(c0)
    sub_x = "".join(row[("x", i)] for i in range(p)) + "".join(col[("x", i)] for i in range(p))
    sub_y = "".join(row[("y", j)] for j in range(q)) + "".join(col[("y", j)] for j in range(q))
    sub_out = "".join(out_rows) + "".join(out_cols)
    res = np.einsum(f"{sub_x},{sub_y}->{sub_out}", tx, ty, optimize=True)
    n = len(interleave)
    size = d**n
    return _wrap(np.asarray(res, dtype=object).reshape(size, size), d, n)
