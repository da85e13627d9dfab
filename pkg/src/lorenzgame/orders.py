"""Rearrangements, majorization and Lorenz domination of integer vectors.

Two vectors are compared through their decreasing rearrangements.  The
prefix sums of the decreasing rearrangement (the *majorization vector*) turn
Lorenz domination into a componentwise comparison, which is what the batch
routines here vectorize with numpy.
"""
from __future__ import annotations

import enum
import operator
from itertools import accumulate
from typing import Iterable

import numpy as np

from .errors import ContractError
from .vectors import VectorSet


class DecComparison(enum.Enum):
    SMALLER = "smaller"
    VALUE_EQUIVALENT = "value_equivalent"
    LARGER = "larger"


def _vec(x) -> tuple:
    return tuple(operator.index(v) for v in x)


def _pair(x, y, same_sum=False):
    x, y = _vec(x), _vec(y)
    if len(x) != len(y):
        raise ContractError(f"vectors have lengths {len(x)} and {len(y)}")
    if same_sum and sum(x) != sum(y):
        raise ContractError(f"vectors have different totals {sum(x)} and {sum(y)}")
    return x, y


def sort_dec(x) -> tuple:
    return tuple(sorted(_vec(x), reverse=True))


def sort_inc(x) -> tuple:
    return tuple(sorted(_vec(x)))


def compare_dec(x, y) -> DecComparison:
    """Lexicographic comparison of decreasing rearrangements."""
    x, y = _pair(x, y)
    a, b = sort_dec(x), sort_dec(y)
    if a == b:
        return DecComparison.VALUE_EQUIVALENT
    return DecComparison.SMALLER if a < b else DecComparison.LARGER


def compare_inc(x, y) -> DecComparison:
    """Lexicographic comparison of increasing rearrangements.

    ``LARGER`` means ``x`` is increasingly larger than ``y``.
    """
    x, y = _pair(x, y)
    a, b = sort_inc(x), sort_inc(y)
    if a == b:
        return DecComparison.VALUE_EQUIVALENT
    return DecComparison.SMALLER if a < b else DecComparison.LARGER


def value_equivalent(x, y) -> bool:
    x, y = _pair(x, y)
    return sort_dec(x) == sort_dec(y)


def majorization_vector(x) -> tuple:
    """Prefix sums of the decreasing rearrangement of ``x``."""
    return tuple(accumulate(sort_dec(x)))


def _le_somewhere_lt(a, b) -> bool:
    return all(p <= q for p, q in zip(a, b)) and a != b


def lorenz_dominates(x, y) -> bool:
    """``x`` Lorenz-dominates ``y`` (top-k sums of ``x`` never exceed those of ``y``)."""
    x, y = _pair(x, y, same_sum=True)
    return _le_somewhere_lt(majorization_vector(x), majorization_vector(y))


def lorenz_dominates_inc(x, y) -> bool:
    """The increasing-order formulation: bottom-k sums of ``x`` never fall below ``y``'s."""
    x, y = _pair(x, y, same_sum=True)
    a = tuple(accumulate(sort_inc(x)))
    b = tuple(accumulate(sort_inc(y)))
    return _le_somewhere_lt(b, a)


def majorized_by(x, y, strict: bool = False) -> bool:
    """Whether ``x`` is (strictly) majorized by ``y``; totals must agree."""
    x, y = _pair(x, y, same_sum=True)
    a, b = majorization_vector(x), majorization_vector(y)
    if not all(p <= q for p, q in zip(a, b)):
        return False
    return a != b if strict else True


def componentwise_greater(x, y) -> bool:
    """``x > y``: every entry at least as large, at least one strictly larger."""
    x, y = _pair(x, y)
    return all(p >= q for p, q in zip(x, y)) and x != y


# -- batch versions over VectorSet -------------------------------------------

def _prefix_matrix(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        srt = np.array([sorted(row, reverse=True) for row in arr], dtype=object)
        srt = srt.reshape(arr.shape)
    else:
        srt = -np.sort(-arr, axis=1)
    return np.cumsum(srt, axis=1)


def _uniform(A: VectorSet) -> np.ndarray:
    arr = A.array()
    if len(A) and len(np.unique(arr.sum(axis=1))) > 1:
        raise ContractError("Lorenz comparisons need vectors with a common total")
    return arr


def lorenz_filter(A: Iterable) -> VectorSet:
    """Elements of ``A`` not Lorenz-dominated by any other element of ``A``.

    Works on prefix vectors: repeatedly take a remaining point with the
    smallest prefix total (nothing remaining can dominate it), keep it with
    its value-equivalent twins and drop everything it dominates.
    """
    A = A if isinstance(A, VectorSet) else VectorSet(A)
    arr = _uniform(A)
    if len(A) == 0:
        return A
    P = _prefix_matrix(arr)
    total = P.sum(axis=1)
    remaining = np.arange(len(A))
    keep = []
    while remaining.size:
        pivot = remaining[np.argmin(total[remaining])]
        rows = P[remaining]
        same = np.all(rows == P[pivot], axis=1)
        dominated = np.all(rows >= P[pivot], axis=1) & ~same
        keep.append(remaining[same])
        remaining = remaining[~same & ~dominated]
    idx = np.sort(np.concatenate(keep))
    return VectorSet.from_array(arr[idx], presorted=True)


def _check_member(x, Q: VectorSet) -> tuple:
    x = _vec(x)
    if x not in Q:
        raise ContractError(f"{x} is not an element of the set")
    return x


def is_least_majorized(x, Q: Iterable) -> bool:
    """``x`` is majorized by every ``y`` in ``Q``."""
    Q = Q if isinstance(Q, VectorSet) else VectorSet(Q)
    x = _check_member(x, Q)
    _uniform(Q)
    px = np.array(majorization_vector(x), dtype=object)
    return bool(np.all(px <= _prefix_matrix(Q.array()).min(axis=0)))


def is_dec_min(x, Q: Iterable) -> bool:
    """``x`` is decreasingly minimal: ``x <=_dec y`` for every ``y`` in ``Q``."""
    Q = Q if isinstance(Q, VectorSet) else VectorSet(Q)
    x = _check_member(x, Q)
    return sort_dec(x) == min(sort_dec(y) for y in Q)


def is_inc_max(x, Q: Iterable) -> bool:
    """``x`` is increasingly maximal: ``x >=_inc y`` for every ``y`` in ``Q``."""
    Q = Q if isinstance(Q, VectorSet) else VectorSet(Q)
    x = _check_member(x, Q)
    return sort_inc(x) == max(sort_inc(y) for y in Q)


def least_majorized_elements(Q: VectorSet) -> VectorSet:
    arr = _uniform(Q)
    if len(Q) == 0:
        return Q
    P = _prefix_matrix(arr)
    ok = np.all(P <= P.min(axis=0), axis=1)
    return VectorSet.from_array(arr[ok], presorted=True)


def dec_min_elements(Q: VectorSet) -> VectorSet:
    if len(Q) == 0:
        return Q
    best = min(sort_dec(y) for y in Q)
    return VectorSet((y for y in Q if sort_dec(y) == best), dim=Q.dim)


def inc_max_elements(Q: VectorSet) -> VectorSet:
    if len(Q) == 0:
        return Q
    best = max(sort_inc(y) for y in Q)
    return VectorSet((y for y in Q if sort_inc(y) == best), dim=Q.dim)
