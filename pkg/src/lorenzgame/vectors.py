"""Canonically ordered finite sets of integer payoff vectors."""
from __future__ import annotations

import operator
from typing import Iterable, Optional

import numpy as np

from .errors import ContractError

# int64 arithmetic is used only when every sum we form stays far from overflow
_SAFE = 2**62


def int_array(rows, width: int) -> np.ndarray:
    """2-D integer array, ``object`` dtype if int64 sums could overflow."""
    arr = np.array(rows, dtype=object).reshape(-1, width)
    if arr.size == 0:
        return np.zeros((0, width), dtype=np.int64)
    bound = max(abs(int(arr.max())), abs(int(arr.min())))
    if bound * (width + 2) < _SAFE:
        return arr.astype(np.int64)
    return arr


def safe_dtype(*bounds: int, terms: int = 1):
    """``np.int64`` if sums of ``terms`` values bounded by ``bounds`` are safe."""
    bound = max((abs(b) for b in bounds), default=0)
    return np.int64 if bound * (terms + 2) < _SAFE else object


class VectorSet:
    """A sorted, duplicate-free set of equal-length integer vectors.

    Order is lexicographic on the raw entries, so two equal sets always
    iterate (and print) identically.  Large sets produced by enumeration
    stay as numpy arrays; tuples are only built when someone iterates.
    """

    __slots__ = ("_arr", "_tuples", "dim")

    def __init__(self, vectors: Iterable = (), dim: Optional[int] = None):
        vecs = {tuple(operator.index(v) for v in x) for x in vectors}
        lengths = {len(x) for x in vecs}
        if dim is not None:
            lengths.add(dim)
        if len(lengths) > 1:
            raise ContractError(f"vectors of mixed lengths {sorted(lengths)}")
        self.dim = lengths.pop() if lengths else None
        self._tuples = tuple(sorted(vecs))
        self._arr = None

    @classmethod
    def from_array(cls, arr: np.ndarray, presorted: bool = False) -> "VectorSet":
        """Wrap a 2-D integer array; ``presorted`` skips sorting and deduplication."""
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ContractError("expected a 2-D array of vectors")
        if not presorted and len(arr):
            if arr.dtype == object:
                return cls((tuple(int(v) for v in row) for row in arr), dim=arr.shape[1])
            arr = np.unique(arr, axis=0)
        out = cls.__new__(cls)
        out.dim = arr.shape[1]
        out._arr = arr
        out._tuples = None
        return out

    @property
    def vectors(self) -> tuple:
        if self._tuples is None:
            self._tuples = tuple(tuple(int(v) for v in row) for row in self._arr)
        return self._tuples

    def array(self) -> np.ndarray:
        if self._arr is None:
            self._arr = int_array(self._tuples, self.dim or 0)
        return self._arr

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self._arr) if self._arr is not None else len(self._tuples)

    def __getitem__(self, i):
        return self.vectors[i]

    def __contains__(self, x):
        try:
            x = tuple(operator.index(v) for v in x)
        except TypeError:
            return False
        if len(x) != self.dim:
            return False
        if self._tuples is None and len(self._arr) > 4096:
            return bool(np.all(self._arr == np.array(x, dtype=self._arr.dtype), axis=1).any())
        vecs = self.vectors
        lo, hi = 0, len(vecs)
        while lo < hi:
            mid = (lo + hi) // 2
            if vecs[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(vecs) and vecs[lo] == x

    def __eq__(self, other):
        if isinstance(other, VectorSet):
            if len(self) != len(other):
                return False
            if len(self) == 0:
                return True
            if self._arr is not None and other._arr is not None:
                return bool(np.array_equal(self._arr, other._arr))
            return self.vectors == other.vectors
        if isinstance(other, (set, frozenset, list, tuple)):
            return self == VectorSet(other, dim=self.dim if not other else None)
        return NotImplemented

    def __hash__(self):
        return hash(self.vectors)

    def __repr__(self):
        if len(self) > 20:
            return f"VectorSet(<{len(self)} vectors of length {self.dim}>)"
        return f"VectorSet({[list(v) for v in self.vectors]!r})"
