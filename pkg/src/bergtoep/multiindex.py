"""Multi-index bookkeeping: graded enumeration, domination order, shifts.

Multi-indices (points of N^n) and shift indices (points of Z^n) are plain
tuples of ints.  Every binary operation checks that dimensions agree, since
silently mixing indices of different ambient dimension is the easiest way
to corrupt every downstream matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

MultiIndex = tuple[int, ...]
ShiftIndex = tuple[int, ...]


class DimensionMismatchError(ValueError):
    """Two indices of different ambient dimension met in one operation."""


def _check_dims(m: tuple[int, ...], k: tuple[int, ...]) -> None:
    if len(m) != len(k):
        raise DimensionMismatchError(f"dimension mismatch: {len(m)} vs {len(k)}")


def as_multi_index(components, n: int | None = None) -> MultiIndex:
    """Validate and normalize a multi-index (all components >= 0)."""
    m = tuple(int(c) for c in components)
    if len(m) < 1:
        raise ValueError("multi-index must have length >= 1")
    if any(c < 0 for c in m):
        raise ValueError(f"multi-index has negative component: {m}")
    if n is not None and len(m) != n:
        raise DimensionMismatchError(f"expected dimension {n}, got {len(m)}")
    return m


def as_shift_index(components, n: int | None = None) -> ShiftIndex:
    """Validate and normalize a shift index (components may be negative)."""
    l = tuple(int(c) for c in components)
    if len(l) < 1:
        raise ValueError("shift index must have length >= 1")
    if n is not None and len(l) != n:
        raise DimensionMismatchError(f"expected dimension {n}, got {len(l)}")
    return l


def total_degree(m: tuple[int, ...]) -> int:
    return sum(m)


def add(m: tuple[int, ...], k: tuple[int, ...]) -> tuple[int, ...]:
    _check_dims(m, k)
    return tuple(a + b for a, b in zip(m, k))


def sub(m: tuple[int, ...], k: tuple[int, ...]) -> tuple[int, ...]:
    _check_dims(m, k)
    return tuple(a - b for a, b in zip(m, k))


def dominates(m: MultiIndex, k: MultiIndex) -> bool:
    """Componentwise order: True iff m_j >= k_j for every j."""
    _check_dims(m, k)
    return all(a >= b for a, b in zip(m, k))


def shift(m: MultiIndex, l: ShiftIndex) -> MultiIndex | None:
    """m + l if it stays in the cone N^n, otherwise None (out of cone)."""
    _check_dims(m, l)
    out = tuple(a + b for a, b in zip(m, l))
    if any(c < 0 for c in out):
        return None
    return out


def negative_part(l: ShiftIndex) -> MultiIndex:
    """l^- with l = l^+ - l^-; shift(m, l) is in-cone iff m dominates l^-."""
    return tuple(max(-c, 0) for c in l)


def positive_part(l: ShiftIndex) -> MultiIndex:
    return tuple(max(c, 0) for c in l)


def unit(n: int, axis: int) -> MultiIndex:
    """The unit multi-index along `axis` (0-based)."""
    if not 0 <= axis < n:
        raise ValueError(f"axis {axis} out of range for dimension {n}")
    return tuple(1 if j == axis else 0 for j in range(n))


def compositions(degree: int, n: int):
    """All m in N^n with |m| = degree, first component largest first.

    This is the within-degree order of the graded enumeration:
    (d,0,...), (d-1,1,0,...), ..., (0,...,0,d).
    """
    if n == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in compositions(degree - first, n - 1):
            yield (first,) + rest


def enumerate_multiindices(n: int, D: int) -> list[MultiIndex]:
    """All m in N^n with |m| <= D in graded order (degree-blocked).

    The block layout makes a degree cap D' < D a literal prefix of the
    enumeration, so truncation contracts are expressible as leading
    principal blocks.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if D < 0:
        raise ValueError("degree cap must be >= 0")
    return list(itertools.chain.from_iterable(compositions(d, n) for d in range(D + 1)))


@dataclass(frozen=True)
class BasisIndexer:
    """Bijection between matrix positions and multi-indices of degree <= D."""

    n: int
    D: int
    order: tuple[MultiIndex, ...]
    _pos: dict[MultiIndex, int] = field(repr=False, compare=False)

    @classmethod
    def build(cls, n: int, D: int) -> "BasisIndexer":
        order = tuple(enumerate_multiindices(n, D))
        return cls(n=n, D=D, order=order, _pos={m: i for i, m in enumerate(order)})

    @property
    def count(self) -> int:
        return len(self.order)

    def position(self, m: MultiIndex) -> int:
        try:
            return self._pos[tuple(m)]
        except KeyError:
            raise KeyError(f"index {m} not enumerated (n={self.n}, D={self.D})") from None

    def __contains__(self, m) -> bool:
        return tuple(m) in self._pos

    def __iter__(self):
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)


def count_multiindices(n: int, D: int) -> int:
    """C(n+D, n), the number of m in N^n with |m| <= D."""
    return comb(n + D, n)
