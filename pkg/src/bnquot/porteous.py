"""Porteous determinants of formal series and the fundamental-class records."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, TypeVar

from .chern import inverse_total_chern
from .kunneth import PushforwardResult, TruncationError
from .ring import Ring, RingElement

T = TypeVar("T")


class CodimensionError(ValueError):
    pass


class FormalSeries:
    """``sum_k a_k t^k`` with finite support.

    Missing indices read as zero, except ``a_0`` which reads as one when
    ``unit_constant`` is set (the Chern-series convention).
    """

    def __init__(self, ring: Ring, coeffs: Mapping[int, RingElement] | Sequence[RingElement],
                 unit_constant: bool = True):
        self.ring = ring
        if isinstance(coeffs, Mapping):
            self.coeffs = dict(coeffs)
        else:
            self.coeffs = dict(enumerate(coeffs))
        self.unit_constant = unit_constant

    def __getitem__(self, k: int) -> RingElement:
        if k in self.coeffs:
            return self.coeffs[k]
        if k == 0 and self.unit_constant:
            return self.ring.one()
        return self.ring.zero()


def berkowitz_det(A: Sequence[Sequence[T]], zero: T, one: T) -> T:
    """Division-free determinant over a commutative ring (Berkowitz).

    Builds the characteristic polynomial of each leading principal block
    as a Toeplitz product; ``det A = (-1)^n * charpoly(0)``.
    """
    n = len(A)
    if n == 0:
        return one
    poly = [one]  # charpoly of the empty block, highest power first
    for r in range(n):
        a_rr = A[r][r]
        col = [A[i][r] for i in range(r)]
        row = [A[r][j] for j in range(r)]
        # first column of the Toeplitz matrix: 1, -a_rr, -R C, -R A C, ...
        tcol = [one, zero - a_rr]
        v = col
        for _ in range(r):
            dot = zero
            for x, y in zip(row, v):
                dot = dot + x * y
            tcol.append(zero - dot)
            v = [_dot(A[i][:r], v, zero) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i + 1, r + 1)):
                acc = acc + tcol[i - j] * poly[j]
            new.append(acc)
        poly = new
    return poly[n] if n % 2 == 0 else zero - poly[n]


def _dot(row, vec, zero):
    acc = zero
    for x, y in zip(row, vec):
        acc = acc + x * y
    return acc


def laplace_det(A: Sequence[Sequence[T]], zero: T, one: T) -> T:
    """Cofactor expansion along the first row; exponential, test-sized only."""
    n = len(A)
    if n == 0:
        return one
    if n == 1:
        return A[0][0]
    total = zero
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * laplace_det(minor, zero, one)
        total = total + term if j % 2 == 0 else total - term
    return total


def porteous_matrix(a: FormalSeries, p: int, q: int) -> list[list[RingElement]]:
    """``(a_{p+j-i})`` for ``1 <= i, j <= q``."""
    return [[a[p + j - i] for j in range(1, q + 1)] for i in range(1, q + 1)]


def delta_pq(a: FormalSeries, p: int, q: int,
             det: Callable = berkowitz_det) -> RingElement:
    if p < 1 or q < 1:
        raise ValueError("Delta_{p,q} needs p, q >= 1")
    M = porteous_matrix(a, p, q)
    for row in M:
        for x in row:
            if not x.is_even():
                raise ValueError("determinant entries must have even degree")
    return det(M, a.ring.zero(), a.ring.one())


@dataclass(frozen=True)
class FundamentalClass:
    codim: int
    porteous: RingElement
    minus_chern: RingElement

    @property
    def agree(self) -> bool:
        return self.porteous == self.minus_chern

    @property
    def difference(self) -> RingElement:
        return self.porteous - self.minus_chern

    def to_json(self) -> dict:
        return {
            "codim": self.codim,
            "porteous": str(self.porteous),
            "minus_chern": str(self.minus_chern),
            "agree": self.agree,
            "difference": str(self.difference),
        }


def fundamental_class(pf: PushforwardResult, g: int, s: int, N: int | None = None) -> FundamentalClass:
    """Both candidate classes of the stratum of Segre invariant ``s``.

    ``porteous`` is ``Delta_{2g-s-1,1}(c_t(-V))`` and ``minus_chern`` is
    ``-c_{2g-s-1}(V)`` for the pushforward ``V``.
    """
    p = 2 * g - s - 1
    if p <= 0:
        raise CodimensionError(f"codimension 2g-s-1 = {p} is not positive (g={g}, s={s})")
    ring = pf.bundle.ring
    if N is None:
        N = p
    if N < p or 2 * p > ring.truncation:
        raise TruncationError(f"class of codimension {p} needs degree {2 * p}")
    series = FormalSeries(ring, inverse_total_chern(pf.bundle, p))
    return FundamentalClass(p, delta_pq(series, p, 1), -pf.bundle.c(p))
