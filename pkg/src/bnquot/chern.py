"""Formal bundles: Newton's identities, Chern character, Todd class, twists.

Chern roots are never materialised.  Every operation goes through power
sums ``p_k``, which are additive under direct sum, so the splitting
principle holds by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .ring import Ring, RingElement


class BundleError(ValueError):
    pass


@dataclass(frozen=True)
class FormalBundle:
    """Rank plus Chern classes ``c_1 .. c_N`` over a ring.

    ``chern[i]`` holds ``c_{i+1}``; missing entries read as zero.
    """

    ring: Ring
    rank: int
    chern: tuple[RingElement, ...] = ()
    virtual: bool = False

    def __post_init__(self):
        chern = list(self.chern)
        while chern and chern[-1].is_zero():
            chern.pop()
        object.__setattr__(self, "chern", tuple(chern))
        if not self.virtual and self.rank < 0:
            raise BundleError("negative rank requires a virtual bundle")
        for i, c in enumerate(self.chern, start=1):
            if c.ring is not self.ring:
                raise BundleError(f"c_{i} lives in a different ring")
            if not c.is_homogeneous(2 * i):
                raise BundleError(f"c_{i} is not homogeneous of degree {2 * i}")
        if not self.virtual:
            for i, c in enumerate(self.chern, start=1):
                if i > self.rank and not c.is_zero():
                    raise BundleError(f"c_{i} must vanish on a rank {self.rank} bundle")

    def c(self, i: int) -> RingElement:
        if i == 0:
            return self.ring.one()
        if 1 <= i <= len(self.chern):
            return self.chern[i - 1]
        return self.ring.zero()

    def total_chern(self, N: int) -> list[RingElement]:
        """Coefficients ``[1, c_1, ..., c_N]`` of the Chern polynomial."""
        return [self.c(i) for i in range(N + 1)]

    def to_json(self) -> dict:
        return {"rank": self.rank, "virtual": self.virtual,
                "chern": [str(c) for c in self.chern]}


@dataclass(frozen=True)
class PowerSums:
    """``p_1 .. p_N``; ``values[k-1]`` is ``p_k``."""

    values: tuple[RingElement, ...] = field(default_factory=tuple)

    def __getitem__(self, k: int) -> RingElement:
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)


def trivial_bundle(ring: Ring, rank: int) -> FormalBundle:
    return FormalBundle(ring, rank)


def line_bundle(x: RingElement) -> FormalBundle:
    return FormalBundle(x.ring, 1, (x,))


def _check_depth(ring: Ring, N: int):
    if N < 0:
        raise BundleError("series depth must be non-negative")
    if 2 * N > ring.truncation:
        raise BundleError(
            f"depth {N} needs degree {2 * N} but the ring truncates at {ring.truncation}"
        )


def power_sums_from_chern(b: FormalBundle, N: int) -> PowerSums:
    """Newton: ``p_n = sum_{i<n} (-1)^(i-1) c_i p_{n-i} + (-1)^(n-1) n c_n``."""
    _check_depth(b.ring, N)
    p: list[RingElement] = []
    for n in range(1, N + 1):
        acc = b.c(n).scale((-1) ** (n - 1) * n)
        for i in range(1, n):
            ci = b.c(i)
            if ci:
                term = ci * p[n - i - 1]
                acc = acc + term if i % 2 == 1 else acc - term
        p.append(acc)
    return PowerSums(tuple(p))


def chern_from_power_sums(rank: int, p: PowerSums, N: int, *, ring: Ring | None = None,
                          virtual: bool | None = None) -> FormalBundle:
    """Inverse of :func:`power_sums_from_chern`: ``n c_n = sum_r (-1)^(r-1) p_r c_{n-r}``."""
    if ring is None:
        if not p.values:
            raise BundleError("empty power sums need an explicit ring")
        ring = p.values[0].ring
    _check_depth(ring, N)
    if len(p) < N:
        raise BundleError(f"need {N} power sums, got {len(p)}")
    c: list[RingElement] = [ring.one()]
    for n in range(1, N + 1):
        acc = ring.zero()
        for r in range(1, n + 1):
            if p[r] and c[n - r]:
                term = p[r] * c[n - r]
                acc = acc + term if r % 2 == 1 else acc - term
        c.append(acc.scale(Fraction(1, n)))
    chern = c[1:]
    if virtual is None:
        virtual = rank < 0 or any(not x.is_zero() for x in chern[max(rank, 0):])
    return FormalBundle(ring, rank, tuple(chern), virtual=virtual)


def chern_character(b: FormalBundle, N: int) -> RingElement:
    """``rank + sum_{k<=N} p_k / k!``."""
    p = power_sums_from_chern(b, N)
    ch = b.ring.scalar(b.rank)
    for k in range(1, N + 1):
        ch = ch + p[k].scale(Fraction(1, factorial(k)))
    return ch


def ch_parts(b: FormalBundle, N: int) -> list[RingElement]:
    """``[ch_0, ..., ch_N]`` as separate homogeneous pieces."""
    p = power_sums_from_chern(b, N)
    return [b.ring.scalar(b.rank)] + [p[k].scale(Fraction(1, factorial(k))) for k in range(1, N + 1)]


# -- univariate rational series -------------------------------------------------

def series_mul(a: list[Fraction], b: list[Fraction], N: int) -> list[Fraction]:
    out = [Fraction(0)] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def series_log(a: list[Fraction], N: int) -> list[Fraction]:
    """log of a series with constant term 1, via ``(log a)' = a'/a``."""
    a = (list(a) + [Fraction(0)] * (N + 1))[: N + 1]
    if a[0] != 1:
        raise ValueError("log needs constant term 1")
    out = [Fraction(0)] * (N + 1)
    # n*a_n = sum_{k=1}^n k*out_k*a_{n-k}
    for n in range(1, N + 1):
        s = n * a[n] - sum(k * out[k] * a[n - k] for k in range(1, n))
        out[n] = s / n
    return out


def todd_log_coefficients(N: int) -> list[Fraction]:
    """Coefficients ``a_k`` of ``log(x / (1 - e^{-x}))`` up to ``x^N``.

    ``x/(1-e^{-x}) = 1 / sum_{n>=0} (-x)^n/(n+1)!`` is inverted as a
    series and then logged.
    """
    denom = [Fraction((-1) ** n, factorial(n + 1)) for n in range(N + 1)]
    inv = [Fraction(0)] * (N + 1)
    inv[0] = Fraction(1)
    for n in range(1, N + 1):
        inv[n] = -sum(denom[k] * inv[n - k] for k in range(1, n + 1))
    return series_log(inv, N)


def _exp_graded(z: RingElement, N: int) -> RingElement:
    """``exp(z)`` for ``z`` with no constant term, truncated at ``N`` factors."""
    ring = z.ring
    result = ring.one()
    term = ring.one()
    for k in range(1, N + 1):
        term = (term * z).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
    return result


def todd(b: FormalBundle, N: int) -> RingElement:
    """``td = prod x_i/(1-e^{-x_i}) = exp(sum_k a_k p_k)``."""
    a = todd_log_coefficients(N)
    p = power_sums_from_chern(b, N)
    log_td = b.ring.zero()
    for k in range(1, N + 1):
        if a[k]:
            log_td = log_td + p[k].scale(a[k])
    return _exp_graded(log_td, N).truncated(2 * N)


def tensor_line(b: FormalBundle, ell: RingElement) -> FormalBundle:
    """Twist by a line bundle with first Chern class ``ell``.

    ``c_k(E (x) L) = sum_i binom(r-i, k-i) c_i l^(k-i)`` for a bundle of
    rank r; virtual bundles go through power sums instead, since the
    binomial formula needs a non-negative rank.
    """
    if ell.ring is not b.ring:
        raise BundleError("twist class lives in a different ring")
    if not ell.is_homogeneous(2):
        raise BundleError("twist class must be homogeneous of degree 2")
    ring = b.ring
    if b.virtual:
        N = ring.truncation // 2
        p = power_sums_from_chern(b, N)
        new_p = []
        for n in range(1, N + 1):
            acc = (ell ** n).scale(b.rank)
            for k in range(1, n + 1):
                acc = acc + (p[k] * ell ** (n - k)).scale(comb(n, k))
            new_p.append(acc)
        return chern_from_power_sums(b.rank, PowerSums(tuple(new_p)), N, ring=ring, virtual=True)
    r = b.rank
    chern = []
    for k in range(1, r + 1):
        acc = ring.zero()
        for i in range(0, k + 1):
            coef = comb(r - i, k - i)
            if coef:
                acc = acc + (b.c(i) * ell ** (k - i)).scale(coef)
        chern.append(acc)
    return FormalBundle(ring, r, tuple(chern))


def dual(b: FormalBundle) -> FormalBundle:
    """Root negation: ``c_i -> (-1)^i c_i``."""
    return FormalBundle(b.ring, b.rank,
                        tuple(c if i % 2 == 0 else -c for i, c in enumerate(b.chern, start=1)),
                        virtual=b.virtual)


def direct_sum(a: FormalBundle, b: FormalBundle) -> FormalBundle:
    """Whitney sum: total Chern classes multiply."""
    if a.ring is not b.ring:
        raise BundleError("bundles live in different rings")
    n = len(a.chern) + len(b.chern)
    chern = []
    for k in range(1, n + 1):
        acc = a.ring.zero()
        for i in range(0, k + 1):
            x, y = a.c(i), b.c(k - i)
            if x and y:
                acc = acc + x * y
        chern.append(acc)
    return FormalBundle(a.ring, a.rank + b.rank, tuple(chern), virtual=a.virtual or b.virtual)


def inverse_total_chern(b: FormalBundle, N: int) -> list[RingElement]:
    """Coefficients of ``c_t(b)^{-1} = c_t(-b)`` up to ``t^N``."""
    _check_depth(b.ring, N)
    s = [b.ring.one()]
    for n in range(1, N + 1):
        acc = b.ring.zero()
        for i in range(1, n + 1):
            ci = b.c(i)
            if ci:
                acc = acc - ci * s[n - i]
        s.append(acc)
    return s
