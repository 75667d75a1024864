"""Genus-0 laboratory: degree d maps P^1 -> G(2,4) as 4x2 kernel matrices.

A map is stored through the inclusion ``O(-b1) + O(-b2) -> O^4`` of the
pulled-back tautological subbundle, so the quotient ``E`` has degree
``d = b1 + b2``.  Sections of ``E^dual(k)`` are then row vectors ``w`` of
degree-k forms with ``w . K = 0`` and every cohomological question turns
into an exact nullspace computation over Q.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg

RESAMPLE_BUDGET = 32
DEFAULT_BOUND = 10


class SamplingError(RuntimeError):
    pass


class InvalidKernelError(ValueError):
    pass


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class HomForm:
    """Binary form; ``coeffs[k]`` multiplies ``x^k y^(degree-k)``."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("form degree must be non-negative")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} form needs {self.degree + 1} coefficients")

    @classmethod
    def zero(cls, degree: int) -> HomForm:
        return cls(degree, (0,) * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, k: int, c=1) -> HomForm:
        """``c * x^k y^(degree-k)``."""
        coeffs = [0] * (degree + 1)
        coeffs[k] = c
        return cls(degree, tuple(coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: HomForm) -> HomForm:
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degrees")
        return HomForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> HomForm:
        return HomForm(self.degree, tuple(-a for a in self.coeffs))

    def __sub__(self, other: HomForm) -> HomForm:
        return self + (-other)

    def __mul__(self, other: HomForm) -> HomForm:
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return HomForm(self.degree + other.degree, tuple(out))

    def affine_x(self) -> list[Fraction]:
        """Dehomogenise at ``y = 1``: coefficients of ``x^k``."""
        return list(self.coeffs)

    def affine_y(self) -> list[Fraction]:
        """Dehomogenise at ``x = 1``: coefficients of ``y^j``."""
        return list(reversed(self.coeffs))

    def to_json(self) -> list[str]:
        return [_frac_str(c) for c in self.coeffs]

    def __str__(self) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "*".join(v if e == 1 else f"{v}^{e}"
                            for v, e in (("x", k), ("y", self.degree - k)) if e)
            mag = _frac_str(abs(c))
            body = mono if mono and mag == "1" else (f"{mag}*{mono}" if mono else mag)
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])


# -- univariate polynomials over Q, low degree first --------------------------------

def _strip(p: list[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = _strip(a)
    lead = b[-1]
    while len(a) >= len(b):
        f = a[-1] / lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a = _strip(a)
    return a


def poly_gcd(polys: Sequence[list[Fraction]]) -> list[Fraction]:
    """Monic gcd of the nonzero polynomials; ``[]`` when all vanish."""
    g: list[Fraction] = []
    for p in polys:
        p = _strip(p)
        if not p:
            continue
        a, b = (g, p) if g else (p, [])
        while b:
            a, b = b, _poly_mod(a, b)
        g = [c / a[-1] for c in a]
        if len(g) == 1:
            break
    return g


def base_point_free(forms: Sequence[HomForm]) -> bool:
    """True iff the forms have no common zero on P^1.

    Checked on both affine charts: the nonzero forms must have constant gcd
    after setting ``y = 1`` and again after setting ``x = 1``.
    """
    if not forms or all(f.is_zero() for f in forms):
        return False
    for chart in (HomForm.affine_x, HomForm.affine_y):
        if len(poly_gcd([chart(f) for f in forms])) != 1:
            return False
    return True


def _minors(cols: Sequence[Sequence[HomForm]]) -> list[HomForm]:
    """The six 2x2 minors of a 4x2 matrix given as two columns."""
    c0, c1 = cols
    out = []
    for i in range(4):
        for k in range(i + 1, 4):
            out.append(c0[i] * c1[k] - c0[k] * c1[i])
    return out


@dataclass(frozen=True)
class KernelMatrix:
    """4x2 matrix; column j holds forms of degree ``col_degrees[j]``."""

    entries: tuple[tuple[HomForm, HomForm], ...]
    col_degrees: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(r) for r in self.entries))
        object.__setattr__(self, "col_degrees", tuple(self.col_degrees))
        if len(self.entries) != 4 or any(len(r) != 2 for r in self.entries):
            raise InvalidKernelError("kernel matrix must be 4x2")
        for r in self.entries:
            for j in range(2):
                if r[j].degree != self.col_degrees[j]:
                    raise InvalidKernelError(
                        f"column {j} entry has degree {r[j].degree}, expected {self.col_degrees[j]}")

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[HomForm]]) -> KernelMatrix:
        c0, c1 = cols
        return cls(tuple(zip(c0, c1)), (c0[0].degree, c1[0].degree))

    @property
    def d(self) -> int:
        return sum(self.col_degrees)

    def column(self, j: int) -> list[HomForm]:
        return [r[j] for r in self.entries]

    def minors(self) -> list[HomForm]:
        return _minors([self.column(0), self.column(1)])

    def to_json(self) -> dict:
        return {"col_degrees": list(self.col_degrees),
                "entries": [[f.to_json() for f in row] for row in self.entries]}


@lru_cache(maxsize=4096)
def is_valid_kernel(K: KernelMatrix) -> bool:
    """Injective with locally free cokernel: the minors have no common zero."""
    return base_point_free(K.minors())


def _require_valid(K: KernelMatrix):
    if not is_valid_kernel(K):
        raise InvalidKernelError("kernel minors share a zero; the cokernel is not a rank 2 bundle")


# -- syzygies -------------------------------------------------------------------

def _syzygy_space(constraints: Sequence[Sequence[HomForm]], k: int) -> list[list[Fraction]]:
    """Nullspace of ``w -> [sum_i w_i * F_i for F in constraints]`` on 4 forms of degree k.

    Unknown layout: coefficient ``p`` of ``w_i`` sits at column ``i*(k+1)+p``.
    """
    n_unknowns = 4 * (k + 1)
    rows = []
    for F in constraints:
        b = F[0].degree
        for t in range(k + b + 1):
            row = [Fraction(0)] * n_unknowns
            for i in range(4):
                coeffs = F[i].coeffs
                for p in range(max(0, t - b), min(k, t) + 1):
                    row[i * (k + 1) + p] = coeffs[t - p]
            rows.append(row)
    return linalg.nullspace(rows, n_unknowns)


def _unflatten(v: Sequence[Fraction], k: int) -> list[HomForm]:
    return [HomForm(k, tuple(v[i * (k + 1):(i + 1) * (k + 1)])) for i in range(4)]


def twisted_dual_sections(K: KernelMatrix, k: int) -> int:
    """``h^0(E^dual(k))``: row vectors of degree-k forms killed by K."""
    _require_valid(K)
    if k < 0:
        return 0
    return len(_syzygy_space([K.column(0), K.column(1)], k))


@dataclass(frozen=True, order=True)
class SplittingType:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError("splitting type must satisfy a <= d - a")

    @property
    def d(self) -> int:
        return self.a + self.b

    def __str__(self):
        return f"({self.a},{self.b})"


def splitting_type(K: KernelMatrix) -> SplittingType:
    """``E = O(a) + O(d-a)`` with a the least twist where ``E^dual(a)`` has sections."""
    d = K.d
    for k in range(d // 2 + 1):
        if twisted_dual_sections(K, k) > 0:
            return SplittingType(k, d - k)
    raise AssertionError(f"no sections of E^dual(k) for k <= {d // 2}; kernel is not valid")


def segre_p1(K: KernelMatrix) -> int:
    st = splitting_type(K)
    return 2 * st.a - st.d


def kernel_of_surjection(M: Sequence[Sequence[HomForm]], row_degrees: tuple[int, int]) -> KernelMatrix:
    """Kernel of a surjection ``O^4 -> O(r1) + O(r2)`` given as a 2x4 matrix.

    Syzygies are collected degree by degree; a new one is kept only if it
    is not already generated by lower-degree ones.  Two generators with
    degrees summing to ``d`` span the whole kernel.
    """
    rows = [list(r) for r in M]
    if len(rows) != 2 or any(len(r) != 4 for r in rows):
        raise ValueError("quotient matrix must be 2x4")
    for r, deg in zip(rows, row_degrees):
        if any(f.degree != deg for f in r):
            raise ValueError("row entries do not match the declared row degrees")
    cols = [[rows[0][i], rows[1][i]] for i in range(4)]
    # 2x2 minors of M = minors of its transpose
    if not base_point_free(_minors([[c[0] for c in cols], [c[1] for c in cols]])):
        raise InvalidKernelError("quotient map is not surjective")
    d = sum(row_degrees)
    gens: list[tuple[int, list[Fraction]]] = []
    for e in range(d + 1):
        space = _syzygy_space(rows, e)
        if not space:
            continue
        known = []
        for e0, v in gens:
            forms = _unflatten(v, e0)
            for i in range(e - e0 + 1):
                mono = HomForm.monomial(e - e0, i)
                known.append([c for f in forms for c in (f * mono).coeffs])
        for v in space:
            if len(gens) == 2:
                break
            if not linalg.in_span(known, v):
                v = linalg.primitive_vector(v)
                gens.append((e, v))
                known.append(v)
        if len(gens) == 2:
            break
    if len(gens) < 2 or gens[0][0] + gens[1][0] != d:
        raise AssertionError(f"syzygy degrees {[g[0] for g in gens]} do not sum to d={d}")
    K = KernelMatrix.from_columns([_unflatten(v, e) for e, v in gens])
    if not is_valid_kernel(K):
        raise AssertionError("constructed kernel is not saturated")
    return K


# -- cohomology of E(m) ---------------------------------------------------------

def h0_twist(K: KernelMatrix, m: int) -> int:
    """``h^0(E(m))`` from the presentation ``0 -> N -> O^4 -> E -> 0``.

    For ``m >= -1``: ``4(m+1) - rank(H^0 N(m) -> H^0 O(m)^4) + h^1(N(m))``.
    Below that, Serre duality gives ``chi(E(m)) + h^0(E^dual(-m-2))``.
    """
    _require_valid(K)
    if m < -1:
        return K.d + 2 * (m + 1) + twisted_dual_sections(K, -m - 2)
    blocks = []
    for j, b in enumerate(K.col_degrees):
        deg = m - b
        if deg < 0:
            continue
        col = K.column(j)
        for p in range(deg + 1):
            mono = HomForm.monomial(deg, p)
            blocks.append([c for f in col for c in (f * mono).coeffs])
    r = linalg.rank(blocks) if blocks else 0
    h1_n = sum(max(0, b - m - 1) for b in K.col_degrees)
    return 4 * (m + 1) - r + h1_n


def euler_check(K: KernelMatrix) -> bool:
    """``h^0(E) - h^1(E) = d + 2`` with ``h^1`` read off the splitting."""
    st = splitting_type(K)
    h1 = max(0, -st.a - 1) + max(0, -st.b - 1)
    return h0_twist(K, 0) - h1 == K.d + 2


# -- sampling -------------------------------------------------------------------

def _random_form(rng: np.random.Generator, degree: int, bound: int) -> HomForm:
    return HomForm(degree, tuple(Fraction(int(x)) for x in rng.integers(-bound, bound + 1, degree + 1)))


def balanced_degrees(d: int) -> tuple[int, int]:
    return ((d + 1) // 2, d // 2)


def _sample_kernel(d: int, rng: np.random.Generator, bound: int,
                   col_degrees: tuple[int, int] | None) -> KernelMatrix:
    if bound < 1:
        raise ValueError("coefficient bound must be >= 1")
    b1, b2 = col_degrees or balanced_degrees(d)
    if b1 + b2 != d:
        raise ValueError("column degrees must sum to d")
    for _ in range(RESAMPLE_BUDGET):
        cols = [[_random_form(rng, b, bound) for _ in range(4)] for b in (b1, b2)]
        K = KernelMatrix.from_columns(cols)
        if is_valid_kernel(K):
            return K
    raise SamplingError(f"no valid kernel after {RESAMPLE_BUDGET} draws (d={d})")


def sample(d: int, seed: int, bound: int = DEFAULT_BOUND,
           col_degrees: tuple[int, int] | None = None) -> KernelMatrix:
    return _sample_kernel(d, np.random.default_rng(seed), bound, col_degrees)


def sample_quotient(d: int, a: int, seed: int, bound: int = DEFAULT_BOUND) -> list[list[HomForm]]:
    """Random surjection ``O^4 -> O(a) + O(d-a)`` as a 2x4 matrix."""
    if not 0 <= a <= d - a:
        raise ValueError("need 0 <= a <= d/2")
    rng = np.random.default_rng(seed)
    for _ in range(RESAMPLE_BUDGET):
        M = [[_random_form(rng, deg, bound) for _ in range(4)] for deg in (a, d - a)]
        if base_point_free(_minors([[M[0][i] for i in range(4)], [M[1][i] for i in range(4)]])):
            return M
    raise SamplingError(f"no surjective quotient after {RESAMPLE_BUDGET} draws (d={d}, a={a})")


@dataclass(frozen=True)
class Survey:
    d: int
    trials: int
    seed: int
    counts: dict[str, int]

    @property
    def balanced(self) -> str:
        return str(SplittingType(*sorted(balanced_degrees(self.d))))

    @property
    def dominant(self) -> str:
        return max(self.counts.items(), key=lambda kv: (kv[1], kv[0]))[0]

    def to_json(self) -> dict:
        return {"d": self.d, "trials": self.trials, "seed": self.seed, "counts": dict(self.counts)}


def _survey_chunk(args) -> Counter:
    d, seeds, bound = args
    out = Counter()
    for ss in seeds:
        K = _sample_kernel(d, np.random.default_rng(ss), bound, None)
        out[str(splitting_type(K))] += 1
    return out


def survey(d: int, trials: int, seed: int, bound: int = DEFAULT_BOUND, jobs: int = 1) -> Survey:
    """Splitting-type frequencies over ``trials`` independent seeded draws."""
    children = np.random.SeedSequence(seed).spawn(trials)
    if jobs > 1 and trials > 1:
        chunks = [children[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_survey_chunk, [(d, c, bound) for c in chunks]))
    else:
        parts = [_survey_chunk((d, children, bound))]
    total = Counter()
    for p in parts:
        total.update(p)
    counts = dict(sorted(total.items(), key=lambda kv: tuple(int(x) for x in kv[0][1:-1].split(","))))
    return Survey(d, trials, seed, counts)


@dataclass(frozen=True)
class StratumDimension:
    d: int
    a: int
    formula: int
    lab: int

    @property
    def agree(self) -> bool:
        return self.formula == self.lab

    def to_json(self) -> dict:
        return {"d": self.d, "a": self.a, "formula": self.formula, "lab": self.lab,
                "agree": self.agree}


def stratum_dimension(d: int, a: int, seed: int = 0) -> StratumDimension:
    """Compare ``3d+2a+5`` with the count ``4 h^0(E) - h^0(End E)``.

    ``h^0(End E) = h^0(E^dual(a)) + h^0(E^dual(d-a))`` is measured on an
    explicit point of the stratum.
    """
    if not 0 <= a <= d - a:
        raise ValueError("need 0 <= a <= d/2")
    K = kernel_of_surjection(sample_quotient(d, a, seed), (a, d - a))
    h0_end = twisted_dual_sections(K, a) + twisted_dual_sections(K, d - a)
    lab = 4 * (a + 1) + 4 * (d - a + 1) - h0_end
    return StratumDimension(d, a, 3 * d + 2 * a + 5, lab)
