"""Free graded-supercommutative algebras over Q with curve-fiber relations.

A :class:`Ring` models the cohomology of ``R x C`` on named classes: base
generators declared by the caller, followed by the fiber classes
``delta1 .. delta{2g}`` (odd, degree 1) and ``eta`` (even, degree 2).  The
fiber relations are

    eta^2 = 0,  eta*delta_j = 0,  delta_j*delta_k = 0 unless |j-k| = g,
    delta_j*delta_{j+g} = DELTA_PAIRING_SIGN * eta.

Monomials are stored as ``(even exponents, odd bitmask)`` pairs.  Odd
generators square to zero, so a bitmask over the canonical odd order is
enough; the Koszul sign of a product is the parity of the number of
inversions between the two masks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

# Sign in delta_j * delta_{j+g} = sign * eta.  +1 reproduces alpha1^2 = -2*A*eta.
DELTA_PAIRING_SIGN = 1

ETA = "eta"
DELTA_PREFIX = "delta"


class PresentationError(ValueError):
    """Invalid generator set or ring parameters."""


class IncompatibleRingError(ValueError):
    """Operands live in different presentations."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    parity: int | None = None

    def __post_init__(self):
        if self.degree < 0:
            raise PresentationError(f"generator {self.name!r} has negative degree")
        if self.parity is None:
            object.__setattr__(self, "parity", self.degree % 2)
        elif self.parity != self.degree % 2:
            raise PresentationError(
                f"generator {self.name!r}: parity {self.parity} != degree {self.degree} mod 2"
            )

    @property
    def odd(self) -> bool:
        return self.parity == 1


class Monomial(NamedTuple):
    even: tuple[int, ...]
    odd: int


def _is_reserved(name: str) -> bool:
    return name == ETA or name.startswith(DELTA_PREFIX)


class Ring:
    """A presentation: generators, fiber relations and a truncation degree.

    Elements above ``truncation`` in total degree are identically zero.
    Instances are never mutated after construction apart from an internal
    product cache, so they can be shared freely.
    """

    def __init__(self, genus: int, base_generators: Iterable[Generator], truncation: int,
                 pairing_sign: int | None = None):
        base = list(base_generators)
        if genus < 0:
            raise PresentationError("genus must be non-negative")
        if truncation < 2:
            raise PresentationError("truncation degree must be at least 2")
        names = [gen.name for gen in base]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise PresentationError(f"duplicate generator names: {dupes}")
        clashes = [n for n in names if _is_reserved(n)]
        if clashes:
            raise PresentationError(f"reserved generator names used as base: {clashes}")
        if pairing_sign is None:
            pairing_sign = DELTA_PAIRING_SIGN
        if pairing_sign not in (1, -1):
            raise PresentationError("pairing sign must be +1 or -1")

        self.genus = genus
        self.truncation = truncation
        self.pairing_sign = pairing_sign
        self.base_generators = tuple(base)
        deltas = tuple(Generator(f"{DELTA_PREFIX}{j}", 1) for j in range(1, 2 * genus + 1))
        self.generators = self.base_generators + deltas + (Generator(ETA, 2),)

        # canonical slots: even generators and odd generators each in declaration order
        self._even_names = [g.name for g in self.generators if not g.odd]
        self._odd_names = [g.name for g in self.generators if g.odd]
        self._even_deg = tuple(g.degree for g in self.generators if not g.odd)
        self._odd_deg = tuple(g.degree for g in self.generators if g.odd)
        self._slot = {}
        for i, n in enumerate(self._even_names):
            self._slot[n] = (0, i)
        for i, n in enumerate(self._odd_names):
            self._slot[n] = (1, i)
        # position of each generator in the global canonical order
        self._order = {g.name: i for i, g in enumerate(self.generators)}
        self._eta = len(self._even_names) - 1
        self._n_base_odd = len(self._odd_names) - 2 * genus
        self._delta_mask = ((1 << (2 * genus)) - 1) << self._n_base_odd
        self._cache: dict[tuple[Monomial, Monomial], tuple[int, Monomial] | None] = {}

    # -- construction helpers ---------------------------------------------------

    def __repr__(self):
        base = ", ".join(g.name for g in self.base_generators)
        return f"Ring(genus={self.genus}, base=[{base}], truncation={self.truncation})"

    @property
    def one_monomial(self) -> Monomial:
        return Monomial((0,) * len(self._even_names), 0)

    def zero(self) -> RingElement:
        return RingElement(self, {})

    def one(self) -> RingElement:
        return self.scalar(1)

    def scalar(self, q) -> RingElement:
        q = Fraction(q)
        return RingElement(self, {self.one_monomial: q} if q else {})

    def gen(self, name: str) -> RingElement:
        return self.monomial([name])

    def gens(self, *names: str) -> tuple[RingElement, ...]:
        return tuple(self.gen(n) for n in names)

    def delta(self, j: int) -> RingElement:
        if not 1 <= j <= 2 * self.genus:
            raise PresentationError(f"delta{j} does not exist for genus {self.genus}")
        return self.gen(f"{DELTA_PREFIX}{j}")

    def eta(self) -> RingElement:
        return self.gen(ETA)

    def monomial(self, names: Iterable[str] | Mapping[str, int]) -> RingElement:
        """Product of the named generators, in the order given.

        A mapping ``{name: exponent}`` is read in insertion order.  The
        result is normalised, so reordering odd generators picks up the
        Koszul sign and relations are applied.
        """
        if isinstance(names, Mapping):
            seq = [n for n, e in names.items() for _ in range(e)]
        else:
            seq = list(names)
        result = self.one()
        for n in seq:
            if n not in self._slot:
                raise PresentationError(f"unknown generator {n!r}")
            kind, i = self._slot[n]
            if kind == 0:
                exps = [0] * len(self._even_names)
                exps[i] = 1
                m = Monomial(tuple(exps), 0)
            else:
                m = Monomial(self.one_monomial.even, 1 << i)
            result = result * RingElement(self, {m: Fraction(1)}, _trusted=True)
        return result

    # -- monomial arithmetic ----------------------------------------------------

    def degree(self, m: Monomial) -> int:
        deg = sum(e * d for e, d in zip(m.even, self._even_deg))
        odd = m.odd
        i = 0
        while odd:
            if odd & 1:
                deg += self._odd_deg[i]
            odd >>= 1
            i += 1
        return deg

    def _reduce_fiber(self, even: tuple[int, ...], odd: int) -> tuple[int, Monomial] | None:
        e = even[self._eta]
        if e >= 2:
            return None
        dmask = (odd & self._delta_mask) >> self._n_base_odd
        k = dmask.bit_count()
        if k == 0:
            return 1, Monomial(even, odd)
        if e or k > 2:
            return None
        if k == 1:
            return 1, Monomial(even, odd)
        lo = (dmask & -dmask).bit_length() - 1
        hi = dmask.bit_length() - 1
        if hi - lo != self.genus:
            return None
        # delta_lo and delta_hi are the last two odd slots, already adjacent
        new_even = list(even)
        new_even[self._eta] = 1
        return self.pairing_sign, Monomial(tuple(new_even), odd & ~self._delta_mask)

    def mul_monomials(self, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
        """Signed normal-form product of two normal monomials, or None for zero."""
        key = (a, b)
        try:
            return self._cache[key]
        except KeyError:
            pass
        result = None
        if not a.odd & b.odd:
            sign = 1
            bo = b.odd
            while bo:
                low = bo & -bo
                j = low.bit_length() - 1
                if (a.odd >> (j + 1)).bit_count() & 1:
                    sign = -sign
                bo ^= low
            even = tuple(x + y for x, y in zip(a.even, b.even))
            red = self._reduce_fiber(even, a.odd | b.odd)
            if red is not None and self.degree(red[1]) <= self.truncation:
                result = (sign * red[0], red[1])
        self._cache[key] = result
        return result

    def basis(self, k: int, base_only: bool = False) -> list[Monomial]:
        """All normal monomials of degree ``k`` (fiber-free ones if ``base_only``)."""
        even_deg, odd_deg = self._even_deg, self._odd_deg
        n_odd = len(odd_deg) - (2 * self.genus if base_only else 0)
        n_even = len(even_deg) - (1 if base_only else 0)
        out = []
        for mask in range(1 << n_odd):
            rest = k - sum(odd_deg[i] for i in range(n_odd) if mask >> i & 1)
            if rest < 0:
                continue
            for exps in _exponent_vectors(even_deg[:n_even], rest):
                exps = exps + (0,) * (len(even_deg) - n_even)
                red = self._reduce_fiber(exps, mask)
                if red is not None and red[1] == Monomial(exps, mask):
                    out.append(red[1])
        return sorted(out, key=self.sort_key)

    def is_fiber_free(self, m: Monomial) -> bool:
        return not (m.odd & self._delta_mask) and m.even[self._eta] == 0

    def eta_exponent(self, m: Monomial) -> int:
        return m.even[self._eta]

    def delta_indices(self, m: Monomial) -> list[int]:
        """1-based delta indices present in ``m``."""
        dmask = (m.odd & self._delta_mask) >> self._n_base_odd
        return [j + 1 for j in range(2 * self.genus) if dmask >> j & 1]

    def factors(self, m: Monomial) -> list[tuple[str, int]]:
        """Generators of ``m`` with exponents, in canonical order."""
        out = []
        for g in self.generators:
            kind, i = self._slot[g.name]
            e = m.even[i] if kind == 0 else (m.odd >> i) & 1
            if e:
                out.append((g.name, e))
        return out

    def sort_key(self, m: Monomial):
        exps = [0] * len(self.generators)
        for name, e in self.factors(m):
            exps[self._order[name]] = e
        return (self.degree(m), tuple(-e for e in exps))

    def render_monomial(self, m: Monomial) -> str:
        parts = [n if e == 1 else f"{n}^{e}" for n, e in self.factors(m)]
        return "*".join(parts)

    def _check(self, other: RingElement):
        if other.ring is not self:
            raise IncompatibleRingError(f"elements of {other.ring!r} and {self!r} cannot be combined")


def _exponent_vectors(degrees: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    if not degrees:
        if total == 0:
            yield ()
        return
    first, rest = degrees[0], degrees[1:]
    for e in range(total // first + 1 if first else 1):
        for tail in _exponent_vectors(rest, total - e * first):
            yield (e,) + tail


def make_ring(genus: int, base_generators: Iterable[Generator], truncation: int | None = None,
              pairing_sign: int | None = None) -> Ring:
    if truncation is None:
        truncation = 2 * (2 * genus + 4)
    return Ring(genus, base_generators, truncation, pairing_sign=pairing_sign)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RingElement:
    """Exact rational linear combination of normal-form monomials.

    Supports ``+ - *`` with other elements of the same ring and with
    rational scalars, and ``**`` with non-negative integer exponents.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Fraction] | None = None, *,
                 _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._terms = dict(terms or {})
        else:
            clean = {}
            for m, c in (terms or {}).items():
                c = Fraction(c)
                if c and ring.degree(m) <= ring.truncation:
                    clean[m] = c
            self._terms = clean
        self._hash = None

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> RingElement:
        if isinstance(other, RingElement):
            self.ring._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return RingElement(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q) -> RingElement:
        q = Fraction(q)
        if not q:
            return self.ring.zero()
        return RingElement(self.ring, {m: c * q for m, c in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        ring = self.ring
        ring._check(other)
        D = ring.truncation
        deg = ring.degree
        # bucket by degree so truncated pairs are skipped without touching them
        rhs: dict[int, list] = {}
        for m, c in other._terms.items():
            rhs.setdefault(deg(m), []).append((m, c))
        out: dict[Monomial, Fraction] = {}
        mul = ring.mul_monomials
        for m1, c1 in self._terms.items():
            d1 = deg(m1)
            for d2, bucket in rhs.items():
                if d1 + d2 > D:
                    continue
                for m2, c2 in bucket:
                    r = mul(m1, m2)
                    if r is None:
                        continue
                    sign, m = r
                    v = out.get(m, 0) + (c1 * c2 if sign > 0 else -c1 * c2)
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return RingElement(ring, out, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring is other.ring and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self == self.ring.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- inspection -------------------------------------------------------------

    def coeff(self, m) -> Fraction:
        """Coefficient of a monomial.

        ``m`` may be a :class:`Monomial` key or a one-term element such as
        ``ring.monomial(["s1_1", "s1_2", "eta"])``; a sign carried by the
        element is divided out.
        """
        if isinstance(m, RingElement):
            if len(m) != 1:
                raise ValueError("coefficient lookup needs a single monomial")
            (key, c), = m.items()
            return self._terms.get(key, Fraction(0)) / c
        return self._terms.get(m, Fraction(0))

    def graded_part(self, k: int) -> RingElement:
        deg = self.ring.degree
        return RingElement(self.ring, {m: c for m, c in self._terms.items() if deg(m) == k},
                           _trusted=True)

    def truncated(self, k: int) -> RingElement:
        """Drop every term of degree above ``k``."""
        deg = self.ring.degree
        return RingElement(self.ring, {m: c for m, c in self._terms.items() if deg(m) <= k},
                           _trusted=True)

    def degrees(self) -> set[int]:
        return {self.ring.degree(m) for m in self._terms}

    def is_homogeneous(self, k: int) -> bool:
        return all(self.ring.degree(m) == k for m in self._terms)

    def is_even(self) -> bool:
        return all(self.ring.degree(m) % 2 == 0 for m in self._terms)

    def is_fiber_free(self) -> bool:
        return all(self.ring.is_fiber_free(m) for m in self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda mc: self.ring.sort_key(mc[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = self.ring.render_monomial(m)
            mag = abs(c)
            if not mono:
                body = _frac_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_frac_str(mag)}*{mono}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"RingElement({self})"

    def to_json(self) -> list[dict]:
        return [
            {
                "coeff": _frac_str(c),
                "monomial": [{"gen": n, "exp": e} for n, e in self.ring.factors(m)],
            }
            for m, c in self.sorted_terms()
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def graded_part(z: RingElement, k: int) -> RingElement:
    return z.graded_part(k)


def coeff(z: RingElement, m) -> Fraction:
    return z.coeff(m)


def mul(a: RingElement, b: RingElement) -> RingElement:
    if not (isinstance(a, RingElement) and isinstance(b, RingElement)):
        raise TypeError("mul expects two ring elements")
    if a.ring is not b.ring:
        raise IncompatibleRingError("elements belong to different presentations")
    return a * b


def sum_elements(ring: Ring, items: Iterable[RingElement]) -> RingElement:
    total = ring.zero()
    for x in items:
        total = total + x
    return total
