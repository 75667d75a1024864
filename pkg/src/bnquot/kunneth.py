"""Künneth decomposition on ``R x C`` and pushforward along the curve."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .chern import FormalBundle, PowerSums, ch_parts, chern_from_power_sums
from .ring import Ring, RingElement


class TruncationError(ValueError):
    """The ring cannot hold the degree an operation needs."""


@dataclass(frozen=True)
class KunnethClass:
    """``z = base + sum_j deltas[j]*delta_j + eta_part*eta`` with base-only components."""

    base: RingElement
    deltas: dict[int, RingElement]
    eta_part: RingElement

    def recompose(self) -> RingElement:
        ring = self.base.ring
        z = self.base + self.eta_part * ring.eta()
        for j, b in self.deltas.items():
            z = z + b * ring.delta(j)
        return z


def decompose(z: RingElement) -> KunnethClass:
    ring = z.ring
    eta_idx = ring._eta
    base: dict = {}
    eta: dict = {}
    deltas: dict[int, dict] = {}
    for m, c in z.items():
        dj = ring.delta_indices(m)
        e = ring.eta_exponent(m)
        if e and dj or len(dj) > 1 or e > 1:
            raise AssertionError(f"unreduced fiber monomial {ring.render_monomial(m)}")
        if e:
            even = list(m.even)
            even[eta_idx] = 0
            eta[type(m)(tuple(even), m.odd)] = c
        elif dj:
            j = dj[0]
            # m = (base odd part) * delta_j in canonical order, so the split is sign-free
            bit = 1 << (ring._n_base_odd + j - 1)
            deltas.setdefault(j, {})[type(m)(m.even, m.odd & ~bit)] = c
        else:
            base[m] = c
    return KunnethClass(
        RingElement(ring, base, _trusted=True),
        {j: RingElement(ring, d, _trusted=True) for j, d in sorted(deltas.items())},
        RingElement(ring, eta, _trusted=True),
    )


def fiber_integrate(z: RingElement) -> RingElement:
    """Integration over the curve: the coefficient of ``eta``."""
    return decompose(z).eta_part


def base_part(z: RingElement) -> RingElement:
    """Restriction to a fiber ``R x {q}``, i.e. ``pi_*(eta * z)``."""
    return decompose(z).base


def relative_todd(ring: Ring) -> RingElement:
    """Todd class of the relative tangent bundle of ``R x C -> R``."""
    return ring.one() + ring.eta().scale(1 - ring.genus)


@dataclass(frozen=True)
class PushforwardResult:
    bundle: FormalBundle
    rank_formula_check: int
    ch: tuple[RingElement, ...] = ()
    discrepancy_notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "bundle": self.bundle.to_json(),
            "rank_formula_check": self.rank_formula_check,
            "ch": [str(x) for x in self.ch],
            "discrepancy_notes": list(self.discrepancy_notes),
        }


def grr_pushforward(b: FormalBundle, g: int, N: int) -> PushforwardResult:
    """``ch(pi_! F) = pi_*(td_rel * ch(F))`` then Chern classes through ``c_N``.

    ``ch_i`` of the pushforward reads off the ``eta`` coefficient of the
    degree ``2i+2`` part of ``td_rel * ch(F)``, so ``ch(F)`` is needed
    through ``ch_{N+1}``.
    """
    ring = b.ring
    if ring.genus != g:
        raise ValueError(f"bundle lives on a genus {ring.genus} product, not genus {g}")
    if 2 * (N + 1) > ring.truncation:
        raise TruncationError(
            f"pushforward to c_{N} needs degree {2 * (N + 1)}; ring truncates at {ring.truncation}"
        )
    parts = ch_parts(b, N + 1)
    ch_total = ring.zero()
    for x in parts:
        ch_total = ch_total + x
    integrand = relative_todd(ring) * ch_total
    pushed = [fiber_integrate(integrand.graded_part(2 * i + 2)) for i in range(N + 1)]
    rank_elt = pushed[0]
    if rank_elt.degrees() - {0}:
        raise AssertionError("rank part of the pushforward is not a scalar")
    rank_q = rank_elt.coeff(ring.one_monomial)
    if rank_q.denominator != 1:
        raise ValueError(f"pushforward rank {rank_q} is not an integer")
    rank = int(rank_q)
    notes = []
    for i, x in enumerate(pushed):
        if not x.is_fiber_free():
            raise AssertionError(f"ch_{i} of a pushforward carries fiber classes")
    closed_form = (1 - g) * b.rank + fiber_integrate(parts[1]).coeff(ring.one_monomial)
    if closed_form != rank:
        raise AssertionError(f"pushforward rank {rank} != closed form {closed_form}")
    p = PowerSums(tuple(x.scale(factorial(k)) for k, x in enumerate(pushed) if k))
    bundle = chern_from_power_sums(rank, p, N, ring=ring, virtual=True)
    if rank < 0:
        notes.append(f"virtual pushforward of negative rank {rank}")
    return PushforwardResult(bundle, int(closed_form), tuple(pushed), notes)


def extraction_rule(parts: list[RingElement], g: int, i: int) -> RingElement:
    """Closed form ``(1-g)*base(ch_i F) + eta-coefficient(ch_{i+1} F)``."""
    return base_part(parts[i]).scale(1 - g) + fiber_integrate(parts[i + 1])


__all__ = [
    "KunnethClass", "PushforwardResult", "TruncationError", "base_part", "decompose",
    "extraction_rule", "fiber_integrate", "grr_pushforward", "relative_todd",
]
