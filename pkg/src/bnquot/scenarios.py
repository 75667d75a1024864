"""Brill-Noether strata of maps from a curve of genus g >= 1 to G(2,4).

Closed-form arithmetic for a stratum (codimension, ranks, existence) plus
the end-to-end class pipeline:

    c(K^dual) on R x C  ->  twist by L  ->  GRR pushforward  ->  Porteous.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .chern import FormalBundle, tensor_line
from .kunneth import PushforwardResult, grr_pushforward
from .porteous import CodimensionError, FundamentalClass, fundamental_class
from .ring import Generator, Ring, RingElement, make_ring

M_RANK = 2
N_AMBIENT = 4


class ScenarioError(ValueError):
    """Parameters violate a rule; the message names the rule."""


@dataclass(frozen=True)
class Scenario:
    g: int
    d: int
    s: int
    a: int
    truncation: int
    m: int = M_RANK
    n: int = N_AMBIENT

    @property
    def codim(self) -> int:
        return 2 * self.g - self.s - 1

    def params(self) -> dict:
        return {"g": self.g, "d": self.d, "s": self.s, "a": self.a,
                "m": self.m, "n": self.n, "truncation": self.truncation}


def default_truncation(g: int, s: int) -> int:
    # the pipeline reads ch_{codim+1} of the twisted kernel bundle
    return max(2 * (2 * g + 4), 2 * (2 * g - s))


def make_scenario(g: int, d: int, s: int, N: int | None = None) -> Scenario:
    if g == 0:
        raise ScenarioError("genus 0 has no Segre strata here; use the genus-0 lab (bnquot.lab)")
    if g < 1:
        raise ScenarioError(f"genus must be >= 1, got {g}")
    if (d - s) % 2:
        raise ScenarioError(f"s(E) = deg(E) mod 2 violated: d={d}, s={s}")
    needed = 2 * (2 * g - s)
    if N is None:
        N = default_truncation(g, s)
    elif 2 * g - s - 1 >= 1 and N < needed:
        raise ScenarioError(
            f"truncation {N} too small: the codimension {2 * g - s - 1} class needs degree {needed}"
        )
    return Scenario(g, d, s, (d + s) // 2, N)


# -- closed forms ---------------------------------------------------------------

def expected_codimension(sc: Scenario) -> int:
    g, d, s = sc.g, sc.d, sc.s
    source = 2 * d - 2 * g + s + 2
    target = 2 * d + 2 * s - 4 * g + 4
    corank = 2 * d + 2 * s - 4 * g + 3
    product = (source - corank) * (target - corank)
    codim = 2 * g - s - 1
    if product != codim:
        raise AssertionError(f"determinantal product {product} != 2g-s-1 = {codim}")
    return codim


@dataclass(frozen=True)
class DeterminantalDims:
    fiber_h0_dim: int
    source_rank: int
    target_rank: int
    codim: int
    large_d_ok: bool

    def to_json(self) -> dict:
        return {"fiber_h0_dim": self.fiber_h0_dim, "source_rank": self.source_rank,
                "target_rank": self.target_rank, "codim": self.codim,
                "large_d_ok": self.large_d_ok}


def determinantal_dims(sc: Scenario) -> DeterminantalDims:
    g, d, s, m = sc.g, sc.d, sc.s, sc.m
    return DeterminantalDims(
        fiber_h0_dim=2 * d + s + m * (1 - g),
        source_rank=2 * d + s + 2 * (1 - g),
        target_rank=2 * d + 2 * s - 4 * g + 4,
        codim=expected_codimension(sc),
        large_d_ok=d + s > 2 * m * (g - 1),
    )


def euler_characteristic(g: int, d: int) -> int:
    """``h^0(E) - h^1(E)`` for a rank 2, degree d quotient on a genus g curve."""
    return d + 2 * (1 - g)


def h0_threshold(sc: Scenario) -> int:
    return sc.d + 3 - 2 * sc.g


class Existence(str, Enum):
    EMPTY = "Empty"
    NONEMPTY = "NonEmpty"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ExistenceStatus:
    status: Existence
    rule: str | None

    def to_json(self) -> dict:
        return {"status": self.status.value, "rule": self.rule}


def existence_status(sc: Scenario) -> ExistenceStatus:
    g, d, s = sc.g, sc.d, sc.s
    if s > g:
        return ExistenceStatus(Existence.EMPTY, "existence-1: s > g")
    if g == 1 and d >= 3 and s in (0, 1):
        return ExistenceStatus(Existence.NONEMPTY, "existence-2: elliptic, d >= 3, s in {0,1}")
    if g >= s >= 0 and d > 2 * (2 * g - 1):
        return ExistenceStatus(Existence.NONEMPTY, "existence-3: g >= s >= 0, d > 2(2g-1)")
    return ExistenceStatus(Existence.UNKNOWN, None)


# -- the class pipeline ---------------------------------------------------------

def base_generators(g: int) -> list[Generator]:
    gens = [Generator("t1", 2), Generator("t2", 4), Generator("u1", 2)]
    gens += [Generator(f"s1_{j}", 1) for j in range(1, 2 * g + 1)]
    gens += [Generator(f"s2_{j}", 3) for j in range(1, 2 * g + 1)]
    return gens


@lru_cache(maxsize=None)
def scenario_ring(g: int, truncation: int) -> Ring:
    return make_ring(g, base_generators(g), truncation)


def alpha(ring: Ring, i: int) -> RingElement:
    """``alpha_i = sum_j s_i^j delta_j``."""
    z = ring.zero()
    for j in range(1, 2 * ring.genus + 1):
        z = z + ring.gen(f"s{i}_{j}") * ring.delta(j)
    return z


def pairing_sum(ring: Ring, x: str, y: str) -> RingElement:
    """``sum_{j<=g} x^j y^{j+g}`` for generator families ``x``, ``y``."""
    g = ring.genus
    z = ring.zero()
    for j in range(1, g + 1):
        z = z + ring.gen(f"{x}_{j}") * ring.gen(f"{y}_{j + g}")
    return z


def class_A(ring: Ring) -> RingElement:
    return pairing_sum(ring, "s1", "s1")


def class_gamma(ring: Ring) -> RingElement:
    return pairing_sum(ring, "s2", "s2")


def class_B(ring: Ring) -> RingElement:
    return pairing_sum(ring, "s1", "s2").scale(-1) + pairing_sum_rev(ring, "s1", "s2")


def pairing_sum_rev(ring: Ring, x: str, y: str) -> RingElement:
    """``sum_{j<=g} x^{j+g} y^j``."""
    g = ring.genus
    z = ring.zero()
    for j in range(1, g + 1):
        z = z + ring.gen(f"{x}_{j + g}") * ring.gen(f"{y}_{j}")
    return z


def build_kernel_bundle(sc: Scenario, ring: Ring | None = None) -> FormalBundle:
    """``c_1 = t1 + alpha_1 + d*eta``, ``c_2 = t2 + alpha_2 + u1*eta``."""
    if ring is None:
        ring = scenario_ring(sc.g, sc.truncation)
    t1, t2, u1 = ring.gens("t1", "t2", "u1")
    eta = ring.eta()
    c1 = t1 + alpha(ring, 1) + eta.scale(sc.d)
    c2 = t2 + alpha(ring, 2) + u1 * eta
    return FormalBundle(ring, 2, (c1, c2))


def twisted_kernel_bundle(sc: Scenario, ring: Ring | None = None) -> FormalBundle:
    k = build_kernel_bundle(sc, ring)
    return tensor_line(k, k.ring.eta().scale(sc.a))


@dataclass(frozen=True)
class StratumReport:
    scenario: Scenario
    dims: DeterminantalDims
    pushforward_rank: int
    existence: ExistenceStatus
    fundamental: FundamentalClass | None
    discrepancies: list[dict] = field(default_factory=list)

    @property
    def codim_expected(self) -> int:
        return self.dims.codim

    @property
    def target_rank(self) -> int:
        return self.dims.target_rank

    @property
    def fiber_h0_dim(self) -> int:
        return self.dims.fiber_h0_dim

    @property
    def large_d_ok(self) -> bool:
        return self.dims.large_d_ok

    def to_json(self) -> dict:
        cls = None
        if self.fundamental is not None:
            cls = self.fundamental.to_json()
            cls["discrepancies"] = self.discrepancies
        return {
            "params": self.scenario.params(),
            "codim": self.dims.codim,
            "ranks": {
                "pushforward": self.pushforward_rank,
                "source": self.dims.source_rank,
                "target": self.dims.target_rank,
                "fiber_h0": self.dims.fiber_h0_dim,
                "large_d_ok": self.dims.large_d_ok,
            },
            "existence": self.existence.to_json(),
            "class": cls,
        }


def pushforward(sc: Scenario, N: int | None = None) -> PushforwardResult:
    """GRR pushforward of ``K^dual (x) L`` through ``c_N`` (default: codimension)."""
    if N is None:
        N = max(sc.codim, 0)
    return grr_pushforward(twisted_kernel_bundle(sc), sc.g, N)


def brill_noether_class(sc: Scenario) -> StratumReport:
    from .discrepancies import class_discrepancies

    dims = determinantal_dims(sc)
    if sc.codim < 1:
        raise CodimensionError(f"codimension 2g-s-1 = {sc.codim} is not positive; no class to compute")
    pf = pushforward(sc)
    expected_rank = sc.d + 2 * sc.a + 2 * (1 - sc.g)
    if pf.bundle.rank != expected_rank or expected_rank != dims.source_rank:
        raise AssertionError(f"pushforward rank {pf.bundle.rank} != d+2a+2(1-g) = {expected_rank}")
    fc = fundamental_class(pf, sc.g, sc.s)
    return StratumReport(sc, dims, pf.bundle.rank, existence_status(sc), fc,
                         class_discrepancies(sc, pf, fc))


def stratum_report(sc: Scenario) -> StratumReport:
    """Like :func:`brill_noether_class`, but a non-positive codimension yields a
    report without a class instead of an error."""
    if sc.codim < 1:
        sc_dims = determinantal_dims(sc)
        return StratumReport(sc, sc_dims, sc_dims.source_rank, existence_status(sc), None)
    return brill_noether_class(sc)
