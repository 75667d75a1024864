"""Self-check suite behind ``bnquot verify``.

Sections 1-9 mirror the acceptance criteria.  Each check returns a
:class:`Check`; nothing raises on a failed identity, so the CLI can print
the whole table before choosing its exit code.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import lab
from .chern import (FormalBundle, chern_from_power_sums, inverse_total_chern, line_bundle,
                    power_sums_from_chern, todd)
from .porteous import FormalSeries, berkowitz_det, delta_pq, laplace_det
from .ring import Generator, Ring, RingElement, make_ring
from .scenarios import (Existence, alpha, class_A, class_B, class_gamma, existence_status,
                        expected_codimension, make_scenario, pushforward, scenario_ring)


@dataclass
class Check:
    section: int
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"[{mark}] {self.section}. {self.name}{tail}"


def random_element(ring: Ring, k: int, rng: random.Random, density: float = 0.6,
                   bound: int = 3) -> RingElement:
    """Random homogeneous element of degree ``k`` in the fiber-free part."""
    terms = {}
    for m in ring.basis(k, base_only=True):
        if rng.random() < density:
            c = rng.randint(-bound, bound)
            if c:
                terms[m] = Fraction(c)
    return RingElement(ring, terms)


def random_bundle(ring: Ring, rank: int, rng: random.Random) -> FormalBundle:
    return FormalBundle(ring, rank, tuple(random_element(ring, 2 * i, rng)
                                          for i in range(1, rank + 1)))


def oracle_ring(truncation: int = 16) -> Ring:
    return make_ring(0, [Generator("x", 2), Generator("y", 4), Generator("e1", 1),
                         Generator("e2", 1)], truncation)


def bernoulli_plus(n: int) -> list[Fraction]:
    """``B_0 .. B_n`` with the ``B_1 = +1/2`` convention."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    if n >= 1:
        B[1] = Fraction(1, 2)
    return B


# -- sections -----------------------------------------------------------------

def check_relations(pairing_sign: int | None = None) -> list[Check]:
    out = []
    for g in (1, 2, 3):
        ring = make_ring(g, scenario_ring(g, 12).base_generators, 12, pairing_sign=pairing_sign)
        a1, a2, eta = alpha(ring, 1), alpha(ring, 2), ring.eta()
        A, gamma, B = class_A(ring), class_gamma(ring), class_B(ring)
        ok = (a1 * a1 == (A * eta).scale(-2) and a2 * a2 == (gamma * eta).scale(-2)
              and a1 * a2 == B * eta and (a1 ** 3).is_zero() and (a2 ** 3).is_zero())
        out.append(Check(1, f"alpha relations g={g}", ok, f"alpha1^2 = {a1 * a1}"))
    return out


def rank_grid():
    for g in range(1, 5):
        for d in range(g, 21):
            for s in range(-4, g + 1):
                if (d - s) % 2 == 0:
                    yield g, d, s


def check_ranks() -> list[Check]:
    bad = []
    n = 0
    for g, d, s in rank_grid():
        sc = make_scenario(g, d, s)
        r = pushforward(sc, N=0).bundle.rank
        n += 1
        if not r == d + 2 * sc.a + 2 * (1 - g) == 2 * d + s + 2 * (1 - g):
            bad.append((g, d, s, r))
    return [Check(2, "pushforward rank = d+2a+2(1-g) = 2d+s+2(1-g)", not bad,
                  f"{n} scenarios" + (f", failures {bad[:5]}" if bad else ""))]


def check_codimension() -> list[Check]:
    bad = []
    for g, d, s in rank_grid():
        sc = make_scenario(g, d, s)
        try:
            c = expected_codimension(sc)
        except AssertionError:
            bad.append((g, d, s))
            continue
        if c != 2 * g - s - 1 or (s == g - 1 and c != g):
            bad.append((g, d, s))
    return [Check(3, "expected codimension 2g-s-1 = determinantal product", not bad,
                  f"failures {bad[:5]}" if bad else "")]


def check_genus1() -> list[Check]:
    bad = []
    for d in range(3, 11):
        if d % 2:
            continue
        sc = make_scenario(1, d, 0)
        ring = scenario_ring(sc.g, sc.truncation)
        minus_c1 = -pushforward(sc).bundle.c(1)
        t1, u1 = ring.gens("t1", "u1")
        if minus_c1.coeff(t1) != -(d + sc.a) or minus_c1.coeff(u1) != 1:
            bad.append(d)
    return [Check(4, "genus 1, s=0: t1 coefficient -(d+a), u1 coefficient +1", not bad,
                  "even d in 3..10 (s=0 forces d even)" + (f"; failures {bad}" if bad else ""))]


def check_oracles(seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    ring = oracle_ring(16)
    N = 8
    bad = 0
    for _ in range(100):
        b = random_bundle(ring, rng.randint(0, 4), rng)
        back = chern_from_power_sums(b.rank, power_sums_from_chern(b, N), N, ring=ring)
        if any(back.c(i) != b.c(i) for i in range(1, N + 1)):
            bad += 1
    out = [Check(5, "Newton round trip c -> p -> c to degree 8", bad == 0, f"100 bundles, {bad} bad")]

    x = ring.gen("x")
    td = todd(line_bundle(x), 6)
    B = bernoulli_plus(6)
    expected = ring.zero()
    for n in range(7):
        expected = expected + (x ** n).scale(B[n] / factorial(n))
    out.append(Check(5, "Todd class of a line bundle vs Bernoulli series to degree 6", td == expected))

    mism = 0
    small = oracle_ring(8)
    for trial in range(50):
        q = 2 + trial % 2
        entries = [[random_element(small, 2 * rng.randint(0, 1), rng, density=0.8)
                    for _ in range(q)] for _ in range(q)]
        if berkowitz_det(entries, small.zero(), small.one()) != laplace_det(entries, small.zero(), small.one()):
            mism += 1
    out.append(Check(5, "Berkowitz determinant vs Laplace expansion", mism == 0,
                     f"50 instances, {mism} mismatches"))
    return out


def check_porteous(seed: int = 1) -> list[Check]:
    rng = random.Random(seed)
    ring = oracle_ring(12)
    bundles = [random_bundle(ring, rng.randint(1, 4), rng) for _ in range(20)]
    for g, d, s in ((1, 4, 0), (1, 5, -1), (2, 7, 1), (2, 6, 0)):
        bundles.append(pushforward(make_scenario(g, d, s)).bundle)
    bad = 0
    for V in bundles:
        P = min(V.ring.truncation // 2, 6)
        inv = inverse_total_chern(V, P)
        series = FormalSeries(V.ring, inv)
        for p in range(1, P + 1):
            if delta_pq(series, p, 1) != inv[p]:
                bad += 1
        if delta_pq(series, 1, 1) != -V.c(1):
            bad += 1
    return [Check(6, "Delta_{p,1}(c_t(-V)) = inverse coefficient; p=1 gives -c_1", bad == 0,
                  f"{len(bundles)} bundles, {bad} failures")]


def check_lab_roundtrips(samples: int = 20) -> list[Check]:
    split_bad, euler_bad, total = [], [], 0
    for d in range(1, 9):
        for a in range(d // 2 + 1):
            for seed in range(samples):
                K = lab.kernel_of_surjection(lab.sample_quotient(d, a, seed), (a, d - a))
                st = lab.splitting_type(K)
                total += 1
                if (st.a, st.b) != (a, d - a):
                    split_bad.append((d, a, seed))
                if not lab.euler_check(K):
                    euler_bad.append((d, a, seed))
    return [
        Check(7, "constructed quotients detected with their splitting", not split_bad,
              f"{total} samples" + (f", failures {split_bad[:5]}" if split_bad else "")),
        Check(7, "h0(E) - h1(E) = d + 2", not euler_bad,
              f"{total} samples" + (f", failures {euler_bad[:5]}" if euler_bad else "")),
    ]


def check_stratum_dimension() -> list[Check]:
    bad, balanced = [], []
    for d in range(1, 11):
        for a in range(d // 2 + 1):
            res = lab.stratum_dimension(d, a)
            if 2 * a < d and not res.agree:
                bad.append((d, a))
            if 2 * a == d:
                again = lab.stratum_dimension(d, a, seed=1)
                balanced.append((res.formula - res.lab, again.formula - again.lab))
    stable = all(x == y == 1 for x, y in balanced)
    return [
        Check(8, "3d+2a+5 = lab count for a < d/2, d <= 10", not bad,
              f"failures {bad}" if bad else ""),
        Check(8, "balanced strata off by one, stable across samples", stable,
              f"{len(balanced)} balanced cells"),
    ]


def expected_existence(g, d, s) -> Existence:
    if s > g:
        return Existence.EMPTY
    if (g == 1 and d >= 3 and s in (0, 1)) or (g >= s >= 0 and d > 2 * (2 * g - 1)):
        return Existence.NONEMPTY
    return Existence.UNKNOWN


def check_existence() -> list[Check]:
    bad = []
    n = 0
    for g in range(1, 6):
        for d in range(0, 25):
            for s in range(-4, g + 3):
                if (d - s) % 2:
                    continue
                n += 1
                got = existence_status(make_scenario(g, d, s)).status
                if got != expected_existence(g, d, s):
                    bad.append((g, d, s, got.value))
    return [Check(9, "existence table", not bad, f"{n} cells" + (f", failures {bad[:5]}" if bad else ""))]


SECTIONS = {
    1: check_relations,
    2: check_ranks,
    3: check_codimension,
    4: check_genus1,
    5: check_oracles,
    6: check_porteous,
    7: check_lab_roundtrips,
    8: check_stratum_dimension,
    9: check_existence,
}


def run_all(sections: set[int] | None = None) -> list[Check]:
    checks = []
    for k, fn in SECTIONS.items():
        if sections is None or k in sections:
            checks += fn()
    return checks
