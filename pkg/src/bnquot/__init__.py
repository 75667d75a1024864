"""Exact intersection-theory engine for Brill-Noether strata of maps from
curves to G(2,4), plus a genus-0 linear-algebra lab."""

from .ring import Generator, Ring, RingElement, make_ring
from .chern import FormalBundle, chern_character, todd
from .kunneth import grr_pushforward
from .porteous import delta_pq, fundamental_class
from .scenarios import Scenario, brill_noether_class, make_scenario, stratum_report

__all__ = [
    "Generator", "Ring", "RingElement", "make_ring",
    "FormalBundle", "chern_character", "todd",
    "grr_pushforward", "delta_pq", "fundamental_class",
    "Scenario", "brill_noether_class", "make_scenario", "stratum_report",
]
