"""Tight-component detection and the analytic bounds on their count.

A connected component T is tight when T \\ {v} has a perfect matching for
every v, and no perfect matching of T \\ {v} contains an edge with exactly
one endpoint adjacent to v.  tau denotes the number of tight components.

Two independent detectors live here: the definitional one (polynomial, via
a matching-existence reformulation of the every-perfect-matching condition)
and the matching correspondence (non-free uncovered vertices of a
free-maximized maximum matching).  count_tight_components runs both and
refuses to silently resolve a disagreement.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Graph
from .matching import (
    compute_free_info,
    count_nonfree,
    has_perfect_matching,
    maximize_free_vertices,
    maximum_matching,
)


class TightDisagreementError(RuntimeError):
    """Definitional tau and matching-correspondence tau disagree: a defect."""


@dataclass(frozen=True)
class TightReport:
    per_component: tuple[tuple[tuple[int, ...], bool], ...]
    tau: int

    def to_json(self) -> dict:
        return {
            "tau": self.tau,
            "components": [
                {"vertices": list(vs), "tight": flag}
                for vs, flag in self.per_component
            ],
        }


@dataclass(frozen=True)
class DegreeSequence:
    """Vertex counts per degree: d[i] = number of vertices of degree i."""

    d: dict[int, int]

    @staticmethod
    def of(g: Graph) -> DegreeSequence:
        counts: dict[int, int] = {}
        for deg in g.degrees():
            counts[deg] = counts.get(deg, 0) + 1
        return DegreeSequence(d=counts)

    def total(self) -> int:
        return sum(self.d.values())


def is_tight_component(g: Graph, component) -> bool:
    """Definitional tight test on a connected component, in polynomial time.

    Condition (ii) ("no perfect matching of T-v has an edge with exactly one
    endpoint adjacent to v") is decided by its matching-closure equivalent:
    such a matching exists iff some edge {a, b} with exactly one endpoint
    adjacent to v leaves a perfectly matchable T - {v, a, b}.
    """
    comp = sorted(set(component))
    comp_set = set(comp)
    for v in comp:
        for u in g.adjacency[v]:
            if u not in comp_set:
                raise ValueError(
                    f"vertex set is not a full connected component (edge {v}-{u} leaves it)"
                )
    sub, mapping = g.induced(comp)
    if len(sub.components()) != 1:
        raise ValueError("vertex set is not connected")
    if sub.n % 2 == 0:
        return False  # T - v has odd order, no perfect matching
    # tight components contain only even internal degrees
    if any(d % 2 for d in sub.degrees()):
        return False
    all_vertices = set(range(sub.n))
    for v in range(sub.n):
        rest = all_vertices - {v}
        if not has_perfect_matching(sub, rest):
            return False
        vn = sub.neighbor_set(v)
        for a, b in sub.edges:
            if v in (a, b):
                continue
            if ((a in vn) + (b in vn)) != 1:
                continue
            if has_perfect_matching(sub, rest - {a, b}):
                return False
    return True


def count_tight_components(g: Graph) -> TightReport:
    """Definitional per-component flags, cross-checked against the
    matching-correspondence count; a mismatch raises TightDisagreementError."""
    per: list[tuple[tuple[int, ...], bool]] = []
    tau_def = 0
    for comp in g.components():
        flag = is_tight_component(g, comp)
        per.append((comp, flag))
        tau_def += flag
    mm = maximize_free_vertices(g, maximum_matching(g))
    tau_match = count_nonfree(g, mm, compute_free_info(g, mm))
    if tau_def != tau_match:
        raise TightDisagreementError(
            f"definitional tau={tau_def} but matching correspondence gives {tau_match}"
        )
    return TightReport(per_component=tuple(per), tau=tau_def)


def tau_from_matching(g: Graph) -> int:
    """Fast tau via the matching correspondence alone (no definitional pass).

    Equals the true tau whenever the free-vertex local search reaches the
    optimum; it is never smaller, so bounds stated with max{tau, ...} stay
    valid.  Large pipelines use this; the verifying report uses both routes.
    """
    mm = maximize_free_vertices(g, maximum_matching(g))
    return count_nonfree(g, mm, compute_free_info(g, mm))


def tau_upper_by_degrees(seq: DegreeSequence) -> Fraction:
    """Exact rational bound tau <= d_0/1 + d_2/3 + d_4/5 + ...

    Odd-degree vertices cannot lie in a tight component, so odd d_i are
    excluded from the sum.
    """
    total = Fraction(0)
    for deg, count in seq.d.items():
        if deg % 2 == 0:
            total += Fraction(count, deg + 1)
    return total


def tau_upper_by_rho(nprime: int, rho: int, delta: int, alpha: int) -> Fraction:
    """Exact rational bound (n' + rho) / (delta - alpha + 1).

    Requires alpha < delta + 1; outside that range the bound is undefined.
    """
    if alpha >= delta + 1:
        raise ValueError(f"alpha={alpha} must be below delta+1={delta + 1}")
    if nprime < 0 or rho < 0:
        raise ValueError("nprime and rho must be nonnegative")
    return Fraction(nprime + rho, delta - alpha + 1)
