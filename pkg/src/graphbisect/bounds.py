"""Analytic bound calculators and the report type shared by all solvers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Graph


def _num(x):
    """JSON-friendly number: int when integral, float otherwise."""
    if isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return x


@dataclass
class BoundReport:
    """Predicted bound for a named guarantee next to the achieved value."""

    theorem: str
    params: dict
    bound: object  # Fraction | int | float
    achieved: object
    satisfied: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "params": {k: _num(v) for k, v in sorted(self.params.items())},
            "bound": _num(self.bound),
            "achieved": _num(self.achieved),
            "satisfied": self.satisfied,
        }
        for k, v in sorted(self.extra.items()):
            out[k] = _num(v) if not isinstance(v, (dict, list, str)) else v
        return out


def edwards_bound(m: int) -> int:
    """ceil(m/2 + sqrt(m/8 + 1/64) - 1/8), the classical max-cut lower bound.

    The ceiling is certified with exact integer arithmetic around the float
    estimate: k >= m/2 + sqrt(m/8 + 1/64) - 1/8 iff (8k - 4m + 1)^2 >= 8m + 1
    (for 8k - 4m + 1 >= 0), avoiding any floating-point boundary error.
    """
    if m < 0:
        raise ValueError("edge count must be nonnegative")
    if m == 0:
        return 0
    est = m / 2 + (m / 8 + 1 / 64) ** 0.5 - 1 / 8
    k = int(est) - 2

    def at_least(k: int) -> bool:
        t = 8 * k - 4 * m + 1
        return t >= 0 and t * t >= 8 * m + 1

    while not at_least(k):
        k += 1
    return k


def cut_connected_bound(n: int, m: int) -> Fraction:
    """m/2 + (n-1)/4, valid for connected graphs."""
    return Fraction(m, 2) + Fraction(n - 1, 4)


def cut_no_isolated_bound(n: int, m: int) -> Fraction:
    """m/2 + n/6, valid without isolated vertices (max degree caveats apply
    to the bisection analogue, not to this cut form)."""
    return Fraction(m, 2) + Fraction(n, 6)


def tight_bisection_bound(n: int, m: int, tau: int, max_degree: int) -> Fraction:
    """m/2 + (n - max(tau, max_degree - 1)) / 4."""
    return Fraction(m, 2) + Fraction(n - max(tau, max_degree - 1), 4)


def judicious_min_degree_fraction(delta: int) -> Fraction:
    """(delta + 2) / (4 (delta + 1)), the judicious target for even delta."""
    if delta < 1:
        raise ValueError("delta must be positive")
    return Fraction(delta + 2, 4 * (delta + 1))


def extremal_judicious_floor(delta: int, m: int) -> Fraction:
    """(delta+2)/(4(delta+1)) * m - (delta+2)/4, the extremal-family floor."""
    return judicious_min_degree_fraction(delta) * m - Fraction(delta + 2, 4)


def bounded_degree_cut_fraction(r: int) -> Fraction:
    """(r+1)/(2r) for odd r, (r+2)/(2(r+1)) for even r."""
    if r < 1:
        raise ValueError("degree bound must be positive")
    if r % 2 == 1:
        return Fraction(r + 1, 2 * r)
    return Fraction(r + 2, 2 * (r + 1))


def bounded_degree_bisection_floor(r: int, m: int) -> Fraction:
    """Cut fraction bound minus the balancing cost r(r+1)/4 or r(r+2)/4."""
    if r % 2 == 1:
        return bounded_degree_cut_fraction(r) * m - Fraction(r * (r + 1), 4)
    return bounded_degree_cut_fraction(r) * m - Fraction(r * (r + 2), 4)


def analytic_bounds(g: Graph, tau: int) -> dict:
    """All closed-form bounds for a graph at a given tight-component count."""
    n, m = g.n, g.m
    delta_min = g.min_degree()
    out = {
        "edwards": edwards_bound(m),
        "cut_connected": cut_connected_bound(n, m),
        "cut_no_isolated": cut_no_isolated_bound(n, m),
        "bisection_tight": tight_bisection_bound(n, m, tau, g.max_degree()),
    }
    delta_even = delta_min if delta_min % 2 == 0 else delta_min - 1
    if delta_even >= 2:
        out["judicious_floor"] = extremal_judicious_floor(delta_even, m)
    else:
        out["judicious_floor"] = None
    return out
