"""Minimizing slack over all terminal subsets.

Feasibility of a deadline comes down to: every terminal subset must be able
to push its net supply out before time runs out.  The slack of a subset is
deliverable-amount minus net supply, and the deadline is feasible exactly
when the minimum slack over all subsets is nonnegative.  The slack is a
submodular function of the subset, so its minimizers are closed under union
and intersection; we always report the unique minimal minimizer (the
intersection of all of them) to keep results canonical.

The default minimizer enumerates all subsets, which is exact and fine for
the terminal counts this package targets; a cap guards against accidental
blowups.  Callers can plug in a polynomial-time submodular minimizer via the
``strategy`` argument without touching the rest of the solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import FlowNetwork, Rat, SupplyVector, TerminalSet
from .errors import SubsetCapExceeded
from .horizon import value_at
from .ssp import ProfileCache

__all__ = [
    "DEFAULT_SUBSET_CAP",
    "SlackMinimum",
    "minimize_slack",
    "min_slack",
    "is_feasible",
]

DEFAULT_SUBSET_CAP = 20


@dataclass(frozen=True)
class SlackMinimum:
    """Minimal minimizer of the subset slack at one deadline."""

    subset: TerminalSet
    value: Rat
    strategy: str


def _net_supply_table(b: SupplyVector, k: int) -> list[Fraction]:
    """Net supply for every bit set, built incrementally."""
    table = [Fraction(0)] * (1 << k)
    for bits in range(1, 1 << k):
        low = bits & -bits
        table[bits] = table[bits ^ low] + b.values[low.bit_length() - 1]
    return table


def minimize_slack(network: FlowNetwork, b: SupplyVector, theta: Rat, *,
                   cache: ProfileCache | None = None,
                   subset_cap: int = DEFAULT_SUBSET_CAP,
                   strategy=None) -> SlackMinimum:
    """Find the minimal subset attaining the minimum slack at ``theta``.

    ``strategy``, when given, replaces the brute-force enumeration entirely;
    it is called as ``strategy(network, b, theta, cache)`` and must return a
    SlackMinimum with the same minimal-minimizer convention.
    """
    k = network.k
    if strategy is not None:
        return strategy(network, b, theta, cache)
    if k > subset_cap:
        raise SubsetCapExceeded(k, subset_cap)
    if cache is None:
        cache = ProfileCache(network)
    need = _net_supply_table(b, k)
    best = None
    best_and = 0
    for bits in range(1 << k):
        slack = value_at(cache.profile(bits), theta) - need[bits]
        if best is None or slack < best:
            best = slack
            best_and = bits
        elif slack == best:
            best_and &= bits
    # Minimizers of a submodular function form a lattice, so the
    # intersection of all of them is itself a minimizer.
    assert value_at(cache.profile(best_and), theta) - need[best_and] == best
    return SlackMinimum(TerminalSet(best_and, k), best, "brute-force")


def min_slack(network: FlowNetwork, b: SupplyVector, theta: Rat, **kwargs) -> Rat:
    """Minimum slack over all terminal subsets (the feasibility margin)."""
    return minimize_slack(network, b, theta, **kwargs).value


def is_feasible(network: FlowNetwork, b: SupplyVector, theta: Rat, **kwargs) -> bool:
    """True when every subset can clear its net supply by ``theta``."""
    return min_slack(network, b, theta, **kwargs) >= 0
