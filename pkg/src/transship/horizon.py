"""Deadline-side evaluation of flow profiles.

A profile fixes a piecewise-linear convex function of the deadline: the
maximum amount a terminal subset can push out by that deadline.  This module
evaluates the function, its one-sided slopes, and the earliest deadline at
which the subset's net supply is covered.  Slopes change exactly at the
segment lengths, so the left and right variants differ only there; both are
needed because the solver probes deadlines that land on breakpoints.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Rat
from .errors import InfeasibleForever, ProfileTruncated
from .ssp import FlowProfile

__all__ = [
    "value_at",
    "slack_at",
    "slope_left",
    "slope_right",
    "crossing_time",
    "breakpoints",
]


def _require_certified(profile: FlowProfile, theta: Rat):
    if not profile.certifies(theta):
        raise ProfileTruncated("profile cannot certify values at deadline %s" % theta)


def value_at(profile: FlowProfile, theta: Rat) -> Rat:
    """Maximum amount deliverable by ``theta``: sum of amount * (theta - length)."""
    if theta < 0:
        raise ValueError("deadline must be nonnegative, got %s" % theta)
    _require_certified(profile, theta)
    total = Fraction(0)
    for seg in profile.segments:
        if seg.length > theta:
            break
        total += seg.amount * (theta - seg.length)
    return total


def slack_at(profile: FlowProfile, need: Rat, theta: Rat) -> Rat:
    """Deliverable amount minus required amount; nonnegative means satisfied."""
    return value_at(profile, theta) - need


def slope_left(profile: FlowProfile, theta: Rat) -> Rat:
    """Left-hand derivative of the value function at ``theta`` (> 0 only)."""
    if theta <= 0:
        raise ValueError("left slope needs a positive deadline, got %s" % theta)
    _require_certified(profile, theta)
    total = Fraction(0)
    for seg in profile.segments:
        if seg.length >= theta:
            break
        total += seg.amount
    return total


def slope_right(profile: FlowProfile, theta: Rat) -> Rat:
    """Right-hand derivative of the value function at ``theta``."""
    if theta < 0:
        raise ValueError("deadline must be nonnegative, got %s" % theta)
    _require_certified(profile, theta)
    total = Fraction(0)
    for seg in profile.segments:
        if seg.length > theta:
            break
        total += seg.amount
    return total


def crossing_time(profile: FlowProfile, need: Rat, nodes=()) -> Rat:
    """Earliest deadline at which the profile delivers at least ``need``.

    Zero when nothing is required.  When the profile is empty but something
    is required, no deadline ever works and InfeasibleForever is raised;
    ``nodes`` only decorates that error message.
    """
    if need <= 0:
        return Fraction(0)
    if not profile.exhausted:
        raise ProfileTruncated("profile truncated; crossing time may lie beyond it")
    value = Fraction(0)
    slope = Fraction(0)
    position = None
    for seg in profile.segments:
        if position is not None and seg.length > position:
            ahead = value + slope * (seg.length - position)
            if ahead >= need:
                return position + (need - value) / slope
            value = ahead
        slope += seg.amount
        position = seg.length
    if slope == 0:
        raise InfeasibleForever(nodes, need)
    return position + (need - value) / slope


def breakpoints(profile: FlowProfile) -> tuple[Rat, ...]:
    """Distinct segment lengths, ascending: where the value function bends."""
    out = []
    for seg in profile.segments:
        if not out or seg.length != out[-1]:
            out.append(seg.length)
    return tuple(out)
