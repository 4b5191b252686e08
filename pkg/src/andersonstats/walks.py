"""Enumeration of lattice walk strings and exact path-count tables.

A step string is a word over the alphabet {potential, up(v), down(v)} with
axes v = 1..d. Its walk starts at the origin; up/down steps move one unit
along an axis and potential steps stay put. A string is balanced when the
walk returns to the origin. The potential profile of a string is the
multi-index counting, per site, how many potential steps rest there.

``path_counts`` tallies balanced strings by the translation class of their
potential profile; these integers are the bulk coefficients of the site
monomials in the trace of the k-th power of a finite-volume operator, and
``truncated_coefficient`` gives the boundary-corrected coefficient for a
concrete box.

Enumeration is depth-first with pruning: a prefix is abandoned as soon as
the L1 distance back to the origin exceeds the remaining steps. The node
budget (see :mod:`andersonstats.budget`) rejects requests whose full string
count is out of reach before any work starts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

from .budget import check_budget
from .lattice import MultiIndex, Point, canonicalize

_POT = "pot"
_UP = "up"
_DOWN = "down"


@dataclass(frozen=True, slots=True)
class Step:
    """One symbol: a potential rest, or a unit hop along an axis.

    ``axis`` is 1-based and only meaningful for hops.
    """

    kind: str
    axis: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (_POT, _UP, _DOWN):
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.kind == _POT and self.axis != 0:
            raise ValueError("potential steps carry no axis")
        if self.kind != _POT and self.axis < 1:
            raise ValueError("hop steps need a 1-based axis")


def pot() -> Step:
    return Step(_POT)


def up(axis: int) -> Step:
    return Step(_UP, axis)


def down(axis: int) -> Step:
    return Step(_DOWN, axis)


@dataclass(frozen=True, slots=True)
class StepString:
    """A word of steps together with its ambient dimension."""

    d: int
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if len(self.steps) < 1:
            raise ValueError("a step string has length >= 1")
        for step in self.steps:
            if step.axis > self.d:
                raise ValueError(f"axis {step.axis} exceeds dimension {self.d}")

    def __len__(self) -> int:
        return len(self.steps)


def trajectory(s: StepString) -> tuple[Point, ...]:
    """Walk positions y_0..y_k, starting at the origin."""
    position = [0] * s.d
    points = [tuple(position)]
    for step in s.steps:
        if step.kind == _UP:
            position[step.axis - 1] += 1
        elif step.kind == _DOWN:
            position[step.axis - 1] -= 1
        points.append(tuple(position))
    return tuple(points)


def is_balanced(s: StepString) -> bool:
    """True iff the walk ends where it started (hops cancel per axis)."""
    return trajectory(s)[-1] == tuple([0] * s.d)


def potential_profile(s: StepString) -> MultiIndex:
    """Multi-index counting potential steps per site; may be zero."""
    counts: dict[Point, int] = {}
    position = [0] * s.d
    for step in s.steps:
        if step.kind == _POT:
            site = tuple(position)
            counts[site] = counts.get(site, 0) + 1
        elif step.kind == _UP:
            position[step.axis - 1] += 1
        else:
            position[step.axis - 1] -= 1
    return MultiIndex.from_map(s.d, counts)


# Raw profiles inside the scanner are plain dicts keyed by coordinate tuples;
# MultiIndex objects are only built at the public boundary.
_Consumer = Callable[[dict[Point, int], Point, Point], None]


def _scan_balanced(k: int, d: int, consume: _Consumer, budget: int | None) -> None:
    """Depth-first scan of all balanced strings of length k in dimension d.

    Calls ``consume(profile, mins, maxs)`` once per balanced string, where
    ``profile`` maps sites to potential-step counts (empty for none) and
    ``mins``/``maxs`` are the per-axis extremes of the walk. ``profile`` is
    reused between calls and must not be retained.
    """
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    check_budget((2 * d + 1) ** k, budget, f"enumerating ({2 * d + 1})^{k} strings")

    position = [0] * d
    mins = [0] * d
    maxs = [0] * d
    profile: dict[Point, int] = {}
    axes = range(d)

    def recurse(remaining: int, distance: int) -> None:
        if remaining == 0:
            # pruning guarantees distance == 0 here
            consume(profile, tuple(mins), tuple(maxs))
            return
        left = remaining - 1
        if distance <= left:
            site = tuple(position)
            profile[site] = profile.get(site, 0) + 1
            recurse(left, distance)
            if profile[site] == 1:
                del profile[site]
            else:
                profile[site] -= 1
        for axis in axes:
            old = position[axis]
            for move in (1, -1):
                new = old + move
                new_distance = distance - abs(old) + abs(new)
                if new_distance > left:
                    continue
                position[axis] = new
                old_min, old_max = mins[axis], maxs[axis]
                if new < old_min:
                    mins[axis] = new
                elif new > old_max:
                    maxs[axis] = new
                recurse(left, new_distance)
                mins[axis], maxs[axis] = old_min, old_max
            position[axis] = old

    recurse(k, 0)


def _canonical_key(profile: dict[Point, int]) -> tuple[tuple[Point, int], ...]:
    """Sorted entries of the profile translated so its lex-min site is 0."""
    anchor = min(profile)
    return tuple(
        sorted(
            (tuple(c - a for c, a in zip(site, anchor)), e)
            for site, e in profile.items()
        )
    )


@dataclass(frozen=True)
class PathCountTable:
    """Counts of balanced length-k strings per canonical profile class.

    Keys are canonical multi-indexes (fixed points of ``canonicalize``);
    balanced strings with an empty profile appear in no class.
    """

    k: int
    d: int
    counts: dict[MultiIndex, int]

    def count_for(self, index: MultiIndex) -> int:
        """Class count for any representative of the class of ``index``."""
        rep, _ = canonicalize(index)
        return self.counts.get(rep, 0)

    def to_json_dict(self) -> dict:
        ordered = sorted(self.counts.items(), key=lambda item: item[0].entries)
        return {
            "k": self.k,
            "d": self.d,
            "counts": [{"beta": mi.format(), "p": n} for mi, n in ordered],
        }


_TABLE_CACHE: dict[tuple[int, int], PathCountTable] = {}


def path_counts(k: int, d: int, budget: int | None = None) -> PathCountTable:
    """Tally balanced strings of length k by canonical profile class.

    Counts are invariant under translating the profile, so the table is
    indexed by canonical representatives. Memoized per (k, d); the budget is
    still checked on every call so resource errors are deterministic.
    """
    check_budget((2 * d + 1) ** k, budget, f"enumerating ({2 * d + 1})^{k} strings")
    cached = _TABLE_CACHE.get((k, d))
    if cached is not None:
        return cached

    tally: dict[tuple[tuple[Point, int], ...], int] = {}

    def consume(profile: dict[Point, int], mins: Point, maxs: Point) -> None:
        if not profile:
            return
        key = _canonical_key(profile)
        tally[key] = tally.get(key, 0) + 1

    _scan_balanced(k, d, consume, budget)
    table = PathCountTable(
        k, d, {MultiIndex(d, key): n for key, n in tally.items()}
    )
    _TABLE_CACHE[(k, d)] = table
    return table


def truncated_coefficient(
    index: MultiIndex, k: int, L: int, budget: int | None = None
) -> int:
    """Coefficient of the monomial of ``index`` in the trace of the k-th
    power over the box of radius L.

    Counts pairs (string, anchor) where the string is balanced, its anchored
    profile equals ``index``, and the anchored walk stays inside the box.
    Always between 0 and the class count from ``path_counts``; equal to it
    when the support touches the depth-k interior, and 0 when the support
    leaves the box.
    """
    if index.is_zero:
        raise ValueError("the zero multi-index labels no monomial")
    if L < 1:
        raise ValueError(f"box radius must be >= 1, got {L}")
    d = index.d
    target_key = _canonical_key(index.to_map())
    target_anchor = min(index.support())
    found = 0

    def consume(profile: dict[Point, int], mins: Point, maxs: Point) -> None:
        nonlocal found
        if not profile:
            return
        if _canonical_key(profile) != target_key:
            return
        # unique translation taking this profile onto the target
        anchor = min(profile)
        move = tuple(t - a for t, a in zip(target_anchor, anchor))
        if all(
            -L <= lo + m and hi + m <= L for lo, hi, m in zip(mins, maxs, move)
        ):
            found += 1

    _scan_balanced(k, d, consume, budget)
    return found


class Census(NamedTuple):
    total_balanced: int
    with_pot: int


def balanced_census(k: int, d: int, budget: int | None = None) -> Census:
    """Count balanced strings of length k, and those with >= 1 potential step.

    The second count equals the sum of all entries of ``path_counts(k, d)``.
    """
    total = 0
    with_pot = 0

    def consume(profile: dict[Point, int], mins: Point, maxs: Point) -> None:
        nonlocal total, with_pot
        total += 1
        if profile:
            with_pot += 1

    _scan_balanced(k, d, consume, budget)
    return Census(total, with_pot)
