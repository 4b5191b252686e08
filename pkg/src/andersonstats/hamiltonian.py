"""Finite-volume operators: sampling, numeric traces, exact expectations.

The operator on the box of radius L in Z^d is nearest-neighbor hopping with
coefficient 1 plus a diagonal of iid site variables. Numeric traces of
powers are computed per site through a local window: a walk of length k
cannot leave the cube of radius k around its start, so k restricted
applications of the operator to a basis vector recover the diagonal entry
exactly up to float rounding. The expected trace is evaluated in exact
rational arithmetic by counting, per balanced string, how many anchor
positions keep the walk inside the box (a product of per-axis interval
lengths, so no loop over sites is needed).

Floats are used only for sampled quantities; expectations stay rational and
the two never mix silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .budget import check_budget
from .lattice import MultiIndex, Point
from .moments import MomentModel, moment, monomial_expectation, sample
from .variance import Poly
from .walks import _scan_balanced

@dataclass(frozen=True)
class BoxSpec:
    """The cube of radius L in Z^d: side 2L+1, volume (2L+1)^d."""

    d: int
    L: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if self.L < 1:
            raise ValueError(f"box radius must be >= 1, got {self.L}")

    @property
    def n_side(self) -> int:
        return 2 * self.L + 1

    @property
    def volume(self) -> int:
        return self.n_side**self.d


@dataclass(eq=False)
class SampledHamiltonian:
    """One disorder realization: the potential grid over the box.

    ``potential[i1, ..., id]`` is the value at site (i1-L, ..., id-L); the
    hopping part is implicit (nearest neighbor, coefficient 1, symmetric).
    """

    box: BoxSpec
    potential: np.ndarray

    def __post_init__(self) -> None:
        expected = (self.box.n_side,) * self.box.d
        if self.potential.shape != expected:
            raise ValueError(
                f"potential shape {self.potential.shape} != box shape {expected}"
            )


def sample_hamiltonian(
    box: BoxSpec, model: MomentModel, seed: int, budget: int | None = None
) -> SampledHamiltonian:
    """Draw the iid potential for one realization, deterministic per seed."""
    check_budget(box.volume, budget, f"potential of volume {box.volume}")
    draws = sample(model, seed, box.volume)
    return SampledHamiltonian(box, draws.reshape((box.n_side,) * box.d))


def _window_shift(array: np.ndarray, axis: int, step: int) -> np.ndarray:
    """Shift along one window axis with zero fill: out[o] = array[o + step]."""
    out = np.zeros_like(array)
    src = [slice(None)] * array.ndim
    dst = [slice(None)] * array.ndim
    if step == 1:
        src[axis] = slice(1, None)
        dst[axis] = slice(None, -1)
    else:
        src[axis] = slice(None, -1)
        dst[axis] = slice(1, None)
    out[tuple(dst)] = array[tuple(src)]
    return out


def trace_powers_numeric(
    h: SampledHamiltonian, max_power: int, budget: int | None = None
) -> list[float]:
    """Traces of the operator powers 1..max_power by the local-window method.

    All per-site windows advance together as one array of shape
    (grid) x (window); a mask zeroes amplitude that the box truncation kills.
    Cost is volume * power * window cells.
    """
    if max_power < 1:
        raise ValueError("need a power >= 1")
    box = h.box
    d, m = box.d, max_power
    window = (2 * m + 1,) * d
    check_budget(box.volume * (2 * m + 1) ** d, budget, "trace window cells")

    pad = [(m, m)] * d
    pot_windows = sliding_window_view(np.pad(h.potential, pad), window)
    mask_windows = sliding_window_view(
        np.pad(np.ones_like(h.potential), pad), window
    )
    center = (Ellipsis,) + (m,) * d

    psi = np.zeros(h.potential.shape + window)
    psi[center] = 1.0
    traces = []
    for _ in range(m):
        hop = np.zeros_like(psi)
        for axis in range(d, 2 * d):
            hop += _window_shift(psi, axis, 1)
            hop += _window_shift(psi, axis, -1)
        psi = mask_windows * (pot_windows * psi + hop)
        traces.append(float(psi[center].sum()))
    return traces


def trace_poly_numeric(
    h: SampledHamiltonian, p: Poly, budget: int | None = None
) -> float:
    """Trace of p applied to the sampled operator (constant term included)."""
    if p.degree < 1:
        raise ValueError("need a non-constant polynomial")
    traces = trace_powers_numeric(h, p.degree, budget)
    result = float(p.coefficient(0)) * h.box.volume
    for k in range(1, p.degree + 1):
        coefficient = p.coefficient(k)
        if coefficient != 0:
            result += float(coefficient) * traces[k - 1]
    return result


def mean_trace_exact(
    k: int, box: BoxSpec, model: MomentModel, budget: int | None = None
) -> Fraction:
    """Exact expectation of the trace of the k-th power over the box.

    Per balanced string, the number of admissible anchors factorizes over
    axes as max(0, side - walk range), and the monomial expectation
    factorizes over sites, so the whole sum runs in string count times d.
    """
    if k < 1:
        raise ValueError("need a power >= 1")
    model.require_order(k)
    side = box.n_side
    total = Fraction(0)

    def consume(profile: dict[Point, int], mins: Point, maxs: Point) -> None:
        nonlocal total
        anchors = 1
        for lo, hi in zip(mins, maxs):
            span = side - (hi - lo)
            if span <= 0:
                return
            anchors *= span
        weight = Fraction(1)
        for exponent in profile.values():
            factor = moment(model, exponent)
            if factor == 0:
                return
            weight *= factor
        total += anchors * weight

    _scan_balanced(k, box.d, consume, budget)
    return total


@dataclass
class SymbolicTrace:
    """The trace of the k-th power as a polynomial in the site variables.

    ``terms`` maps position-anchored (non-canonical) multi-indexes to their
    integer coefficients; the variable-free part is tracked separately in
    ``constant``.
    """

    k: int
    box: BoxSpec
    terms: dict[MultiIndex, int]
    constant: int

    def expected_value(self, model: MomentModel) -> Fraction:
        total = Fraction(self.constant)
        for index, coefficient in self.terms.items():
            total += coefficient * monomial_expectation(model, index)
        return total

    def evaluate(self, h: SampledHamiltonian) -> float:
        """Evaluate at a sampled potential (same box)."""
        if h.box != self.box:
            raise ValueError("sampled box does not match the symbolic trace box")
        L = self.box.L
        total = float(self.constant)
        for index, coefficient in self.terms.items():
            term = float(coefficient)
            for point, exponent in index.entries:
                term *= float(h.potential[tuple(c + L for c in point)]) ** exponent
            total += term
        return total


def symbolic_trace(k: int, box: BoxSpec, budget: int | None = None) -> SymbolicTrace:
    """Expand the trace of the k-th power over all (string, anchor) pairs.

    Small instances only: the cost is string count times box volume. The
    coefficient of every monomial equals the boundary-corrected coefficient
    from :func:`andersonstats.walks.truncated_coefficient`.
    """
    if k < 1:
        raise ValueError("need a power >= 1")
    required = (2 * box.d + 1) ** k * box.volume
    check_budget(required, budget, f"symbolic expansion of {required} anchored strings")
    L = box.L
    terms: dict[MultiIndex, int] = {}
    constant = 0

    def consume(profile: dict[Point, int], mins: Point, maxs: Point) -> None:
        nonlocal constant
        ranges = [range(-L - lo, L - hi + 1) for lo, hi in zip(mins, maxs)]
        if not profile:
            anchors = 1
            for r in ranges:
                anchors *= len(r)
            constant += anchors
            return
        for anchor in product(*ranges):
            index = MultiIndex.from_map(
                box.d,
                {
                    tuple(c + a for c, a in zip(site, anchor)): e
                    for site, e in profile.items()
                },
            )
            terms[index] = terms.get(index, 0) + 1

    _scan_balanced(k, box.d, consume, budget)
    return SymbolicTrace(k, box, terms, constant)
