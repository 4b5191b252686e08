"""Shared test helpers: independent brute-force oracles and model generators.

The oracles here deliberately avoid the library's pruned scanner and window
arithmetic: strings are enumerated with itertools over the public step
types, traces come from dense eigendecompositions, and expected traces from
a literal (string, anchor) double loop. They are slow and only meant for
small instances.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from random import Random

import numpy as np

from andersonstats import (
    BoxSpec,
    MomentModel,
    MultiIndex,
    SampledHamiltonian,
    StepString,
    canonicalize,
    down,
    is_balanced,
    monomial_expectation,
    pot,
    potential_profile,
    trajectory,
    up,
)
from andersonstats.variance import Poly


def alphabet(d: int):
    symbols = [pot()]
    for axis in range(1, d + 1):
        symbols.append(up(axis))
        symbols.append(down(axis))
    return symbols


def all_strings(k: int, d: int):
    for combo in product(alphabet(d), repeat=k):
        yield StepString(d, combo)


def brute_path_counts(k: int, d: int) -> dict[MultiIndex, int]:
    counts: dict[MultiIndex, int] = {}
    for s in all_strings(k, d):
        if not is_balanced(s):
            continue
        profile = potential_profile(s)
        if profile.is_zero:
            continue
        rep, _ = canonicalize(profile)
        counts[rep] = counts.get(rep, 0) + 1
    return counts


def _stays_inside(points, anchor, L: int) -> bool:
    return all(
        all(-L <= c + a <= L for c, a in zip(point, anchor)) for point in points
    )


def brute_truncated_coefficient(index: MultiIndex, k: int, L: int) -> int:
    d = index.d
    count = 0
    for s in all_strings(k, d):
        if not is_balanced(s):
            continue
        profile = potential_profile(s)
        if profile.is_zero:
            continue
        points = trajectory(s)
        for anchor in product(range(-L - k, L + k + 1), repeat=d):
            if profile.shift(anchor) == index and _stays_inside(points, anchor, L):
                count += 1
    return count


def brute_mean_trace(k: int, box: BoxSpec, model: MomentModel) -> Fraction:
    total = Fraction(0)
    L = box.L
    for s in all_strings(k, box.d):
        if not is_balanced(s):
            continue
        profile = potential_profile(s)
        points = trajectory(s)
        for anchor in product(range(-L, L + 1), repeat=box.d):
            if _stays_inside(points, anchor, L):
                total += monomial_expectation(model, profile.shift(anchor))
    return total


def dense_matrix(h: SampledHamiltonian) -> np.ndarray:
    box = h.box
    shape = (box.n_side,) * box.d
    matrix = np.zeros((box.volume, box.volume))
    np.fill_diagonal(matrix, h.potential.reshape(-1))
    for idx in np.ndindex(*shape):
        i = np.ravel_multi_index(idx, shape)
        for axis in range(box.d):
            if idx[axis] + 1 < box.n_side:
                neighbor = list(idx)
                neighbor[axis] += 1
                j = np.ravel_multi_index(tuple(neighbor), shape)
                matrix[i, j] = matrix[j, i] = 1.0
    return matrix


def dense_trace_poly(h: SampledHamiltonian, p: Poly) -> float:
    eigenvalues = np.linalg.eigvalsh(dense_matrix(h))
    return float(sum(p(x) for x in eigenvalues))


def random_rational(rng: Random, span: int = 6, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_discrete_model(rng: Random, n_atoms: int) -> MomentModel:
    """Mean-zero discrete model with distinct rational atoms: draw values and
    positive weights, then recentre the values (shifting keeps distinctness)."""
    while True:
        values = {random_rational(rng) for _ in range(n_atoms)}
        if len(values) == n_atoms:
            break
    raw = [Fraction(rng.randint(1, 9)) for _ in range(n_atoms)]
    total = sum(raw)
    weights = [w / total for w in raw]
    mean = sum(w * v for w, v in zip(weights, sorted(values)))
    atoms = [(v - mean, w) for v, w in zip(sorted(values), weights)]
    return MomentModel.discrete(atoms)


def random_poly(rng: Random, degree: int) -> Poly:
    coeffs = [random_rational(rng, span=9) for _ in range(degree)]
    lead = Fraction(0)
    while lead == 0:
        lead = random_rational(rng, span=9)
    return Poly.from_coeffs(coeffs + [lead])
