"""Site distributions: exact rational moments and seeded sampling.

Three families are supported, all mean zero with every moment an exact
rational: finitely supported (discrete atoms with rational values and
weights), symmetric uniform on [-w, w], and centered gaussian with rational
variance. Exactness matters because the zero-variance classification
downstream is knife-edge; no tolerances appear anywhere in the moment
algebra.

Sampling uses numpy's Philox counter-based 64-bit generator keyed by the
seed, so draws are reproducible and independent streams can be derived by
XOR-ing a stream index into the seed. Discrete sampling inverts the CDF of
the cumulative weights; uniform and gaussian use the generator's native
transforms.

CLI grammar: ``discrete:v1@w1,v2@w2,...`` | ``uniform:w`` | ``gaussian:v``
with rationals written as ``p/q`` or integers. Mean zero is checked exactly
at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .lattice import MultiIndex, Point

_MASK64 = (1 << 64) - 1

DISCRETE = "discrete"
UNIFORM = "uniform"
GAUSSIAN = "gaussian"


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class MomentModel:
    """A mean-zero site distribution with exact rational moments.

    ``max_order`` caps the moment order the model promises; ``None`` means
    unlimited (all three families have closed-form moments of every order).
    """

    kind: str
    atoms: tuple[tuple[Fraction, Fraction], ...] = ()
    half_width: Fraction | None = None
    variance: Fraction | None = None
    max_order: int | None = None

    def __post_init__(self) -> None:
        if self.max_order is not None and self.max_order < 0:
            raise ValueError("max_order must be >= 0")
        if self.kind == DISCRETE:
            if len(self.atoms) < 1:
                raise ValueError("discrete model needs at least one atom")
            values = [v for v, _ in self.atoms]
            if len(set(values)) != len(values):
                raise ValueError("atom values must be distinct")
            if any(w <= 0 for _, w in self.atoms):
                raise ValueError("atom weights must be positive")
            if sum(w for _, w in self.atoms) != 1:
                raise ValueError("atom weights must sum to 1 exactly")
            mean = sum(v * w for v, w in self.atoms)
            if mean != 0:
                raise ValueError(f"mean must be exactly zero, got {mean}")
        elif self.kind == UNIFORM:
            if self.half_width is None or self.half_width <= 0:
                raise ValueError("uniform model needs a positive half width")
        elif self.kind == GAUSSIAN:
            if self.variance is None or self.variance <= 0:
                raise ValueError("gaussian model needs a positive variance")
        else:
            raise ValueError(f"unknown model kind {self.kind!r}")

    @classmethod
    def discrete(cls, atoms: Sequence[tuple], max_order: int | None = None) -> "MomentModel":
        normalized = tuple(
            sorted((_as_fraction(v), _as_fraction(w)) for v, w in atoms)
        )
        return cls(DISCRETE, atoms=normalized, max_order=max_order)

    @classmethod
    def uniform_symmetric(cls, half_width, max_order: int | None = None) -> "MomentModel":
        return cls(UNIFORM, half_width=_as_fraction(half_width), max_order=max_order)

    @classmethod
    def gaussian(cls, variance, max_order: int | None = None) -> "MomentModel":
        return cls(GAUSSIAN, variance=_as_fraction(variance), max_order=max_order)

    def require_order(self, order: int) -> None:
        if self.max_order is not None and order > self.max_order:
            raise ValueError(
                f"moment of order {order} requested but the model caps at {self.max_order}"
            )


@dataclass(frozen=True)
class SupportClass:
    """Cardinality classification of the support: two/three points or many."""

    kind: str  # "two_point" | "three_point" | "many"
    values: tuple[Fraction, ...] = ()


def support_class(model: MomentModel) -> SupportClass:
    if model.kind == DISCRETE:
        values = tuple(sorted(v for v, _ in model.atoms))
        if len(values) == 2:
            return SupportClass("two_point", values)
        if len(values) == 3:
            return SupportClass("three_point", values)
    return SupportClass("many")


@lru_cache(maxsize=None)
def moment(model: MomentModel, order: int) -> Fraction:
    """Exact moment of the given order; order 0 is 1."""
    if order < 0:
        raise ValueError("moment order must be >= 0")
    model.require_order(order)
    if order == 0:
        return Fraction(1)
    if model.kind == DISCRETE:
        return sum((w * v**order for v, w in model.atoms), Fraction(0))
    if model.kind == UNIFORM:
        if order % 2 == 1:
            return Fraction(0)
        assert model.half_width is not None
        return model.half_width**order / (order + 1)
    # gaussian: odd moments vanish, even ones are (order-1)!! * variance^(order/2)
    if order % 2 == 1:
        return Fraction(0)
    assert model.variance is not None
    double_factorial = math.prod(range(order - 1, 0, -2))
    return double_factorial * model.variance ** (order // 2)


def monomial_expectation(model: MomentModel, index: MultiIndex) -> Fraction:
    """Expectation of the site monomial of ``index`` under iid sites.

    Factorizes over sites; the zero multi-index gives 1.
    """
    result = Fraction(1)
    for _, exponent in index.entries:
        factor = moment(model, exponent)
        if factor == 0:
            return Fraction(0)
        result *= factor
    return result


def monomial_covariance(
    model: MomentModel, left: MultiIndex, right: MultiIndex, offset: Point
) -> Fraction:
    """Exact covariance of the monomials of ``left`` and ``right`` shifted by
    ``offset``; exactly zero when their supports are disjoint."""
    shifted = right.shift(offset)
    if not set(left.support()) & set(shifted.support()):
        return Fraction(0)
    joint = monomial_expectation(model, left + shifted)
    return joint - monomial_expectation(model, left) * monomial_expectation(model, shifted)


def sample(model: MomentModel, seed: int, count: int) -> np.ndarray:
    """``count`` iid draws, reproducible for a given seed (Philox keyed).

    Derive order-independent parallel streams by XOR-ing a stream index into
    the seed before calling.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = np.random.Generator(np.random.Philox(key=seed & _MASK64))
    if model.kind == DISCRETE:
        values = np.array([float(v) for v, _ in model.atoms])
        cumulative = np.cumsum([float(w) for _, w in model.atoms])
        picks = np.searchsorted(cumulative, rng.random(count), side="right")
        return values[np.minimum(picks, len(values) - 1)]
    if model.kind == UNIFORM:
        w = float(model.half_width)
        return rng.uniform(-w, w, count)
    return rng.normal(0.0, math.sqrt(float(model.variance)), count)


def parse_distribution(text: str) -> MomentModel:
    """Parse the CLI distribution grammar (see module docstring)."""
    head, sep, tail = text.strip().partition(":")
    if not sep:
        raise ValueError(f"malformed distribution {text!r}: expected 'kind:params'")
    kind = head.strip().lower()
    if kind == DISCRETE:
        atoms = []
        for item in tail.split(","):
            value, at, weight = item.partition("@")
            if not at:
                raise ValueError(f"malformed atom {item!r}: expected 'value@weight'")
            atoms.append((Fraction(value.strip()), Fraction(weight.strip())))
        return MomentModel.discrete(atoms)
    if kind == UNIFORM:
        return MomentModel.uniform_symmetric(Fraction(tail.strip()))
    if kind == GAUSSIAN:
        return MomentModel.gaussian(Fraction(tail.strip()))
    raise ValueError(f"unknown distribution kind {head!r}")


def format_distribution(model: MomentModel) -> str:
    if model.kind == DISCRETE:
        atoms = ",".join(f"{v}@{w}" for v, w in model.atoms)
        return f"discrete:{atoms}"
    if model.kind == UNIFORM:
        return f"uniform:{model.half_width}"
    return f"gaussian:{model.variance}"
