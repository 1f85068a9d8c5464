"""The number-vs-its-square paradox on [0, 100]: measuring stretches, counting doesn't.

Asking "is a random number in [0, 100] above 50?" and "is a random number in
[0, 10000] above 2500?" feel like the same question, but the uniform answers
are 1/2 and 3/4: squaring does not preserve the uniform measure.  The law of
X^2 when X itself is uniform restores agreement, and the finite counting
version never disagreed in the first place because a bijection on finitely
many equiprobable items cannot move probability around.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

import numpy as np

from .montecarlo import Experiment

X_MAX = 100.0
Y_MAX = X_MAX * X_MAX


class IntervalModel(enum.Enum):
    UNIFORM_X = "uniform_x"
    NAIVE_UNIFORM_SQUARE = "naive_uniform_square"
    PUSHFORWARD_SQUARE = "pushforward_square"


def _support_upper(model: IntervalModel) -> float:
    return X_MAX if model is IntervalModel.UNIFORM_X else Y_MAX


def exceed_probability(model: IntervalModel, threshold: float) -> float:
    """Closed-form P(value > threshold) under the chosen convention.

    UNIFORM_X treats the number itself as uniform on [0, 100];
    NAIVE_UNIFORM_SQUARE treats its square as uniform on [0, 10000];
    PUSHFORWARD_SQUARE uses the actual law of X^2 for X uniform on [0, 100].
    """
    hi = _support_upper(model)
    if not 0.0 <= threshold <= hi:
        raise ValueError(f"threshold {threshold} outside [0, {hi:g}] for {model.value}")
    if model is IntervalModel.UNIFORM_X:
        return (X_MAX - threshold) / X_MAX
    if model is IntervalModel.NAIVE_UNIFORM_SQUARE:
        return (Y_MAX - threshold) / Y_MAX
    return 1.0 - math.sqrt(threshold) / X_MAX


def pushforward_square_density(y: float) -> float:
    """Density of Y = X^2 for X uniform on [0, 100]: 1/(200 sqrt(y)).

    Defined pointwise for y > 0 (the singularity at 0 is integrable but the
    point itself is excluded); zero beyond 10000.
    """
    if y <= 0.0:
        raise ValueError(f"density is defined for y > 0, got {y}")
    if y > Y_MAX:
        return 0.0
    return 1.0 / (200.0 * math.sqrt(y))


def finite_counting_probability(n_max: int, threshold: float, squared: bool = False) -> Fraction:
    """Exact fraction of k in {1..n_max} with k > threshold (or k^2 > threshold).

    Counting is transform-invariant: squaring the finite equiprobable set
    {1..n_max} relabels its elements without sharing probability, so
    (n_max, t, plain) and (n_max, t^2, squared) always agree.  The result is
    an exact rational, never a float.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if threshold < 0:
        not_exceeding = 0
    elif squared:
        not_exceeding = min(n_max, math.isqrt(math.floor(threshold)))
    else:
        not_exceeding = min(n_max, math.floor(threshold))
    return Fraction(n_max - not_exceeding, n_max)


def square_exceed_experiment(x_threshold: float = 50.0) -> Experiment:
    """Bernoulli experiment: X uniform on [0, 100], does X^2 beat x_threshold^2?"""
    if not 0.0 <= x_threshold <= X_MAX:
        raise ValueError(f"x_threshold must lie in [0, {X_MAX:g}], got {x_threshold}")
    y_threshold = x_threshold * x_threshold

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.uniform(0.0, X_MAX, size)

    def exceeds(xs: np.ndarray) -> np.ndarray:
        return xs * xs > y_threshold

    return Experiment(
        name=f"square_exceeds_{y_threshold:.9g}", sample=draw, event=exceeds
    )
