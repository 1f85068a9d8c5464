"""Random rationals in [0, 1] via a random denominator and a uniform numerator.

A rational Q = N/M is drawn by picking the denominator M from a law on
{1, 2, ...} and then the numerator N uniformly on {0, ..., M}.  Because every
rational has infinitely many representations (1/2 = 2/4 = 3/6 = ...), the
probability of a canonical value n/m is a series over all its multiples:

    P{Q = n/m} = sum over l >= 1 of  P{M = l*m} / (l*m + 1)

Interval probabilities and the CDF have the same series structure, with the
per-denominator factor counting how many numerators land in the window.
Flattening the denominator law (success rate 1/k geometric, or mean-k
Poisson) drives every atom's probability to zero while interval
probabilities converge to interval length: the law becomes asymptotically
equiprobable even though no uniform distribution on the rationals exists.
All series are truncated where the denominator law's exact tail mass drops
below ``tol``, which bounds the truncation error by ``tol`` because every
summand is dominated by its pmf factor.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

import numpy as np
from scipy.special import gammainc, gammaln

DEFAULT_TOL = 1e-10

_SEARCH_LIMIT = 1 << 40


@dataclass(frozen=True)
class Rational:
    """A canonical (co-prime) rational n/m with 0 <= n <= m and m >= 1."""

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        n, m = self.numerator, self.denominator
        if m < 1 or not 0 <= n <= m:
            raise ValueError(f"need 0 <= n <= m with m >= 1, got {n}/{m}")
        if math.gcd(n, m) != 1:
            raise ValueError(f"{n}/{m} is not in canonical form")

    @property
    def value(self) -> float:
        return self.numerator / self.denominator

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def canonicalize(n: int, m: int) -> Rational:
    """Reduce n/m to its unique co-prime representation (0 becomes 0/1)."""
    if m < 1 or not 0 <= n <= m:
        raise ValueError(f"need 0 <= n <= m with m >= 1, got {n}/{m}")
    g = math.gcd(n, m)
    return Rational(n // g, m // g)


def canonical_rationals(max_denominator: int) -> Iterator[Rational]:
    """All canonical rationals in [0, 1] with denominator <= max_denominator.

    Ordered by denominator, then numerator.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    for m in range(1, max_denominator + 1):
        for n in range(0, m + 1):
            if math.gcd(n, m) == 1:
                yield Rational(n, m)


class DenominatorLaw(ABC):
    """A probability mass function over denominators m = 1, 2, ..."""

    @abstractmethod
    def pmf(self, m: int) -> float:
        """P{M = m}."""

    @abstractmethod
    def pmf_array(self, ms: np.ndarray) -> np.ndarray:
        """Vectorized ``pmf`` over an integer array."""

    @abstractmethod
    def tail(self, m: int) -> float:
        """Exact tail mass P{M > m}."""

    @abstractmethod
    def sup_pmf(self) -> float:
        """Supremum of the pmf over its support."""

    @abstractmethod
    def sample(self, rng: np.random.Generator, size: int | None = None):
        """Draw denominators: a python int, or an int64 array when size is given."""

    def truncation_index(self, tol: float) -> int:
        """Smallest m with tail(m) <= tol, by exponential search and bisection."""
        if tol <= 0.0:
            raise ValueError("tol must be > 0")
        hi = 1
        while self.tail(hi) > tol:
            hi *= 2
            if hi > _SEARCH_LIMIT:
                raise RuntimeError(f"tail never dropped below {tol}")
        if hi == 1:
            return 1
        lo = hi // 2  # tail(lo) > tol >= tail(hi)
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if self.tail(mid) > tol:
                lo = mid
            else:
                hi = mid
        return hi


class GeometricLaw(DenominatorLaw):
    """P{M = m} = w (1-w)^(m-1): memoryless, mode at m = 1, sup = w."""

    def __init__(self, w: float):
        if not 0.0 < w < 1.0:
            raise ValueError(f"w must lie in (0, 1), got {w}")
        self.w = float(w)
        self._log_1mw = math.log1p(-self.w)

    def pmf(self, m: int) -> float:
        if m < 1:
            return 0.0
        return self.w * math.exp((m - 1) * self._log_1mw)

    def pmf_array(self, ms: np.ndarray) -> np.ndarray:
        return self.w * np.exp((np.asarray(ms, dtype=np.float64) - 1.0) * self._log_1mw)

    def tail(self, m: int) -> float:
        return math.exp(m * self._log_1mw)

    def sup_pmf(self) -> float:
        return self.w

    def truncation_index(self, tol: float) -> int:
        if tol <= 0.0:
            raise ValueError("tol must be > 0")
        if tol >= 1.0:
            return 1
        return max(1, math.ceil(math.log(tol) / self._log_1mw))

    def sample(self, rng: np.random.Generator, size: int | None = None):
        if size is None:
            return int(rng.geometric(self.w))
        return rng.geometric(self.w, size).astype(np.int64)

    def __repr__(self) -> str:
        return f"GeometricLaw(w={self.w!r})"


class PoissonLaw(DenominatorLaw):
    """M = 1 + Poisson(mean): P{M = m} = exp(-mean) mean^(m-1) / (m-1)!."""

    def __init__(self, mean: float):
        if not mean > 0.0:
            raise ValueError(f"mean must be > 0, got {mean}")
        self.mean = float(mean)
        self._log_mean = math.log(self.mean)

    def pmf(self, m: int) -> float:
        if m < 1:
            return 0.0
        return math.exp(-self.mean + (m - 1) * self._log_mean - math.lgamma(m))

    def pmf_array(self, ms: np.ndarray) -> np.ndarray:
        # log-space evaluation stays finite far into the tail and for large means
        ms = np.asarray(ms, dtype=np.float64)
        return np.exp(-self.mean + (ms - 1.0) * self._log_mean - gammaln(ms))

    def tail(self, m: int) -> float:
        # P{1 + Poisson > m} = P{Poisson >= m} = regularized lower gamma P(m, mean)
        return float(gammainc(m, self.mean))

    def sup_pmf(self) -> float:
        # Poisson mode at floor(mean) (two tied modes for integer mean)
        candidates = {max(1, math.floor(self.mean)), math.floor(self.mean) + 1}
        return max(self.pmf(m) for m in candidates)

    def sample(self, rng: np.random.Generator, size: int | None = None):
        if size is None:
            return 1 + int(rng.poisson(self.mean))
        return (1 + rng.poisson(self.mean, size)).astype(np.int64)

    def __repr__(self) -> str:
        return f"PoissonLaw(mean={self.mean!r})"


class DegenerateLaw(DenominatorLaw):
    """All mass on a single denominator."""

    def __init__(self, value: int):
        if value < 1:
            raise ValueError(f"denominator must be >= 1, got {value}")
        self.value = int(value)

    def pmf(self, m: int) -> float:
        return 1.0 if m == self.value else 0.0

    def pmf_array(self, ms: np.ndarray) -> np.ndarray:
        return (np.asarray(ms) == self.value).astype(np.float64)

    def tail(self, m: int) -> float:
        return 1.0 if m < self.value else 0.0

    def sup_pmf(self) -> float:
        return 1.0

    def truncation_index(self, tol: float) -> int:
        if tol <= 0.0:
            raise ValueError("tol must be > 0")
        return self.value

    def sample(self, rng: np.random.Generator, size: int | None = None):
        if size is None:
            return self.value
        return np.full(size, self.value, dtype=np.int64)

    def __repr__(self) -> str:
        return f"DegenerateLaw({self.value!r})"


class CustomLaw(DenominatorLaw):
    """A finite pmf table {m: probability}; must sum to 1 within 1e-12."""

    def __init__(self, table: Mapping[int, float]):
        if not table:
            raise ValueError("table must be non-empty")
        ms = np.array(sorted(table), dtype=np.int64)
        if ms[0] < 1:
            raise ValueError("denominators must be >= 1")
        ps = np.array([table[int(m)] for m in ms], dtype=np.float64)
        if np.any(ps < 0.0):
            raise ValueError("probabilities must be >= 0")
        total = float(ps.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"table sums to {total}, not 1")
        self._ms = ms
        self._ps = ps
        self._lookup = {int(m): float(p) for m, p in zip(ms, ps)}

    def pmf(self, m: int) -> float:
        return self._lookup.get(m, 0.0)

    def pmf_array(self, ms: np.ndarray) -> np.ndarray:
        out = np.zeros(len(ms), dtype=np.float64)
        for m, p in self._lookup.items():
            out[np.asarray(ms) == m] = p
        return out

    def tail(self, m: int) -> float:
        return float(self._ps[np.searchsorted(self._ms, m, side="right") :].sum())

    def sup_pmf(self) -> float:
        return float(self._ps.max())

    def truncation_index(self, tol: float) -> int:
        if tol <= 0.0:
            raise ValueError("tol must be > 0")
        for i, m in enumerate(self._ms):
            if float(self._ps[i + 1 :].sum()) <= tol:
                return int(m)
        return int(self._ms[-1])

    def sample(self, rng: np.random.Generator, size: int | None = None):
        if size is None:
            return int(rng.choice(self._ms, p=self._ps))
        return rng.choice(self._ms, p=self._ps, size=size).astype(np.int64)

    def __repr__(self) -> str:
        return f"CustomLaw({dict(zip(map(int, self._ms), map(float, self._ps)))!r})"


def _series_denominators(law: DenominatorLaw, tol: float) -> np.ndarray:
    return np.arange(1, law.truncation_index(tol) + 1, dtype=np.int64)


def atom_probability(q: Rational, law: DenominatorLaw, tol: float = DEFAULT_TOL) -> float:
    """P{Q = q}: the series over all representations l*n / l*m of q.

    Truncated once the law's tail mass P{M > L} drops below ``tol``; each
    dropped term is at most its pmf factor, so the truncation error is at
    most ``tol``.
    """
    if tol <= 0.0:
        raise ValueError("tol must be > 0")
    limit = law.truncation_index(tol)
    count = limit // q.denominator
    if count == 0:
        return 0.0
    multiples = np.arange(1, count + 1, dtype=np.int64) * q.denominator
    terms = law.pmf_array(multiples) / (multiples + 1.0)
    return float(terms.sum())


def cdf(x: float, law: DenominatorLaw, tol: float = DEFAULT_TOL) -> float:
    """F_Q(x) = P{Q <= x}: 0 below 0, 1 from 1 up, a rational staircase between.

    For 0 <= x < 1 the per-denominator factor is (floor(m x) + 1)/(m + 1),
    counting the numerators 0..m that keep n/m <= x.
    """
    if tol <= 0.0:
        raise ValueError("tol must be > 0")
    if x < 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ms = _series_denominators(law, tol)
    msf = ms.astype(np.float64)
    terms = law.pmf_array(ms) * (np.floor(msf * x) + 1.0) / (msf + 1.0)
    return float(terms.sum())


def cdf_grid(xs: np.ndarray, law: DenominatorLaw, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized ``cdf`` over a grid, chunked over denominators to bound memory."""
    if tol <= 0.0:
        raise ValueError("tol must be > 0")
    xs = np.asarray(xs, dtype=np.float64)
    out = np.zeros_like(xs)
    inside = (xs >= 0.0) & (xs < 1.0)
    out[xs >= 1.0] = 1.0
    xin = xs[inside]
    if xin.size == 0:
        return out
    ms = _series_denominators(law, tol)
    msf = ms.astype(np.float64)
    coef = law.pmf_array(ms) / (msf + 1.0)
    acc = np.zeros_like(xin)
    chunk = max(1, (1 << 22) // max(1, xin.size))  # ~32 MB working set
    buf = np.empty((chunk, xin.size), dtype=np.float64)
    for lo in range(0, len(ms), chunk):
        mc = msf[lo : lo + chunk]
        b = buf[: len(mc)]
        np.multiply(mc[:, None], xin[None, :], out=b)
        np.floor(b, out=b)
        b += 1.0
        acc += coef[lo : lo + chunk] @ b
    out[inside] = acc
    return out


def interval_probability(a: float, b: float, law: DenominatorLaw, tol: float = DEFAULT_TOL) -> float:
    """P{a < Q <= b} for 0 <= a < b <= 1.

    Per denominator m the window contains floor(m b) - floor(m a) of the
    m + 1 equiprobable numerators, which is exactly F_Q(b) - F_Q(a) term by
    term.
    """
    if tol <= 0.0:
        raise ValueError("tol must be > 0")
    if not (0.0 <= a < b <= 1.0):
        raise ValueError(f"need 0 <= a < b <= 1, got a={a}, b={b}")
    ms = _series_denominators(law, tol)
    msf = ms.astype(np.float64)
    counts = np.floor(msf * b) - np.floor(msf * a)
    terms = law.pmf_array(ms) * counts / (msf + 1.0)
    return float(terms.sum())


def mean_reciprocal(law: DenominatorLaw, tol: float = DEFAULT_TOL) -> float:
    """E[1/M]: the quantity that controls how far the law is from equiprobable.

    Every atom probability is below it, and interval probabilities differ
    from interval length by at most (1 + length) times it.
    """
    if tol <= 0.0:
        raise ValueError("tol must be > 0")
    ms = _series_denominators(law, tol)
    terms = law.pmf_array(ms) / ms.astype(np.float64)
    return float(terms.sum())


def sup_pmf(law: DenominatorLaw) -> float:
    """Supremum of the denominator pmf (the flatness measure of the law)."""
    return law.sup_pmf()


def harmonic_number(k: int) -> float:
    """H_k = 1 + 1/2 + ... + 1/k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return float(np.sum(1.0 / np.arange(1, k + 1, dtype=np.float64)))


def sample_rational(law: DenominatorLaw, rng: np.random.Generator) -> Rational:
    """Draw M from the law, N uniform on {0..M}, and reduce to canonical form."""
    m = int(law.sample(rng))
    n = int(rng.integers(0, m + 1))
    return canonicalize(n, m)


def sample_rational_batch(
    law: DenominatorLaw, rng: np.random.Generator, size: int
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized sampler returning canonical (numerator, denominator) arrays."""
    ms = law.sample(rng, size)
    ns = rng.integers(0, ms + 1, dtype=np.int64)
    g = np.gcd(ns, ms)
    return ns // g, ms // g


class GeometricFamily:
    """Geometric denominator laws whose success rate shrinks with k.

    The default schedule w_k = 1/k flattens the pmf fast enough that
    sup_pmf * ln k -> 0, the regime in which the induced rational laws
    become asymptotically equiprobable.
    """

    kind = "geometric"

    def __init__(self, rate_for: Callable[[int], float] | None = None):
        self._rate_for = rate_for if rate_for is not None else lambda k: 1.0 / k

    def law(self, k: int) -> GeometricLaw:
        if k < 1:
            raise ValueError("k must be >= 1")
        return GeometricLaw(self._rate_for(k))


class PoissonFamily:
    """Shifted Poisson denominator laws with mean growing in k (default k)."""

    kind = "poisson"

    def __init__(self, mean_for: Callable[[int], float] | None = None):
        self._mean_for = mean_for if mean_for is not None else lambda k: float(k)

    def law(self, k: int) -> PoissonLaw:
        if k < 1:
            raise ValueError("k must be >= 1")
        return PoissonLaw(self._mean_for(k))


LawFamily = GeometricFamily | PoissonFamily


@dataclass(frozen=True)
class ConvergenceDiagnostics:
    """One row of the flattening diagnostics along a law family."""

    k: int
    pmf_sup: float
    pmf_sup_log_k: float
    harmonic_number: float
    mean_reciprocal: float
    interval_error: float


def convergence_table(
    family: LawFamily,
    ks: list[int],
    probe: tuple[float, float] = (0.0, 0.5),
    tol: float = DEFAULT_TOL,
) -> list[ConvergenceDiagnostics]:
    """Diagnostics along a family: flatness, E[1/M], and a probe-interval error.

    ``interval_error`` is |P{a < Q <= b} - (b - a)| for the probe interval;
    it is bounded by (1 + (b - a)) * mean_reciprocal, so the rows exhibit
    the approach to equiprobability as k grows.
    """
    if not ks:
        raise ValueError("ks must be non-empty")
    if any(k2 <= k1 for k1, k2 in zip(ks, ks[1:])):
        raise ValueError("ks must be strictly increasing")
    a, b = probe
    if not (0.0 <= a < b <= 1.0):
        raise ValueError(f"probe must satisfy 0 <= a < b <= 1, got {probe}")
    rows = []
    for k in ks:
        law = family.law(k)
        s = law.sup_pmf()
        mu = mean_reciprocal(law, tol)
        err = abs(interval_probability(a, b, law, tol) - (b - a))
        rows.append(
            ConvergenceDiagnostics(
                k=k,
                pmf_sup=s,
                pmf_sup_log_k=s * math.log(k),
                harmonic_number=harmonic_number(k),
                mean_reciprocal=mu,
                interval_error=err,
            )
        )
    return rows
