"""Discrete probability distributions over positive values.

The same type carries both output-length laws (integer token counts) and
service-cost laws (real-valued, obtained by pushing lengths through a cost
model). Supports are kept sorted and strictly increasing; zero-mass points
are dropped at construction time.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

__all__ = ["DiscreteDistribution", "DistributionError", "total_variation"]

_MASS_TOL = 1e-9


class DistributionError(ValueError):
    """Raised when distribution inputs violate the construction contract."""


class DiscreteDistribution:
    """Probability mass function over a finite, strictly increasing support."""

    __slots__ = ("support", "masses")

    def __init__(self, support: Iterable[float], masses: Iterable[float]):
        sup = np.asarray(support, dtype=np.float64).ravel()
        mas = np.asarray(masses, dtype=np.float64).ravel()
        if sup.size != mas.size:
            raise DistributionError(
                f"support and masses disagree in length: {sup.size} != {mas.size}"
            )
        if sup.size == 0:
            raise DistributionError("distribution needs at least one support point")
        if not np.all(np.isfinite(sup)) or not np.all(np.isfinite(mas)):
            raise DistributionError("support and masses must be finite")
        if np.any(mas < 0):
            raise DistributionError("masses must be non-negative")

        order = np.argsort(sup, kind="stable")
        sup = sup[order]
        mas = mas[order]
        # Merge duplicate support points (e.g. after mixing two pmfs).
        if sup.size > 1 and np.any(sup[1:] == sup[:-1]):
            uniq, inverse = np.unique(sup, return_inverse=True)
            merged = np.zeros_like(uniq)
            np.add.at(merged, inverse, mas)
            sup, mas = uniq, merged

        keep = mas > 0.0
        sup = sup[keep]
        mas = mas[keep]
        if sup.size == 0:
            raise DistributionError("all masses are zero")

        total = float(mas.sum())
        if not np.isfinite(total) or total <= 0.0:
            raise DistributionError(f"masses sum to {total}, expected ~1")
        if abs(total - 1.0) > 1e-6:
            raise DistributionError(f"masses sum to {total}, expected 1 within 1e-6")
        mas = mas / total

        sup.setflags(write=False)
        mas.setflags(write=False)
        self.support = sup
        self.masses = mas

    @classmethod
    def _trusted(cls, support: np.ndarray, masses: np.ndarray) -> "DiscreteDistribution":
        """Wrap pre-validated arrays without copying or checking.

        Caller guarantees: float64, sorted strictly increasing support,
        positive masses summing to 1 within tolerance.
        """
        self = object.__new__(cls)
        self.support = support
        self.masses = masses
        return self

    @classmethod
    def from_pairs(cls, pairs: Mapping[float, float]) -> "DiscreteDistribution":
        return cls(list(pairs.keys()), list(pairs.values()))

    @classmethod
    def from_samples(cls, values: Iterable[int]) -> "DiscreteDistribution":
        """Empirical pmf of non-negative integer samples."""
        arr = np.asarray(values, dtype=np.int64).ravel()
        if arr.size == 0:
            raise DistributionError("cannot build an empirical pmf from zero samples")
        if np.any(arr < 0):
            raise DistributionError("samples must be non-negative")
        counts = np.bincount(arr)
        support = np.flatnonzero(counts)
        masses = counts[support] / arr.size
        return cls._trusted(support.astype(np.float64), masses.astype(np.float64))

    @classmethod
    def point(cls, value: float) -> "DiscreteDistribution":
        return cls._trusted(
            np.asarray([float(value)]), np.asarray([1.0], dtype=np.float64)
        )

    @classmethod
    def uniform_integers(cls, lo: int, hi: int) -> "DiscreteDistribution":
        """Uniform law over the integers lo..hi inclusive."""
        if hi < lo:
            raise DistributionError(f"empty integer range [{lo}, {hi}]")
        n = hi - lo + 1
        return cls._trusted(
            np.arange(lo, hi + 1, dtype=np.float64), np.full(n, 1.0 / n)
        )

    def __len__(self) -> int:
        return int(self.support.size)

    def __repr__(self) -> str:
        if len(self) <= 4:
            pairs = ", ".join(
                f"{s:g}: {m:.4g}" for s, m in zip(self.support, self.masses)
            )
            return f"DiscreteDistribution({{{pairs}}})"
        return (
            f"DiscreteDistribution({len(self)} points on "
            f"[{self.support[0]:g}, {self.support[-1]:g}])"
        )

    def mean(self) -> float:
        return float(np.dot(self.support, self.masses))

    def min_value(self) -> float:
        return float(self.support[0])

    def max_value(self) -> float:
        return float(self.support[-1])

    def mass_at(self, value: float) -> float:
        idx = np.searchsorted(self.support, value)
        if idx < len(self) and self.support[idx] == value:
            return float(self.masses[idx])
        return 0.0

    def allclose(self, other: "DiscreteDistribution", atol: float = _MASS_TOL) -> bool:
        if len(self) != len(other):
            return False
        return bool(
            np.allclose(self.support, other.support, rtol=0.0, atol=atol)
            and np.allclose(self.masses, other.masses, rtol=0.0, atol=atol)
        )

    def map_support(self, fn) -> "DiscreteDistribution":
        """Pushforward through a strictly increasing map of the support."""
        new_support = np.asarray([fn(x) for x in self.support], dtype=np.float64)
        if np.any(np.diff(new_support) <= 0):
            raise DistributionError("map must be strictly increasing on the support")
        return DiscreteDistribution._trusted(new_support, self.masses)


def total_variation(a: DiscreteDistribution, b: DiscreteDistribution) -> float:
    """Total-variation distance: half the L1 gap over the union support."""
    union = np.union1d(a.support, b.support)
    pa = np.zeros(union.size)
    pb = np.zeros(union.size)
    pa[np.searchsorted(union, a.support)] = a.masses
    pb[np.searchsorted(union, b.support)] = b.masses
    return float(0.5 * np.abs(pa - pb).sum())
