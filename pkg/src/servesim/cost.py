"""Service-cost models mapping (input length, output length) to cost.

The resource-bound model charges the cumulative cached-token footprint of a
request over its decode lifetime, O^2/2 + I*O, which orders requests the
same way whether the backend is compute- or memory-bound. The other two
kinds are the ablation rivals: output length alone, and a weighted sum of
input and output lengths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distribution import DiscreteDistribution

__all__ = [
    "CostModelKind",
    "ResourceBound",
    "OutputOnly",
    "WeightedSum",
    "CostUnits",
    "cost",
    "remaining_cost",
    "cost_distribution",
    "parse_cost_kind",
]


@dataclass(frozen=True)
class ResourceBound:
    name: str = "resource-bound"


@dataclass(frozen=True)
class OutputOnly:
    name: str = "output-only"


@dataclass(frozen=True)
class WeightedSum:
    w_in: float = 1.0
    w_out: float = 2.0
    name: str = "weighted-sum"

    def __post_init__(self):
        if self.w_in <= 0 or self.w_out <= 0:
            raise ValueError("weighted-sum weights must be positive")


CostModelKind = ResourceBound | OutputOnly | WeightedSum


@dataclass(frozen=True)
class CostUnits:
    """Unit memory-time and compute-time products.

    Scheduling priorities are invariant to these scalars; they only enter
    the backend's iteration-time model.
    """

    u_mt: float = 1.0
    u_ct: float = 1.0

    def __post_init__(self):
        if self.u_mt <= 0 or self.u_ct <= 0:
            raise ValueError("cost units must be positive")


def cost(kind: CostModelKind, input_len: float, output_len: float) -> float:
    """Total service cost of a request with the given lengths."""
    if input_len < 1:
        raise ValueError(f"input_len must be >= 1, got {input_len}")
    if output_len < 0:
        raise ValueError(f"output_len must be >= 0, got {output_len}")
    if isinstance(kind, ResourceBound):
        return output_len * output_len / 2.0 + input_len * output_len
    if isinstance(kind, OutputOnly):
        return float(output_len)
    if isinstance(kind, WeightedSum):
        return kind.w_in * input_len + kind.w_out * output_len
    raise TypeError(f"unknown cost model kind: {kind!r}")


def remaining_cost(
    kind: CostModelKind, input_len: float, output_total: float, output_served: float
) -> float:
    """Cost still owed after `output_served` of `output_total` tokens."""
    if output_served < 0 or output_served > output_total:
        raise ValueError(
            f"served tokens {output_served} outside [0, {output_total}]"
        )
    return cost(kind, input_len, output_total) - cost(kind, input_len, output_served)


def _cost_vector(kind: CostModelKind, input_len: float, lengths: np.ndarray) -> np.ndarray:
    if isinstance(kind, ResourceBound):
        return lengths * lengths * 0.5 + input_len * lengths
    if isinstance(kind, OutputOnly):
        return lengths.copy()
    if isinstance(kind, WeightedSum):
        return kind.w_in * input_len + kind.w_out * lengths
    raise TypeError(f"unknown cost model kind: {kind!r}")


def cost_distribution(
    kind: CostModelKind, input_len: float, length_dist: DiscreteDistribution
) -> DiscreteDistribution:
    """Pushforward of an output-length law through the cost model.

    Cost is strictly increasing in output length for every kind, so support
    order and masses carry over point for point.
    """
    if input_len < 1:
        raise ValueError(f"input_len must be >= 1, got {input_len}")
    support = _cost_vector(kind, float(input_len), length_dist.support)
    return DiscreteDistribution._trusted(support, length_dist.masses)


_KINDS = {
    "resource-bound": ResourceBound,
    "output-only": OutputOnly,
    "weighted-sum": WeightedSum,
}


def parse_cost_kind(name: str, **params) -> CostModelKind:
    try:
        cls = _KINDS[name]
    except KeyError:
        raise ValueError(
            f"unknown cost model {name!r}; expected one of {sorted(_KINDS)}"
        ) from None
    return cls(**params)
