"""Spaces of spherical harmonics and their circle-group isotypic data.

A finite orthogonal SO(2)-representation is recorded by its weight
multiplicities: weight 0 is the one-dimensional trivial summand, weight
m >= 1 the two-dimensional rotation plane R[.,m].  The space of degree-m
harmonic homogeneous polynomials in n variables restricted to the circle
acting on the first two coordinates decomposes with weight-i
multiplicity equal to the number of weakly decreasing integer chains
m >= m_1 >= ... >= m_{n-3} >= i, which has the closed form
C(m - i + n - 3, n - 3); the low dimensions n = 2, 3 are the usual
special cases (a single plane, resp. one summand per weight).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


def harmonic_dim(n: int, m: int) -> int:
    """Dimension of the degree-m harmonic polynomials on the n-sphere's ambient R^n.

    Exact integer formula: 1 or 2 for n = 2, and
    (2m + n - 2) (n - 3 + m)! / (m! (n - 2)!) for n >= 3.
    """
    if n < 2:
        raise ValueError(f"ambient dimension n must be >= 2, got {n}")
    if m < 0:
        raise ValueError(f"degree m must be >= 0, got {m}")
    if n == 2:
        return 1 if m == 0 else 2
    num = (2 * m + n - 2) * math.factorial(n - 3 + m)
    den = math.factorial(m) * math.factorial(n - 2)
    if num % den:
        raise AssertionError(f"dimension formula not integral at n={n}, m={m}")
    return num // den


def weight_multiplicity(n: int, m: int, i: int) -> int:
    """Multiplicity of SO(2)-weight i in the degree-m harmonics, n variables."""
    if i < 0 or i > m:
        return 0
    if n == 2:
        return 1 if i == m else 0
    # chain count C(m - i + n - 3, n - 3); covers n = 3 as C(m-i, 0) = 1
    return math.comb(m - i + n - 3, n - 3)


class SO2Rep:
    """Finite orthogonal SO(2)-representation as a weight -> multiplicity map.

    Immutable; zero multiplicities are dropped.  dim counts weight 0 once
    and every positive weight twice.
    """

    __slots__ = ("_weights",)

    def __init__(self, weights: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = weights.items() if isinstance(weights, Mapping) else weights
        acc: dict[int, int] = {}
        for m, k in items:
            m = int(m)
            k = int(k)
            if m < 0:
                raise ValueError(f"negative weight {m}")
            if k < 0:
                raise ValueError(f"negative multiplicity {k} at weight {m}")
            acc[m] = acc.get(m, 0) + k
        self._weights: tuple[tuple[int, int], ...] = tuple(
            (m, k) for m, k in sorted(acc.items()) if k > 0
        )

    def weight(self, m: int) -> int:
        for w, k in self._weights:
            if w == m:
                return k
        return 0

    @property
    def dim(self) -> int:
        return sum(k if m == 0 else 2 * k for m, k in self._weights)

    @property
    def top_weight(self) -> int:
        """Largest weight present; 0 for the zero representation."""
        return self._weights[-1][0] if self._weights else 0

    def is_zero(self) -> bool:
        return not self._weights

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._weights)

    def __add__(self, other: "SO2Rep") -> "SO2Rep":
        if not isinstance(other, SO2Rep):
            return NotImplemented
        out = dict(self._weights)
        for m, k in other._weights:
            out[m] = out.get(m, 0) + k
        return SO2Rep(out)

    def times(self, count: int) -> "SO2Rep":
        """Direct sum of `count` copies."""
        if count < 0:
            raise ValueError("copy count must be >= 0")
        return SO2Rep((m, count * k) for m, k in self._weights)

    def to_json_obj(self) -> dict:
        return {"weights": [[m, k] for m, k in self._weights]}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "SO2Rep":
        return cls((int(m), int(k)) for m, k in obj["weights"])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SO2Rep):
            return NotImplemented
        return self._weights == other._weights

    def __hash__(self) -> int:
        return hash(self._weights)

    def __repr__(self) -> str:
        return f"SO2Rep({dict(self._weights)!r})"

    def __str__(self) -> str:
        if not self._weights:
            return "0"
        return "+".join(f"R[{k},{m}]" for m, k in self._weights)


def direct_sum(reps: Iterable[SO2Rep], multiplicities: Iterable[int] | None = None) -> SO2Rep:
    reps = list(reps)
    if multiplicities is None:
        counts = [1] * len(reps)
    else:
        counts = [int(c) for c in multiplicities]
        if len(counts) != len(reps):
            raise ValueError("multiplicities length must match reps")
    acc: dict[int, int] = {}
    for rep, c in zip(reps, counts):
        if c < 0:
            raise ValueError("multiplicities must be >= 0")
        for m, k in rep.items():
            acc[m] = acc.get(m, 0) + c * k
    return SO2Rep(acc)


def so2_decompose(n: int, m: int) -> SO2Rep:
    """Weight decomposition of the degree-m harmonics in n variables."""
    if n < 2:
        raise ValueError(f"ambient dimension n must be >= 2, got {n}")
    if m < 0:
        raise ValueError(f"degree m must be >= 0, got {m}")
    if n == 2:
        rep = SO2Rep({m: 1})
    else:
        rep = SO2Rep({i: weight_multiplicity(n, m, i) for i in range(m + 1)})
    if rep.dim != harmonic_dim(n, m):
        raise AssertionError(
            f"weight multiplicities do not add up to the harmonic dimension at n={n}, m={m}"
        )
    return rep


@dataclass(frozen=True)
class HarmonicSpace:
    """Degree-m harmonic homogeneous polynomials in n variables."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"ambient dimension n must be >= 2, got {self.n}")
        if self.m < 0:
            raise ValueError(f"degree m must be >= 0, got {self.m}")

    @property
    def dim(self) -> int:
        return harmonic_dim(self.n, self.m)

    @property
    def is_trivial(self) -> bool:
        # the group acts trivially exactly in degree 0
        return self.m == 0

    def decompose(self) -> SO2Rep:
        return so2_decompose(self.n, self.m)
