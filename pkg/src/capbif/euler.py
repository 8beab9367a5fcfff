"""Exact arithmetic in the Euler ring of the circle group.

Elements are finitely supported integer sequences (a_0, a_1, a_2, ...)
indexed by the irreducible orthogonal representations of SO(2): index 0
carries the trivial representation, index m >= 1 the rotation-by-m*theta
plane.  Addition is coordinatewise and multiplication is

    (a * b)_0 = a_0 * b_0
    (a * b)_i = a_i * b_0 + a_0 * b_i        for i >= 1,

so coordinate 0 is multiplicative while the positive-index part squares
to zero against itself.  Coefficients are Python ints; everything here
is exact, no floats anywhere.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping


class EulerElement:
    """A finitely supported integer sequence under Euler-ring operations.

    Immutable and hashable.  The canonical form drops zero coefficients,
    so two elements are equal exactly when all coordinates agree.
    """

    __slots__ = ("_pairs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for idx, c in items:
            idx = int(idx)
            c = int(c)
            if idx < 0:
                raise ValueError(f"negative index {idx} in Euler element")
            acc[idx] = acc.get(idx, 0) + c
        self._pairs: tuple[tuple[int, int], ...] = tuple(
            (i, c) for i, c in sorted(acc.items()) if c != 0
        )

    @classmethod
    def from_sequence(cls, seq: Iterable[int]) -> "EulerElement":
        """Build from a dense prefix (a_0, a_1, ...); the tail is zero."""
        return cls(enumerate(seq))

    @classmethod
    def single(cls, index: int, coeff: int = 1) -> "EulerElement":
        return cls({index: coeff})

    # -- ring structure ------------------------------------------------

    def __add__(self, other: "EulerElement") -> "EulerElement":
        if not isinstance(other, EulerElement):
            return NotImplemented
        out = dict(self._pairs)
        for i, c in other._pairs:
            out[i] = out.get(i, 0) + c
        return EulerElement(out)

    def __neg__(self) -> "EulerElement":
        return EulerElement((i, -c) for i, c in self._pairs)

    def __sub__(self, other: "EulerElement") -> "EulerElement":
        if not isinstance(other, EulerElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "EulerElement") -> "EulerElement":
        if not isinstance(other, EulerElement):
            return NotImplemented
        a0 = self[0]
        b0 = other[0]
        out: dict[int, int] = {0: a0 * b0}
        for i, c in self._pairs:
            if i > 0:
                out[i] = c * b0
        for i, c in other._pairs:
            if i > 0:
                out[i] = out.get(i, 0) + a0 * c
        return EulerElement(out)

    def __pow__(self, p: int) -> "EulerElement":
        if not isinstance(p, int):
            return NotImplemented
        if p >= 0:
            # binary exponentiation; agrees with the closed form
            # (a^p)_0 = a_0^p, (a^p)_i = p a_0^(p-1) a_i by induction
            result = ONE
            base = self
            e = p
            while e:
                if e & 1:
                    result = result * base
                base = base * base
                e >>= 1
            return result
        a0 = self[0]
        if a0 not in (1, -1):
            raise ValueError(
                f"coordinate 0 is {a0}; only units with a_0 = +-1 have negative powers"
            )
        # closed form extends to negative p for units; a_0^(p-1) only
        # needs the parity of p-1 since a_0 = +-1
        u0 = a0**abs(p)
        lead = p * (a0 ** ((p - 1) % 2))
        inv = EulerElement(
            [(0, u0)] + [(i, lead * c) for i, c in self._pairs if i > 0]
        )
        if inv * self ** (-p) != ONE:
            raise AssertionError("negative power failed to invert back to the unit")
        return inv

    # -- queries -------------------------------------------------------

    def __getitem__(self, index: int) -> int:
        for i, c in self._pairs:
            if i == index:
                return c
        return 0

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self._pairs)

    @property
    def max_index(self) -> int:
        """Largest index with nonzero coefficient; -1 for the zero element."""
        return self._pairs[-1][0] if self._pairs else -1

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._pairs)

    def is_zero(self) -> bool:
        return not self._pairs

    def classify(self) -> str:
        """One of 'theta', 'plus_cone', 'minus_cone', 'mixed'.

        'theta' is the zero element; the cones are all-nonnegative /
        all-nonpositive with at least one nonzero coordinate.
        """
        if not self._pairs:
            return "theta"
        has_pos = any(c > 0 for _, c in self._pairs)
        has_neg = any(c < 0 for _, c in self._pairs)
        if has_pos and has_neg:
            return "mixed"
        return "plus_cone" if has_pos else "minus_cone"

    # -- serialization -------------------------------------------------

    def to_json_obj(self) -> dict:
        """Sorted (index, coefficient) pairs, coefficients as decimal strings."""
        return {"coeffs": [[i, str(c)] for i, c in self._pairs]}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "EulerElement":
        pairs = obj["coeffs"]
        return cls((int(i), int(c)) for i, c in pairs)

    # -- dunders -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EulerElement):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __bool__(self) -> bool:
        return bool(self._pairs)

    def __repr__(self) -> str:
        return f"EulerElement({dict(self._pairs)!r})"

    def __str__(self) -> str:
        if not self._pairs:
            return "0"
        return " + ".join(
            f"{c}" if i == 0 else f"{c}*e{i}" for i, c in self._pairs
        )


ZERO = EulerElement()
ONE = EulerElement({0: 1})
