"""Equivariant Brouwer degrees of the maps Id and -Id on unit balls.

For a finite orthogonal SO(2)-representation V with weight
multiplicities (k_0, k_1, ...), the degree of -Id on the unit ball of V
is the Euler-ring element

    alpha_0 = (-1)^k_0,
    alpha_m = (-1)^(k_0 + 1) * k_m     for each weight m >= 1 present,

and the degree of Id is the ring unit regardless of V.  Multiplicativity
deg(-Id, V (+) W) = deg(-Id, V) * deg(-Id, W) holds exactly in the ring.
"""

from __future__ import annotations

from .euler import ONE, EulerElement
from .so2rep import SO2Rep


def deg_neg_id(rep: SO2Rep) -> EulerElement:
    """Degree of -Id on the unit ball of the representation `rep`."""
    k0 = rep.weight(0)
    sign0 = -1 if k0 % 2 else 1
    coeffs = {0: sign0}
    for m, k in rep.items():
        if m >= 1:
            coeffs[m] = -sign0 * k
    return EulerElement(coeffs)


def deg_id(rep: SO2Rep) -> EulerElement:
    """Degree of Id on the unit ball of any representation: the ring unit."""
    del rep
    return ONE
