"""Bifurcation indices along the trivial branch.

For the m0-th spectrum point the relevant representations are

    V-  direct sum of the eigenspaces strictly below the subject,
    V0  the subject's eigenspace,

with D- = deg(-Id, V-) and D0 = deg(-Id, V0).  The index of the signed
candidate +lambda_{m0} for a system with p_minus negative-definite
blocks is

    D-^p_minus * (D0^p_minus - 1),

and of -lambda_{m0} with p_plus positive-definite blocks

    D-^(-p_plus) * (D0^p_plus - 1),

the negative power existing because D- has coordinate 0 = +-1.  The
product path is the authority everywhere.  A closed form pins coordinate
0 to (-1)^(nu p) - (-1)^(nu' p), the top weight w of V0 (when w >= 1) to
p (-1)^(1 + nu p), and every coordinate above w to zero; this is proved
when the top weight of V- stays below w (always on the hemisphere, where
w = m0 - 1) or when p * mu is even, and is otherwise only reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .degree import deg_neg_id
from .euler import ONE, EulerElement
from .so2rep import direct_sum
from .spectrum import EigenvalueRecord

POSITIVE = "positive"
NEGATIVE = "negative"


class ClosedFormRegimeError(Exception):
    """Closed form requested outside the regime where it is proved."""


@dataclass(frozen=True)
class IndexRequest:
    """Everything needed to compute one bifurcation index.

    records   the ordered spectrum (>= m0 entries)
    m0        1-based position of the subject eigenvalue
    sign      POSITIVE for +lambda_{m0}, NEGATIVE for -lambda_{m0}
    p_minus, p_plus   signature counts of the coefficient matrix
    """

    records: tuple[EigenvalueRecord, ...]
    m0: int
    sign: str
    p_minus: int
    p_plus: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        if self.sign not in (POSITIVE, NEGATIVE):
            raise ValueError(f"sign must be {POSITIVE!r} or {NEGATIVE!r}, got {self.sign!r}")
        if self.p_minus < 0 or self.p_plus < 0:
            raise ValueError("signature counts must be >= 0")
        if not 1 <= self.m0 <= len(self.records):
            raise ValueError(
                f"m0 must index the spectrum (1..{len(self.records)}), got {self.m0}"
            )
        if self.sign == POSITIVE and self.p_minus == 0:
            raise ValueError("+lambda candidates need p_minus > 0")
        if self.sign == NEGATIVE and self.p_plus == 0:
            raise ValueError("-lambda candidates need p_plus > 0")

    @property
    def record(self) -> EigenvalueRecord:
        return self.records[self.m0 - 1]

    @property
    def below(self) -> tuple[EigenvalueRecord, ...]:
        return self.records[: self.m0 - 1]

    @property
    def p_active(self) -> int:
        return self.p_minus if self.sign == POSITIVE else self.p_plus

    @property
    def nu(self) -> int:
        return self.record.nu

    @property
    def nu_prev(self) -> int:
        return self.records[self.m0 - 2].nu if self.m0 >= 2 else 0


def index_product(req: IndexRequest) -> EulerElement:
    """The bifurcation index via the degree product; exact integers throughout."""
    v_minus = direct_sum(rec.eigenspace for rec in req.below)
    d_minus = deg_neg_id(v_minus)
    d_zero = deg_neg_id(req.record.eigenspace)
    if req.sign == POSITIVE:
        return (d_minus**req.p_minus) * (d_zero**req.p_minus - ONE)
    return (d_minus ** (-req.p_plus)) * (d_zero**req.p_plus - ONE)


@dataclass(frozen=True)
class ClosedFormIndex:
    """Partial description of an index: coordinate 0, the top coordinate,
    and the first index from which everything vanishes."""

    coeff0: int
    top_index: int | None
    top_coeff: int | None
    zero_from: int
    valid: bool
    reason: str

    def matches(self, element: EulerElement) -> bool:
        if element[0] != self.coeff0:
            return False
        if self.top_index is not None and element[self.top_index] != self.top_coeff:
            return False
        return element.max_index < self.zero_from

    def to_json_obj(self) -> dict:
        return {
            "coeff0": self.coeff0,
            "top_index": self.top_index,
            "top_coeff": self.top_coeff,
            "zero_from": self.zero_from,
            "valid": self.valid,
            "reason": self.reason,
        }


def closed_form_estimate(req: IndexRequest) -> ClosedFormIndex:
    """Closed form evaluated on any spectrum, with its validity precondition.

    Coordinate 0 is exact unconditionally (pure dimension parity).  The
    top-coordinate and zero-tail claims need the top weight of V- below
    the top weight w of V0, or p * mu even; `valid` records whether the
    precondition holds here.
    """
    p = req.p_active
    s_now = (-1) ** (req.nu * p)
    s_prev = (-1) ** (req.nu_prev * p)
    coeff0 = s_now - s_prev
    w = req.record.eigenspace.top_weight
    v_minus = direct_sum(rec.eigenspace for rec in req.below)
    top_below = v_minus.top_weight
    mu = req.record.mu
    if (mu * p) % 2 == 0:
        valid, reason = True, "p * mu even, so the lower block contributes no tail"
    elif top_below < w:
        valid, reason = True, "top weight of V- below the subject's top weight"
    elif v_minus.is_zero() and w == 0:
        valid, reason = True, "V- empty"
    else:
        valid, reason = False, (
            f"top weight {top_below} of V- reaches the subject's top weight {w} "
            "with p * mu odd; only the product path is proved here"
        )
    if w >= 1:
        top_coeff = p * (-1) ** (1 + req.nu * p)
        return ClosedFormIndex(coeff0, w, top_coeff, w + 1, valid, reason)
    # trivial-action eigenspace: the whole index sits in coordinate 0
    return ClosedFormIndex(coeff0, None, None, 1, valid, reason)


def index_closed_form(req: IndexRequest) -> ClosedFormIndex:
    """Closed form on the exact hemisphere spectrum, where it is proved.

    Refuses other spectra; use closed_form_estimate for a reported,
    unasserted comparison there.
    """
    if not all(rec.exact for rec in req.records):
        raise ClosedFormRegimeError(
            "closed form is proved on the exact hemisphere spectrum only; "
            "use closed_form_estimate for general radii (product path stays authoritative)"
        )
    cf = closed_form_estimate(req)
    if not cf.valid:
        raise AssertionError(
            "closed-form precondition unexpectedly failed on a hemisphere spectrum"
        )
    return cf


@dataclass(frozen=True)
class ConeReport:
    """Which sign-cone statements apply to an index and whether they hold."""

    p: int
    dim_v0: int
    dim_v_minus: int
    even_exponent: bool
    even_v0_even_product: bool
    even_v0_odd_product: bool
    implied_cone: str | None  # "minus_cone" | "plus_cone" | None
    classification: str
    consistent: bool

    def to_json_obj(self) -> dict:
        return {
            "p": self.p,
            "dim_v0": self.dim_v0,
            "dim_v_minus": self.dim_v_minus,
            "even_exponent": self.even_exponent,
            "even_v0_even_product": self.even_v0_even_product,
            "even_v0_odd_product": self.even_v0_odd_product,
            "implied_cone": self.implied_cone,
            "classification": self.classification,
            "consistent": self.consistent,
        }


def cone_predicates(req: IndexRequest, index: EulerElement | None = None) -> ConeReport:
    """Evaluate the parity-based cone statements against the actual index.

    p even forces the minus cone; dim V0 even forces the minus cone when
    p * dim V- is even and the plus cone when it is odd.  Cone membership
    is weak, so the zero element belongs to both.
    """
    if index is None:
        index = index_product(req)
    p = req.p_active
    dim_v0 = req.record.mu
    dim_v_minus = req.nu_prev
    even_exponent = p % 2 == 0
    even_v0 = dim_v0 % 2 == 0
    prod_even = (p * dim_v_minus) % 2 == 0
    item_minus = even_exponent or (even_v0 and prod_even)
    item_plus = even_v0 and not prod_even
    if item_minus and item_plus:
        raise AssertionError("contradictory cone implications; parity logic broken")
    implied = "minus_cone" if item_minus else ("plus_cone" if item_plus else None)
    cls = index.classify()
    if implied == "minus_cone":
        consistent = cls in ("theta", "minus_cone")
    elif implied == "plus_cone":
        consistent = cls in ("theta", "plus_cone")
    else:
        consistent = True
    return ConeReport(
        p=p,
        dim_v0=dim_v0,
        dim_v_minus=dim_v_minus,
        even_exponent=even_exponent,
        even_v0_even_product=even_v0 and prod_even,
        even_v0_odd_product=item_plus,
        implied_cone=implied,
        classification=cls,
        consistent=consistent,
    )


def index_report(req: IndexRequest) -> dict:
    """Machine-readable summary: index, cone data, closed-form check.

    closed_form_check is 'pass'/'fail' wherever the closed form is proved
    (hemisphere, or general gamma with the precondition satisfied) and
    'skipped' when the precondition fails and no claim is made.
    """
    idx = index_product(req)
    cone = cone_predicates(req, idx)
    cf = closed_form_estimate(req)
    if cf.valid:
        status = "pass" if cf.matches(idx) else "fail"
    else:
        status = "skipped"
    return {
        "request": {
            "m0": req.m0,
            "sign": req.sign,
            "p_minus": req.p_minus,
            "p_plus": req.p_plus,
            "subject": req.record.value if req.sign == POSITIVE else -req.record.value,
        },
        "index": idx.to_json_obj(),
        "cone": cone.to_json_obj(),
        "closed_form": cf.to_json_obj(),
        "closed_form_check": status,
    }


def merged_below(records: Sequence[EigenvalueRecord], m0: int):
    """Direct sum of the eigenspaces strictly below position m0 (1-based)."""
    return direct_sum(rec.eigenspace for rec in records[: m0 - 1])
