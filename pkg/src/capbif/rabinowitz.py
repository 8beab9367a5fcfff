"""Global bifurcation certificates from index sums.

The underlying alternative: a continuum of nontrivial solutions
branching at a signed candidate is either unbounded or returns to the
trivial line, and in the bounded case the indices over its return set
sum to the zero element.  A candidate set whose every admissible subset
has nonzero index sum therefore certifies unboundedness.

On the hemisphere this package proves the nonzero-sum property
structurally: for a subset with largest eigenvalue position M >= 2 the
sum is nonzero in coordinate M - 1, because only the +-lambda_M indices
reach that coordinate and their contributions

    s+ p_minus [lambda_M included] + s- p_plus [-lambda_M included],
    s+- = (-1)^(1 + nu_M p_-+)

cannot cancel (equal exponent parity gives equal signs; unequal parity
makes the magnitudes differ).  Subsets supported on the first eigenvalue
live in coordinate 0 where the sum is ((-1)^p_minus - 1) and/or
((-1)^p_plus - 1).  A brute-force subset scan cross-checks the
structural verdict; a disagreement or a zero sum over a qualifying
subset is an internal error, never a certificate.

Every certificate embeds the evidence needed to recompute it bit for
bit; `recheck_certificate` does exactly that.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import __version__
from .bifindex import NEGATIVE, POSITIVE, IndexRequest, index_product
from .euler import ZERO, EulerElement
from .spectrum import (
    HEMISPHERE,
    EigenvalueRecord,
    SignedCandidate,
    assemble_spectrum,
    hemisphere_eigenvalue,
    hemisphere_spectrum,
    hemisphere_spectrum_up_to,
    lookup_candidate,
    signed_candidate_set,
    tolerance_signature,
)
from ._kernels import subset_sums, subset_zero_flags

VERDICT_PROVED = "proved"
VERDICT_REFUTED = "refuted"
VERDICT_HYPOTHESIS_NOT_MET = "hypothesis_not_met"
VERDICT_INCONCLUSIVE = "inconclusive"

EXIT_BY_VERDICT = {
    VERDICT_PROVED: 0,
    VERDICT_HYPOTHESIS_NOT_MET: 2,
    VERDICT_INCONCLUSIVE: 3,
    VERDICT_REFUTED: 1,
}

_SAMPLE_SEED = 20240915  # fixed so sampled certificates stay deterministic


@dataclass(frozen=True)
class SystemConfig:
    """Problem data: ambient dimension, ball radius, signature of the
    linearization's coefficient matrix (p_minus negative-definite and
    p_plus positive-definite blocks)."""

    n: int
    gamma: float | str
    p_minus: int
    p_plus: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"ambient dimension n must be >= 2, got {self.n}")
        if self.gamma != HEMISPHERE:
            g = float(self.gamma)
            if not (0.0 < g < math.pi):
                raise ValueError(f"radius gamma must lie in (0, pi), got {self.gamma!r}")
            object.__setattr__(self, "gamma", g)
        if self.p_minus < 0 or self.p_plus < 0:
            raise ValueError("signature counts must be >= 0")
        if self.p_minus + self.p_plus == 0:
            raise ValueError("signature (0, 0) leaves nothing to certify")

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "gamma": self.gamma,
            "p_minus": self.p_minus,
            "p_plus": self.p_plus,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SystemConfig":
        gamma = obj["gamma"]
        if gamma != HEMISPHERE:
            gamma = float(gamma)
        return cls(int(obj["n"]), gamma, int(obj["p_minus"]), int(obj["p_plus"]))


def _tolerances_field(config: SystemConfig) -> dict:
    return {
        "exact_hemisphere": config.gamma == HEMISPHERE,
        **tolerance_signature(),
    }


@dataclass(frozen=True)
class Certificate:
    """Self-contained verdict: kind, inputs, per-candidate evidence, sum,
    and the parameters needed to recompute everything."""

    kind: str
    config: SystemConfig
    subject: object
    evidence: tuple[dict, ...]
    sum_element: EulerElement | None
    verdict: str
    details: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_BY_VERDICT[self.verdict]

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "config": self.config.to_json_obj(),
            "subject": self.subject,
            "evidence": list(self.evidence),
            "sum": None if self.sum_element is None else self.sum_element.to_json_obj(),
            "verdict": self.verdict,
            "details": self.details,
            "tolerances": _tolerances_field(self.config),
            "tool_version": __version__,
        }


def _sign_of_value(value: float) -> str:
    return POSITIVE if value > 0 else NEGATIVE


def _resolve_records(
    config: SystemConfig,
    records: Sequence[EigenvalueRecord] | None,
    need: int | None = None,
    lambda_max: float | None = None,
) -> list[EigenvalueRecord]:
    if records is not None:
        return list(records)
    if config.gamma == HEMISPHERE:
        if need is not None:
            return hemisphere_spectrum(config.n, need)
        if lambda_max is not None:
            return hemisphere_spectrum_up_to(config.n, lambda_max)
        raise ValueError("hemisphere spectrum needs a record count or lambda_max")
    if lambda_max is None:
        raise ValueError("general-radius certificates need records or lambda_max")
    return assemble_spectrum(config.n, config.gamma, lambda_max)


# -- alternative sums -------------------------------------------------


def _candidate_evidence(
    values: Sequence[float],
    config: SystemConfig,
    records: Sequence[EigenvalueRecord],
) -> tuple[list[dict], EulerElement]:
    seen: set[float] = set()
    entries: list[tuple[float, dict, EulerElement]] = []
    for value in values:
        if value in seen:
            raise ValueError(f"candidate {value!r} listed twice")
        seen.add(value)
        m0, sign = lookup_candidate(records, value)
        req = IndexRequest(tuple(records), m0, sign, config.p_minus, config.p_plus)
        idx = index_product(req)
        entries.append(
            (value, {"lambda_signed": value, "m0": m0, "index": idx.to_json_obj()}, idx)
        )
    entries.sort(key=lambda e: e[0])
    total = ZERO
    for _, _, idx in entries:
        total = total + idx
    return [e[1] for e in entries], total


def alternative_sum(
    values: Sequence[float],
    config: SystemConfig,
    records: Sequence[EigenvalueRecord],
) -> tuple[EulerElement, bool]:
    """Index sum over an explicit candidate set and whether it vanishes.

    Each value must match a spectrum record (negatives require p_plus > 0,
    positives p_minus > 0) or ValueError is raised.
    """
    _, total = _candidate_evidence(values, config, records)
    return total, total.is_zero()


def certify_alternative(
    values: Sequence[float],
    config: SystemConfig,
    records: Sequence[EigenvalueRecord] | None = None,
    lambda_max: float | None = None,
) -> Certificate:
    """Certificate form of `alternative_sum`: proved when the sum is
    nonzero (no bounded continuum can return exactly through this set),
    inconclusive when it vanishes."""
    recs = _resolve_records(
        config,
        records,
        need=None if config.gamma != HEMISPHERE else _hemisphere_need(values, config),
        lambda_max=lambda_max,
    )
    evidence, total = _candidate_evidence(values, config, recs)
    verdict = VERDICT_INCONCLUSIVE if total.is_zero() else VERDICT_PROVED
    return Certificate(
        kind="alternative_sum",
        config=config,
        subject=sorted(values),
        evidence=tuple(evidence),
        sum_element=total,
        verdict=verdict,
        details={
            "is_theta": total.is_zero(),
            "params": {"lambda_max": lambda_max},
            "note": (
                "nonzero sum: a bounded continuum cannot meet the trivial line "
                "exactly at this candidate set"
            ),
        },
    )


def _hemisphere_need(values: Sequence[float], config: SystemConfig) -> int:
    need = 0
    for value in values:
        lam = abs(value)
        m = 0
        while hemisphere_eigenvalue(config.n, m + 1) <= lam:
            m += 1
        need = max(need, m)
    return max(need, 1)


# -- subset machinery -------------------------------------------------


def candidate_index_matrix(
    records: Sequence[EigenvalueRecord], config: SystemConfig
) -> tuple[list[SignedCandidate], list[EulerElement], np.ndarray]:
    """All signed candidates over `records` with their indices, plus the
    K x W int64 coefficient matrix used by the subset kernels."""
    candidates = signed_candidate_set(records, config.p_minus, config.p_plus)
    K = len(candidates)
    W = len(records)
    mat = np.zeros((K, W), dtype=np.int64)
    elements: list[EulerElement] = []
    bound = 0
    for row, cand in enumerate(candidates):
        req = IndexRequest(tuple(records), cand.m0, cand.sign, config.p_minus, config.p_plus)
        idx = index_product(req)
        elements.append(idx)
        for i, c in idx.items():
            mat[row, i] = c
            bound = max(bound, abs(c))
    if bound * max(K, 1) >= 2**62:
        raise OverflowError("index coefficients too large for the int64 subset scan")
    return candidates, elements, mat


def structural_zero_flags(
    candidates: Sequence[SignedCandidate],
    config: SystemConfig,
    masks: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """(predicted_zero, max_position) for every mask in `masks`.

    predicted_zero is the structural claim that the subset's index sum is
    the zero element; exact on hemisphere spectra.
    """
    K = len(candidates)
    m0s = np.array([c.m0 for c in candidates], dtype=np.int64)
    maxm0 = np.zeros(masks.shape, dtype=np.int64)
    for k in range(K):
        has = ((masks >> k) & 1).astype(bool)
        np.maximum(maxm0, np.where(has, m0s[k], 0), out=maxm0)
    pred_zero = maxm0 == 0
    at_one = maxm0 == 1
    if at_one.any():
        c0 = np.zeros(masks.shape, dtype=np.int64)
        for k, cand in enumerate(candidates):
            if cand.m0 != 1:
                continue
            p = config.p_minus if cand.sign == POSITIVE else config.p_plus
            has = ((masks >> k) & 1).astype(np.int64)
            c0 += has * ((-1) ** p - 1)
        pred_zero = pred_zero | (at_one & (c0 == 0))
    return pred_zero, maxm0


def _structural_witness_expected(
    candidates: Sequence[SignedCandidate],
    config: SystemConfig,
    records: Sequence[EigenvalueRecord],
    masks: np.ndarray,
    maxm0: np.ndarray,
) -> np.ndarray:
    """Predicted sum coordinate maxm0 - 1 for masks with maxm0 >= 2."""
    expected = np.zeros(masks.shape, dtype=np.int64)
    for k, cand in enumerate(candidates):
        top = maxm0 == cand.m0
        has = (((masks >> k) & 1) == 1) & top & (maxm0 >= 2)
        if not has.any():
            continue
        nu = records[cand.m0 - 1].nu
        p = config.p_minus if cand.sign == POSITIVE else config.p_plus
        s = (-1) ** (1 + nu * p)
        expected += has.astype(np.int64) * s * p
    return expected


# -- unbounded-branch certification -----------------------------------


def certify_unbounded(
    config: SystemConfig,
    m0: int,
    sign: str = POSITIVE,
    scan_bound: int = 8,
    subset_budget: int = 1 << 20,
) -> Certificate:
    """Certify that the continuum at the signed candidate is unbounded.

    Exact hemisphere only.  Gates the branching hypothesis (nontrivial
    eigenspace, or odd p * mu at the first eigenvalue); then checks every
    candidate subset containing the subject inside the window
    [-lambda_scan_bound, lambda_scan_bound] for a nonzero index sum,
    exhaustively while 2^(K-1) fits the budget and by structural argument
    plus seeded sampling beyond it.  A zero sum anywhere is an internal
    inconsistency, never a verdict.
    """
    if config.gamma != HEMISPHERE:
        raise ValueError(
            "window certification is exact on the hemisphere only; "
            "general radii need an explicit candidate list (see alternative sums)"
        )
    if sign not in (POSITIVE, NEGATIVE):
        raise ValueError(f"sign must be {POSITIVE!r} or {NEGATIVE!r}")
    if sign == POSITIVE and config.p_minus == 0:
        raise ValueError("+lambda subjects need p_minus > 0")
    if sign == NEGATIVE and config.p_plus == 0:
        raise ValueError("-lambda subjects need p_plus > 0")
    if m0 < 1:
        raise ValueError(f"m0 must be >= 1, got {m0}")
    if scan_bound < m0:
        raise ValueError(f"scan_bound {scan_bound} does not reach m0 {m0}")
    if subset_budget < 1:
        raise ValueError("subset_budget must be >= 1")

    records = hemisphere_spectrum(config.n, scan_bound)
    subject_rec = records[m0 - 1]
    subject_value = subject_rec.value if sign == POSITIVE else -subject_rec.value
    p = config.p_minus if sign == POSITIVE else config.p_plus
    params = {
        "m0": m0,
        "sign": sign,
        "scan_bound": scan_bound,
        "subset_budget": subset_budget,
    }

    nontrivial = subject_rec.eigenspace.top_weight >= 1
    odd_dim_product = (p * subject_rec.mu) % 2 == 1
    if not (nontrivial or odd_dim_product):
        return Certificate(
            kind="unbounded",
            config=config,
            subject=subject_value,
            evidence=(),
            sum_element=None,
            verdict=VERDICT_HYPOTHESIS_NOT_MET,
            details={
                "params": params,
                "reason": (
                    "the subject's eigenspace carries no rotation and "
                    f"p * dim = {p} * {subject_rec.mu} is even; the branching "
                    "hypothesis fails"
                ),
            },
        )

    candidates, elements, mat = candidate_index_matrix(records, config)
    K = len(candidates)
    subject_bit = next(
        k for k, c in enumerate(candidates) if c.m0 == m0 and c.sign == sign
    )
    evidence = tuple(
        {
            "lambda_signed": cand.value,
            "m0": cand.m0,
            "index": elements[k].to_json_obj(),
        }
        for k, cand in enumerate(candidates)
    )
    total = ZERO
    for e in elements:
        total = total + e

    exhaustive = (1 << K) <= 2 * subset_budget
    if exhaustive:
        flags = np.asarray(subset_zero_flags(mat))
        masks = np.arange(1 << K, dtype=np.int64)
        pred_zero, _ = structural_zero_flags(candidates, config, masks)
        disagree = np.nonzero(flags != pred_zero)[0]
        if disagree.size:
            raise RuntimeError(
                f"structural fast path disagrees with brute force at mask {int(disagree[0])}"
            )
        with_subject = ((masks >> subject_bit) & 1) == 1
        zero_with_subject = np.nonzero(flags & with_subject)[0]
        if zero_with_subject.size:
            raise RuntimeError(
                "internal inconsistency: subset containing the subject summed to "
                f"the zero element (mask {int(zero_with_subject[0])})"
            )
        checked = int(with_subject.sum())
        sampled = False
    else:
        rng = np.random.default_rng(_SAMPLE_SEED)
        sample = rng.integers(0, 1 << K, size=subset_budget, dtype=np.int64)
        sample |= np.int64(1) << subject_bit
        sample = np.unique(np.append(sample, (np.int64(1) << K) - 1))
        sums = subset_sums(mat, sample)
        nonzero = (sums != 0).any(axis=1)
        if not nonzero.all():
            bad = int(sample[np.nonzero(~nonzero)[0][0]])
            raise RuntimeError(
                f"internal inconsistency: sampled subject subset {bad} summed to zero"
            )
        pred_zero, maxm0 = structural_zero_flags(candidates, config, sample)
        if pred_zero.any():
            bad = int(sample[np.nonzero(pred_zero)[0][0]])
            raise RuntimeError(
                f"structural fast path predicted zero for subject subset {bad}"
            )
        expected = _structural_witness_expected(candidates, config, records, sample, maxm0)
        high = maxm0 >= 2
        got = sums[np.arange(sample.size), np.where(high, maxm0 - 1, 0)]
        if (high & (got != expected)).any():
            bad = int(sample[np.nonzero(high & (got != expected))[0][0]])
            raise RuntimeError(
                f"witness coordinate mismatch on sampled subset {bad}"
            )
        checked = int(sample.size)
        sampled = True

    return Certificate(
        kind="unbounded",
        config=config,
        subject=subject_value,
        evidence=evidence,
        sum_element=total,
        verdict=VERDICT_PROVED,
        details={
            "params": params,
            "n_candidates": K,
            "subsets_containing_subject": 1 << (K - 1),
            "subsets_checked": checked,
            "exhaustive": not sampled,
            "structural_rule": (
                "subsets reaching position M >= 2 are nonzero in sum coordinate "
                "M - 1; first-position subsets are nonzero in coordinate 0 "
                "exactly when an included side has odd signature count"
            ),
            "hypothesis": {
                "eigenspace_nontrivial": nontrivial,
                "p_times_dim_odd": odd_dim_product,
            },
        },
    )


# -- necessary conditions for boundedness ------------------------------


def bounded_necessary(
    config: SystemConfig,
    m0: int,
    sign: str = POSITIVE,
    records: Sequence[EigenvalueRecord] | None = None,
    lambda_max: float | None = None,
) -> Certificate:
    """Conditions any bounded continuum at the subject must satisfy.

    Hypothesis: m0 >= 2 and the subject side's signature count positive
    and even.  Conclusion reported: the opposite count must be positive
    odd, and the continuum must also meet the opposite signed spectrum;
    when the opposite count fails its parity, boundedness is impossible
    outright.  This is a conditional, so the verdict is 'proved' in the
    sense of conditions-emitted.
    """
    if sign not in (POSITIVE, NEGATIVE):
        raise ValueError(f"sign must be {POSITIVE!r} or {NEGATIVE!r}")
    recs = _resolve_records(config, records, need=max(m0, 1), lambda_max=lambda_max)
    if not 1 <= m0 <= len(recs):
        raise ValueError(f"m0 must index the spectrum (1..{len(recs)}), got {m0}")
    subject_rec = recs[m0 - 1]
    subject_value = subject_rec.value if sign == POSITIVE else -subject_rec.value
    p_subject = config.p_minus if sign == POSITIVE else config.p_plus
    p_opposite = config.p_plus if sign == POSITIVE else config.p_minus
    params = {"m0": m0, "sign": sign, "lambda_max": lambda_max}

    if m0 == 1:
        return Certificate(
            kind="necessary_conditions",
            config=config,
            subject=subject_value,
            evidence=(),
            sum_element=None,
            verdict=VERDICT_HYPOTHESIS_NOT_MET,
            details={
                "params": params,
                "reason": "the statement excludes the first eigenvalue (m0 must be >= 2)",
            },
        )
    if p_subject == 0 or p_subject % 2 == 1:
        return Certificate(
            kind="necessary_conditions",
            config=config,
            subject=subject_value,
            evidence=(),
            sum_element=None,
            verdict=VERDICT_HYPOTHESIS_NOT_MET,
            details={
                "params": params,
                "reason": (
                    f"subject-side signature count {p_subject} must be positive and even"
                ),
            },
        )

    req = IndexRequest(tuple(recs), m0, sign, config.p_minus, config.p_plus)
    idx = index_product(req)
    opposite_ok = p_opposite > 0 and p_opposite % 2 == 1
    must_meet = "negative_spectrum" if sign == POSITIVE else "positive_spectrum"
    return Certificate(
        kind="necessary_conditions",
        config=config,
        subject=subject_value,
        evidence=(
            {
                "lambda_signed": subject_value,
                "m0": m0,
                "index": idx.to_json_obj(),
            },
        ),
        sum_element=None,
        verdict=VERDICT_PROVED,
        details={
            "params": params,
            "conditions": {
                "opposite_count_odd": {
                    "required": True,
                    "count": p_opposite,
                    "satisfied": opposite_ok,
                },
                "must_meet": must_meet,
            },
            "boundedness_possible": opposite_ok,
            "note": (
                "necessary conditions only"
                if opposite_ok
                else "boundedness impossible: the opposite signature count fails "
                "its parity, so the continuum is unbounded"
            ),
        },
    )


# -- symmetry breaking -------------------------------------------------


def symmetry_breaking(
    record: EigenvalueRecord,
    config: SystemConfig,
    sign: str | None = None,
    position: int | None = None,
    lambda_max: float | None = None,
) -> Certificate:
    """Do the branches at this record break the full rotational symmetry?

    Proved exactly when no radial mode shares the eigenvalue (0 not in
    the record's mode set): every eigenfunction then changes under some
    rotation.  On the hemisphere this is equivalent to the eigenvalue
    position being even; both routes are computed and must agree.  A
    radial mode present leaves the verdict inconclusive, never refuted.
    """
    if sign is None:
        sign = POSITIVE if config.p_minus > 0 else NEGATIVE
    if sign == POSITIVE and config.p_minus == 0:
        raise ValueError("+lambda subjects need p_minus > 0")
    if sign == NEGATIVE and config.p_plus == 0:
        raise ValueError("-lambda subjects need p_plus > 0")
    contains_radial = 0 in record.gamma_set
    subject_value = record.value if sign == POSITIVE else -record.value
    if not record.exact and position is None:
        raise ValueError(
            "numeric records need an explicit position (and lambda_max) so the "
            "certificate can be rechecked"
        )

    parity_route = None
    if record.exact:
        m0 = position
        if m0 is None:
            m0 = 1
            while hemisphere_eigenvalue(config.n, m0) < record.value:
                m0 += 1
        if hemisphere_eigenvalue(config.n, m0) != record.value:
            raise ValueError(
                f"record value {record.value!r} is not the hemisphere eigenvalue at "
                f"position {m0}"
            )
        parity_proved = m0 % 2 == 0
        if parity_proved != (not contains_radial):
            raise RuntimeError(
                "parity route and mode-set route disagree on the hemisphere; "
                "spectrum construction is inconsistent"
            )
        parity_route = {"m0": m0, "m0_even": parity_proved}
        position = m0  # recheck needs the resolved position

    verdict = VERDICT_INCONCLUSIVE if contains_radial else VERDICT_PROVED
    return Certificate(
        kind="symmetry_breaking",
        config=config,
        subject=subject_value,
        evidence=(),
        sum_element=None,
        verdict=verdict,
        details={
            "params": {
                "position": position,
                "sign": sign,
                "lambda_max": lambda_max,
            },
            "gamma_set": list(record.gamma_set),
            "mu": record.mu,
            "contains_radial_mode": contains_radial,
            "parity_route": parity_route,
            "note": (
                "a radial mode shares the eigenvalue; branches may consist of "
                "rotation-invariant states"
                if contains_radial
                else "no radial mode shares the eigenvalue; every branch breaks "
                "the rotational symmetry"
            ),
        },
    )


# -- recheck -----------------------------------------------------------


def recheck_certificate(obj: dict) -> bool:
    """Recompute a certificate from its own config and parameters and
    compare bit for bit."""
    config = SystemConfig.from_json_obj(obj["config"])
    kind = obj["kind"]
    params = obj.get("details", {}).get("params", {})
    if kind == "unbounded":
        rebuilt = certify_unbounded(
            config,
            m0=int(params["m0"]),
            sign=params["sign"],
            scan_bound=int(params["scan_bound"]),
            subset_budget=int(params["subset_budget"]),
        )
    elif kind == "necessary_conditions":
        rebuilt = bounded_necessary(
            config,
            m0=int(params["m0"]),
            sign=params["sign"],
            lambda_max=params.get("lambda_max"),
        )
    elif kind == "symmetry_breaking":
        position = params.get("position")
        lambda_max = params.get("lambda_max")
        if config.gamma == HEMISPHERE:
            recs = hemisphere_spectrum(config.n, int(position))
        else:
            recs = assemble_spectrum(config.n, config.gamma, float(lambda_max))
        rebuilt = symmetry_breaking(
            recs[int(position) - 1],
            config,
            sign=params.get("sign"),
            position=position,
            lambda_max=lambda_max,
        )
    elif kind == "alternative_sum":
        rebuilt = certify_alternative(
            [v for v in obj["subject"]],
            config,
            lambda_max=params.get("lambda_max"),
        )
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return json.dumps(rebuilt.to_json_obj(), sort_keys=True) == json.dumps(
        obj, sort_keys=True
    )
