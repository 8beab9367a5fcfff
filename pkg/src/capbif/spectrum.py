"""Dirichlet spectrum of the Laplace-Beltrami operator on geodesic balls.

The ball of radius gamma in the unit n-sphere is parametrized by the
polar angle t in (0, gamma].  Separation of variables reduces the
eigenproblem to the singular radial equation

    T'' + (n-1) cot(t) T' + (lambda - beta_m / sin^2 t) T = 0,
    beta_m = m (m + n - 2),

whose solution regular at t = 0 behaves like t^m.  The mode-m Dirichlet
eigenvalues are the lambda with T_m(lambda, gamma) = 0; the eigenspace
over an eigenvalue is the direct sum of the degree-m harmonic spaces
over the modes m that share it.

Two paths produce spectra.  The hemisphere gamma = pi/2 is exact integer
combinatorics: lambda_m = m (n + m - 1) with multiplicity
C(n + m - 2, n - 1) and eigenspace spanned by the harmonic degrees
m-1, m-3, ...  For general gamma a shooting method scans lambda,
brackets sign changes of T_m(., gamma), bisects, and clusters roots
across modes.  Hemisphere requests are dispatched by the exact token
`HEMISPHERE`, never by comparing floats against pi/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernels
from .so2rep import SO2Rep, direct_sum, so2_decompose

HEMISPHERE = "hemisphere"

# numeric policy; changing any value invalidates cached spectra
SERIES_EPS = 1e-6
ODE_RTOL = 1e-10
ODE_ATOL = 1e-10
RENORM_LIMIT = 1e8
SCAN_LAMBDA_START = 1e-3
BISECT_RTOL = 1e-9
CLUSTER_RTOL = 1e-6
CLUSTER_AMBIGUITY_RTOL = 1e-5
MAX_STEPS = 500_000


def tolerance_signature() -> dict:
    """The numeric policy as a flat dict; part of every cache key."""
    return {
        "series_eps": SERIES_EPS,
        "ode_rtol": ODE_RTOL,
        "ode_atol": ODE_ATOL,
        "renorm_limit": RENORM_LIMIT,
        "scan_lambda_start": SCAN_LAMBDA_START,
        "bisect_rtol": BISECT_RTOL,
        "cluster_rtol": CLUSTER_RTOL,
        "cluster_ambiguity_rtol": CLUSTER_AMBIGUITY_RTOL,
    }


class SpectrumError(Exception):
    pass


class ShootingError(SpectrumError):
    """Integration failure; carries the (n, m, lambda, t) where it happened."""

    def __init__(self, n: int, m: int, lam: float, t: float, reason: str):
        self.n = n
        self.m = m
        self.lam = lam
        self.t = t
        self.reason = reason
        super().__init__(
            f"radial integration failed ({reason}) at n={n}, m={m}, lambda={lam!r}, t={t!r}"
        )


class BracketError(SpectrumError):
    """Root bookkeeping disagrees with the oscillation count; refine the grid."""


class ClusterAmbiguityError(SpectrumError):
    """Adjacent eigenvalues too close to separate at the cluster tolerance."""


class ScanRangeError(SpectrumError):
    """m_scan_max too small: a higher mode still has eigenvalues in range."""


@dataclass(frozen=True)
class RadialProblem:
    """Radial reduction at fixed angular mode m on the ball of radius gamma."""

    n: int
    m: int
    gamma: float

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"ambient dimension n must be >= 2, got {self.n}")
        if self.m < 0:
            raise ValueError(f"mode m must be >= 0, got {self.m}")
        if not (0.0 < self.gamma < math.pi):
            raise ValueError(f"radius gamma must lie in (0, pi), got {self.gamma!r}")

    @property
    def beta(self) -> int:
        return self.m * (self.m + self.n - 2)


@dataclass(frozen=True)
class EigenvalueRecord:
    """One point of the Dirichlet spectrum with its symmetry data.

    value     the eigenvalue (int on the exact hemisphere path)
    gamma_set modes whose radial problems share this eigenvalue, ascending
    eigenspace direct sum of the harmonic-space weight decompositions
    mu        eigenspace dimension
    nu        cumulative dimension up to and including this record
    exact     True for hemisphere records
    """

    value: float | int
    gamma_set: tuple[int, ...]
    eigenspace: SO2Rep
    mu: int
    nu: int
    exact: bool = False

    def __post_init__(self) -> None:
        if not self.gamma_set:
            raise ValueError("gamma_set must be nonempty")
        if tuple(sorted(set(self.gamma_set))) != self.gamma_set:
            raise ValueError("gamma_set must be strictly ascending")
        if self.mu != self.eigenspace.dim:
            raise ValueError("mu must equal the eigenspace dimension")

    def to_json_obj(self) -> dict:
        return {
            "lambda": self.value,
            "exact": self.exact,
            "gamma_set": list(self.gamma_set),
            "eigenspace": self.eigenspace.to_json_obj(),
            "mu": self.mu,
            "nu": self.nu,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "EigenvalueRecord":
        exact = bool(obj["exact"])
        value = int(obj["lambda"]) if exact else float(obj["lambda"])
        return cls(
            value=value,
            gamma_set=tuple(int(g) for g in obj["gamma_set"]),
            eigenspace=SO2Rep.from_json_obj(obj["eigenspace"]),
            mu=int(obj["mu"]),
            nu=int(obj["nu"]),
            exact=exact,
        )


# -- exact hemisphere path --------------------------------------------


def hemisphere_eigenvalue(n: int, m: int) -> int:
    return m * (n + m - 1)


def hemisphere_spectrum(n: int, m_max: int) -> list[EigenvalueRecord]:
    """Records for the first m_max hemisphere eigenvalues, exact integers.

    The m-th eigenvalue is m(n+m-1); its eigenspace is the direct sum of
    the harmonic spaces of degrees m-1, m-3, ... down to 0 or 1, and the
    multiplicity identity mu = C(n+m-2, n-1) is asserted rather than
    trusted.
    """
    if n < 2:
        raise ValueError(f"ambient dimension n must be >= 2, got {n}")
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    records: list[EigenvalueRecord] = []
    nu = 0
    for m in range(1, m_max + 1):
        modes = tuple(range((m - 1) % 2, m, 2))
        eigenspace = direct_sum(so2_decompose(n, l) for l in modes)
        mu = eigenspace.dim
        if mu != math.comb(n + m - 2, n - 1):
            raise AssertionError(
                f"hemisphere multiplicity identity failed at n={n}, m={m}"
            )
        nu += mu
        records.append(
            EigenvalueRecord(
                value=hemisphere_eigenvalue(n, m),
                gamma_set=modes,
                eigenspace=eigenspace,
                mu=mu,
                nu=nu,
                exact=True,
            )
        )
    return records


def hemisphere_spectrum_up_to(n: int, lambda_max: float) -> list[EigenvalueRecord]:
    m = 0
    while hemisphere_eigenvalue(n, m + 1) <= lambda_max:
        m += 1
    return hemisphere_spectrum(n, m)


# -- shooting path ----------------------------------------------------


def _series_start(problem: RadialProblem, lam: float) -> tuple[float, float]:
    """Two-term regular series at t = eps, common positive factor stripped.

    T(t) = t^m (1 + c t^2 + O(t^4)) with
    c = ((n-1) m / 3 + beta / 3 - lambda) / (2 (2m + n)); the factor
    eps^(m-1) is dropped for m >= 1 so large modes cannot underflow.
    """
    n, m = problem.n, problem.m
    eps = SERIES_EPS
    c = ((n - 1) * m / 3.0 + problem.beta / 3.0 - lam) / (2.0 * (2 * m + n))
    if m == 0:
        return 1.0 + c * eps * eps, 2.0 * c * eps
    return eps * (1.0 + c * eps * eps), m + c * (m + 2) * eps * eps


def _shoot_detail(problem: RadialProblem, lam: float) -> tuple[float, int]:
    """(sign value at gamma, interior crossing count) for T_m(lam, .)."""
    T0, P0 = _series_start(problem, lam)
    max_step = min(0.05, 1.0 / math.sqrt(max(lam, 1.0)))
    T, _P, crossings, _renorms, status, t_at = _kernels.shoot_rk45(
        float(problem.n - 1),
        float(problem.beta),
        float(lam),
        SERIES_EPS,
        float(problem.gamma),
        T0,
        P0,
        ODE_RTOL,
        ODE_ATOL,
        RENORM_LIMIT,
        max_step,
        MAX_STEPS,
    )
    if status == _kernels.SHOOT_STEP_UNDERFLOW:
        raise ShootingError(problem.n, problem.m, lam, t_at, "step size underflow")
    if status == _kernels.SHOOT_NONFINITE:
        raise ShootingError(problem.n, problem.m, lam, t_at, "non-finite state")
    if status == _kernels.SHOOT_STEP_BUDGET:
        raise ShootingError(problem.n, problem.m, lam, t_at, "step budget exhausted")
    return T, crossings


def radial_shoot(problem: RadialProblem, lam: float) -> float:
    """Renormalized T_m(lam, gamma); only its sign and zeros are meaningful."""
    if lam <= 0.0:
        raise ValueError(f"lambda must be positive, got {lam!r}")
    return _shoot_detail(problem, lam)[0]


def _scan_grid(lambda_max: float) -> list[float]:
    # multiplicative-ish growth lam -> lam + min(1, lam/8), capped at lambda_max
    grid = [SCAN_LAMBDA_START]
    while grid[-1] < lambda_max:
        step = min(1.0, grid[-1] / 8.0)
        nxt = grid[-1] + step
        if nxt >= lambda_max:
            grid.append(lambda_max)
            break
        grid.append(nxt)
    return grid


def _bisect(problem: RadialProblem, a: float, fa: float, b: float, fb: float) -> float:
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    while b - a > BISECT_RTOL * b:
        mid = 0.5 * (a + b)
        fm = radial_shoot(problem, mid)
        if fm == 0.0:
            return mid
        if (fa < 0.0) != (fm < 0.0):
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def mode_eigenvalues(problem: RadialProblem, lambda_max: float) -> list[float]:
    """All mode-m Dirichlet eigenvalues in (0, lambda_max], bisected to
    relative tolerance BISECT_RTOL.

    Completeness is checked against the oscillation count: the number of
    interior zeros of T_m(lambda_max, .) equals the number of eigenvalues
    strictly below lambda_max, so a root missed by the scan grid (for
    instance two sign changes inside one cell) is detected and raises
    BracketError asking for a finer grid.
    """
    if lambda_max <= SCAN_LAMBDA_START:
        return []
    grid = _scan_grid(lambda_max)
    values = [radial_shoot(problem, lam) for lam in grid]
    roots: list[float] = []
    for i in range(1, len(grid)):
        va, vb = values[i - 1], values[i]
        if va == 0.0:
            continue  # handled as the right endpoint of the previous cell
        if vb == 0.0 or (va < 0.0) != (vb < 0.0):
            roots.append(_bisect(problem, grid[i - 1], va, grid[i], vb))
    for r1, r2 in zip(roots, roots[1:]):
        if r2 - r1 <= BISECT_RTOL * r2:
            raise BracketError(
                f"mode {problem.m}: roots {r1!r} and {r2!r} closer than the bisection "
                "tolerance; refine the lambda scan grid"
            )
    crossings = _shoot_detail(problem, lambda_max)[1]
    boundary = 1 if roots and (lambda_max - roots[-1]) <= 1e-6 * lambda_max else 0
    if crossings not in (len(roots) - boundary, len(roots)):
        raise BracketError(
            f"mode {problem.m}: oscillation count {crossings} at lambda_max={lambda_max!r} "
            f"does not match the {len(roots)} bracketed roots; the scan grid missed a "
            "sign change (possibly two inside one cell) - refine the lambda scan grid"
        )
    return roots


def assemble_spectrum(
    n: int,
    gamma: float | str,
    lambda_max: float,
    m_scan_max: int | None = None,
) -> list[EigenvalueRecord]:
    """Ordered spectrum on the ball of radius gamma up to lambda_max.

    gamma is either the exact token HEMISPHERE (integer fast path) or a
    float in (0, pi).  Roots of different modes are clustered at relative
    tolerance CLUSTER_RTOL into single records; a gap between distinct
    clusters below CLUSTER_AMBIGUITY_RTOL raises ClusterAmbiguityError
    instead of silently guessing.  Mode scanning stops at the first mode
    whose radial problem has no eigenvalue in range (first roots increase
    strictly with the mode); an explicit m_scan_max is verified the same
    way and raises ScanRangeError if too small.
    """
    if gamma == HEMISPHERE:
        return hemisphere_spectrum_up_to(n, lambda_max)
    gamma = float(gamma)
    if lambda_max <= 0.0:
        raise ValueError(f"lambda_max must be positive, got {lambda_max!r}")

    per_mode: dict[int, list[float]] = {}
    first_roots: list[float] = []
    m = 0
    while True:
        if m_scan_max is not None and m > m_scan_max:
            # the configured cap: verify mode m itself is out of range
            roots = mode_eigenvalues(RadialProblem(n, m, gamma), lambda_max)
            if roots:
                raise ScanRangeError(
                    f"m_scan_max={m_scan_max} too small: mode {m} still has an "
                    f"eigenvalue {roots[0]!r} <= lambda_max"
                )
            break
        roots = mode_eigenvalues(RadialProblem(n, m, gamma), lambda_max)
        if not roots:
            break  # first roots increase with m, so no later mode is in range
        if first_roots and roots[0] <= first_roots[-1]:
            raise BracketError(
                f"first root of mode {m} ({roots[0]!r}) does not exceed the previous "
                f"mode's ({first_roots[-1]!r}); integration is not trustworthy here"
            )
        first_roots.append(roots[0])
        per_mode[m] = roots
        m += 1

    pairs = sorted(
        (lam, mode) for mode, roots in per_mode.items() for lam in roots
    )
    records: list[EigenvalueRecord] = []
    nu = 0
    i = 0
    while i < len(pairs):
        rep_value = pairs[i][0]
        members = [pairs[i]]
        j = i + 1
        while j < len(pairs) and pairs[j][0] <= rep_value * (1.0 + CLUSTER_RTOL):
            members.append(pairs[j])
            j += 1
        if j < len(pairs) and pairs[j][0] <= rep_value * (1.0 + CLUSTER_AMBIGUITY_RTOL):
            raise ClusterAmbiguityError(
                f"eigenvalues {rep_value!r} and {pairs[j][0]!r} are separated by less "
                "than the ambiguity tolerance; cannot decide whether they coincide"
            )
        modes = sorted(mode for _, mode in members)
        if len(set(modes)) != len(modes):
            raise ClusterAmbiguityError(
                f"two roots of mode {modes[0]} fell into one cluster near {rep_value!r}"
            )
        eigenspace = direct_sum(so2_decompose(n, mode) for mode in modes)
        mu = eigenspace.dim
        nu += mu
        value = math.fsum(lam for lam, _ in members) / len(members)
        records.append(
            EigenvalueRecord(
                value=value,
                gamma_set=tuple(modes),
                eigenspace=eigenspace,
                mu=mu,
                nu=nu,
                exact=False,
            )
        )
        i = j
    return records


# -- signed candidates ------------------------------------------------


@dataclass(frozen=True)
class SignedCandidate:
    """A signed spectrum point: value = sign * lambda_{m0}, m0 1-based."""

    value: float | int
    m0: int
    sign: str  # "positive" | "negative"


def signed_candidate_set(
    records: Sequence[EigenvalueRecord], p_minus: int, p_plus: int
) -> list[SignedCandidate]:
    """Where bifurcation can happen for a system with signature (p_minus, p_plus).

    Positive eigenvalues qualify when p_minus > 0, their negatives when
    p_plus > 0; ordered ascending by signed value.
    """
    if p_minus < 0 or p_plus < 0:
        raise ValueError("signature counts must be >= 0")
    if p_minus == 0 and p_plus == 0:
        raise ValueError("signature (0, 0) has no candidate set")
    out: list[SignedCandidate] = []
    if p_plus > 0:
        for i in range(len(records), 0, -1):
            out.append(SignedCandidate(-records[i - 1].value, i, "negative"))
    if p_minus > 0:
        for i in range(1, len(records) + 1):
            out.append(SignedCandidate(records[i - 1].value, i, "positive"))
    return out


def lookup_candidate(
    records: Sequence[EigenvalueRecord], signed_value: float
) -> tuple[int, str]:
    """(m0, sign) of the record matching a signed eigenvalue; exact for
    integer hemisphere values, CLUSTER_RTOL-relative otherwise."""
    if signed_value == 0:
        raise ValueError("0 is never a candidate")
    sign = "positive" if signed_value > 0 else "negative"
    target = abs(signed_value)
    for i, rec in enumerate(records, start=1):
        if rec.exact:
            if target == rec.value:
                return i, sign
        elif abs(target - rec.value) <= CLUSTER_RTOL * rec.value:
            return i, sign
    raise ValueError(f"{signed_value!r} does not match any spectrum record")


def iter_mode_sets(records: Iterable[EigenvalueRecord]) -> list[tuple[int, ...]]:
    return [rec.gamma_set for rec in records]
