"""Hot numeric loops: radial shooting integrator and subset-sum scan.

Both kernels are written once as plain loop functions.  When numba is
importable they are also bound in compiled form (lazily, at first call),
and the active backend decides which binding the rest of the package
uses.  The numpy fallback for the subset scan is a genuinely vectorized
matmul rather than the uncompiled loop.  Everything here is
deterministic for fixed inputs.
"""

from __future__ import annotations

import math

import numpy as np

from ._backend import ACTIVE_BACKEND, HAS_NUMBA

# shoot status codes
SHOOT_OK = 0
SHOOT_STEP_UNDERFLOW = 1
SHOOT_NONFINITE = 2
SHOOT_STEP_BUDGET = 3


def _shoot_rk45(nm1, beta, lam, t0, t1, T0, P0, rtol, atol, renorm_limit, max_step, max_steps):
    """Integrate T'' + nm1*cot(t)*T' + (lam - beta/sin^2 t)*T = 0 from t0 to t1.

    Dormand-Prince 5(4) embedded pair, mixed absolute/relative error
    control, step factor clipped to [0.2, 5].  The equation is linear, so
    the state may be rescaled by a positive factor whenever its magnitude
    passes renorm_limit; the sign of T(t1) is unaffected.

    Returns (T, P, crossings, renorms, status, t): crossings counts the
    sign changes of T at accepted steps on (t0, t1], status is one of the
    SHOOT_* codes, t is where integration stopped.
    """

    def f(t, T, P):
        s = math.sin(t)
        dP = -nm1 * (math.cos(t) / s) * P - (lam - beta / (s * s)) * T
        return P, dP

    t = t0
    T = T0
    P = P0
    h = max_step
    if 0.1 * t0 < h:
        h = 0.1 * t0
    crossings = 0
    renorms = 0
    sign_prev = 1 if T > 0.0 else (-1 if T < 0.0 else 0)
    steps = 0
    while t1 - t > 1e-13 * (t1 if t1 > 1.0 else 1.0):
        steps += 1
        if steps > max_steps:
            return T, P, crossings, renorms, SHOOT_STEP_BUDGET, t
        if h < 1e-15:
            return T, P, crossings, renorms, SHOOT_STEP_UNDERFLOW, t
        if h > t1 - t:
            h = t1 - t

        k1T, k1P = f(t, T, P)
        k2T, k2P = f(t + h * 0.2, T + h * 0.2 * k1T, P + h * 0.2 * k1P)
        k3T, k3P = f(
            t + h * 0.3,
            T + h * (0.075 * k1T + 0.225 * k2T),
            P + h * (0.075 * k1P + 0.225 * k2P),
        )
        k4T, k4P = f(
            t + h * 0.8,
            T + h * ((44.0 / 45.0) * k1T - (56.0 / 15.0) * k2T + (32.0 / 9.0) * k3T),
            P + h * ((44.0 / 45.0) * k1P - (56.0 / 15.0) * k2P + (32.0 / 9.0) * k3P),
        )
        k5T, k5P = f(
            t + h * (8.0 / 9.0),
            T
            + h
            * (
                (19372.0 / 6561.0) * k1T
                - (25360.0 / 2187.0) * k2T
                + (64448.0 / 6561.0) * k3T
                - (212.0 / 729.0) * k4T
            ),
            P
            + h
            * (
                (19372.0 / 6561.0) * k1P
                - (25360.0 / 2187.0) * k2P
                + (64448.0 / 6561.0) * k3P
                - (212.0 / 729.0) * k4P
            ),
        )
        k6T, k6P = f(
            t + h,
            T
            + h
            * (
                (9017.0 / 3168.0) * k1T
                - (355.0 / 33.0) * k2T
                + (46732.0 / 5247.0) * k3T
                + (49.0 / 176.0) * k4T
                - (5103.0 / 18656.0) * k5T
            ),
            P
            + h
            * (
                (9017.0 / 3168.0) * k1P
                - (355.0 / 33.0) * k2P
                + (46732.0 / 5247.0) * k3P
                + (49.0 / 176.0) * k4P
                - (5103.0 / 18656.0) * k5P
            ),
        )
        Tn = T + h * (
            (35.0 / 384.0) * k1T
            + (500.0 / 1113.0) * k3T
            + (125.0 / 192.0) * k4T
            - (2187.0 / 6784.0) * k5T
            + (11.0 / 84.0) * k6T
        )
        Pn = P + h * (
            (35.0 / 384.0) * k1P
            + (500.0 / 1113.0) * k3P
            + (125.0 / 192.0) * k4P
            - (2187.0 / 6784.0) * k5P
            + (11.0 / 84.0) * k6P
        )
        k7T, k7P = f(t + h, Tn, Pn)
        T4 = T + h * (
            (5179.0 / 57600.0) * k1T
            + (7571.0 / 16695.0) * k3T
            + (393.0 / 640.0) * k4T
            - (92097.0 / 339200.0) * k5T
            + (187.0 / 2100.0) * k6T
            + (1.0 / 40.0) * k7T
        )
        P4 = P + h * (
            (5179.0 / 57600.0) * k1P
            + (7571.0 / 16695.0) * k3P
            + (393.0 / 640.0) * k4P
            - (92097.0 / 339200.0) * k5P
            + (187.0 / 2100.0) * k6P
            + (1.0 / 40.0) * k7P
        )

        if not (math.isfinite(Tn) and math.isfinite(Pn)):
            return T, P, crossings, renorms, SHOOT_NONFINITE, t

        aT = abs(T) if abs(T) > abs(Tn) else abs(Tn)
        aP = abs(P) if abs(P) > abs(Pn) else abs(Pn)
        eT = (Tn - T4) / (atol + rtol * aT)
        eP = (Pn - P4) / (atol + rtol * aP)
        err = math.sqrt(0.5 * (eT * eT + eP * eP))

        if err <= 1.0:
            t = t + h
            T = Tn
            P = Pn
            if T != 0.0:
                s_now = 1 if T > 0.0 else -1
                if sign_prev != 0 and s_now != sign_prev:
                    crossings += 1
                sign_prev = s_now
            amax = abs(T) if abs(T) > abs(P) else abs(P)
            if amax > renorm_limit:
                T = T / amax
                P = P / amax
                renorms += 1

        if err < 1e-10:
            fac = 5.0
        else:
            fac = 0.9 * err ** (-0.2)
            if fac > 5.0:
                fac = 5.0
            elif fac < 0.2:
                fac = 0.2
        h = h * fac
        if h > max_step:
            h = max_step
    return T, P, crossings, renorms, SHOOT_OK, t


def _subset_zero_flags_loop(mat):
    """flags[mask] = True iff the rows of `mat` selected by `mask` sum to zero.

    Gray-code walk: one row is added or removed per visited mask, so the
    full 2^K enumeration costs O(2^K * W) integer adds.
    """
    K, W = mat.shape
    total = 1 << K
    flags = np.zeros(total, dtype=np.bool_)
    acc = np.zeros(W, dtype=np.int64)
    flags[0] = True
    g_prev = 0
    for i in range(1, total):
        g = i ^ (i >> 1)
        diff = g ^ g_prev
        b = 0
        while (diff >> b) & 1 == 0:
            b += 1
        if (g >> b) & 1:
            for j in range(W):
                acc[j] += mat[b, j]
        else:
            for j in range(W):
                acc[j] -= mat[b, j]
        z = True
        for j in range(W):
            if acc[j] != 0:
                z = False
                break
        flags[g] = z
        g_prev = g
    return flags


def subset_zero_flags_matmul(mat: np.ndarray) -> np.ndarray:
    """Vectorized subset scan: chunked bit matrix times `mat`, exact int64."""
    K, W = mat.shape
    total = 1 << K
    flags = np.empty(total, dtype=np.bool_)
    bitcols = np.arange(K, dtype=np.int64)
    chunk = min(total, 1 << 16)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((idx[:, None] >> bitcols[None, :]) & 1).astype(np.int64)
        sums = bits @ mat
        flags[start : start + idx.shape[0]] = (sums == 0).all(axis=1)
    return flags


def subset_sums(mat: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """Exact int64 subset sums for an explicit array of masks."""
    K = mat.shape[0]
    bitcols = np.arange(K, dtype=np.int64)
    bits = ((masks[:, None] >> bitcols[None, :]) & 1).astype(np.int64)
    return bits @ mat


# plain bindings, always available
shoot_rk45_py = _shoot_rk45
subset_zero_flags_loop_py = _subset_zero_flags_loop

# compiled bindings, lazy; None without numba
if HAS_NUMBA:
    from numba import njit

    shoot_rk45_nb = njit(cache=True)(_shoot_rk45)
    subset_zero_flags_nb = njit(cache=True)(_subset_zero_flags_loop)
else:  # pragma: no cover - exercised via CAPBIF_BACKEND=numpy
    shoot_rk45_nb = None
    subset_zero_flags_nb = None

if ACTIVE_BACKEND == "numba":
    shoot_rk45 = shoot_rk45_nb
    subset_zero_flags = subset_zero_flags_nb
else:
    shoot_rk45 = _shoot_rk45
    subset_zero_flags = subset_zero_flags_matmul
