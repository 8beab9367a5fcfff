"""On-disk cache for assembled spectra.

A cache entry is a single JSON file keyed by (n, gamma rounded to twelve
digits, lambda_max, hash of the numeric tolerance policy).  Entries that
cannot be read, fail to parse, or disagree with their own key are
ignored with a warning and the spectrum is recomputed; a cache that
cannot be written never blocks the computation.
"""

from __future__ import annotations

import hashlib
import json
import os
import warnings
from pathlib import Path
from typing import Sequence

from .spectrum import (
    HEMISPHERE,
    EigenvalueRecord,
    assemble_spectrum,
    tolerance_signature,
)

CACHE_DIR_ENV = "CAPBIF_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_DIR_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "capbif"


def _gamma_token(gamma: float | str) -> str:
    if gamma == HEMISPHERE:
        return HEMISPHERE
    return f"{float(gamma):.12f}"


def cache_key(n: int, gamma: float | str, lambda_max: float) -> str:
    payload = {
        "n": n,
        "gamma": _gamma_token(gamma),
        "lambda_max": repr(float(lambda_max)),
        "tolerances": tolerance_signature(),
    }
    digest = hashlib.sha256(
        json.dumps(payload, sort_keys=True).encode()
    ).hexdigest()
    return f"spectrum_n{n}_g{_gamma_token(gamma)}_{digest[:16]}"


def spectrum_payload(
    n: int,
    gamma: float | str,
    lambda_max: float,
    records: Sequence[EigenvalueRecord],
) -> dict:
    return {
        "n": n,
        "gamma": gamma if gamma == HEMISPHERE else float(gamma),
        "lambda_max": float(lambda_max),
        "tolerances": tolerance_signature(),
        "records": [rec.to_json_obj() for rec in records],
    }


def save_spectrum(
    cache_dir: Path,
    n: int,
    gamma: float | str,
    lambda_max: float,
    records: Sequence[EigenvalueRecord],
) -> bool:
    try:
        cache_dir.mkdir(parents=True, exist_ok=True)
        path = cache_dir / (cache_key(n, gamma, lambda_max) + ".json")
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(spectrum_payload(n, gamma, lambda_max, records)))
        tmp.replace(path)
        return True
    except OSError as exc:
        warnings.warn(f"spectrum cache not written: {exc}")
        return False


def load_spectrum(
    cache_dir: Path, n: int, gamma: float | str, lambda_max: float
) -> list[EigenvalueRecord] | None:
    path = cache_dir / (cache_key(n, gamma, lambda_max) + ".json")
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text())
        if payload["n"] != n or payload["tolerances"] != tolerance_signature():
            warnings.warn(f"spectrum cache key mismatch in {path.name}; recomputing")
            return None
        stored_gamma = payload["gamma"]
        if gamma == HEMISPHERE:
            if stored_gamma != HEMISPHERE:
                warnings.warn(f"spectrum cache key mismatch in {path.name}; recomputing")
                return None
        elif stored_gamma == HEMISPHERE or f"{float(stored_gamma):.12f}" != _gamma_token(gamma):
            warnings.warn(f"spectrum cache key mismatch in {path.name}; recomputing")
            return None
        return [EigenvalueRecord.from_json_obj(rec) for rec in payload["records"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        warnings.warn(f"corrupt spectrum cache {path.name} ({exc}); recomputing")
        return None


def cached_assemble(
    n: int,
    gamma: float | str,
    lambda_max: float,
    m_scan_max: int | None = None,
    cache_dir: Path | None = None,
    use_cache: bool = True,
) -> tuple[list[EigenvalueRecord], bool]:
    """Assembled spectrum plus a flag telling whether the cache served it."""
    directory = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    if use_cache:
        cached = load_spectrum(directory, n, gamma, lambda_max)
        if cached is not None:
            return cached, True
    records = assemble_spectrum(n, gamma, lambda_max, m_scan_max=m_scan_max)
    if use_cache:
        save_spectrum(directory, n, gamma, lambda_max, records)
    return records, False
