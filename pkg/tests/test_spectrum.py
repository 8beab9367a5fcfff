import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from fd_oracle import hemisphere_check, radial_eigenvalues

import capbif.spectrum as sp
from capbif.cache import cached_assemble, load_spectrum, save_spectrum
from capbif.so2rep import so2_decompose
from capbif.spectrum import (
    HEMISPHERE,
    BracketError,
    ClusterAmbiguityError,
    EigenvalueRecord,
    RadialProblem,
    ScanRangeError,
    SpectrumError,
    assemble_spectrum,
    hemisphere_eigenvalue,
    hemisphere_spectrum,
    hemisphere_spectrum_up_to,
    lookup_candidate,
    mode_eigenvalues,
    radial_shoot,
    signed_candidate_set,
)

HALF_PI = math.pi / 2


# -- exact hemisphere path ---------------------------------------------


def test_hemisphere_n2_frozen():
    recs = hemisphere_spectrum(2, 4)
    assert [r.value for r in recs] == [2, 6, 12, 20]
    assert [r.gamma_set for r in recs] == [(0,), (1,), (0, 2), (1, 3)]
    assert [r.mu for r in recs] == [1, 2, 3, 4]
    assert [r.nu for r in recs] == [1, 3, 6, 10]
    assert all(r.exact for r in recs)
    assert all(isinstance(r.value, int) for r in recs)


def test_hemisphere_identities():
    for n in range(2, 9):
        recs = hemisphere_spectrum(n, 20)
        for m, rec in enumerate(recs, start=1):
            assert rec.value == m * (n + m - 1)
            assert rec.mu == math.comb(n + m - 2, n - 1)
            assert rec.gamma_set == tuple(range((m - 1) % 2, m, 2))
            assert rec.eigenspace.top_weight == m - 1
        assert recs[-1].nu == sum(r.mu for r in recs)


def test_hemisphere_up_to_window():
    recs = hemisphere_spectrum_up_to(2, 21.0)
    assert [r.value for r in recs] == [2, 6, 12, 20]
    assert hemisphere_spectrum_up_to(2, 1.9) == []


def test_assemble_dispatches_hemisphere_token():
    recs = assemble_spectrum(3, HEMISPHERE, 25.0)
    assert [r.value for r in recs] == [3, 8, 15, 24]
    assert all(r.exact for r in recs)


# -- shooting path against closed forms --------------------------------


def test_shoot_reproduces_hemisphere_modes():
    # gamma = pi/2 as a plain float goes down the numeric path
    for n, m, expect in [
        (2, 0, [2, 12, 30]),
        (2, 1, [6, 20]),
        (3, 0, [3, 15]),
        (3, 1, [8, 24]),
    ]:
        got = mode_eigenvalues(RadialProblem(n, m, HALF_PI), max(expect) + 1.0)
        assert len(got) == len(expect)
        for g, e in zip(got, expect):
            assert abs(g - e) <= 1e-6 * e


def test_shoot_sign_below_first_eigenvalue():
    assert radial_shoot(RadialProblem(2, 0, HALF_PI), 1.0) > 0


def test_shoot_rejects_nonpositive_lambda():
    with pytest.raises(ValueError):
        radial_shoot(RadialProblem(2, 0, HALF_PI), 0.0)


def test_series_start_matches_cosine():
    # n=2, m=0, lambda=2 has the exact radial solution cos t
    problem = RadialProblem(2, 0, HALF_PI)
    T0, P0 = sp._series_start(problem, 2.0)
    eps = sp.SERIES_EPS
    assert T0 == pytest.approx(math.cos(eps), abs=1e-18)
    assert P0 == pytest.approx(-math.sin(eps), rel=1e-6)


def test_quarter_ball_against_fd_oracle():
    gamma = math.pi / 4
    for m in range(0, 3):
        got = mode_eigenvalues(RadialProblem(2, m, gamma), 60.0)
        want = radial_eigenvalues(2, m, gamma, 60.0)
        assert len(got) == len(want), m
        for g, w in zip(got, want):
            assert abs(g - w) <= 1e-6 * w, (m, g, w)


def test_fd_oracle_is_itself_qualified():
    assert hemisphere_check(2, 31.0) < 1e-7
    assert hemisphere_check(3, 31.0) < 1e-7


def test_assemble_general_radius():
    recs = assemble_spectrum(2, math.pi / 4, 50.0)
    assert [r.gamma_set for r in recs] == [(0,), (1,), (2,), (0,)]
    assert [r.mu for r in recs] == [1, 2, 2, 1]
    assert [r.nu for r in recs] == [1, 3, 5, 6]
    assert not any(r.exact for r in recs)
    # eigenvalues strictly increase
    values = [r.value for r in recs]
    assert values == sorted(values)
    assert recs[0].value == pytest.approx(9.0396894957, rel=1e-8)


def test_scan_range_guard():
    with pytest.raises(ScanRangeError):
        assemble_spectrum(2, math.pi / 4, 50.0, m_scan_max=0)


def test_scan_range_sufficient_cap_passes():
    recs = assemble_spectrum(2, math.pi / 4, 30.0, m_scan_max=5)
    assert [r.gamma_set for r in recs] == [(0,), (1,)]


# -- clustering branches (synthetic roots) -----------------------------


def _fake_modes(table):
    def fake(problem, lambda_max):
        return list(table.get(problem.m, []))

    return fake


def test_cluster_merges_close_roots(monkeypatch):
    table = {0: [10.0], 1: [10.0 + 1e-7]}
    monkeypatch.setattr(sp, "mode_eigenvalues", _fake_modes(table))
    recs = sp.assemble_spectrum(3, 1.0, 20.0)
    assert len(recs) == 1
    assert recs[0].gamma_set == (0, 1)
    assert recs[0].eigenspace == so2_decompose(3, 0) + so2_decompose(3, 1)
    assert recs[0].value == pytest.approx(10.0, rel=1e-6)


def test_cluster_ambiguous_gap_raises(monkeypatch):
    table = {0: [10.0], 1: [10.0 * (1.0 + 5e-6)]}
    monkeypatch.setattr(sp, "mode_eigenvalues", _fake_modes(table))
    with pytest.raises(ClusterAmbiguityError):
        sp.assemble_spectrum(3, 1.0, 20.0)


def test_cluster_rejects_same_mode_duplicates(monkeypatch):
    table = {0: [10.0, 10.0 + 1e-7], 1: [12.0]}
    monkeypatch.setattr(sp, "mode_eigenvalues", _fake_modes(table))
    with pytest.raises(ClusterAmbiguityError):
        sp.assemble_spectrum(3, 1.0, 20.0)


def test_first_root_monotonicity_guard(monkeypatch):
    table = {0: [10.0], 1: [9.0]}
    monkeypatch.setattr(sp, "mode_eigenvalues", _fake_modes(table))
    with pytest.raises(BracketError):
        sp.assemble_spectrum(3, 1.0, 20.0)


# -- validation and bookkeeping ----------------------------------------

def test_radial_problem_validation():
    with pytest.raises(ValueError):
        RadialProblem(1, 0, 1.0)
    with pytest.raises(ValueError):
        RadialProblem(2, -1, 1.0)
    with pytest.raises(ValueError):
        RadialProblem(2, 0, math.pi)
    assert RadialProblem(4, 3, 1.0).beta == 3 * (3 + 2)


def test_record_validation():
    rep = so2_decompose(2, 1)
    with pytest.raises(ValueError):
        EigenvalueRecord(6, (), rep, 2, 2)
    with pytest.raises(ValueError):
        EigenvalueRecord(6, (1, 0), rep, 2, 2)
    with pytest.raises(ValueError):
        EigenvalueRecord(6, (1,), rep, 3, 3)


def test_record_json_round_trip():
    for rec in hemisphere_spectrum(3, 4):
        back = EigenvalueRecord.from_json_obj(rec.to_json_obj())
        assert back == rec
    for rec in assemble_spectrum(2, math.pi / 4, 30.0):
        back = EigenvalueRecord.from_json_obj(rec.to_json_obj())
        assert back == rec and isinstance(back.value, float)


def test_signed_candidate_set_order():
    recs = hemisphere_spectrum(2, 3)
    both = signed_candidate_set(recs, 1, 1)
    assert [c.value for c in both] == [-12, -6, -2, 2, 6, 12]
    assert [c.m0 for c in both] == [3, 2, 1, 1, 2, 3]
    only_pos = signed_candidate_set(recs, 2, 0)
    assert [c.value for c in only_pos] == [2, 6, 12]
    with pytest.raises(ValueError):
        signed_candidate_set(recs, 0, 0)


def test_lookup_candidate():
    recs = hemisphere_spectrum(2, 3)
    assert lookup_candidate(recs, 6) == (2, "positive")
    assert lookup_candidate(recs, -12) == (3, "negative")
    with pytest.raises(ValueError):
        lookup_candidate(recs, 7)
    with pytest.raises(ValueError):
        lookup_candidate(recs, 0)
    approx = assemble_spectrum(2, math.pi / 4, 30.0)
    assert lookup_candidate(approx, approx[0].value * (1 + 1e-8)) == (1, "positive")


# -- cache -------------------------------------------------------------


def test_cache_round_trip(tmp_path):
    first, hit1 = cached_assemble(2, math.pi / 4, 30.0, cache_dir=tmp_path)
    assert not hit1
    second, hit2 = cached_assemble(2, math.pi / 4, 30.0, cache_dir=tmp_path)
    assert hit2
    assert second == first  # float values survive JSON exactly via repr


def test_cache_disabled(tmp_path):
    cached_assemble(2, math.pi / 4, 30.0, cache_dir=tmp_path, use_cache=False)
    assert list(tmp_path.iterdir()) == []


def test_cache_ignores_corrupt_file(tmp_path):
    records = hemisphere_spectrum(2, 3)
    save_spectrum(tmp_path, 2, HEMISPHERE, 13.0, records)
    (path,) = tmp_path.glob("*.json")
    path.write_text("{ not json")
    with pytest.warns(UserWarning, match="corrupt"):
        assert load_spectrum(tmp_path, 2, HEMISPHERE, 13.0) is None


def test_cache_rejects_key_mismatch(tmp_path):
    import json

    records = hemisphere_spectrum(2, 3)
    save_spectrum(tmp_path, 2, HEMISPHERE, 13.0, records)
    (path,) = tmp_path.glob("*.json")
    payload = json.loads(path.read_text())
    payload["tolerances"]["ode_rtol"] = 1e-3
    path.write_text(json.dumps(payload))
    with pytest.warns(UserWarning, match="mismatch"):
        assert load_spectrum(tmp_path, 2, HEMISPHERE, 13.0) is None


def test_cache_miss_on_other_window(tmp_path):
    save_spectrum(tmp_path, 2, HEMISPHERE, 13.0, hemisphere_spectrum(2, 3))
    assert load_spectrum(tmp_path, 2, HEMISPHERE, 21.0) is None


def test_cached_hemisphere_round_trip(tmp_path):
    first, _ = cached_assemble(2, HEMISPHERE, 21.0, cache_dir=tmp_path)
    second, hit = cached_assemble(2, HEMISPHERE, 21.0, cache_dir=tmp_path)
    assert hit and second == first
    assert all(isinstance(r.value, int) and r.exact for r in second)


def test_error_hierarchy():
    for err in (BracketError, ClusterAmbiguityError, ScanRangeError):
        assert issubclass(err, SpectrumError)
