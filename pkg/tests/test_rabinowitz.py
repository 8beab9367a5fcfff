import json
import math

import numpy as np
import pytest

from capbif.euler import ZERO, EulerElement
from capbif.rabinowitz import (
    SystemConfig,
    alternative_sum,
    bounded_necessary,
    candidate_index_matrix,
    certify_alternative,
    certify_unbounded,
    recheck_certificate,
    structural_zero_flags,
    symmetry_breaking,
)
from capbif.spectrum import (
    HEMISPHERE,
    assemble_spectrum,
    hemisphere_spectrum,
)

CFG_BOTH = SystemConfig(2, HEMISPHERE, 1, 1)
CFG_MINUS = SystemConfig(2, HEMISPHERE, 1, 0)


# -- config ------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ValueError):
        SystemConfig(1, HEMISPHERE, 1, 0)
    with pytest.raises(ValueError):
        SystemConfig(2, HEMISPHERE, 0, 0)
    with pytest.raises(ValueError):
        SystemConfig(2, 4.0, 1, 0)
    cfg = SystemConfig(3, "0.5", 2, 1)
    assert cfg.gamma == 0.5


def test_config_round_trip():
    for cfg in (CFG_BOTH, SystemConfig(3, 0.7, 2, 1)):
        assert SystemConfig.from_json_obj(cfg.to_json_obj()) == cfg


# -- alternative sums --------------------------------------------------


def test_alternative_sum_minus_four():
    total, is_theta = alternative_sum([2, -2], CFG_BOTH, hemisphere_spectrum(2, 1))
    assert total == EulerElement({0: -4})
    assert not is_theta


def test_alternative_certificate_proved():
    cert = certify_alternative([2, 6], CFG_MINUS)
    assert cert.verdict == "proved"
    assert cert.exit_code == 0
    assert cert.sum_element == EulerElement({0: -2, 1: 1})
    assert [e["lambda_signed"] for e in cert.evidence] == [2, 6]


def test_alternative_certificate_inconclusive_on_theta():
    # even p on both sides makes every +-lambda_1 index vanish
    cfg = SystemConfig(2, HEMISPHERE, 2, 2)
    cert = certify_alternative([2, -2], cfg)
    assert cert.verdict == "inconclusive"
    assert cert.exit_code == 3
    assert cert.sum_element == ZERO
    assert cert.details["is_theta"]


def test_alternative_rejects_bad_candidates():
    with pytest.raises(ValueError):
        certify_alternative([2, 2], CFG_MINUS)  # duplicate
    with pytest.raises(ValueError):
        certify_alternative([-2], CFG_MINUS)  # negative needs p_plus > 0
    with pytest.raises(ValueError):
        certify_alternative([7], CFG_MINUS)  # not a spectrum point


def test_alternative_general_radius():
    gamma = math.pi / 4
    cfg = SystemConfig(2, gamma, 1, 0)
    records = assemble_spectrum(2, gamma, 30.0)
    cert = certify_alternative([records[0].value], cfg, lambda_max=30.0)
    assert cert.verdict == "proved"
    assert cert.sum_element == EulerElement({0: -2})


# -- subset machinery against brute force ------------------------------


def _brute_zero_flags(mat):
    K = mat.shape[0]
    flags = np.zeros(1 << K, dtype=bool)
    for mask in range(1 << K):
        total = np.zeros(mat.shape[1], dtype=np.int64)
        for k in range(K):
            if (mask >> k) & 1:
                total += mat[k]
        flags[mask] = not total.any()
    return flags


def test_structural_flags_match_brute_force():
    for n in (2, 3):
        for p_minus, p_plus in [(1, 1), (2, 1), (3, 2), (2, 2)]:
            cfg = SystemConfig(n, HEMISPHERE, p_minus, p_plus)
            records = hemisphere_spectrum(n, 4)
            candidates, _, mat = candidate_index_matrix(records, cfg)
            K = len(candidates)
            masks = np.arange(1 << K, dtype=np.int64)
            pred, _ = structural_zero_flags(candidates, cfg, masks)
            brute = _brute_zero_flags(mat)
            assert (pred == brute).all(), (n, p_minus, p_plus)


def test_empty_subset_is_zero():
    candidates, _, mat = candidate_index_matrix(hemisphere_spectrum(2, 2), CFG_BOTH)
    pred, maxm0 = structural_zero_flags(
        candidates, CFG_BOTH, np.array([0], dtype=np.int64)
    )
    assert pred[0] and maxm0[0] == 0


# -- unbounded certification -------------------------------------------


def test_unbounded_exhaustive_proved():
    cert = certify_unbounded(CFG_BOTH, m0=2, scan_bound=6)
    assert cert.verdict == "proved"
    assert cert.exit_code == 0
    assert cert.details["exhaustive"]
    assert cert.details["n_candidates"] == 12
    assert cert.details["subsets_containing_subject"] == 1 << 11
    assert len(cert.evidence) == 12
    assert recheck_certificate(cert.to_json_obj())


def test_unbounded_sampled_proved():
    cert = certify_unbounded(CFG_BOTH, m0=3, scan_bound=12, subset_budget=1 << 14)
    assert cert.verdict == "proved"
    assert not cert.details["exhaustive"]
    assert cert.details["subsets_checked"] <= (1 << 14) + 1
    assert recheck_certificate(cert.to_json_obj())


def test_unbounded_deterministic():
    a = certify_unbounded(CFG_BOTH, m0=3, scan_bound=12, subset_budget=1 << 13)
    b = certify_unbounded(CFG_BOTH, m0=3, scan_bound=12, subset_budget=1 << 13)
    assert json.dumps(a.to_json_obj(), sort_keys=True) == json.dumps(
        b.to_json_obj(), sort_keys=True
    )


def test_unbounded_hypothesis_gate():
    cfg = SystemConfig(2, HEMISPHERE, 2, 2)
    cert = certify_unbounded(cfg, m0=1)
    assert cert.verdict == "hypothesis_not_met"
    assert cert.exit_code == 2
    assert "branching hypothesis" in cert.details["reason"]
    assert recheck_certificate(cert.to_json_obj())


def test_unbounded_odd_product_passes_gate_at_m0_1():
    # trivial eigenspace but p * mu odd still qualifies
    cert = certify_unbounded(CFG_MINUS, m0=1)
    assert cert.verdict == "proved"
    assert cert.details["hypothesis"] == {
        "eigenspace_nontrivial": False,
        "p_times_dim_odd": True,
    }


def test_unbounded_input_gates():
    with pytest.raises(ValueError):
        certify_unbounded(SystemConfig(2, 1.0, 1, 0), m0=1)
    with pytest.raises(ValueError):
        certify_unbounded(CFG_BOTH, m0=5, scan_bound=4)
    with pytest.raises(ValueError):
        certify_unbounded(CFG_BOTH, m0=0)
    with pytest.raises(ValueError):
        certify_unbounded(CFG_MINUS, m0=1, sign="negative")


# -- necessary conditions ----------------------------------------------


def test_bounded_necessary_emits_conditions():
    cfg = SystemConfig(2, HEMISPHERE, 2, 1)
    cert = bounded_necessary(cfg, m0=2)
    assert cert.verdict == "proved"
    conds = cert.details["conditions"]
    assert conds["opposite_count_odd"]["satisfied"]
    assert conds["must_meet"] == "negative_spectrum"
    assert cert.details["boundedness_possible"]
    assert recheck_certificate(cert.to_json_obj())


def test_bounded_necessary_parity_failure_means_unbounded():
    cfg = SystemConfig(2, HEMISPHERE, 2, 2)
    cert = bounded_necessary(cfg, m0=2)
    assert cert.verdict == "proved"
    assert not cert.details["boundedness_possible"]
    assert "boundedness impossible" in cert.details["note"]


def test_bounded_necessary_gates():
    cert = bounded_necessary(SystemConfig(2, HEMISPHERE, 2, 2), m0=1)
    assert cert.verdict == "hypothesis_not_met"
    odd = bounded_necessary(SystemConfig(2, HEMISPHERE, 1, 1), m0=2)
    assert odd.verdict == "hypothesis_not_met"
    assert "positive and even" in odd.details["reason"]
    assert recheck_certificate(odd.to_json_obj())


def test_bounded_necessary_negative_subject():
    cfg = SystemConfig(2, HEMISPHERE, 1, 2)
    cert = bounded_necessary(cfg, m0=3, sign="negative")
    assert cert.subject == -12
    assert cert.details["conditions"]["must_meet"] == "positive_spectrum"
    assert cert.details["conditions"]["opposite_count_odd"]["count"] == 1


# -- symmetry breaking -------------------------------------------------


def test_symmetry_breaking_even_positions_proved():
    records = hemisphere_spectrum(3, 6)
    for m0 in range(1, 7):
        cert = symmetry_breaking(records[m0 - 1], SystemConfig(3, HEMISPHERE, 1, 0))
        expect = "proved" if m0 % 2 == 0 else "inconclusive"
        assert cert.verdict == expect, m0
        assert cert.details["parity_route"]["m0"] == m0


def test_symmetry_breaking_inconsistent_record_detected():
    records = hemisphere_spectrum(3, 3)
    with pytest.raises(ValueError):
        # position 3 does not carry eigenvalue 8
        symmetry_breaking(records[1], SystemConfig(3, HEMISPHERE, 1, 0), position=3)


def test_symmetry_breaking_numeric_needs_position():
    records = assemble_spectrum(2, math.pi / 4, 30.0)
    with pytest.raises(ValueError):
        symmetry_breaking(records[1], SystemConfig(2, math.pi / 4, 1, 0))
    cert = symmetry_breaking(
        records[1], SystemConfig(2, math.pi / 4, 1, 0), position=2, lambda_max=30.0
    )
    assert cert.verdict == "proved"
    assert cert.details["parity_route"] is None
    assert recheck_certificate(cert.to_json_obj())


def test_symmetry_breaking_sign_gates():
    records = hemisphere_spectrum(2, 2)
    with pytest.raises(ValueError):
        symmetry_breaking(records[1], CFG_MINUS, sign="negative")
    cert = symmetry_breaking(records[1], SystemConfig(2, HEMISPHERE, 0, 1))
    assert cert.subject == -6


# -- recheck tamper detection ------------------------------------------


def test_recheck_detects_tampering():
    cert = certify_unbounded(CFG_BOTH, m0=2, scan_bound=6).to_json_obj()
    assert recheck_certificate(cert)
    tampered = json.loads(json.dumps(cert))
    tampered["evidence"][0]["index"]["coeffs"][0][1] = "99"
    assert not recheck_certificate(tampered)
    relabeled = json.loads(json.dumps(cert))
    relabeled["verdict"] = "hypothesis_not_met"
    assert not recheck_certificate(relabeled)


def test_recheck_rejects_unknown_kind():
    cert = certify_unbounded(CFG_BOTH, m0=2, scan_bound=6).to_json_obj()
    cert["kind"] = "mystery"
    with pytest.raises(ValueError):
        recheck_certificate(cert)


# -- schema validation -------------------------------------------------


def test_certificates_validate_against_schema():
    import jsonschema

    from capbif.schemas import CERTIFICATE_SCHEMA

    certs = [
        certify_unbounded(CFG_BOTH, m0=2, scan_bound=6),
        certify_unbounded(SystemConfig(2, HEMISPHERE, 2, 2), m0=1),
        bounded_necessary(SystemConfig(2, HEMISPHERE, 2, 1), m0=2),
        certify_alternative([2, -2], CFG_BOTH),
        symmetry_breaking(hemisphere_spectrum(3, 2)[1], SystemConfig(3, HEMISPHERE, 1, 0)),
    ]
    for cert in certs:
        jsonschema.validate(cert.to_json_obj(), CERTIFICATE_SCHEMA)


def test_index_report_validates_against_schema():
    import jsonschema

    from capbif.bifindex import IndexRequest, index_report
    from capbif.schemas import INDEX_REPORT_SCHEMA

    report = index_report(
        IndexRequest(tuple(hemisphere_spectrum(2, 3)), 3, "positive", 1, 0)
    )
    jsonschema.validate(report, INDEX_REPORT_SCHEMA)


def test_spectrum_payload_validates_against_schema():
    import jsonschema

    from capbif.cache import spectrum_payload
    from capbif.schemas import SPECTRUM_FILE_SCHEMA

    records = assemble_spectrum(2, math.pi / 4, 30.0)
    payload = spectrum_payload(2, math.pi / 4, 30.0, records)
    jsonschema.validate(payload, SPECTRUM_FILE_SCHEMA)
    exact = spectrum_payload(2, HEMISPHERE, 21.0, hemisphere_spectrum(2, 4))
    jsonschema.validate(exact, SPECTRUM_FILE_SCHEMA)
