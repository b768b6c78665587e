import pytest

import anomod


def test_identity_targets_listed():
    targets = anomod.identity_targets()
    assert {"agw", "gs", "sw", "remark", "theorem1"} <= set(targets)


def test_verify_agw_passes():
    doc = anomod.verify("agw")
    assert doc["summary"]["failed"] == 0
    assert doc["reports"][0]["residual_terms"] == 0


def test_verify_gs_with_hypotheses():
    doc = anomod.verify("gs", ranks="m=32,n=0", xi="trivial")
    assert doc["summary"]["passed"] == doc["summary"]["total"] >= 1


def test_hypothesis_mismatch_raises():
    with pytest.raises(ValueError):
        anomod.verify("gs", ranks="symbolic", xi="generic")


def test_theta2_leading_coefficients():
    coeffs = anomod.theta2_coefficients(3)
    assert coeffs[0] == "1"
    assert len(coeffs) == 3


def test_cli_exit_codes():
    code, out = anomod.cli(["verify", "agw"])
    assert code == 0 and "[PASS] agw" in out
    code, _ = anomod.cli(["verify", "nonsense"])
    assert code == 2


def test_numeric_transforms_pass_at_i():
    doc = anomod.numeric_transforms(tau=1j)
    assert doc["summary"]["failed"] == 0


def test_self_test_detects_faults():
    doc = anomod.self_test()
    assert doc["summary"]["failed"] == 0
    assert doc["summary"]["total"] >= 8
