from src.models import RunReport, SuiteOutcome, canonical_json, sha256_hex
from src.report_signing import _canonical_payload, generate_key_pair, sign_report, verify_report


def _report() -> dict:
    r = RunReport("verify", "lemma2.3", {"suite": "lemma2.3", "seed": 0})
    r.suites.append(SuiteOutcome("lemma2.3", True, {"targets": []}))
    return r.to_json()


def test_sign_then_verify():
    priv, pub = generate_key_pair()
    signed = sign_report(_report(), priv)
    decision = verify_report(signed, pub)
    assert decision.ok, decision.reason
    assert decision.payload_sha256 == sha256_hex(canonical_json(_report()))
    assert _canonical_payload(signed) == canonical_json(_report())


def test_edited_report_is_rejected():
    priv, pub = generate_key_pair()
    signed = sign_report(_report(), priv)
    signed["ok"] = False
    decision = verify_report(signed, pub)
    assert not decision.ok
    assert "hash mismatch" in decision.reason


def test_wrong_key_is_rejected():
    priv, _ = generate_key_pair()
    _, other = generate_key_pair()
    assert not verify_report(sign_report(_report(), priv), other).ok


def test_unsigned_and_garbage():
    _, pub = generate_key_pair()
    assert verify_report(_report(), pub).reason == "Unsupported signature alg: None"
    priv, _ = generate_key_pair()
    assert not verify_report(sign_report(_report(), priv), "not base64!").ok


def test_report_digest_and_failures():
    r = RunReport("verify", "x", {"b": 1, "a": 2})
    assert r.input_digest() == sha256_hex(b'{"a":2,"b":1}')
    r.suites.append(SuiteOutcome("x", False, {}, "boom", {"orbit": 3}))
    out = r.to_json()
    assert out["ok"] is False
    assert out["suites"][0]["witness"] == {"orbit": 3}
    assert "timings" not in out
