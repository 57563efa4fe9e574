import base64
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from nacl.signing import SigningKey, VerifyKey

from .models import canonical_json, sha256_hex


def _canonical_payload(report: Dict[str, Any]) -> bytes:
    r = dict(report)
    r.pop("signature", None)
    return canonical_json(r)


@dataclass
class ReportDecision:
    ok: bool
    reason: str
    payload_sha256: Optional[str] = None


def sign_report(report: Dict[str, Any], private_key_b64: str) -> Dict[str, Any]:
    payload = _canonical_payload(report)
    sk = SigningKey(base64.b64decode(private_key_b64.strip()))
    sig = sk.sign(payload).signature
    signed = dict(report)
    signed["signature"] = {
        "alg": "ed25519",
        "sig_b64": base64.b64encode(sig).decode("utf-8"),
        "payloadSha256": sha256_hex(payload),
    }
    return signed


def verify_report(report: Dict[str, Any], public_key_b64: str) -> ReportDecision:
    try:
        sig = report.get("signature") or {}
        alg = sig.get("alg")
        if alg != "ed25519":
            return ReportDecision(False, f"Unsupported signature alg: {alg}")

        payload = _canonical_payload(report)
        payload_sha = sha256_hex(payload)
        if (sig.get("payloadSha256") or "").lower() != payload_sha:
            return ReportDecision(False, "Payload hash mismatch (report edited after signing).")

        sig_bytes = base64.b64decode(sig.get("sig_b64") or "")
        vk = VerifyKey(base64.b64decode(public_key_b64.strip()))
        vk.verify(payload, sig_bytes)

        return ReportDecision(True, "OK", payload_sha256=payload_sha)
    except Exception as e:
        return ReportDecision(False, f"Verification error: {e}")


def generate_key_pair() -> Tuple[str, str]:
    sk = SigningKey.generate()
    return (
        base64.b64encode(bytes(sk)).decode("utf-8"),
        base64.b64encode(bytes(sk.verify_key)).decode("utf-8"),
    )
