import base64
import os
import sys

from nacl.signing import SigningKey


def main() -> None:
    # Reuse a seed from the environment to re-derive a known pair; otherwise mint a fresh one.
    seed_b64 = os.environ.get("REPORT_ED25519_PRIVATE_B64", "").strip()
    if seed_b64 and "--fresh" not in sys.argv[1:]:
        sk = SigningKey(base64.b64decode(seed_b64))
    else:
        sk = SigningKey.generate()

    priv_b64 = base64.b64encode(bytes(sk)).decode("utf-8")
    pub_b64 = base64.b64encode(bytes(sk.verify_key)).decode("utf-8")

    print(f"REPORT_ED25519_PRIVATE_B64={priv_b64}")
    print(f"REPORT_ED25519_PUBLIC_B64={pub_b64}")


if __name__ == "__main__":
    main()
