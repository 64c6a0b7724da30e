"""Hash primitives used by the identity registry and the run metadata.

One hash function is fixed for a whole run and its name is recorded in the
run metadata, so output artifacts are reproducible and self-describing.
All multi-part hashes are length-prefixed to keep the encoding injective.
"""

import hashlib

HASH_FUNCTION = "sha256"


def h256(*parts: bytes) -> bytes:
    """Hash a sequence of byte strings into a 256-bit digest.

    Each part is prefixed with its 4-byte big-endian length so that
    ("ab", "c") and ("a", "bc") never collide.
    """
    h = hashlib.sha256()
    for part in parts:
        h.update(len(part).to_bytes(4, "big"))
        h.update(part)
    return h.digest()


def hex256(*parts: bytes) -> str:
    return h256(*parts).hex()


def tag(name: str) -> bytes:
    """Domain-separation tag; keeps unrelated hash uses out of each other's image."""
    return b"ogesim/" + name.encode("ascii")
