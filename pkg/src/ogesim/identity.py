"""Identity registry: seed commitments, liveness, and the labor coefficient.

Accounts are registered against a biometric seed (an opaque byte string in
this simulator). The registry stores only a hash commitment and a derived
pseudonymous id; raw seed material never leaves this module. Proof-of-
identity is mocked with hashes: a proof token is valid only for the
challenge of the tick it was built for, so replayed tokens fail.

The registry also keeps the simulator's ground-truth "is a human behind
this account" flag. That flag exists for measurement only. Mechanism code
must never branch on it; the metrics layer is its only reader.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import DuplicateIdentity, EmptyActiveSet, TimeRegression, UnknownIdentity
from .hashing import h256, hex256, tag

_COMMIT_TAG = tag("seed-commitment")
_PSEUDO_TAG = tag("pseudo-id")
_CHALLENGE_TAG = tag("auth-challenge")
_PROOF_TAG = tag("auth-proof")


class AuthStatus(Enum):
    FRESH = "fresh"
    IN_GRACE = "in_grace"
    LAPSED = "lapsed"


@dataclass
class IdentityRecord:
    pseudo_id: str
    commitment: str
    registered_tick: int
    last_auth_tick: int
    ground_truth_human: bool


def commitment_of(seed: bytes) -> str:
    return hex256(_COMMIT_TAG, seed)


def pseudo_id_of(seed: bytes) -> str:
    """Derive the public account id from a seed commitment plus a domain tag."""
    return hex256(_PSEUDO_TAG, bytes.fromhex(commitment_of(seed)))


def challenge_for(pseudo_id: str, tick: int) -> bytes:
    return h256(_CHALLENGE_TAG, tick.to_bytes(8, "big"), pseudo_id.encode("ascii"))


def make_proof_token(seed: bytes, tick: int) -> bytes:
    """Prover side of the mock proof: hash of the seed and the tick challenge."""
    return h256(_PROOF_TAG, seed, challenge_for(pseudo_id_of(seed), tick))


class IdentityRegistry:
    """One-identity-one-account ledger with liveness tracking."""

    def __init__(self):
        self._records: dict[str, IdentityRecord] = {}
        self._by_commitment: dict[str, str] = {}
        # Seeds are retained privately so the mock verifier can recompute
        # proof tokens. They are never returned by any public method.
        self._seeds: dict[str, bytes] = {}

    # --- registration ---

    def register(self, seed: bytes, tick: int, *, human: bool) -> str:
        """Register a new account for a seed; one account per seed, ever.

        Returns the pseudonymous account id. Raises DuplicateIdentity when
        the seed commitment was seen before.
        """
        commitment = commitment_of(seed)
        if commitment in self._by_commitment:
            raise DuplicateIdentity(commitment)
        pseudo_id = pseudo_id_of(seed)
        record = IdentityRecord(
            pseudo_id=pseudo_id,
            commitment=commitment,
            registered_tick=tick,
            last_auth_tick=tick,
            ground_truth_human=human,
        )
        self._records[pseudo_id] = record
        self._by_commitment[commitment] = pseudo_id
        self._seeds[pseudo_id] = bytes(seed)
        return pseudo_id

    def is_registered(self, pseudo_id: str) -> bool:
        return pseudo_id in self._records

    def record(self, pseudo_id: str) -> IdentityRecord:
        try:
            return self._records[pseudo_id]
        except KeyError:
            raise UnknownIdentity(pseudo_id) from None

    def __len__(self) -> int:
        return len(self._records)

    # --- liveness ---

    def verify_zk_poi(self, pseudo_id: str, proof_token: bytes, tick: int) -> bool:
        """Check a proof token against the current tick's challenge.

        The mock recomputes the expected token from the privately held seed.
        A token built from another seed, or for another tick's challenge,
        verifies false.
        """
        record = self.record(pseudo_id)  # raises UnknownIdentity
        assert record.pseudo_id == pseudo_id
        expected = h256(_PROOF_TAG, self._seeds[pseudo_id], challenge_for(pseudo_id, tick))
        return proof_token == expected

    def record_liveness(self, pseudo_id: str, tick: int) -> None:
        record = self.record(pseudo_id)
        if tick < record.last_auth_tick:
            raise TimeRegression(f"auth at tick {tick} before tick {record.last_auth_tick}")
        record.last_auth_tick = tick

    def auth_status(self, pseudo_id: str, tick: int, grace_period: int) -> AuthStatus:
        """Fresh the tick of authentication, in grace through the full window
        (boundary inclusive), lapsed afterwards."""
        record = self.record(pseudo_id)
        if tick < record.last_auth_tick:
            raise TimeRegression(f"status at tick {tick} before tick {record.last_auth_tick}")
        elapsed = tick - record.last_auth_tick
        if elapsed == 0:
            return AuthStatus.FRESH
        if elapsed <= grace_period:
            return AuthStatus.IN_GRACE
        return AuthStatus.LAPSED

    # --- measurement (metrics layer only) ---

    def ground_truth_human(self, pseudo_id: str) -> bool:
        """Measurement-only oracle. Mechanism code must not call this."""
        return self.record(pseudo_id).ground_truth_human


def identity_labor_coefficient(registry: IdentityRegistry, active_accounts: Iterable[str]) -> float:
    """Share of currently active accounts backed by verified humans.

    1.0 means every active account maps to a distinct human; the value falls
    toward 0 as automated accounts crowd the active set.
    """
    active = list(active_accounts)
    if not active:
        raise EmptyActiveSet("no active accounts")
    human = sum(
        1 for a in active if registry.is_registered(a) and registry.ground_truth_human(a)
    )
    return human / len(active)
