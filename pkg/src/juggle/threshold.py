"""{n,n} additive key generation and Schnorr multi-signing.

Key generation is commit-then-reveal on the per-party public keys so no
party can bias the joint key.  Signing runs three nonce rounds
(hash-commit R_i, reveal R_i, respond s_i) to block rogue-nonce attacks.
The joint signature verifies under plain single-key Schnorr, so a ledger
never sees the difference.  A party that has juggled a counterparty's share
can occupy that party's slot as well ("degenerate" signing).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .group import Curve, Point

SCHNORR_TAG = b"JUGGLE/SCHNORR/v1"


class CommitmentMismatch(Exception):
    """Revealed public key does not match its hash commitment."""


class NonceCommitMismatch(Exception):
    """Revealed nonce point does not match its hash commitment."""


class MissingParty(Exception):
    """{n,n} signing requires every slot to be filled."""


class ShareMismatch(ValueError):
    """Learned share does not match the recorded local public key."""


@dataclass(frozen=True)
class ThresholdKeyShare:
    party_id: int
    x_i: int
    Q_i: Point
    Q: Point
    n: int
    all_Q: dict[int, Point]


@dataclass(frozen=True)
class MultiSignature:
    R: Point
    s: int

    def to_bytes(self, group: Curve) -> bytes:
        return group.encode_point(self.R) + group.encode_scalar(self.s)

    @classmethod
    def from_bytes(cls, group: Curve, data: bytes) -> "MultiSignature":
        n = group.point_byte_len
        return cls(group.decode_point(data[:n]), group.decode_scalar(data[n:]))


def point_commitment(group: Curve, label: bytes, P: Point) -> bytes:
    return hashlib.sha256(label + group.encode_point(P)).digest()


def sig_challenge(group: Curve, R: Point, Q: Point, message: bytes) -> int:
    h = hashlib.sha256()
    h.update(SCHNORR_TAG)
    h.update(group.encode_point(R))
    h.update(group.encode_point(Q))
    h.update(message)
    return int.from_bytes(h.digest(), "big") % group.q


# -- key generation ---------------------------------------------------------

class KeygenParty:
    """One party's state across the commit/reveal key generation rounds."""

    def __init__(self, group: Curve, party_id: int, n: int, rng,
                 secret_bound: int | None = None):
        self.group = group
        self.party_id = party_id
        self.n = n
        # shares meant for gradual release are drawn with the top bit clear
        bound = min(secret_bound, group.q) if secret_bound else group.q
        self.x_i = rng.randbelow(bound)
        self.Q_i = group.mul(self.x_i, group.generator)

    def commit(self) -> bytes:
        return point_commitment(self.group, b"KEYGEN", self.Q_i)

    def reveal(self) -> Point:
        return self.Q_i

    def finalize(self, commitments: dict[int, bytes],
                 reveals: dict[int, Point]) -> ThresholdKeyShare:
        Q = self.group.identity
        for pid in sorted(reveals):
            revealed = reveals[pid]
            if point_commitment(self.group, b"KEYGEN", revealed) != commitments[pid]:
                raise CommitmentMismatch(f"party {pid} broke its commitment")
            Q = Q + revealed
        return ThresholdKeyShare(self.party_id, self.x_i, self.Q_i, Q,
                                 self.n, dict(reveals))


def thresh_keygen(group: Curve, n: int, rng,
                  secret_bound: int | None = None) -> list[ThresholdKeyShare]:
    """Drive an honest n-party key generation; returns one share per party."""
    if n < 2:
        raise ValueError("need at least two parties")
    parties = [KeygenParty(group, i, n, rng.fanout(f"keygen/{i}"), secret_bound)
               for i in range(n)]
    commitments = {p.party_id: p.commit() for p in parties}
    reveals = {p.party_id: p.reveal() for p in parties}
    return [p.finalize(commitments, reveals) for p in parties]


# -- signing ----------------------------------------------------------------

class SignerSlot:
    """One signing slot's nonce state; a physical party may own several."""

    def __init__(self, group: Curve, slot_id: int, x_i: int, rng):
        self.group = group
        self.slot_id = slot_id
        self.x_i = x_i
        self.k = group.rand_scalar(rng)
        self.R_i = group.mul(self.k, group.generator)

    def nonce_commit(self) -> bytes:
        return point_commitment(self.group, b"NONCE", self.R_i)

    def nonce_reveal(self) -> Point:
        return self.R_i

    def respond(self, c: int) -> int:
        return (self.k + c * self.x_i) % self.group.q


def thresh_sign(group: Curve, Q: Point, n: int,
                holders: list[tuple[int, int]], message: bytes,
                rng) -> MultiSignature:
    """Sign with all n slots filled; `holders` is a list of (slot_id, x_i).

    One physical party may contribute several slots (degenerate signing).
    """
    slot_ids = [sid for sid, _ in holders]
    if sorted(slot_ids) != list(range(n)):
        raise MissingParty(
            f"need slots {list(range(n))}, have {sorted(slot_ids)}")
    slots = [SignerSlot(group, sid, x_i, rng.fanout(f"sign/{sid}"))
             for sid, x_i in holders]
    commitments = {s.slot_id: s.nonce_commit() for s in slots}
    reveals = {s.slot_id: s.nonce_reveal() for s in slots}
    R = group.identity
    for sid in sorted(reveals):
        if point_commitment(group, b"NONCE", reveals[sid]) != commitments[sid]:
            raise NonceCommitMismatch(f"slot {sid} broke its nonce commitment")
        R = R + reveals[sid]
    c = sig_challenge(group, R, Q, message)
    s = 0
    for slot in slots:
        s = (s + slot.respond(c)) % group.q
    return MultiSignature(R, s)


def schnorr_verify(group: Curve, Q: Point, message: bytes,
                   sig: MultiSignature) -> bool:
    try:
        c = sig_challenge(group, sig.R, Q, message)
        return group.mul(sig.s, group.generator) == sig.R + group.mul(c, Q)
    except Exception:
        return False


def assemble_degenerate_share(group: Curve, own: ThresholdKeyShare,
                              learned_id: int, learned_x: int) -> list[tuple[int, int]]:
    """Signing slots for a party holding its own share plus a juggled one."""
    expected = own.all_Q[learned_id]
    if group.mul(learned_x, group.generator) != expected:
        raise ShareMismatch(
            f"learned share does not open slot {learned_id}'s public key")
    return [(own.party_id, own.x_i), (learned_id, learned_x)]
