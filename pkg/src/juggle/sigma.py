"""Three-move proofs for DDH membership, correct ElGamal encryption, and
correct encryption of a discrete log, made non-interactive via Fiat-Shamir.

Each protocol comes in three flavors:

* ``*_prove`` / ``*_verify``: the non-interactive versions used on the wire.
  The challenge is SHA-256 over a per-protocol domain tag, then the full
  statement, then the commitment message, reduced mod the group order.
* ``Interactive*Prover``: retains the commitment so a test harness can fork
  a run with two different challenges.
* ``simulate_*`` / ``extract_*``: the zero-knowledge simulators and
  special-soundness extractors, used as executable security checks.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .group import Curve, Point

DDH_TAG = b"JUGGLE/DDH/v1"
ENC_TAG = b"JUGGLE/ENC/v1"
ENCDLOG_TAG = b"JUGGLE/ENCDLOG/v1"


def challenge(group: Curve, tag: bytes, statement: list[Point],
              commitment: list[Point]) -> int:
    h = hashlib.sha256()
    h.update(tag)
    for P in statement:
        h.update(group.encode_point(P))
    for P in commitment:
        h.update(group.encode_point(P))
    return int.from_bytes(h.digest(), "big") % group.q


def _responses_diff(group: Curve, z: int, z2: int, e: int, e2: int) -> int:
    if e == e2:
        raise ZeroDivisionError("challenges must differ for extraction")
    return (z - z2) * group.scalar_inv(e - e2) % group.q


# ---------------------------------------------------------------------------
# DDH membership: statement (G1, H1, G2, H2), witness x with H1 = xG1, H2 = xG2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DdhProof:
    a_1: Point
    a_2: Point
    z: int

    def to_bytes(self, group: Curve) -> bytes:
        return (group.encode_point(self.a_1) + group.encode_point(self.a_2)
                + group.encode_scalar(self.z))

    @classmethod
    def from_bytes(cls, group: Curve, data: bytes) -> "DdhProof":
        n = group.point_byte_len
        if len(data) != 2 * n + group.scalar_byte_len:
            raise ValueError("bad DDH proof length")
        return cls(group.decode_point(data[:n]),
                   group.decode_point(data[n:2 * n]),
                   group.decode_scalar(data[2 * n:]))


class InteractiveDdhProver:
    def __init__(self, group, x, statement, rng):
        self.group = group
        self.x = x
        self.statement = statement
        self.alpha = group.rand_scalar(rng)
        G1, _, G2, _ = statement
        self.commitment = (group.mul(self.alpha, G1), group.mul(self.alpha, G2))

    def respond(self, e: int) -> int:
        return (self.alpha - self.x * e) % self.group.q


def ddh_prove(group: Curve, x: int, statement, rng) -> DdhProof:
    prover = InteractiveDdhProver(group, x, statement, rng)
    a_1, a_2 = prover.commitment
    e = challenge(group, DDH_TAG, list(statement), [a_1, a_2])
    return DdhProof(a_1, a_2, prover.respond(e))


def ddh_check(group: Curve, statement, a_1, a_2, e, z) -> bool:
    G1, H1, G2, H2 = statement
    return (a_1 == group.mul(z, G1) + group.mul(e, H1)
            and a_2 == group.mul(z, G2) + group.mul(e, H2))


def ddh_verify(group: Curve, statement, proof: DdhProof) -> bool:
    try:
        e = challenge(group, DDH_TAG, list(statement), [proof.a_1, proof.a_2])
        return ddh_check(group, statement, proof.a_1, proof.a_2, e, proof.z)
    except Exception:
        return False


def simulate_ddh(group: Curve, statement, e: int, rng) -> DdhProof:
    """Accepting transcript for challenge e without the witness."""
    G1, H1, G2, H2 = statement
    z = group.rand_scalar(rng)
    a_1 = group.mul(z, G1) + group.mul(e, H1)
    a_2 = group.mul(z, G2) + group.mul(e, H2)
    return DdhProof(a_1, a_2, z)


def extract_ddh(group: Curve, e: int, z: int, e2: int, z2: int) -> int:
    """Witness from two accepting transcripts sharing a commitment."""
    # z = alpha - x*e, so x = (z2 - z) / (e - e2)
    return _responses_diff(group, z2, z, e, e2)


# ---------------------------------------------------------------------------
# Correct encryption: statement (G, Y, D, E), witness (x, r) with
# D = xG + rY, E = rG
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EncProof:
    T: Point
    A_3: Point
    z_1: int
    z_2: int

    def to_bytes(self, group: Curve) -> bytes:
        return (group.encode_point(self.T) + group.encode_point(self.A_3)
                + group.encode_scalar(self.z_1) + group.encode_scalar(self.z_2))

    @classmethod
    def from_bytes(cls, group: Curve, data: bytes) -> "EncProof":
        n, s = group.point_byte_len, group.scalar_byte_len
        if len(data) != 2 * n + 2 * s:
            raise ValueError("bad encryption proof length")
        return cls(group.decode_point(data[:n]),
                   group.decode_point(data[n:2 * n]),
                   group.decode_scalar(data[2 * n:2 * n + s]),
                   group.decode_scalar(data[2 * n + s:]))


class InteractiveEncProver:
    def __init__(self, group, x, r, statement, rng):
        self.group = group
        self.x, self.r = x, r
        self.statement = statement
        G, Y, _, _ = statement
        self.s_1 = group.rand_scalar(rng)
        self.s_2 = group.rand_scalar(rng)
        T = group.mul(self.s_1, G) + group.mul(self.s_2, Y)
        A_3 = group.mul(self.s_2, G)
        self.commitment = (T, A_3)

    def respond(self, e: int) -> tuple[int, int]:
        q = self.group.q
        return (self.s_1 + e * self.x) % q, (self.s_2 + e * self.r) % q


def enc_prove(group: Curve, x: int, r: int, statement, rng) -> EncProof:
    prover = InteractiveEncProver(group, x, r, statement, rng)
    T, A_3 = prover.commitment
    e = challenge(group, ENC_TAG, list(statement), [T, A_3])
    z_1, z_2 = prover.respond(e)
    return EncProof(T, A_3, z_1, z_2)


def enc_check(group: Curve, statement, T, A_3, e, z_1, z_2) -> bool:
    G, Y, D, E = statement
    return (group.mul(z_1, G) + group.mul(z_2, Y) == T + group.mul(e, D)
            and group.mul(z_2, G) == A_3 + group.mul(e, E))


def enc_verify(group: Curve, statement, proof: EncProof) -> bool:
    try:
        e = challenge(group, ENC_TAG, list(statement), [proof.T, proof.A_3])
        return enc_check(group, statement, proof.T, proof.A_3, e,
                         proof.z_1, proof.z_2)
    except Exception:
        return False


def simulate_enc(group: Curve, statement, e: int, rng) -> EncProof:
    G, Y, D, E = statement
    z_2 = group.rand_scalar(rng)
    A_3 = group.mul(z_2, G) - group.mul(e, E)
    z_1 = group.rand_scalar(rng)
    T = group.mul(z_1, G) + group.mul(z_2, Y) - group.mul(e, D)
    return EncProof(T, A_3, z_1, z_2)


def extract_enc(group: Curve, e, z_1, z_2, e2, z_1b, z_2b) -> tuple[int, int]:
    """Recover (x, r) from two accepting transcripts with e != e2."""
    x = _responses_diff(group, z_1, z_1b, e, e2)
    r = _responses_diff(group, z_2, z_2b, e, e2)
    return x, r


# ---------------------------------------------------------------------------
# Correct encryption of a DLog: statement (G, Y, Q, D, E), witness (x, r)
# with Q = xG, D = xG + rY, E = rG
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EncDlogProof:
    A_1: Point
    A_2: Point
    A_3: Point
    z_1: int
    z_2: int

    def to_bytes(self, group: Curve) -> bytes:
        return (group.encode_point(self.A_1) + group.encode_point(self.A_2)
                + group.encode_point(self.A_3)
                + group.encode_scalar(self.z_1) + group.encode_scalar(self.z_2))

    @classmethod
    def from_bytes(cls, group: Curve, data: bytes) -> "EncDlogProof":
        n, s = group.point_byte_len, group.scalar_byte_len
        if len(data) != 3 * n + 2 * s:
            raise ValueError("bad dlog-encryption proof length")
        return cls(group.decode_point(data[:n]),
                   group.decode_point(data[n:2 * n]),
                   group.decode_point(data[2 * n:3 * n]),
                   group.decode_scalar(data[3 * n:3 * n + s]),
                   group.decode_scalar(data[3 * n + s:]))


class InteractiveEncDlogProver:
    def __init__(self, group, x, r, statement, rng):
        self.group = group
        self.x, self.r = x, r
        self.statement = statement
        G, Y, _, _, _ = statement
        self.s_1 = group.rand_scalar(rng)
        self.s_2 = group.rand_scalar(rng)
        self.commitment = (group.mul(self.s_1, G),
                           group.mul(self.s_2, Y),
                           group.mul(self.s_2, G))

    def respond(self, e: int) -> tuple[int, int]:
        q = self.group.q
        return (self.s_1 + e * self.x) % q, (self.s_2 + e * self.r) % q


def encdlog_prove(group: Curve, x: int, r: int, statement, rng) -> EncDlogProof:
    prover = InteractiveEncDlogProver(group, x, r, statement, rng)
    A_1, A_2, A_3 = prover.commitment
    e = challenge(group, ENCDLOG_TAG, list(statement), [A_1, A_2, A_3])
    z_1, z_2 = prover.respond(e)
    return EncDlogProof(A_1, A_2, A_3, z_1, z_2)


def encdlog_check(group: Curve, statement, A_1, A_2, A_3, e, z_1, z_2) -> bool:
    G, Y, Q, D, E = statement
    return (group.mul(z_1, G) == A_1 + group.mul(e, Q)
            and group.mul(z_2, G) == A_3 + group.mul(e, E)
            and group.mul(z_2, Y) == A_2 + group.mul(e, D - Q))


def encdlog_verify(group: Curve, statement, proof: EncDlogProof) -> bool:
    try:
        e = challenge(group, ENCDLOG_TAG, list(statement),
                      [proof.A_1, proof.A_2, proof.A_3])
        return encdlog_check(group, statement, proof.A_1, proof.A_2, proof.A_3,
                             e, proof.z_1, proof.z_2)
    except Exception:
        return False


def simulate_encdlog(group: Curve, statement, e: int, rng) -> EncDlogProof:
    G, Y, Q, D, E = statement
    z_2 = group.rand_scalar(rng)
    A_3 = group.mul(z_2, G) - group.mul(e, E)
    A_2 = group.mul(z_2, Y) - group.mul(e, D - Q)
    z_1 = group.rand_scalar(rng)
    A_1 = group.mul(z_1, G) - group.mul(e, Q)
    return EncDlogProof(A_1, A_2, A_3, z_1, z_2)


def extract_encdlog(group: Curve, e, z_1, z_2, e2, z_1b, z_2b) -> tuple[int, int]:
    x = _responses_diff(group, z_1, z_1b, e, e2)
    r = _responses_diff(group, z_2, z_2b, e, e2)
    return x, r
