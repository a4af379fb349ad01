"""Segmented verifiable encryption of an EC discrete log, released gradually.

The encryptor splits its secret x (with Q = xG) into m limbs, encrypts each
limb to the decryptor's key Y, and publishes a one-shot setup: all limb
commitments D_k, one range proof per limb, the weighted aggregate E, and a
proof that the aggregate ciphertext encrypts the discrete log of Q.  After
the setup verifies, limbs are revealed one at a time as (E_k, proof of
correct encryption) pairs, strictly in ascending order; the decryptor checks
each proof, extracts the limb by small-range BSGS, and reconstructs x once
all m limbs are in.

A rejected proof permanently poisons the session: retrying would let a
cheater probe the verifier.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import elgamal, sigma
from .elgamal import Ciphertext, ExtractionFailed
from .group import Curve, Point
from .rangeproof import DEFAULT_BACKEND, RangeStatement
from .segmentation import SegmentationParams, reconstruct, segment


class KeyMismatch(ValueError):
    """Q is not x*G."""


class OutOfOrder(Exception):
    """Segment index does not match the session's expected next index."""


class ProofRejected(Exception):
    """A release failed verification; the encryptor is cheating."""


class SetupRejected(Exception):
    """The setup bundle failed verification."""


class Incomplete(Exception):
    """Reconstruction attempted before all m limbs arrived."""


class SoundnessViolation(AssertionError):
    """Reconstructed x does not match Q after all proofs verified.

    Unreachable unless the proof system is broken; raised loudly on purpose.
    """


# -- wire framing -----------------------------------------------------------

FRAME_SETUP = 0x01
FRAME_SEGMENT = 0x02


def frame(type_byte: int, payload: bytes) -> bytes:
    return bytes([type_byte]) + len(payload).to_bytes(4, "big") + payload


def parse_frame(data: bytes) -> tuple[int, bytes, bytes]:
    """Returns (type, payload, rest)."""
    if len(data) < 5:
        raise ValueError("truncated frame header")
    n = int.from_bytes(data[1:5], "big")
    if len(data) < 5 + n:
        raise ValueError("truncated frame payload")
    return data[0], data[5:5 + n], data[5 + n:]


# -- messages ---------------------------------------------------------------

@dataclass(frozen=True)
class SetupBundle:
    all_D: list[Point]
    range_proofs: list
    E_agg: Point
    encdlog_proof: sigma.EncDlogProof

    def to_bytes(self, group: Curve) -> bytes:
        out = [len(self.all_D).to_bytes(2, "big")]
        for D in self.all_D:
            out.append(group.encode_point(D))
        for pf in self.range_proofs:
            raw = pf.to_bytes(group)
            out.append(len(raw).to_bytes(4, "big"))
            out.append(raw)
        out.append(group.encode_point(self.E_agg))
        out.append(self.encdlog_proof.to_bytes(group))
        return b"".join(out)

    @classmethod
    def from_bytes(cls, group: Curve, data: bytes,
                   backend=DEFAULT_BACKEND) -> "SetupBundle":
        if len(data) < 2:
            raise ValueError("truncated setup bundle")
        m = int.from_bytes(data[:2], "big")
        pt = group.point_byte_len
        off = 2
        all_D = []
        for _ in range(m):
            all_D.append(group.decode_point(data[off:off + pt]))
            off += pt
        proofs = []
        for _ in range(m):
            n = int.from_bytes(data[off:off + 4], "big")
            off += 4
            proofs.append(backend.proof_from_bytes(group, data[off:off + n]))
            off += n
        E_agg = group.decode_point(data[off:off + pt])
        off += pt
        encdlog = sigma.EncDlogProof.from_bytes(group, data[off:])
        return cls(all_D, proofs, E_agg, encdlog)


@dataclass(frozen=True)
class SegmentRelease:
    k: int  # 1-based segment index
    E_k: Point
    enc_proof: sigma.EncProof

    def to_bytes(self, group: Curve) -> bytes:
        return (self.k.to_bytes(2, "big") + group.encode_point(self.E_k)
                + self.enc_proof.to_bytes(group))

    @classmethod
    def from_bytes(cls, group: Curve, data: bytes) -> "SegmentRelease":
        pt = group.point_byte_len
        k = int.from_bytes(data[:2], "big")
        E_k = group.decode_point(data[2:2 + pt])
        proof = sigma.EncProof.from_bytes(group, data[2 + pt:])
        return cls(k, E_k, proof)


# -- encryptor side ---------------------------------------------------------

class EncryptorSession:
    def __init__(self, group: Curve, x: int, Q: Point, Y: Point,
                 params: SegmentationParams, rng, backend=DEFAULT_BACKEND):
        if group.mul(x, group.generator) != Q:
            raise KeyMismatch("public key does not match secret")
        self.group = group
        self.params = params
        self.Y = Y
        self.limbs = segment(x, params)  # raises SecretOutOfRange
        self.cts = [elgamal.encrypt(group, limb, Y, rng)
                    for limb in self.limbs]
        weights = [params.weight(k) for k in range(1, params.m + 1)]
        agg = elgamal.aggregate(group, self.cts, weights)
        range_proofs = []
        for i, (limb, ct) in enumerate(zip(self.limbs, self.cts)):
            n_bits = params.l - 1 if i == params.m - 1 else params.l
            range_proofs.append(
                backend.prove(group, limb, ct.r, Y, n_bits, rng))
        stmt = (group.generator, Y, Q, agg.D, agg.E)
        encdlog = sigma.encdlog_prove(group, x, agg.r, stmt, rng)
        self.bundle = SetupBundle([ct.D for ct in self.cts], range_proofs,
                                  agg.E, encdlog)
        self.next_k = 1
        self._rng = rng

    def release(self, k: int) -> SegmentRelease:
        if k != self.next_k:
            raise OutOfOrder(f"expected segment {self.next_k}, got {k}")
        if k > self.params.m:
            raise OutOfOrder("all segments already released")
        ct = self.cts[k - 1]
        stmt = (self.group.generator, self.Y, ct.D, ct.E)
        proof = sigma.enc_prove(self.group, self.limbs[k - 1], ct.r, stmt,
                                self._rng)
        self.next_k += 1
        return SegmentRelease(k, ct.E, proof)


def encryptor_setup(group: Curve, x: int, Q: Point, Y: Point,
                    params: SegmentationParams, rng,
                    backend=DEFAULT_BACKEND) -> tuple[EncryptorSession, SetupBundle]:
    session = EncryptorSession(group, x, Q, Y, params, rng, backend)
    return session, session.bundle


def verify_setup(group: Curve, bundle: SetupBundle, Q: Point, Y: Point,
                 params: SegmentationParams, backend=DEFAULT_BACKEND) -> bool:
    try:
        m = params.m
        if len(bundle.all_D) != m or len(bundle.range_proofs) != m:
            return False
        for i in range(m):
            n_bits = params.l - 1 if i == m - 1 else params.l
            stmt = RangeStatement(bundle.all_D[i], n_bits)
            if not backend.verify(group, stmt, bundle.range_proofs[i], Y):
                return False
        D_agg = group.identity
        for k in range(1, m + 1):
            D_agg = D_agg + group.mul(params.weight(k), bundle.all_D[k - 1])
        stmt = (group.generator, Y, Q, D_agg, bundle.E_agg)
        return sigma.encdlog_verify(group, stmt, bundle.encdlog_proof)
    except Exception:
        return False


# -- decryptor side ---------------------------------------------------------

class DecryptorSession:
    def __init__(self, group: Curve, y: int, Q: Point,
                 params: SegmentationParams, bundle: SetupBundle,
                 backend=DEFAULT_BACKEND):
        Y = group.mul(y, group.generator)
        if not verify_setup(group, bundle, Q, Y, params, backend):
            raise SetupRejected("setup bundle failed verification")
        self.group = group
        self.y = y
        self.Y = Y
        self.Q = Q
        self.params = params
        self.bundle = bundle
        self.limbs: list[int] = []
        self.next_k = 1
        self.poisoned = False

    def accept(self, release: SegmentRelease) -> int:
        if self.poisoned:
            raise ProofRejected("session poisoned by an earlier rejection")
        if release.k != self.next_k:
            raise OutOfOrder(
                f"expected segment {self.next_k}, got {release.k}")
        D_k = self.bundle.all_D[release.k - 1]
        stmt = (self.group.generator, self.Y, D_k, release.E_k)
        if not sigma.enc_verify(self.group, stmt, release.enc_proof):
            self.poisoned = True
            raise ProofRejected(f"segment {release.k} proof failed")
        bound = self.params.limb_bound(release.k)
        ct = Ciphertext(D_k, release.E_k)
        limb = elgamal.decrypt_segment(self.group, ct, self.y, bound)
        self.limbs.append(limb)
        self.next_k += 1
        return limb

    def finish(self) -> int:
        if len(self.limbs) != self.params.m:
            raise Incomplete(
                f"have {len(self.limbs)} of {self.params.m} limbs")
        x = reconstruct(self.limbs, self.params, self.group.q)
        if self.group.mul(x, self.group.generator) != self.Q:
            raise SoundnessViolation(
                "reconstructed secret does not match public key")
        return x


# -- adversarial constructions ----------------------------------------------

def biased_setup_bundle(group: Curve, x: int, Q: Point, Y: Point,
                        params: SegmentationParams, rng,
                        k: int | None = None, k2: int | None = None,
                        bias: int | None = None,
                        backend=DEFAULT_BACKEND):
    """Build the biased-segment attack bundle.

    Two limb indices get shifted by +b and the compensating
    -b*f_k/f_k2 (mod q) so the weighted sum still equals x and the
    aggregate dlog-encryption proof passes, yet the tampered segments would
    extract to wrong values.  The attacker's best effort at range proofs is
    to prove the low n_bits of the tampered value, which breaks the
    commitment-consistency check whenever the value is actually out of
    range.  Returns (bundle, encryptor-side ciphertexts) so harnesses can
    continue the session if verification were ever to pass.
    """
    m = params.m
    if k is None:
        k = 1 + rng.randbelow(m)
    if k2 is None:
        k2 = 1 + rng.randbelow(m - 1)
        if k2 >= k:
            k2 += 1
    if bias is None:
        bias = 1 + rng.randbelow(group.q - 1)
    limbs = [limb % group.q for limb in segment(x, params)]
    comp = (-bias * params.weight(k) * group.scalar_inv(params.weight(k2))) % group.q
    limbs[k - 1] = (limbs[k - 1] + bias) % group.q
    limbs[k2 - 1] = (limbs[k2 - 1] + comp) % group.q

    cts = [elgamal.encrypt(group, limb, Y, rng) for limb in limbs]
    weights = [params.weight(j) for j in range(1, m + 1)]
    agg = elgamal.aggregate(group, cts, weights)
    range_proofs = []
    for i, (limb, ct) in enumerate(zip(limbs, cts)):
        n_bits = params.l - 1 if i == m - 1 else params.l
        claimed = limb % (1 << n_bits)  # best-effort forgery
        range_proofs.append(backend.prove(group, claimed, ct.r, Y, n_bits, rng))
    stmt = (group.generator, Y, Q, agg.D, agg.E)
    encdlog = sigma.encdlog_prove(group, x, agg.r, stmt, rng)
    bundle = SetupBundle([ct.D for ct in cts], range_proofs, agg.E, encdlog)
    return bundle, cts
