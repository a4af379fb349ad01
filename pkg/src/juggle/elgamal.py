"""Homomorphic ElGamal encryption in the exponent.

A plaintext scalar v under encryption key Y becomes (D, E) = (vG + rY, rG).
Decryption with the key y yields the point D - yE = vG; recovering v itself
takes a small-range discrete log extraction.  Prover-side ciphertexts keep
their randomness so correctness proofs can be built later; wire-side
ciphertexts carry only the two points.
"""

from __future__ import annotations

from dataclasses import dataclass

from .group import Curve, Point, brute_force_dlog


class ExtractionFailed(Exception):
    """Plaintext not found below the bound; a verified proof rules this out,
    so seeing it after verification means a soundness bug."""


@dataclass(frozen=True)
class Ciphertext:
    D: Point
    E: Point
    r: int | None = None  # prover-side randomness, never serialized

    def public(self) -> "Ciphertext":
        return Ciphertext(self.D, self.E)

    def to_bytes(self, group: Curve) -> bytes:
        return group.encode_point(self.D) + group.encode_point(self.E)

    @classmethod
    def from_bytes(cls, group: Curve, data: bytes) -> "Ciphertext":
        n = group.point_byte_len
        if len(data) != 2 * n:
            raise ValueError("bad ciphertext length")
        return cls(group.decode_point(data[:n]), group.decode_point(data[n:]))


def keygen(group: Curve, rng) -> tuple[int, Point]:
    """Decryption/encryption key pair (y, Y = yG)."""
    y = group.rand_scalar(rng)
    return y, group.mul(y, group.generator)


def encrypt(group: Curve, v: int, Y: Point, rng) -> Ciphertext:
    r = group.rand_scalar(rng)
    D = group.mul(v, group.generator) + group.mul(r, Y)
    E = group.mul(r, group.generator)
    return Ciphertext(D, E, r)


def decrypt_point(group: Curve, ct: Ciphertext, y: int) -> Point:
    return ct.D - group.mul(y, ct.E)


def decrypt_segment(group: Curve, ct: Ciphertext, y: int, bound: int) -> int:
    """Recover a plaintext known to lie below `bound` via BSGS."""
    P = decrypt_point(group, ct, y)
    try:
        return brute_force_dlog(group, P, bound)
    except Exception as exc:
        raise ExtractionFailed(
            f"no plaintext below {bound}; ciphertext escaped verification"
        ) from exc


def aggregate(group: Curve, cts: list[Ciphertext], weights: list[int]) -> Ciphertext:
    """Homomorphic weighted sum: encrypts sum(w_k * v_k) with randomness
    sum(w_k * r_k) when every input carries prover-side randomness."""
    if len(cts) != len(weights):
        raise ValueError("ciphertext/weight count mismatch")
    D = group.identity
    E = group.identity
    r_total = 0
    have_r = all(ct.r is not None for ct in cts)
    for ct, w in zip(cts, weights):
        D = D + group.mul(w, ct.D)
        E = E + group.mul(w, ct.E)
        if have_r:
            r_total = (r_total + w * ct.r) % group.q
    return Ciphertext(D, E, r_total if have_r else None)
