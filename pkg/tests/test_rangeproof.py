"""Bit-decomposition range proof with per-bit OR-proofs."""

import pytest

from juggle.rangeproof import (DEFAULT_BACKEND, BitRangeProof, RangeStatement,
                               ValueOutOfRange, range_prove, range_verify)
from juggle.rng import SeededRng


def setup_keys(group, rng):
    Y = group.mul(1 + rng.randbelow(group.q - 1), group.generator)
    return Y


def commit(group, v, r, Y):
    return group.mul(v, group.generator) + group.mul(r, Y)


def test_boundaries(toy, rng):
    Y = setup_keys(toy, rng)
    for v in (0, 1, 2 ** 4 - 1):
        r = toy.rand_scalar(rng)
        proof = range_prove(toy, v, r, Y, 4, rng)
        stmt = RangeStatement(commit(toy, v, r, Y), 4)
        assert range_verify(toy, stmt, proof, Y)


def test_value_out_of_range(toy, rng):
    Y = setup_keys(toy, rng)
    with pytest.raises(ValueOutOfRange):
        range_prove(toy, 2 ** 4, 1, Y, 4, rng)
    with pytest.raises(ValueOutOfRange):
        range_prove(toy, -1, 1, Y, 4, rng)


def test_random_values(toy, rng):
    Y = setup_keys(toy, rng)
    for _ in range(100):
        n_bits = 2 + rng.randbelow(7)
        v = rng.randbelow(1 << n_bits)
        r = toy.rand_scalar(rng)
        proof = range_prove(toy, v, r, Y, n_bits, rng)
        stmt = RangeStatement(commit(toy, v, r, Y), n_bits)
        assert range_verify(toy, stmt, proof, Y)
        # wrong commitment must fail the consistency equation
        bad = RangeStatement(stmt.commitment + toy.generator, n_bits)
        assert not range_verify(toy, bad, proof, Y)


def test_bit_commitment_opened_to_two(toy, rng):
    """Shift one bit commitment by 2G and compensate the next so the
    consistency equation still holds; the OR-proofs must then fail."""
    Y = setup_keys(toy, rng)
    G = toy.generator
    v, r = 1, toy.rand_scalar(rng)
    proof = range_prove(toy, v, r, Y, 2, rng)
    bits = list(proof.bit_commitments)
    bits[0] = bits[0] + toy.mul(2, G)  # B_0 now opens to 3
    bits[1] = bits[1] - G              # keeps sum(2^i B_i) unchanged
    forged = BitRangeProof(bits, proof.bit_proofs)
    stmt = RangeStatement(commit(toy, v, r, Y), 2)
    assert not range_verify(toy, stmt, forged, Y)


def test_truncated_claim_rejected(toy, rng):
    """Proving only the low bits of an out-of-range value breaks the
    consistency equation against the real commitment."""
    Y = setup_keys(toy, rng)
    for _ in range(100):
        n_bits = 4
        v = (1 << n_bits) + rng.randbelow(toy.q - (1 << n_bits))
        r = toy.rand_scalar(rng)
        claimed = v % (1 << n_bits)
        proof = range_prove(toy, claimed, r, Y, n_bits, rng)
        stmt = RangeStatement(commit(toy, v, r, Y), n_bits)
        assert not range_verify(toy, stmt, proof, Y)


def test_wrong_proof_shape(toy, rng):
    Y = setup_keys(toy, rng)
    r = toy.rand_scalar(rng)
    proof = range_prove(toy, 3, r, Y, 4, rng)
    stmt = RangeStatement(commit(toy, 3, r, Y), 3)
    assert not range_verify(toy, stmt, proof, Y)


def test_wire_roundtrip_and_fuzz(toy):
    rng = SeededRng(7)
    Y = setup_keys(toy, rng)
    v, r = 5, toy.rand_scalar(rng)
    proof = range_prove(toy, v, r, Y, 4, rng)
    raw = proof.to_bytes(toy)
    assert BitRangeProof.from_bytes(toy, raw) == proof
    stmt = RangeStatement(commit(toy, v, r, Y), 4)
    for byte_i in range(1, len(raw), 3):
        mutated = bytearray(raw)
        mutated[byte_i] ^= 0x01
        try:
            pf = BitRangeProof.from_bytes(toy, bytes(mutated))
            assert not range_verify(toy, stmt, pf, Y)
        except ValueError:
            pass
    with pytest.raises(ValueError):
        BitRangeProof.from_bytes(toy, raw[:-1])
    with pytest.raises(ValueError):
        BitRangeProof.from_bytes(toy, b"")


def test_backend_interface(toy, rng):
    Y = setup_keys(toy, rng)
    r = toy.rand_scalar(rng)
    proof = DEFAULT_BACKEND.prove(toy, 6, r, Y, 4, rng)
    stmt = RangeStatement(commit(toy, 6, r, Y), 4)
    assert DEFAULT_BACKEND.verify(toy, stmt, proof, Y)
    raw = proof.to_bytes(toy)
    assert DEFAULT_BACKEND.proof_from_bytes(toy, raw) == proof
