"""Deterministic mock blockchain: balances, nonce-ordered transfers,
Schnorr-authorized transactions, instant finality.

Two independent Chain instances stand in for the two real networks.  The
chain id is baked into the signed bytes so a signature from one chain can
never be replayed on the other.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .group import Curve, Point
from .threshold import MultiSignature, schnorr_verify

ADDRESS_LEN = 20


def address_of(group: Curve, Q: Point) -> bytes:
    """20-byte truncated SHA-256 of the encoded public key."""
    return hashlib.sha256(group.encode_point(Q)).digest()[:ADDRESS_LEN]


@dataclass(frozen=True)
class Transaction:
    chain_id: int
    sender: bytes
    recipient: bytes
    amount: int
    nonce: int
    pubkey: Point
    sig: MultiSignature

    def canonical_bytes(self) -> bytes:
        return (self.chain_id.to_bytes(4, "big")
                + self.sender + self.recipient
                + self.amount.to_bytes(8, "big")
                + self.nonce.to_bytes(8, "big"))

    def to_bytes(self, group: Curve) -> bytes:
        return (self.canonical_bytes() + group.encode_point(self.pubkey)
                + self.sig.to_bytes(group))

    @classmethod
    def from_bytes(cls, group: Curve, data: bytes) -> "Transaction":
        base = 4 + 2 * ADDRESS_LEN + 16
        chain_id = int.from_bytes(data[:4], "big")
        sender = data[4:4 + ADDRESS_LEN]
        recipient = data[4 + ADDRESS_LEN:4 + 2 * ADDRESS_LEN]
        amount = int.from_bytes(data[4 + 2 * ADDRESS_LEN:4 + 2 * ADDRESS_LEN + 8], "big")
        nonce = int.from_bytes(data[4 + 2 * ADDRESS_LEN + 8:base], "big")
        pt = group.point_byte_len
        pubkey = group.decode_point(data[base:base + pt])
        sig = MultiSignature.from_bytes(group, data[base + pt:])
        return cls(chain_id, sender, recipient, amount, nonce, pubkey, sig)


def unsigned_tx_bytes(chain_id: int, sender: bytes, recipient: bytes,
                      amount: int, nonce: int) -> bytes:
    return (chain_id.to_bytes(4, "big") + sender + recipient
            + amount.to_bytes(8, "big") + nonce.to_bytes(8, "big"))


class Chain:
    """Single-writer account-model ledger with instant finality."""

    def __init__(self, group: Curve, chain_id: int,
                 genesis: dict[bytes, int] | None = None):
        self.group = group
        self.chain_id = chain_id
        self.balances: dict[bytes, int] = dict(genesis or {})
        self.nonces: dict[bytes, int] = {}
        self.log: list[Transaction] = []

    def balance(self, addr: bytes) -> int:
        return self.balances.get(addr, 0)

    def next_nonce(self, addr: bytes) -> int:
        return self.nonces.get(addr, 0)

    def total_supply(self) -> int:
        return sum(self.balances.values())

    def validate(self, tx: Transaction) -> str | None:
        """Rejection reason, or None when the transaction would apply."""
        if tx.chain_id != self.chain_id:
            return "BadSig"  # signed for another chain
        if address_of(self.group, tx.pubkey) != tx.sender:
            return "BadSig"
        if not schnorr_verify(self.group, tx.pubkey, tx.canonical_bytes(),
                              tx.sig):
            return "BadSig"
        if tx.nonce != self.next_nonce(tx.sender):
            return "BadNonce"
        if tx.amount < 0 or self.balance(tx.sender) < tx.amount:
            return "InsufficientFunds"
        return None

    def submit(self, tx: Transaction) -> str | None:
        """Apply atomically; returns None on acceptance, else the reason."""
        reason = self.validate(tx)
        if reason is not None:
            return reason
        self.balances[tx.sender] -= tx.amount
        self.balances[tx.recipient] = self.balance(tx.recipient) + tx.amount
        self.nonces[tx.sender] = tx.nonce + 1
        self.log.append(tx)
        return None

    def state_dump(self) -> str:
        lines = [f"chain {self.chain_id}"]
        for addr in sorted(self.balances):
            lines.append(f"balance {addr.hex()} {self.balances[addr]}")
        for addr in sorted(self.nonces):
            lines.append(f"nonce {addr.hex()} {self.nonces[addr]}")
        lines.append(f"txs {len(self.log)}")
        return "\n".join(lines) + "\n"

    def state_hash(self) -> str:
        return hashlib.sha256(self.state_dump().encode()).hexdigest()


def atomic_pair_submit(chain1: Chain, tx1: Transaction,
                       chain2: Chain, tx2: Transaction,
                       dishonest_drop_second: bool = False) -> bool:
    """Apply both transactions or neither.

    `dishonest_drop_second` models a provider violating its fair-submission
    obligation: the first transaction lands, the second is withheld.
    """
    if dishonest_drop_second:
        return chain1.submit(tx1) is None and False
    if chain1.validate(tx1) is not None or chain2.validate(tx2) is not None:
        return False
    assert chain1.submit(tx1) is None
    assert chain2.submit(tx2) is None
    return True
