"""Deterministic, fan-out-able randomness for reproducible protocol runs.

All protocol randomness flows from one seeded generator; each party gets a
domain-separated child so adversary sweeps replay bit-exactly regardless of
how many draws other parties make.
"""

from __future__ import annotations

import hashlib
import secrets


class SeededRng:
    """SHA-256 counter-mode byte stream with hierarchical fan-out."""

    def __init__(self, seed: bytes | int | str):
        if isinstance(seed, int):
            seed = seed.to_bytes(8, "big", signed=True)
        elif isinstance(seed, str):
            seed = seed.encode()
        self._key = hashlib.sha256(b"JUGGLE/RNG/v1" + seed).digest()
        self._counter = 0
        self._buf = b""

    def fanout(self, label: str) -> "SeededRng":
        child = SeededRng(self._key + b"/" + label.encode())
        return child

    def randbytes(self, n: int) -> bytes:
        while len(self._buf) < n:
            block = hashlib.sha256(
                self._key + self._counter.to_bytes(8, "big")
            ).digest()
            self._counter += 1
            self._buf += block
        out, self._buf = self._buf[:n], self._buf[n:]
        return out

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randbelow needs n > 0")
        k = (n.bit_length() + 7) // 8
        while True:
            v = int.from_bytes(self.randbytes(k + 8), "big")
            # 64 extra bits make the modulo bias negligible
            return v % n

    def randrange(self, lo: int, hi: int) -> int:
        return lo + self.randbelow(hi - lo)


def system_rng() -> SeededRng:
    """Fresh unpredictable generator for non-test use."""
    return SeededRng(secrets.token_bytes(32))
