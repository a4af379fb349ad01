"""Splitting a scalar into fixed-width limbs and putting it back together.

A secret x is decomposed base 2^l into m limbs with weights f_k = 2^((k-1)l)
(1-based k, stored 0-based).  The top limb is restricted to l-1 bits: secrets
are generated with the most significant bit clear, so x < 2^(m*l - 1) always
holds and the tight top-segment range proof is satisfiable.
"""

from __future__ import annotations

from dataclasses import dataclass


class SecretOutOfRange(ValueError):
    """Secret violates the cleared-MSB restriction."""


class LimbOutOfRange(ValueError):
    """A limb is not in [0, 2^l) (top limb: [0, 2^(l-1)))."""


@dataclass(frozen=True)
class SegmentationParams:
    l: int          # segment bit length
    q_bits: int     # bit length of the group order

    @property
    def m(self) -> int:
        return -(-self.q_bits // self.l)  # ceil

    @property
    def msb_bound(self) -> int:
        """Exclusive upper bound on the top limb."""
        return 1 << (self.l - 1)

    @property
    def secret_bound(self) -> int:
        """Exclusive upper bound on a valid secret: 2^(m*l - 1)."""
        return 1 << (self.m * self.l - 1)

    def weight(self, k: int) -> int:
        """f_k = 2^((k-1)l) for 1-based segment index k."""
        return 1 << ((k - 1) * self.l)

    def limb_bound(self, k: int) -> int:
        """Exclusive limb bound for 1-based index k (top limb is tighter)."""
        return self.msb_bound if k == self.m else 1 << self.l

    @classmethod
    def for_group(cls, group, l: int) -> "SegmentationParams":
        return cls(l=l, q_bits=group.q.bit_length())


def segment(x: int, params: SegmentationParams) -> list[int]:
    """Base-2^l little-limb decomposition of x, zero padded to m limbs."""
    if x < 0 or x >= params.secret_bound:
        raise SecretOutOfRange(
            f"secret must lie in [0, 2^{params.m * params.l - 1})"
        )
    mask = (1 << params.l) - 1
    return [(x >> (k * params.l)) & mask for k in range(params.m)]


def reconstruct(limbs: list[int], params: SegmentationParams, q: int) -> int:
    """Weighted limb sum mod q; inverse of segment() for valid inputs."""
    if len(limbs) != params.m:
        raise LimbOutOfRange(f"expected {params.m} limbs, got {len(limbs)}")
    total = 0
    for i, limb in enumerate(limbs):
        if limb < 0 or limb >= params.limb_bound(i + 1):
            raise LimbOutOfRange(f"limb {i + 1} out of range: {limb}")
        total += limb << (i * params.l)
    return total % q
