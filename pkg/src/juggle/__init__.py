"""Gradual-release verifiable encryption, {n,n} Schnorr signing, and an
atomic cross-chain swap harness over deterministic mock ledgers."""

__version__ = "0.1.0"
