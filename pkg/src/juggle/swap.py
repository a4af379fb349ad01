"""Three-party atomic cross-chain swap over two mock ledgers.

Roles: owners P1 and P2 trade c1 tokens on chain b1 for c2 tokens on chain
b2; the provider S co-holds every address, verifies every proof, and
submits the two deposits atomically.  The exchange of the owners' swap-key
shares runs as two interleaved gradual-release sessions: P1 releases
segment k, P2 and S verify, P2 releases its own segment k back.  An
aborting party can be at most one segment ahead.

The whole run is driven by a single deterministic orchestrator; every
message is recorded as a transcript frame so an offline auditor can replay
all verifications and name a violating role.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import juggling, sigma
from .elgamal import keygen as elgamal_keygen
from .group import Curve, get_group
from .juggling import (DecryptorSession, SegmentRelease, SetupBundle,
                       biased_setup_bundle, encryptor_setup, verify_setup)
from .ledger import Chain, Transaction, address_of, atomic_pair_submit
from .rng import SeededRng
from .segmentation import SegmentationParams
from .threshold import (KeygenParty, MissingParty, assemble_degenerate_share,
                        point_commitment, thresh_sign)

P1, P2, PROVIDER = "P1", "P2", "S"
OWNERS = (P1, P2)

# spare tokens left in each input address beyond the swapped amount
GENESIS_SPARE = 5


class MalformedTranscript(Exception):
    pass


class AbortRun(Exception):
    """Internal control flow: protocol abort with a recorded reason."""

    def __init__(self, reason: str, cheater: str | None = None):
        super().__init__(reason)
        self.reason = reason
        self.cheater = cheater


@dataclass(frozen=True)
class Adversary:
    kind: str                  # abort_at_segment | corrupt_proof |
    #                            biased_segments | provider_withhold |
    #                            provider_partial_sign
    party: str | None = None   # P1 or P2 where applicable
    segment_k: int | None = None

    @classmethod
    def parse(cls, spec: str) -> "Adversary | None":
        spec = spec.strip()
        if spec in ("", "none"):
            return None
        if spec == "provider-withhold":
            return cls("provider_withhold")
        if spec == "provider-partial-sign":
            return cls("provider_partial_sign")
        if spec.startswith("biased-segments="):
            party = spec.split("=", 1)[1]
            if party not in OWNERS:
                raise ValueError(f"bad party {party!r}")
            return cls("biased_segments", party=party)
        for prefix, kind in (("abort-at=", "abort_at_segment"),
                             ("corrupt-proof=", "corrupt_proof")):
            if spec.startswith(prefix):
                arg = spec[len(prefix):]
                k_str, _, party = arg.partition(":")
                if party not in OWNERS:
                    raise ValueError(f"bad party {party!r}")
                return cls(kind, party=party, segment_k=int(k_str))
        raise ValueError(f"unknown adversary script {spec!r}")


@dataclass
class SwapConfig:
    group: str = "toy"
    l: int = 4
    amount1: int = 10
    amount2: int = 20
    chain1_id: int = 1
    chain2_id: int = 2
    adversary: Adversary | None = None
    seed: int = 0
    two_party_addresses: bool = False  # {2,2} swap keys, owners only


@dataclass(frozen=True)
class FairnessReport:
    p1_segments: int
    p2_segments: int

    @property
    def advantage(self) -> int:
        return abs(self.p1_segments - self.p2_segments)


class Transcript:
    def __init__(self):
        self.frames: list[tuple[int, str, str, bytes]] = []

    def add(self, sender: str, kind: str, payload: bytes):
        self.frames.append((len(self.frames), sender, kind, payload))

    def payload_bytes(self) -> int:
        return sum(len(p) for _, _, _, p in self.frames)

    def to_text(self) -> str:
        lines = [f"{i}\t{sender}\t{kind}\t{payload.hex()}"
                 for i, sender, kind, payload in self.frames]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Transcript":
        t = cls()
        for lineno, line in enumerate(text.splitlines()):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise MalformedTranscript(f"line {lineno}: bad field count")
            try:
                ordinal = int(parts[0])
                payload = bytes.fromhex(parts[3])
            except ValueError as exc:
                raise MalformedTranscript(f"line {lineno}: {exc}") from exc
            if ordinal != len(t.frames):
                raise MalformedTranscript(f"line {lineno}: bad ordinal")
            t.frames.append((ordinal, parts[1], parts[2], payload))
        if not t.frames:
            raise MalformedTranscript("empty transcript")
        return t


@dataclass
class SwapResult:
    config: SwapConfig
    chain1: Chain
    chain2: Chain
    report: FairnessReport
    transcript: Transcript
    aborted: str | None          # abort reason, None on success
    cheater: str | None
    addresses: dict[str, bytes]  # a1, a2, p1_in, p2_in, p1_out, p2_out
    initial_balances: dict[str, int]


def _run_keygen(group, n: int, role_names: list[str], key_index: int,
                rng: SeededRng, transcript: Transcript,
                secret_bound: int | None = None):
    """Commit-then-reveal key generation, one frame per message."""
    parties = [KeygenParty(group, i, n, rng.fanout(f"keygen{key_index}/{i}"),
                           secret_bound)
               for i in range(n)]
    commitments = {}
    for p in parties:
        c = p.commit()
        commitments[p.party_id] = c
        transcript.add(role_names[p.party_id], "KEYGEN_COMMIT",
                       bytes([key_index]) + c)
    reveals = {}
    for p in parties:
        Q_i = p.reveal()
        reveals[p.party_id] = Q_i
        transcript.add(role_names[p.party_id], "KEYGEN_REVEAL",
                       bytes([key_index]) + group.encode_point(Q_i))
    shares = [p.finalize(commitments, reveals) for p in parties]
    transcript.add(PROVIDER, "KEYGEN_JOINT",
                   bytes([key_index]) + group.encode_point(shares[0].Q))
    return shares


def _make_tx(group, chain: Chain, sender_pub, holders, recipient: bytes,
             amount: int, rng) -> Transaction:
    sender = address_of(group, sender_pub)
    nonce = chain.next_nonce(sender)
    unsigned = Transaction(chain.chain_id, sender, recipient, amount, nonce,
                           sender_pub, None)
    sig = thresh_sign(group, sender_pub, len(holders), holders,
                      unsigned.canonical_bytes(), rng)
    return Transaction(chain.chain_id, sender, recipient, amount, nonce,
                       sender_pub, sig)


def run_swap(config: SwapConfig) -> SwapResult:
    group = get_group(config.group)
    params = SegmentationParams.for_group(group, config.l)
    m = params.m
    adv = config.adversary
    root = SeededRng(config.seed)
    rngs = {role: root.fanout(role) for role in (P1, P2, PROVIDER)}
    transcript = Transcript()
    transcript.add(PROVIDER, "CONFIG", (
        f"group={config.group};l={config.l};amount1={config.amount1};"
        f"amount2={config.amount2};chain1={config.chain1_id};"
        f"chain2={config.chain2_id};"
        f"two_party={int(config.two_party_addresses)}"
    ).encode())

    # --- wallets: {2,2} input addresses (owner + provider), plain outputs
    in1 = _run_keygen(group, 2, [P1, PROVIDER], 11, root.fanout("wallet1"),
                      Transcript())  # wallet keygens are off-transcript
    in2 = _run_keygen(group, 2, [P2, PROVIDER], 12, root.fanout("wallet2"),
                      Transcript())
    p1_in = address_of(group, in1[0].Q)
    p2_in = address_of(group, in2[0].Q)
    out1_x = group.rand_scalar(rngs[P1])
    out2_x = group.rand_scalar(rngs[P2])
    p1_out = address_of(group, group.mul(out1_x, group.generator))
    p2_out = address_of(group, group.mul(out2_x, group.generator))

    chain1 = Chain(group, config.chain1_id,
                   {p1_in: config.amount1 + GENESIS_SPARE})
    chain2 = Chain(group, config.chain2_id,
                   {p2_in: config.amount2 + GENESIS_SPARE})
    initial = {P1: chain1.balance(p1_in), P2: chain2.balance(p2_in)}

    dec_sessions: dict[str, DecryptorSession | None] = {P1: None, P2: None}
    addresses = {"p1_in": p1_in, "p2_in": p2_in,
                 "p1_out": p1_out, "p2_out": p2_out}

    def counts() -> FairnessReport:
        return FairnessReport(
            p1_segments=len(dec_sessions[P1].limbs) if dec_sessions[P1] else 0,
            p2_segments=len(dec_sessions[P2].limbs) if dec_sessions[P2] else 0)

    def result(aborted=None, cheater=None) -> SwapResult:
        if aborted is not None:
            transcript.add(cheater or PROVIDER, "ABORT",
                           aborted.encode())
        return SwapResult(config, chain1, chain2, counts(), transcript,
                          aborted, cheater, addresses, initial)

    try:
        # --- step 1: encryption key exchange
        y1, Y1 = elgamal_keygen(group, rngs[P1])
        y2, Y2 = elgamal_keygen(group, rngs[P2])
        transcript.add(P1, "ENCKEY", group.encode_point(Y1))
        transcript.add(P2, "ENCKEY", group.encode_point(Y2))

        # --- steps 2-3: swap-address key generation
        if config.two_party_addresses:
            roles = [P1, P2]
        else:
            roles = [P1, P2, PROVIDER]
        n = len(roles)
        key1 = _run_keygen(group, n, roles, 1, root.fanout("key1"), transcript,
                           secret_bound=params.secret_bound)
        key2 = _run_keygen(group, n, roles, 2, root.fanout("key2"), transcript,
                           secret_bound=params.secret_bound)
        a1 = address_of(group, key1[0].Q)
        a2 = address_of(group, key2[0].Q)
        addresses["a1"] = a1
        addresses["a2"] = a2

        # --- step 4: deposits, submitted atomically by the provider
        dep1 = _make_tx(group, chain1, in1[0].Q,
                        [(0, in1[0].x_i), (1, in1[1].x_i)], a1,
                        config.amount1, rngs[P1].fanout("deposit"))
        dep2 = _make_tx(group, chain2, in2[0].Q,
                        [(0, in2[0].x_i), (1, in2[1].x_i)], a2,
                        config.amount2, rngs[P2].fanout("deposit"))
        transcript.add(P1, "DEPOSIT_TX", dep1.to_bytes(group))
        transcript.add(P2, "DEPOSIT_TX", dep2.to_bytes(group))
        withhold = adv is not None and adv.kind == "provider_withhold"
        ok = atomic_pair_submit(chain1, dep1, chain2, dep2,
                                dishonest_drop_second=withhold)
        for chain, tx in ((chain1, dep1), (chain2, dep2)):
            if tx in chain.log:
                transcript.add(f"chain{chain.chain_id}", "TX_APPLIED",
                               tx.to_bytes(group))
        # juggling never starts before both deposits are confirmed
        if chain1.balance(a1) < config.amount1:
            raise AbortRun("deposit to a1 not confirmed", PROVIDER)
        if chain2.balance(a2) < config.amount2:
            raise AbortRun("deposit to a2 not confirmed", PROVIDER)

        # --- step 5: interleaved gradual release
        # P1 encrypts its share of key1 to Y2; P2 its share of key2 to Y1.
        biased = adv.party if adv is not None and adv.kind == "biased_segments" else None
        bundles = {}
        for party, share, Y, rng in ((P1, key1[0], Y2, rngs[P1]),
                                     (P2, key2[1], Y1, rngs[P2])):
            if biased == party:
                bundle, _ = biased_setup_bundle(
                    group, share.x_i, share.Q_i, Y, params,
                    rng.fanout("juggle"))
                sessions = None
            else:
                sessions, bundle = encryptor_setup(
                    group, share.x_i, share.Q_i, Y, params,
                    rng.fanout("juggle"))
            bundles[party] = (sessions, bundle, share.Q_i, Y)
            transcript.add(party, "SETUP_BUNDLE", bundle.to_bytes(group))

        # counterparty and provider verify both bundles before any release
        for party in OWNERS:
            _, bundle, Q_i, Y = bundles[party]
            if not verify_setup(group, bundle, Q_i, Y, params):
                raise AbortRun(f"setup bundle from {party} rejected", party)

        enc1 = bundles[P1][0]
        enc2 = bundles[P2][0]
        # decryptor sessions: P2 decrypts P1's share and vice versa
        dec_sessions[P2] = DecryptorSession(group, y2, key1[0].Q_i, params,
                                            bundles[P1][1])
        dec_sessions[P1] = DecryptorSession(group, y1, key2[1].Q_i, params,
                                            bundles[P2][1])

        def corrupt(release: SegmentRelease) -> SegmentRelease:
            bad = sigma.EncProof(release.enc_proof.T, release.enc_proof.A_3,
                                 (release.enc_proof.z_1 + 1) % group.q,
                                 release.enc_proof.z_2)
            return SegmentRelease(release.k, release.E_k, bad)

        def provider_checks(sender: str, release: SegmentRelease):
            _, bundle, _, Y = bundles[sender]
            D_k = bundle.all_D[release.k - 1]
            stmt = (group.generator, Y, D_k, release.E_k)
            if not sigma.enc_verify(group, stmt, release.enc_proof):
                raise AbortRun(f"segment {release.k} from {sender} rejected",
                               sender)

        aborts_at = (adv.segment_k
                     if adv is not None and adv.kind == "abort_at_segment"
                     else None)
        corrupts_at = (adv.segment_k
                       if adv is not None and adv.kind == "corrupt_proof"
                       else None)
        if aborts_at == 0:
            raise AbortRun(f"{adv.party} walked away before any release",
                           adv.party)

        for k in range(1, m + 1):
            # P1 sends segment k (strict alternation, P1 first)
            if aborts_at == k and adv.party == P1:
                raise AbortRun(f"P1 walked away before sending segment {k}",
                               P1)
            rel = enc1.release(k)
            if corrupts_at == k and adv.party == P1:
                rel = corrupt(rel)
            transcript.add(P1, "SEGMENT", rel.to_bytes(group))
            provider_checks(P1, rel)
            try:
                dec_sessions[P2].accept(rel)
            except juggling.ProofRejected as exc:
                raise AbortRun(str(exc), P1)
            # P2 replies with its own segment k
            if aborts_at == k and adv.party == P2:
                raise AbortRun(f"P2 walked away before replying at segment {k}",
                               P2)
            rel = enc2.release(k)
            if corrupts_at == k and adv.party == P2:
                rel = corrupt(rel)
            transcript.add(P2, "SEGMENT", rel.to_bytes(group))
            provider_checks(P2, rel)
            try:
                dec_sessions[P1].accept(rel)
            except juggling.ProofRejected as exc:
                raise AbortRun(str(exc), P2)

        # --- step 6: withdrawals via degenerate signing
        learned_by_p1 = dec_sessions[P1].finish()   # x^{p2}_2
        learned_by_p2 = dec_sessions[P2].finish()   # x^{p1}_1
        partial = adv is not None and adv.kind == "provider_partial_sign"

        def withdraw(owner: str):
            if owner == P1:
                share, learned, learned_slot = key2[0], learned_by_p1, 1
                chain, amount, out = chain2, config.amount2, p1_out
                joint = key2[0].Q
                provider_share = None if config.two_party_addresses else key2[2]
            else:
                share, learned, learned_slot = key1[1], learned_by_p2, 0
                chain, amount, out = chain1, config.amount1, p2_out
                joint = key1[0].Q
                provider_share = None if config.two_party_addresses else key1[2]
            holders = assemble_degenerate_share(group, share, learned_slot,
                                                learned)
            if provider_share is not None:
                holders = holders + [(provider_share.party_id,
                                      provider_share.x_i)]
            tx = _make_tx(group, chain, joint, holders, out, amount,
                          rngs[owner].fanout("withdraw"))
            transcript.add(owner, "WITHDRAW_TX", tx.to_bytes(group))
            reason = chain.submit(tx)
            if reason is not None:
                raise AbortRun(f"withdraw by {owner} rejected: {reason}",
                               owner)
            transcript.add(f"chain{chain.chain_id}", "TX_APPLIED",
                           tx.to_bytes(group))

        withdraw(P1)
        if partial:
            # provider refuses the second co-signing; P2's funds stay locked
            raise AbortRun("provider refused to co-sign P2's withdrawal",
                           PROVIDER)
        withdraw(P2)
    except AbortRun as abort:
        return result(aborted=abort.reason, cheater=abort.cheater)
    return result()


# ---------------------------------------------------------------------------
# offline audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    clean: bool
    blamed: str | None = None
    reason: str | None = None


def audit_transcript(text: str) -> Verdict:
    """Recompute every verification in a transcript and assign blame."""
    t = Transcript.from_text(text)
    frames = t.frames
    if frames[0][2] != "CONFIG":
        raise MalformedTranscript("first frame must be CONFIG")
    try:
        cfg = dict(item.split("=", 1)
                   for item in frames[0][3].decode().split(";") if item)
        group = get_group(cfg["group"])
        params = SegmentationParams.for_group(group, int(cfg["l"]))
        amounts = {1: int(cfg["amount1"]), 2: int(cfg["amount2"])}
    except MalformedTranscript:
        raise
    except Exception as exc:
        raise MalformedTranscript(f"bad CONFIG frame: {exc}") from exc

    enc_keys: dict[str, object] = {}
    commits: dict[tuple[int, str], bytes] = {}
    reveals: dict[tuple[int, str], object] = {}
    joint_addresses: dict[int, bytes] = {}
    bundles: dict[str, SetupBundle] = {}
    segments: dict[str, int] = {P1: 0, P2: 0}
    deposits_applied: dict[int, int] = {1: 0, 2: 0}
    withdraws_applied: dict[int, int] = {1: 0, 2: 0}
    deposit_txs = 0

    try:
        for _, sender, kind, payload in frames:
            if kind == "ENCKEY":
                enc_keys[sender] = group.decode_point(payload)
            elif kind == "KEYGEN_COMMIT":
                commits[(payload[0], sender)] = payload[1:]
            elif kind == "KEYGEN_REVEAL":
                Q_i = group.decode_point(payload[1:])
                key = (payload[0], sender)
                if key in commits and point_commitment(
                        group, b"KEYGEN", Q_i) != commits[key]:
                    return Verdict(False, sender, "broken keygen commitment")
                reveals[key] = Q_i
            elif kind == "KEYGEN_JOINT":
                joint = group.decode_point(payload[1:])
                joint_addresses[payload[0]] = address_of(group, joint)
            elif kind == "SETUP_BUNDLE":
                bundle = SetupBundle.from_bytes(group, payload)
                bundles[sender] = bundle
                key_index = 1 if sender == P1 else 2
                Q_i = reveals.get((key_index, sender))
                Y = enc_keys.get(P2 if sender == P1 else P1)
                if Q_i is None or Y is None:
                    return Verdict(False, sender,
                                   "setup bundle before keys established")
                if not verify_setup(group, bundle, Q_i, Y, params):
                    return Verdict(False, sender, "setup bundle fails verification")
            elif kind == "SEGMENT":
                release = SegmentRelease.from_bytes(group, payload)
                bundle = bundles.get(sender)
                if bundle is None:
                    return Verdict(False, sender, "segment before setup")
                Y = enc_keys[P2 if sender == P1 else P1]
                D_k = bundle.all_D[release.k - 1]
                stmt = (group.generator, Y, D_k, release.E_k)
                if not sigma.enc_verify(group, stmt, release.enc_proof):
                    return Verdict(False, sender,
                                   f"segment {release.k} proof fails")
                segments[sender] += 1
            elif kind == "DEPOSIT_TX":
                deposit_txs += 1
            elif kind == "TX_APPLIED":
                tx = Transaction.from_bytes(group, payload)
                cid = 1 if sender == "chain1" else 2
                if tx.recipient == joint_addresses.get(cid):
                    deposits_applied[cid] += 1
                elif tx.sender == joint_addresses.get(cid):
                    withdraws_applied[cid] += 1
    except MalformedTranscript:
        raise
    except Exception as exc:
        raise MalformedTranscript(f"undecodable frame: {exc}") from exc

    if deposit_txs == 2 and deposits_applied[1] + deposits_applied[2] == 1:
        return Verdict(False, PROVIDER,
                       "only one of two deposit transactions on-chain")
    both_complete = segments[P1] == params.m and segments[P2] == params.m
    if both_complete and withdraws_applied[1] + withdraws_applied[2] == 1:
        return Verdict(False, PROVIDER,
                       "withdrawal co-signing denied to one owner")
    return Verdict(True)
