"""Command-line driver: standalone gradual-release prove/verify, full swap
simulation with adversary scripts, transcript audit, and fairness reports.

Exit codes: 0 success, 1 protocol rejection or abort, 2 usage error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import juggling, sigma
from .elgamal import keygen as elgamal_keygen
from .group import get_group
from .juggling import (FRAME_SEGMENT, FRAME_SETUP, SegmentRelease,
                       SetupBundle, encryptor_setup, frame, parse_frame,
                       verify_setup)
from .rng import SeededRng, system_rng
from .segmentation import SegmentationParams
from .swap import (Adversary, MalformedTranscript, SwapConfig,
                   audit_transcript, run_swap)

FRAME_HEADER = 0x00

GROUP_CHOICE = click.Choice(["toy", "secp256k1"])
SEGMENT_BITS = click.IntRange(2, 16)


@click.group()
def main():
    """Gradual-release verifiable encryption and atomic swap toolkit."""


@main.command()
@click.option("--group", "group_name", type=GROUP_CHOICE, default="toy",
              show_default=True)
@click.option("--seed", type=int, default=None,
              help="Deterministic seed; omit for fresh randomness.")
def keygen(group_name, seed):
    """Print a fresh decryption/encryption key pair."""
    group = get_group(group_name)
    rng = SeededRng(seed) if seed is not None else system_rng()
    y, Y = elgamal_keygen(group, rng)
    click.echo(f"secret: {group.encode_scalar(y).hex()}")
    click.echo(f"public: {group.encode_point(Y).hex()}")


def _meta(group_name: str, l: int) -> bytes:
    return f"group={group_name};l={l}".encode()


@main.command()
@click.option("--group", "group_name", type=GROUP_CHOICE, default="toy",
              show_default=True)
@click.option("--segment-bits", type=SEGMENT_BITS, default=4, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True,
              help="File to write the setup bundle and releases to.")
def prove(group_name, segment_bits, seed, out):
    """Run a full encryptor session and write the proof stream to a file."""
    group = get_group(group_name)
    params = SegmentationParams.for_group(group, segment_bits)
    rng = SeededRng(seed)
    x = rng.randbelow(params.secret_bound)
    Q = group.mul(x, group.generator)
    _, Y = elgamal_keygen(group, rng.fanout("deckey"))
    session, bundle = encryptor_setup(group, x, Q, Y, params,
                                      rng.fanout("session"))
    meta = _meta(group_name, segment_bits)
    header = (len(meta).to_bytes(2, "big") + meta
              + group.encode_point(Q) + group.encode_point(Y))
    blob = frame(FRAME_HEADER, header) + frame(FRAME_SETUP,
                                               bundle.to_bytes(group))
    for k in range(1, params.m + 1):
        blob += frame(FRAME_SEGMENT, session.release(k).to_bytes(group))
    Path(out).write_bytes(blob)
    click.echo(f"public key: {group.encode_point(Q).hex()}")
    click.echo(f"wrote {params.m} segment releases to {out}")


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def verify(path):
    """Verify a proof stream written by `prove`; exit 1 on any rejection."""
    data = Path(path).read_bytes()
    try:
        ftype, header, rest = parse_frame(data)
        if ftype != FRAME_HEADER:
            raise ValueError("missing header frame")
        meta_len = int.from_bytes(header[:2], "big")
        meta = dict(item.split("=", 1)
                    for item in header[2:2 + meta_len].decode().split(";"))
        group = get_group(meta["group"])
        params = SegmentationParams.for_group(group, int(meta["l"]))
        off = 2 + meta_len
        pt = group.point_byte_len
        Q = group.decode_point(header[off:off + pt])
        Y = group.decode_point(header[off + pt:off + 2 * pt])
        ftype, payload, rest = parse_frame(rest)
        if ftype != FRAME_SETUP:
            raise ValueError("missing setup frame")
        bundle = SetupBundle.from_bytes(group, payload)
    except Exception as exc:
        click.echo(f"rejected: unreadable proof stream ({exc})")
        sys.exit(1)
    if not verify_setup(group, bundle, Q, Y, params):
        click.echo("rejected: setup bundle fails verification")
        sys.exit(1)
    expected_k = 1
    while rest:
        try:
            ftype, payload, rest = parse_frame(rest)
            if ftype != FRAME_SEGMENT:
                raise ValueError("unexpected frame type")
            release = SegmentRelease.from_bytes(group, payload)
        except Exception as exc:
            click.echo(f"rejected: unreadable segment frame ({exc})")
            sys.exit(1)
        if release.k != expected_k:
            click.echo(f"rejected: segment {release.k} out of order")
            sys.exit(1)
        D_k = bundle.all_D[release.k - 1]
        stmt = (group.generator, Y, D_k, release.E_k)
        if not sigma.enc_verify(group, stmt, release.enc_proof):
            click.echo(f"rejected: segment {release.k} proof fails")
            sys.exit(1)
        expected_k += 1
    if expected_k != params.m + 1:
        click.echo(f"rejected: only {expected_k - 1} of {params.m} segments")
        sys.exit(1)
    click.echo(f"ok: setup and {params.m} segments verified")


@main.command()
@click.option("--group", "group_name", type=GROUP_CHOICE, default="toy",
              show_default=True)
@click.option("--segment-bits", type=SEGMENT_BITS, default=4, show_default=True)
@click.option("--amount1", type=int, default=10, show_default=True)
@click.option("--amount2", type=int, default=20, show_default=True)
@click.option("--adversary", default="none", show_default=True,
              help="none | abort-at=K:P | corrupt-proof=K:P | "
                   "biased-segments=P | provider-withhold | "
                   "provider-partial-sign")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--two-party", is_flag=True,
              help="Use {2,2} swap addresses (provider never trades).")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Transcript output path.")
def swap(group_name, segment_bits, amount1, amount2, adversary, seed,
         two_party, out):
    """Run the full three-party swap against two mock chains."""
    try:
        adv = Adversary.parse(adversary)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    config = SwapConfig(group=group_name, l=segment_bits, amount1=amount1,
                        amount2=amount2, adversary=adv, seed=seed,
                        two_party_addresses=two_party)
    res = run_swap(config)
    if out:
        Path(out).write_text(res.transcript.to_text())
    for chain in (res.chain1, res.chain2):
        click.echo(f"chain {chain.chain_id}: {len(chain.log)} transactions, "
                   f"supply {chain.total_supply()}")
        for addr in sorted(chain.balances):
            click.echo(f"  {addr.hex()}  {chain.balances[addr]}")
    rep = res.report
    click.echo(f"fairness: P1 segments={rep.p1_segments} "
               f"P2 segments={rep.p2_segments} advantage={rep.advantage}")
    click.echo(f"messages: {len(res.transcript.frames)} frames, "
               f"{res.transcript.payload_bytes()} payload bytes")
    if res.aborted is not None:
        click.echo(f"aborted: {res.aborted} (cheater: {res.cheater})")
        sys.exit(1)
    click.echo("completed: funds swapped")


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def audit(path):
    """Re-verify a swap transcript offline and assign blame."""
    try:
        verdict = audit_transcript(Path(path).read_text())
    except MalformedTranscript as exc:
        click.echo(f"malformed transcript: {exc}")
        sys.exit(2)
    except UnicodeDecodeError:
        click.echo("malformed transcript: not text")
        sys.exit(2)
    if verdict.clean:
        click.echo("verdict: clean")
        return
    click.echo(f"verdict: {verdict.blamed} violated the protocol "
               f"({verdict.reason})")
    sys.exit(1)


@main.command()
@click.option("--group", "group_name", type=GROUP_CHOICE, default="toy",
              show_default=True)
@click.option("--segment-bits", type=SEGMENT_BITS, default=4, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False), default="report",
              show_default=True)
def report(group_name, segment_bits, seed, out_dir):
    """Sweep abort points and write fairness.csv plus fairness.png."""
    from .report import write_report
    base = SwapConfig(group=group_name, l=segment_bits, seed=seed)
    csv_path, png_path = write_report(base, Path(out_dir))
    click.echo(f"wrote {csv_path}")
    click.echo(f"wrote {png_path}")


if __name__ == "__main__":
    main()
