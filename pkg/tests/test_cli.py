"""Command-line driver: exit codes, determinism, byte accounting, report."""

import re

from click.testing import CliRunner

from juggle.cli import main
from juggle.swap import Transcript


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def test_keygen(tmp_path):
    res = invoke("keygen", "--seed", "1")
    assert res.exit_code == 0
    assert "secret:" in res.output and "public:" in res.output
    again = invoke("keygen", "--seed", "1")
    assert again.output == res.output


def test_prove_verify_roundtrip(tmp_path):
    out = tmp_path / "session.bin"
    res = invoke("prove", "--seed", "3", "--out", str(out))
    assert res.exit_code == 0
    res = invoke("verify", str(out))
    assert res.exit_code == 0
    assert "ok:" in res.output


def test_verify_truncated(tmp_path):
    out = tmp_path / "session.bin"
    assert invoke("prove", "--seed", "3", "--out", str(out)).exit_code == 0
    data = out.read_bytes()
    out.write_bytes(data[:-10])
    res = invoke("verify", str(out))
    assert res.exit_code == 1
    assert "rejected" in res.output


def test_verify_dropped_segment(tmp_path):
    # removing a middle frame breaks the strict segment ordering
    out = tmp_path / "session.bin"
    assert invoke("prove", "--seed", "3", "--out", str(out)).exit_code == 0
    from juggle.juggling import frame, parse_frame
    data = out.read_bytes()
    frames = []
    while data:
        ftype, payload, data = parse_frame(data)
        frames.append((ftype, payload))
    del frames[2]  # first segment release
    out.write_bytes(b"".join(frame(t, p) for t, p in frames))
    res = invoke("verify", str(out))
    assert res.exit_code == 1
    assert "out of order" in res.output


def test_bad_segment_bits():
    res = invoke("prove", "--segment-bits", "0", "--out", "x.bin")
    assert res.exit_code == 2
    res = invoke("swap", "--segment-bits", "17")
    assert res.exit_code == 2


def test_swap_honest(tmp_path):
    out = tmp_path / "t.txt"
    res = invoke("swap", "--seed", "1", "--out", str(out))
    assert res.exit_code == 0
    assert "completed: funds swapped" in res.output
    assert "advantage=0" in res.output
    assert re.search(r"chain 1: 2 transactions", res.output)
    assert re.search(r"chain 2: 2 transactions", res.output)
    # byte accounting: the reported payload size matches the transcript
    t = Transcript.from_text(out.read_text())
    match = re.search(r"messages: (\d+) frames, (\d+) payload bytes",
                      res.output)
    assert match
    assert int(match.group(1)) == len(t.frames)
    assert int(match.group(2)) == t.payload_bytes()


def test_swap_determinism(tmp_path):
    out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
    invoke("swap", "--seed", "5", "--out", str(out1))
    invoke("swap", "--seed", "5", "--out", str(out2))
    assert out1.read_bytes() == out2.read_bytes()


def test_swap_adversary_exit(tmp_path):
    res = invoke("swap", "--seed", "1", "--adversary", "biased-segments=P1")
    assert res.exit_code == 1
    assert "cheater: P1" in res.output
    res = invoke("swap", "--adversary", "bogus")
    assert res.exit_code == 2


def test_audit_paths(tmp_path):
    clean = tmp_path / "clean.txt"
    invoke("swap", "--seed", "1", "--out", str(clean))
    res = invoke("audit", str(clean))
    assert res.exit_code == 0
    assert "clean" in res.output

    bad = tmp_path / "withhold.txt"
    invoke("swap", "--seed", "1", "--adversary", "provider-withhold",
           "--out", str(bad))
    res = invoke("audit", str(bad))
    assert res.exit_code == 1
    assert "S violated" in res.output

    garbage = tmp_path / "garbage.txt"
    garbage.write_bytes(b"\xff\xfe not a transcript")
    res = invoke("audit", str(garbage))
    assert res.exit_code == 2


def test_report_writes_csv_and_figure(tmp_path):
    res = invoke("report", "--seed", "1", "--out-dir", str(tmp_path / "rep"))
    assert res.exit_code == 0
    csv_path = tmp_path / "rep" / "fairness.csv"
    png_path = tmp_path / "rep" / "fairness.png"
    assert csv_path.exists() and png_path.exists()
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "party,abort_at,p1_segments,p2_segments,advantage"
    # honest row plus one row per (party, abort index)
    assert len(lines) == 1 + 1 + 2 * 6
    assert all(int(line.split(",")[-1]) <= 1 for line in lines[1:])
    assert png_path.stat().st_size > 1000
