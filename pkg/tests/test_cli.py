"""CLI surface: subcommands, exit codes, file outputs, determinism."""

import os
import struct
import sys

import pytest

from dspx25 import audio
from dspx25.cli import main

DEMO_SRC = "LACK 18\nSACL 20h\nB $\n"
DATA_WAV = os.path.join(os.path.dirname(__file__), "..", "src", "dspx25",
                        "data", "demo_voice.wav")


@pytest.fixture
def tdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def write(path, text):
    path.write_text(text)
    return str(path)


class TestAsm:
    def test_demo_assembles(self, tdir, capsys):
        src = write(tdir / "demo.asm", DEMO_SRC)
        rc = main(["asm", src, "-o", "demo.dpx"])
        assert rc == 0
        body = (tdir / "demo.dpx").read_text()
        assert "CA12 6020 FF80 0002" in body

    def test_listing_option(self, tdir):
        src = write(tdir / "demo.asm", DEMO_SRC)
        assert main(["asm", src, "-o", "o.dpx", "--listing", "o.lst"]) == 0
        assert "CA12" in (tdir / "o.lst").read_text()

    def test_error_exit_3_with_line_number(self, tdir, capsys):
        src = write(tdir / "bad.asm", "NOP\nLACK NOWHERE\n")
        rc = main(["asm", src, "-o", "bad.dpx"])
        err = capsys.readouterr().err
        assert rc == 3
        assert ":2:" in err and "undefined" in err.lower()
        assert "1 error(s)" in err
        assert not (tdir / "bad.dpx").exists()

    def test_missing_source_exit_2(self, tdir):
        assert main(["asm", "missing.asm", "-o", "x.dpx"]) == 2

    def test_usage_exit_1(self, tdir):
        with pytest.raises(SystemExit) as ei:
            main(["asm"])
        assert ei.value.code == 1


class TestRun:
    def test_idle_report(self, tdir, capsys):
        write(tdir / "i.asm", "IDLE\n")
        main(["asm", "i.asm", "-o", "i.dpx"])
        capsys.readouterr()
        rc = main(["run", "i.dpx"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "halt: IDLE" in out
        lines = dict(l.split(": ") for l in out.strip().splitlines())
        assert int(lines["cycles"]) <= 4

    def test_cycle_limit(self, tdir, capsys):
        write(tdir / "l.asm", "HERE B HERE\n")
        main(["asm", "l.asm", "-o", "l.dpx"])
        capsys.readouterr()
        assert main(["run", "l.dpx", "--cycles", "300"]) == 0
        assert "halt: CYCLE_LIMIT" in capsys.readouterr().out

    def test_wait_states_flag(self, tdir, capsys):
        write(tdir / "n.asm", "NOP\nNOP\nIDLE\n")
        main(["asm", "n.asm", "-o", "n.dpx"])
        capsys.readouterr()
        main(["run", "n.dpx", "--wait-states", "2"])
        out = capsys.readouterr().out
        assert "cycles: 9" in out     # 3 instructions * (1+2)

    def test_config_file_with_flag_override(self, tdir, capsys):
        write(tdir / "n.asm", "NOP\nIDLE\n")
        main(["asm", "n.asm", "-o", "n.dpx"])
        write(tdir / "cfg", "wait_states = 2\nclock_mhz = 40\n")
        capsys.readouterr()
        main(["run", "n.dpx", "--config", "cfg"])
        assert "cycles: 6" in capsys.readouterr().out
        main(["run", "n.dpx", "--config", "cfg", "--wait-states", "0"])
        assert "cycles: 2" in capsys.readouterr().out

    def test_loopback_wav_roundtrip(self, tdir, capsys):
        loop = """
        LDPK 0
        LACK 1
        SACL 62h
        LACK 12h
        SACL 60h
        OUT  60h,3
POLL    IN   61h,2
        LAC  61h
        AND  62h
        BZ   POLL
        IN   63h,0
        OUT  63h,1
        B    POLL
"""
        write(tdir / "lb.asm", loop)
        main(["asm", "lb.asm", "-o", "lb.dpx"])
        audio.write_wav("in.wav", [1000, -2000, 3000, -4000], 25000)
        capsys.readouterr()
        rc = main(["run", "lb.dpx", "--wav-in", "in.wav",
                   "--wav-out", "out.wav", "--cycles", "4000"])
        assert rc == 0
        samples, rate = audio.read_wav("out.wav")
        assert rate == 25000 and len(samples) >= 4

    def test_wav_rate_mismatch_exit_2(self, tdir, capsys):
        write(tdir / "i.asm", "IDLE\n")
        main(["asm", "i.asm", "-o", "i.dpx"])
        audio.write_wav("in.wav", [0], 8000)
        assert main(["run", "i.dpx", "--wav-in", "in.wav"]) == 2

    def test_run_deterministic(self, tdir, capsys):
        write(tdir / "i.asm", "IDLE\n")
        main(["asm", "i.asm", "-o", "i.dpx"])
        capsys.readouterr()
        main(["run", "i.dpx"])
        a = capsys.readouterr().out
        main(["run", "i.dpx"])
        b = capsys.readouterr().out
        assert a == b


class TestConvert:
    def test_coff_to_dpx(self, tdir):
        sys.path.insert(0, os.path.dirname(__file__))
        from test_objfmt import STYP_TEXT, coff_fixture
        (tdir / "a.obj").write_bytes(
            coff_fixture([(".text", 0x100, [0x5500], STYP_TEXT, 0)]))
        assert main(["convert", "a.obj", "-o", "a.dpx"]) == 0
        assert "P 0100 0001" in (tdir / "a.dpx").read_text()

    def test_reloc_rejected_exit_2(self, tdir, capsys):
        from test_objfmt import STYP_TEXT, coff_fixture
        (tdir / "r.obj").write_bytes(
            coff_fixture([(".text", 0, [1], STYP_TEXT, 2)]))
        assert main(["convert", "r.obj", "-o", "r.dpx"]) == 2
        assert "relocation" in capsys.readouterr().err


class TestDebugScript:
    def test_scripted_transcript(self, tdir, capsys):
        src = write(tdir / "demo.asm", DEMO_SRC)
        main(["asm", src, "-o", "demo.dpx"])
        write(tdir / "s.cmd", "D P 0000 4\nR\nQ\n")
        capsys.readouterr()
        rc = main(["debug", "demo.dpx", "--script", "s.cmd"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "> D P 0000 4" in out
        assert "0000  CA12 6020 FF80 0002" in out

    def test_transcript_byte_stable(self, tdir, capsys):
        src = write(tdir / "demo.asm", DEMO_SRC)
        main(["asm", src, "-o", "demo.dpx"])
        write(tdir / "s.cmd", "T 5\nR\nQ\n")
        capsys.readouterr()
        main(["debug", "demo.dpx", "--script", "s.cmd"])
        a = capsys.readouterr().out
        main(["debug", "demo.dpx", "--script", "s.cmd"])
        b = capsys.readouterr().out
        assert a == b

    def test_fig3_workflow(self, tdir, capsys):
        """asm -> debug-load -> run, reproducible headlessly."""
        src = write(tdir / "demo.asm", DEMO_SRC)
        assert main(["asm", src, "-o", "demo.dpx"]) == 0
        write(tdir / "s.cmd", "L demo.dpx\nBP 0002\nG 0000\nQ\n")
        capsys.readouterr()
        assert main(["debug", "--script", "s.cmd"]) == 0
        out = capsys.readouterr().out
        assert "STOP: breakpoint 1 at 0002" in out
        assert main(["run", "demo.dpx", "--cycles", "100"]) == 0


class TestVoicePipeline:
    def test_analyze_output(self, tdir, capsys):
        rc = main(["analyze", DATA_WAV, "-o", "frames.txt"])
        assert rc == 0
        head = (tdir / "frames.txt").read_text().splitlines()[0]
        assert head == "LPC10 200 150"

    def test_synth_from_frames_short(self, tdir, capsys):
        # two hand-made frames keep this case fast; full WAV runs in
        # the acceptance suite
        frames = ("LPC10 80 2\n"
                  "V 60 2000 0400 FE00 0100 0000 0000 0000 0000 0000 0000 0000\n"
                  "U 0 1000 0000 0000 0000 0000 0000 0000 0000 0000 0000 0000\n")
        write(tdir / "f.txt", frames)
        rc = main(["synth", "--frames-in", "f.txt", "-o", "v.wav",
                   "--verify"])
        out = capsys.readouterr().out
        assert rc == 0 and "verified" in out
        samples, rate = audio.read_wav("v.wav")
        assert rate == 25000 and len(samples) == 160

    def test_synth_deterministic(self, tdir, capsys):
        frames = ("LPC10 60 1\n"
                  "U 0 1800 0200 0000 0000 0000 0000 0000 0000 0000 0000 0000\n")
        write(tdir / "f.txt", frames)
        main(["synth", "--frames-in", "f.txt", "-o", "a.wav"])
        main(["synth", "--frames-in", "f.txt", "-o", "b.wav"])
        assert (tdir / "a.wav").read_bytes() == (tdir / "b.wav").read_bytes()

    def test_synth_needs_input(self, tdir):
        with pytest.raises(SystemExit) as ei:
            main(["synth", "-o", "x.wav"])
        assert ei.value.code == 1
