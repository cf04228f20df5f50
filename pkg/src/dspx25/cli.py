"""Command-line tool: assemble, convert, run, debug, and the voice pipeline.

Subcommands
    asm <src> -o <obj> [--listing <file>]      assemble to DPX25
    convert <coff> -o <obj>                    TI COFF -> DPX25
    run <obj> [--cycles N] [--wav-in f] [--wav-out f] ...
        autonomous mode: load, reset, release, run to halt, write outputs
    debug <obj> [--script f] [--serve <endpoint>] [--panel-dir d]
        development mode: console REPL, scripted transcript, or remote serve
    analyze <wav> -o <frames>                  LPC analysis to a frame file
    synth <wav-in> -o <wav-out> [--frames f]   analyze + synthesize end to end

Exit codes: 0 success, 1 usage, 2 input error, 3 assembly errors.
A config file (key=value: clock_mhz, wait_states, sample_rate) supplies
defaults that explicit flags override.
"""

from __future__ import annotations

import argparse
import sys

from . import audio
from .asm import assemble_file
from .board import Board
from .codec import ListSource
from .debugger import Session, parse_endpoint, run_script
from .dsplib import build_synth, golden_lpc_synth, lpc_analyze, read_frames, write_frames
from .dsplib.demos import ASM_DIR
from .objfmt import convert_coff, read_object, write_object

EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_ASM = 3

SYNTH_SEED = 0xACE1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_USAGE)


class InputError(Exception):
    pass


def _read_config(path) -> dict:
    cfg = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise InputError(f"{path}:{lineno}: expected key=value")
                k, v = line.split("=", 1)
                cfg[k.strip()] = v.strip()
    except OSError as e:
        raise InputError(f"cannot read config {path}: {e}") from None
    return cfg


def _board_from(args) -> Board:
    cfg = _read_config(args.config) if getattr(args, "config", None) else {}
    clock = args.clock_mhz if args.clock_mhz is not None else \
        float(cfg.get("clock_mhz", 40.0))
    waits = args.wait_states if args.wait_states is not None else \
        int(cfg.get("wait_states", 0))
    rate = args.rate if args.rate is not None else \
        int(cfg.get("sample_rate", 25000))
    if not 0 <= waits <= 2:
        raise InputError("wait_states outside 0..2")
    if rate <= 0:
        raise InputError("sample rate must be positive")
    return Board(clock_mhz=clock, wait_states=waits, sample_rate=rate)


def _load_object(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return read_object(fh.read())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except Exception as e:
        raise InputError(f"{path}: {e}") from None


def _add_board_flags(p):
    p.add_argument("--config", help="key=value configuration file")
    p.add_argument("--clock-mhz", dest="clock_mhz", type=float, default=None)
    p.add_argument("--wait-states", dest="wait_states", type=int, default=None)
    p.add_argument("--rate", type=int, default=None,
                   help="codec sample rate (default 25000)")


def cmd_asm(args) -> int:
    try:
        result = assemble_file(args.source, listing=True,
                               include_dirs=[ASM_DIR])
    except OSError as e:
        sys.stderr.write(f"error: cannot read {args.source}: {e}\n")
        return EXIT_INPUT
    for d in result.diagnostics:
        sys.stderr.write(f"{args.source}:{d.line}: {d.severity.lower()}: "
                         f"{d.message}\n")
    if result.errors:
        sys.stderr.write(f"{result.errors} error(s), no object written\n")
        return EXIT_ASM
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(write_object(result.object))
    if args.listing:
        with open(args.listing, "w", encoding="utf-8") as fh:
            fh.write(result.listing.render())
    return 0


def cmd_convert(args) -> int:
    try:
        with open(args.coff, "rb") as fh:
            img = convert_coff(fh.read())
    except OSError as e:
        sys.stderr.write(f"error: cannot read {args.coff}: {e}\n")
        return EXIT_INPUT
    except Exception as e:
        sys.stderr.write(f"error: {args.coff}: {e}\n")
        return EXIT_INPUT
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(write_object(img))
    return 0


def cmd_run(args) -> int:
    board = _board_from(args)
    img = _load_object(args.object)
    board.load(img)
    board.cpu.reset()

    if args.wav_in:
        samples, rate = audio.read_wav(args.wav_in)
        if rate != board.codec.sample_rate:
            raise InputError(f"{args.wav_in}: rate {rate} != configured "
                             f"{board.codec.sample_rate}")
        board.codec.source = ListSource(samples)
    elif args.csv_in:
        board.codec.source = ListSource(audio.read_csv_floats(args.csv_in))
    if args.din_script:
        board.codec.din_script = audio.read_din_script(args.din_script)
    if args.wav_out or args.csv_out:
        board.codec.capture = []

    report = board.run(max_cycles=args.cycles)
    print(f"halt: {report.halt_reason}")
    print(f"cycles: {report.cycles_run}")
    print(f"samples: {report.samples_processed}")
    if args.wav_out:
        audio.write_wav(args.wav_out,
                        audio.dac_codes_to_i16(board.codec.capture),
                        board.codec.sample_rate)
    if args.csv_out:
        audio.write_csv_floats(args.csv_out,
                               [c / 2048.0 for c in board.codec.capture])
    return 0


def cmd_debug(args) -> int:
    board = _board_from(args)
    session = Session(board)
    if args.object:
        img = _load_object(args.object)
        board.load(img)
    if args.script:
        try:
            with open(args.script, "r", encoding="utf-8") as fh:
                lines = fh.readlines()
        except OSError as e:
            raise InputError(f"cannot read script {args.script}: {e}") from None
        sys.stdout.write(run_script(session, lines))
        if not args.serve:
            return 0
    if args.serve:
        scheme, host, port = parse_endpoint(args.serve)
        if scheme == "tcp":
            from .debugger.remote import RemoteServer
            srv = RemoteServer(session, host, port).start()
            print(f"serving tcp://{srv.address[0]}:{srv.address[1]}",
                  flush=True)
        else:
            from .debugger.webserve import serve_ws
            serve_ws(session, host, port, args.panel_dir)
            print(f"serving ws://{host}:{port}/ws", flush=True)
        session.serve_loop()
        return 0
    # interactive console
    while not session.finished:
        try:
            line = input("> ")
        except EOFError:
            break
        out = session.execute_command(line)
        if out:
            print(out)
    return 0


def cmd_analyze(args) -> int:
    samples, rate = audio.read_wav(args.wav)
    frames = lpc_analyze(samples)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(write_frames(frames))
    print(f"{len(frames)} frames from {len(samples)} samples at {rate} Hz")
    return 0


def cmd_synth(args) -> int:
    board = _board_from(args)
    if args.frames_in:
        with open(args.frames_in, "r", encoding="utf-8") as fh:
            frames = read_frames(fh.read())
    else:
        samples, rate = audio.read_wav(args.wav_in)
        if rate != board.codec.sample_rate:
            raise InputError(f"{args.wav_in}: rate {rate} != configured "
                             f"{board.codec.sample_rate}")
        frames = lpc_analyze(samples)
    if args.frames:
        with open(args.frames, "w", encoding="utf-8") as fh:
            fh.write(write_frames(frames))

    demo = build_synth(frames, seed=SYNTH_SEED, mode="interrupt")
    board.load(demo.assemble_image())
    board.cpu.reset()
    board.codec.capture = []
    total = demo.meta["total"]
    report = board.run(max_cycles=(total + 4) * board.codec.cycles_per_sample
                       + 100_000)
    if report.halt_reason != "IDLE":
        raise InputError(f"synthesis did not finish: {report.halt_reason}")
    codes = board.codec.capture[1:]       # drop the one-period DAC priming
    if len(codes) != total:
        raise InputError(f"expected {total} samples, captured {len(codes)}")
    audio.write_wav(args.output, audio.dac_codes_to_i16(codes),
                    board.codec.sample_rate)
    if args.verify:
        golden = golden_lpc_synth(frames, SYNTH_SEED)
        from .dsplib import dac_code
        if codes != [dac_code(v) for v in golden]:
            sys.stderr.write("error: simulator output differs from the "
                             "golden synthesis\n")
            return EXIT_INPUT
        print("verified against the golden synthesis path")
    print(f"synthesized {total} samples "
          f"({report.cycles_run / max(total, 1):.1f} cycles/sample)")
    return 0


def main(argv=None) -> int:
    parser = _Parser(prog="dspx25",
                     description="TMS320C25 application-development system")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("asm", help="assemble a source file")
    p.add_argument("source")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--listing")
    p.set_defaults(func=cmd_asm)

    p = sub.add_parser("convert", help="convert a TI COFF object")
    p.add_argument("coff")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("run", help="autonomous execution")
    p.add_argument("object")
    p.add_argument("--cycles", type=int, default=None)
    p.add_argument("--wav-in")
    p.add_argument("--wav-out")
    p.add_argument("--csv-in")
    p.add_argument("--csv-out")
    p.add_argument("--din-script")
    _add_board_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("debug", help="development mode (DEPC25)")
    p.add_argument("object", nargs="?")
    p.add_argument("--script")
    p.add_argument("--serve", help="tcp://host:port or ws://host:port")
    p.add_argument("--panel-dir", help="static front-panel files for ws")
    _add_board_flags(p)
    p.set_defaults(func=cmd_debug)

    p = sub.add_parser("analyze", help="LPC-analyze a WAV into frames")
    p.add_argument("wav")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synth", help="voice demo: analyze + synthesize")
    p.add_argument("wav_in", nargs="?")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--frames", help="also write the frame file here")
    p.add_argument("--frames-in", help="synthesize from an existing frame file")
    p.add_argument("--verify", action="store_true",
                   help="compare against the golden synthesis")
    _add_board_flags(p)
    p.set_defaults(func=cmd_synth)

    args = parser.parse_args(argv)
    if args.command == "synth" and not args.wav_in and not args.frames_in:
        parser.error("synth needs a WAV input or --frames-in")
    try:
        return args.func(args)
    except InputError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except audio.AudioFormatError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
