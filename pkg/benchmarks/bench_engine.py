"""Benchmark the pure-Python ISA engine against its Cython-compiled twin.

Both modules are built from the same source (see setup.py); this script
loads each explicitly and runs identical instruction streams, reporting
steps/second.  Usage:  python benchmarks/bench_engine.py [--steps N]
"""

import argparse
import importlib
import time

from dspx25.asm import assemble

STRAIGHT_LINE = "\n".join(["NOP", "LACK 7", "ADDK 3", "SACL 20h",
                           "LAC 20h", "SFL", "ABS"] * 40 + ["B 0"])

FIR_KERNEL = """
        LDPK 0
        LRLK AR2,800h
        LARP AR2
LOOP    LAC  *+
        SACL 10h
        ZAC
        MPYK 0
        LRLK AR1,17h
        LARP AR1
        RPTK 7
        MACD 100h,*-
        APAC
        SACL 30h
        LARP AR2
        B    LOOP
"""

POLL_LOOP = """
        LDPK 0
        LACK 1
        SACL 62h
POLL    IN   61h,2
        LAC  61h
        AND  62h
        BZ   POLL
        B    POLL
"""

WORKLOADS = [
    ("straight-line mix", STRAIGHT_LINE),
    ("FIR inner loop (RPTK+MACD)", FIR_KERNEL),
    ("codec polling loop", POLL_LOOP),
]


class NullIo:
    def io_in(self, port):
        return 0

    def io_out(self, port, w):
        pass


def load_engines():
    engines = []
    pure = importlib.import_module("dspx25.isa.engine")
    engines.append(("pure python", pure))
    try:
        compiled = importlib.import_module("dspx25.isa._engine_c")
        engines.append(("cython twin", compiled))
    except ImportError:
        print("note: compiled twin not built; benchmarking pure only")
    return engines


def bench(module, source, steps):
    img = assemble(source).object
    assert img is not None
    cpu = module.Cpu(io=NullIo())
    img.load_into(cpu.prog, cpu.data)
    # warm up and verify the stream executes cleanly
    for _ in range(1000):
        cpu.exec_next()
    t0 = time.perf_counter()
    n = 0
    while n < steps:
        cpu.exec_next()
        n += 1
    dt = time.perf_counter() - t0
    return steps / dt, cpu.cycles


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=400_000)
    args = ap.parse_args()

    engines = load_engines()
    print(f"{args.steps} steps per workload\n")
    baselines = {}
    for wname, source in WORKLOADS:
        print(f"== {wname}")
        for ename, module in engines:
            rate, _ = bench(module, source, args.steps)
            line = f"  {ename:<14} {rate / 1e6:8.3f} M steps/s"
            if ename == "pure python":
                baselines[wname] = rate
            else:
                line += f"   ({rate / baselines[wname]:.2f}x pure)"
            print(line)
    print("\nselected at import:", end=" ")
    import dspx25.isa as isa
    print(isa.ENGINE)


if __name__ == "__main__":
    main()
