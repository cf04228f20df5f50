"""Build script: compiles the Cython twin of the ISA engine when possible.

The engine is plain Python (src/dspx25/isa/engine.py).  At build time the
same source is copied to _engine_c.py and cythonized; dspx25.isa prefers
the compiled module at import and falls back to the pure one, so a build
without Cython (or a failed extension build) still yields a working
package.  benchmarks/bench_engine.py compares the two.
"""

import shutil
from pathlib import Path

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    src = Path("src/dspx25/isa/engine.py")
    twin = src.with_name("_engine_c.py")
    if src.exists():
        shutil.copyfile(src, twin)
        ext_modules = cythonize(
            [str(twin)],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
