"""Build script: compiles the optional speedup extension when Cython and a C
compiler are available.  The package is fully functional without it (a pure
Python twin of every kernel is selected at import time)."""

import os

from setuptools import setup
from setuptools.errors import CCompilerError, ExecError, PlatformError


def extensions():
    if os.environ.get("SUPERBRACKET_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "superbracket._speedups",
        sources=["src/superbracket/_speedups.pyx"],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


try:
    setup(ext_modules=extensions())
except (CCompilerError, ExecError, PlatformError):
    # Fall back to a pure-Python install.
    setup(ext_modules=[])
