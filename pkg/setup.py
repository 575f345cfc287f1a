"""Build script: compiles the optional Cython kernel extension.

The extension is a speedup only; if Cython or a C compiler is missing the
package installs anyway and falls back to the numpy kernels at import time.
Build in place with:  python setup.py build_ext --inplace
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("REPINDEX_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/repindex/kernels/_speedups.pyx"],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
