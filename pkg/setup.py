"""Build the optional Cython kernels.

If Cython (or a compiler) is missing the package still installs and
falls back to the pure-Python kernels at import time.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("WILDMONO_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("wildmono._kernels", ["src/wildmono/_kernels.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        print("Cython not available, building without compiled kernels")

setup(ext_modules=ext_modules)
