"""Build script for the optional compiled kernel extension.

Usage:
    pip install -e . --no-build-isolation

The package works without the extension (a pure-Python fallback is selected
at import time), but the compiled kernels are strongly recommended for the
large Monte-Carlo runs and the n=9 polygon-gluing surveys.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("mapcells.kernels._core", ["src/mapcells/kernels/_core.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
