"""Build script: compiles the optional Cython kernel extension.

Set HONKIT_NO_EXT=1 to skip the extension entirely; the package then runs
on the pure-Python kernel fallback.
"""

import os

from setuptools import setup

ext_modules = []
include_dirs = []
if os.environ.get("HONKIT_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        include_dirs = [numpy.get_include()]
        ext_modules = cythonize(
            ["src/honkit/kernels/_fast.pyx"],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)
