"""Build script: compiles the recurrence/Christoffel kernels if Cython and a
C compiler are available, otherwise installs pure-Python only (the package
falls back to the numpy kernels at import time)."""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("POLYSPREAD_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            "src/polyspread/_kernels.pyx",
            language_level=3,
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
        for ext in ext_modules:
            ext.include_dirs.append(numpy.get_include())
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)
