"""Build the optional compiled contour kernels.

The package works without them; ``faddeev.green._kernels`` falls back to
the numpy implementation when the extension is missing.
"""
import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("FADDEEV_NO_EXT"):
    ext = Extension(
        "faddeev.green._ckernels",
        ["src/faddeev/green/_ckernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3", "-fopenmp"],
        extra_link_args=["-fopenmp"],
        optional=True,
    )
    ext_modules = cythonize(
        [ext],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False,
                             "cdivision": True},
    )

setup(ext_modules=ext_modules)
