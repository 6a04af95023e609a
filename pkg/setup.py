"""Builds the optional compiled kernel extension.

The package is fully functional without it: humorlm._kernels falls back to
the pure-Python implementations when the compiled module is absent. With
Cython installed the extension is rebuilt from _core.pyx; otherwise the
checked-in generated C is compiled directly; with no C compiler at all,
installation still succeeds.
"""

import os

from setuptools import Extension, setup

_PYX = "src/humorlm/_kernels/_core.pyx"
_C = "src/humorlm/_kernels/_core.c"

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("humorlm._kernels._core", [_PYX], optional=True)],
        language_level="3",
    )
except ImportError:
    if os.path.exists(_C):
        ext_modules = [Extension("humorlm._kernels._core", [_C], optional=True)]
    else:
        ext_modules = []

setup(ext_modules=ext_modules)
