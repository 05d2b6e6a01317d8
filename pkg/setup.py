"""Builds the optional compiled kernels when Cython is available.

    python3 setup.py build_ext --inplace

Without Cython (or a compiler) the package installs as pure Python and
``vazhu.kernels`` falls back to ``vazhu._pykernels``.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(["src/vazhu/_ckernels.pyx"],
                            compiler_directives={"language_level": 3})

setup(ext_modules=ext_modules)
