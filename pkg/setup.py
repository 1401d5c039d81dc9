"""Build script for the optional compiled kernels.

The package is pure Python; if Cython and a C compiler are available the
enumeration kernels in nsurf/_kernels/_fast.pyx are compiled for speed.
When the extension cannot be built the install still succeeds and the
pure-Python kernels are used instead.
"""

from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("nsurf._kernels._fast", ["src/nsurf/_kernels/_fast.pyx"],
                   optional=True)],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
