"""Build the optional compiled kernels; fall back silently without Cython."""
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("hkfam._core", ["src/hkfam/_core.pyx"], extra_compile_args=["-O2"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
