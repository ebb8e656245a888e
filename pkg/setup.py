"""Build script for the optional compiled split-scan kernel.

The extension is optional: if compilation fails the package installs
anyway and falls back to the numpy implementation at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "newsgauge._splitc",
                sources=["src/newsgauge/_splitc.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
