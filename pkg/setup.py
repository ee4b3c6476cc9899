"""Builds the optional compiled normalization kernel.

If Cython or a C compiler is unavailable the package still installs and
falls back to the pure-Python kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        ["src/hobicat/_normal.pyx"],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except Exception:  # noqa: BLE001 - any build-tool failure means "no extension"
    ext_modules = []

setup(ext_modules=ext_modules)
