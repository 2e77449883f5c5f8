"""Build script: compiles the optional fast backend extension.

The package works without the extension (a pure-Python backend is selected
at import time), so a missing compiler or Cython only costs speed.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "anafrac._backend._fast",
                ["src/anafrac/_backend/_fast.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
