"""Build script for the compiled kernel extension.

The package works without the extension (a numpy fallback is selected at
import time); building it speeds up the fuzz campaigns considerably.

    python setup.py build_ext --inplace

or simply `pip install -e . --no-build-isolation`.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [Extension("locps._kernels", ["src/locps/_kernels.pyx"])],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
            "language_level": "3",
        },
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
