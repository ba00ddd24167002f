"""Build script: compiles the optional Smith-normal-form speedup.

The package is pure Python; the extension only accelerates the integer
elimination inner loop.  If Cython or a C compiler is missing the build
falls through and the pure-Python kernel is used at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/geotits/_kernel/_elim.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"geotits: skipping compiled kernel ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
