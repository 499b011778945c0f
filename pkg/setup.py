"""Build script: compiles the tridiagonal kernel extension when Cython and a
C compiler are available, and falls back to a pure-Python install otherwise.

Set MULTIWELL_SKIP_CYTHON=1 to force the pure-Python build.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("MULTIWELL_SKIP_CYTHON", "") not in ("1", "true", "yes"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "multiwell.kernels._tridiag",
                    ["src/multiwell/kernels/_tridiag.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("Cython not available; installing with the pure-Python kernels only.")

setup(ext_modules=ext_modules)
