"""Build script: compiles the optional extension core unless RAMWALK_PURE is set.

The package works without the extension (a numpy fallback is selected at
import time), so a missing compiler degrades to the pure build instead of
failing the install.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("RAMWALK_PURE"):
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "ramwalk._core",
                    ["src/ramwalk/_core.pyx"],
                    include_dirs=[numpy.get_include()],
                    # -ffp-contract=off keeps the compiled rotations bit-identical
                    # to the numpy fallback (no FMA contraction).
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
