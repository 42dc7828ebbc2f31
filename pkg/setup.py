import os

import numpy
from setuptools import setup

# The compiled reconstruction kernels are optional: without them the package
# falls back to the vectorized numpy implementation at import time.
ext_modules = []
if not os.environ.get("WENODEC_NO_EXT") and os.path.exists("src/wenodec/_weno_cy.pyx"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "wenodec._weno_cy",
                    sources=["src/wenodec/_weno_cy.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
