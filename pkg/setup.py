"""Build script for the optional compiled steady-state kernel.

The package is pure Python plus one Cython extension holding the hot
9x9 steady-state solver.  If Cython or a C compiler is unavailable the
extension is skipped and the package falls back to the numpy kernel at
import time.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "eitlens._steady_cy",
                ["src/eitlens/_steady_cy.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.optional = True
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
