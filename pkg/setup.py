"""Build script: compiles the optional exact-arithmetic kernel extension.

The package is fully functional without the extension (a pure-Python twin
of every kernel ships in supergaudin._kernels_py); the extension just makes
the hot row-reduction / matrix-product loops faster.
"""

from setuptools import setup, Extension

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "supergaudin._kernels_cy",
                ["src/supergaudin/_kernels_cy.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
