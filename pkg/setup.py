import os

from setuptools import setup

ext_modules = []
if os.environ.get("HOMOFLOW_SKIP_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "homoflow._integrate._dopri_cy",
                    ["src/homoflow/_integrate/_dopri_cy.pyx"],
                    include_dirs=[numpy.get_include()],
                )
            ],
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "language_level": "3",
            },
        )
    except ImportError:
        # Pure-Python kernel is selected at import time when the
        # extension is unavailable.
        ext_modules = []

setup(ext_modules=ext_modules)
