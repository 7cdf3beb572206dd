"""Build script: compiles the optional Cython kernel extension.

The extension accelerates the pairwise-distance and 2-opt inner loops.
If Cython or a C compiler is unavailable the build degrades gracefully
and dimscope falls back to the pure-numpy kernels at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "dimscope.kernels._native",
                ["src/dimscope/kernels/_native.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
