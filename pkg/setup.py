"""Build script for the optional compiled kernel.

The package is pure Python plus one Cython extension, gafrac._kernels.fast.
The extension is marked optional: if no C toolchain (or no Cython) is
available the install still succeeds and the numpy fallback backend is
selected at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "gafrac._kernels.fast",
        ["src/gafrac/_kernels/fast.pyx"],
        extra_compile_args=["-O3"],
    )
    ext.optional = True
    ext_modules = cythonize(ext, compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
