"""Build the optional compiled kernels.

The extensions are marked optional: if Cython is missing or compilation
fails, the package installs with its pure-Python fallback.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension("hamlab._oracle_core", ["src/hamlab/_oracle_core.pyx"], extra_compile_args=["-O3"], optional=True),
            Extension("hamlab._layered_core", ["src/hamlab/_layered_core.pyx"], extra_compile_args=["-O3"], optional=True),
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
