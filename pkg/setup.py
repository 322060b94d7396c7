from setuptools import setup
from setuptools.extension import Extension

# The compiled kernels are optional: the package falls back to the pure-Python
# backend when the extension is missing (see linhyp/_kernels/__init__.py).
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "linhyp._kernels.c_backend",
                ["src/linhyp/_kernels/c_backend.pyx"],
            )
        ],
        language_level="3",
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
