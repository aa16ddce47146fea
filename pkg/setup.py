import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DMSHAPE_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("dmshape.kernels._speed", ["src/dmshape/kernels/_speed.pyx"])],
            language_level=3,
        )
    except ImportError:
        # No Cython available: install the pure-Python package only.
        ext_modules = []

setup(ext_modules=ext_modules)
