import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("GRADALIGN_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not available; installing pure-Python kernels only")
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "gradalign._kernels._ext",
                    ["src/gradalign/_kernels/_ext.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
