import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("MAXCLASS_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "maxclass._collect_c",
                    ["src/maxclass/_collect_c.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
