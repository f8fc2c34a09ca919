import os

from setuptools import Extension, setup

# The compiled kernels are an optimization, not a requirement.  If Cython or a
# C compiler is missing the package still installs and falls back to the
# numpy/pure-python implementations in resglue._kernels_py.
ext_modules = []
if os.environ.get("RESGLUE_NO_EXT") != "1" and os.path.exists("src/resglue/_kernels.pyx"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("resglue._kernels", ["src/resglue/_kernels.pyx"])],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
