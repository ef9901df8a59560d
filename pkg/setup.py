import os

from setuptools import setup

ext_modules = []
if os.environ.get("LESLIE_HOPF_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("leslie_hopf.dynamics._kernels",
                       ["src/leslie_hopf/dynamics/_kernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
