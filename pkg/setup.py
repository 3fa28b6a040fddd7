"""Build script: compiles the optional Cython canonicalization kernel.

The compiled extension is a pure accelerator.  If Cython or a C compiler is
unavailable the build falls back to the pure-Python kernel selected at import
time by ijobstruct._kernels, so installation never fails on its account.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn("skipping compiled kernel, using pure Python: %s" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn("skipping %s, using pure Python: %s" % (ext.name, exc))


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("ijobstruct._canon", ["src/ijobstruct/_canon.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
