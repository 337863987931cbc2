"""Builds the optional Cython kernels; the package works without them."""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler or no Cython: use the Python kernels
            print(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping {ext.name}: {exc}")


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        _ext(numpy),
        compiler_directives={"language_level": "3", "boundscheck": False,
                             "wraparound": False},
        quiet=True,
    )


def _ext(numpy):
    from setuptools import Extension
    return [Extension("gzero._kernels", ["src/gzero/_kernels.pyx"],
                      include_dirs=[numpy.get_include()],
                      define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")])]


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
