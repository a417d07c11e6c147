import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the fast kernel if possible; the package works without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn("fast polynomial kernel not built (%s); "
                          "falling back to the pure-Python backend" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn("fast polynomial kernel not built (%s); "
                          "falling back to the pure-Python backend" % exc)


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("drinheights._fastpoly", ["src/drinheights/_fastpoly.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
