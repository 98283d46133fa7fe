"""Build script: compiles the optional sweep kernel.

The package works without the extension (a pure-Python evaluator with the
same contract is selected at import time), so a missing Cython or C
compiler downgrades the install instead of failing it.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "apodeixis._speedups",
                ["src/apodeixis/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


class optional_build_ext(build_ext):
    def run(self):
        try:
            build_ext.run(self)
        except Exception:
            print("building the sweep kernel failed; installing pure-Python")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception:
            print(f"skipping {ext.name}: compilation failed")


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
