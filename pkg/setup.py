"""Build script: compiles the optional lexer extension when Cython is present.

The package is fully functional without the extension; rugscan.frontend.lexer
falls back to the pure-Python scanner at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the speedup extension, but never fail the install over it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain
            print(f"warning: skipping lexer extension build: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name}: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not installed, building pure-Python rugscan")
        return []
    return cythonize(
        [
            Extension(
                "rugscan.frontend._lexer",
                sources=["src/rugscan/frontend/_lexer.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
