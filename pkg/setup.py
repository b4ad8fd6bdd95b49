"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python/numpy fallback is
selected at import time), so any compilation failure downgrades to a
source-only install instead of aborting.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/nsotkit/_kernels/_core.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass


class _OptionalBuildExt:
    """Mixin turning extension build errors into a pure-python install."""


def _make_cmdclass():
    try:
        from setuptools.command.build_ext import build_ext
    except ImportError:
        return {}

    class optional_build_ext(build_ext):
        def run(self):
            try:
                super().run()
            except Exception as exc:
                print(f"nsotkit: skipping compiled kernels ({exc!r}); "
                      "pure-python fallback will be used")

        def build_extension(self, ext):
            try:
                super().build_extension(ext)
            except Exception as exc:
                print(f"nsotkit: failed to build {ext.name} ({exc!r}); "
                      "pure-python fallback will be used")

    return {"build_ext": optional_build_ext}


setup(ext_modules=ext_modules, cmdclass=_make_cmdclass())
