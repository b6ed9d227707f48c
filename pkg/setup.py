"""Build script for the optional compiled kernels.

The package works without the extension (numpy fallback is selected at
import time), so a failed native build downgrades to a warning instead of
aborting the install.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise install pure-Python only."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"maskseq: compiled kernels skipped ({exc}); "
                          "falling back to the numpy implementation")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"maskseq: building {ext.name} failed ({exc}); "
                          "falling back to the numpy implementation")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("maskseq.kernels._compiled",
                   ["src/maskseq/kernels/_compiled.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
