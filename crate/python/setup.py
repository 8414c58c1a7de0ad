"""Builds the resolvent_bounds extension module with cargo.

The extension lives in the cargo workspace one directory up; this shim
compiles it in release mode and copies the shared library to wherever
setuptools expects the module. Install with

    pip install -e . --no-build-isolation
"""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

WORKSPACE = Path(__file__).resolve().parent.parent
CRATE = "resolvent-bounds-py"
LIB_STEM = "resolvent_bounds_py"


class CargoBuildExt(build_ext):
    def build_extension(self, ext):
        subprocess.run(
            ["cargo", "build", "--release", "-p", CRATE],
            cwd=WORKSPACE,
            check=True,
        )
        if sys.platform == "darwin":
            built = WORKSPACE / "target" / "release" / f"lib{LIB_STEM}.dylib"
        elif sys.platform == "win32":
            built = WORKSPACE / "target" / "release" / f"{LIB_STEM}.dll"
        else:
            built = WORKSPACE / "target" / "release" / f"lib{LIB_STEM}.so"
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(built, dest)


setup(
    ext_modules=[Extension("resolvent_bounds", sources=[])],
    cmdclass={"build_ext": CargoBuildExt},
)
