"""Builds the compiled extension through CMake and grafts it into the
Python package. Configuration metadata lives in pyproject.toml; this file
only teaches setuptools how to drive the native build."""

import pathlib
import shutil
import subprocess
import sys
import sysconfig

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = pathlib.Path(__file__).resolve().parent
        build_dir = pathlib.Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            [
                "cmake",
                "--build", str(build_dir),
                "--target", "_hyperminhash",
                "--parallel",
            ],
            check=True,
        )

        suffix = sysconfig.get_config_var("EXT_SUFFIX")
        built = build_dir / "python" / "hyperminhash" / f"_hyperminhash{suffix}"
        if not built.exists():
            raise RuntimeError(f"extension not found at {built}")
        target = pathlib.Path(self.get_ext_fullpath(ext.name)).resolve()
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, target)


setup(
    packages=["hyperminhash"],
    package_dir={"hyperminhash": "python/hyperminhash"},
    ext_modules=[CMakeExtension("hyperminhash._hyperminhash")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
