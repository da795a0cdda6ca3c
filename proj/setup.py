"""Build script for the compiled extension.

Packaging metadata lives in pyproject.toml; this file only teaches setuptools
how to compile the C++ core plus its binding layer. The CLI translation unit
is deliberately excluded — the Python module does not expose the command-line
driver.
"""

from pathlib import Path

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ROOT = Path(__file__).parent
CORE_SOURCES = sorted(
    str(p.relative_to(ROOT)) for p in (ROOT / "src").glob("*.cpp") if p.name != "cli.cpp"
)

ext_modules = [
    Pybind11Extension(
        "ckm._ckm",
        sources=["bindings/module.cpp", *CORE_SOURCES],
        include_dirs=["include", "vendor"],
        cxx_std=20,
    ),
]

setup(ext_modules=ext_modules, cmdclass={"build_ext": build_ext})
