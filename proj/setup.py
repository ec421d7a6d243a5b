import shutil
from pathlib import Path

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

root = Path(__file__).resolve().parent

# bundle the shipped data files inside the package
pkg_data = root / "python" / "framekit" / "data"
pkg_data.mkdir(exist_ok=True)
for name in ("registry.json", "sample_gazetteer.tsv"):
    shutil.copyfile(root / "data" / name, pkg_data / name)

sources = sorted(str(p.relative_to(root)) for p in (root / "src").glob("*.cpp"))
sources.append("bindings/pymodule.cpp")

setup(
    ext_modules=[
        Pybind11Extension(
            "framekit._core",
            sources,
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
    packages=["framekit"],
    package_dir={"framekit": "python/framekit"},
    package_data={"framekit": ["data/*"]},
)
