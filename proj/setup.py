from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext_modules = [
    Pybind11Extension(
        "depref._core",
        sources=[
            "python/bindings.cpp",
            "src/model.cpp",
            "src/analytics.cpp",
            "src/popularity.cpp",
            "src/sim.cpp",
            "src/table.cpp",
            "src/experiments.cpp",
        ],
        include_dirs=["include", "vendor"],
        cxx_std=20,
    )
]

setup(ext_modules=ext_modules, cmdclass={"build_ext": build_ext})
