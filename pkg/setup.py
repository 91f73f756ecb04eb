from setuptools import find_packages, setup

setup(
    name="physarum-toolkit",
    version="0.1.0",
    description="Physarum flow-conductivity network solver, hexagonal competition simulator and Physarum-coupled ACO",
    packages=find_packages(include=["src", "src.*", "plugins", "plugins.*"]),
    py_modules=["PhysarumToolkit"],
    package_data={"plugins.strategies": ["_priorities.json"]},
    data_files=[("data/config", ["data/config/defaults.json"])],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.12",
        "networkx>=2.8",
        "PyQt5>=5.15",
    ],
    extras_require={
        "test": ["pytest>=7"],
    },
    entry_points={
        "console_scripts": ["physarum-toolkit=src.Cli:main"],
    },
)
