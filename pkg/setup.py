#!/usr/bin/env python3

from setuptools import setup
from setuptools import find_packages


setup(
    name                 = "liteqoc",
    description          = "Small footprint quantum optimal control for the 1D Schrödinger equation",
    author               = "LiteQOC Developers",
    url                  = "https://github.com/liteqoc/liteqoc",
    download_url         = "https://github.com/liteqoc/liteqoc",
    test_suite           = "test",
    license              = "BSD",
    python_requires      = "~=3.8",
    install_requires     = ["numpy", "scipy", "pyyaml"],
    packages             = find_packages(exclude=("test*", "bench*", "doc*", "examples*")),
    include_package_data = True,
    keywords             = "quantum optimal control Schrodinger Crank-Nicolson transparent boundary adjoint",
    classifiers          = [
        "Topic :: Scientific/Engineering :: Physics",
        "Environment :: Console",
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
    ],
    entry_points         = {
        "console_scripts": [
            "liteqoc_gen=liteqoc.gen:main",
        ],
    },
)
