"""Setup script for crowell-links."""

from setuptools import setup, find_packages

# Read README for long description
with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="crowell-links",
    version="0.1.0",
    author="Crowell Contributors",
    description="Alexander modules, Crowell maps, sublinks and finite-module colorings of link diagrams",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={
        "crowell": ["fixtures/*.json", "fixtures/targets/*.json", "fixtures/certificates/*.json"],
    },
    install_requires=["numpy>=1.20", "sympy>=1.9"],
    extras_require={"test": ["pytest>=7"]},
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    entry_points={
        "console_scripts": [
            "crowell=crowell.cli:main",
        ],
    },
)
