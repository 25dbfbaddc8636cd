import os
import setuptools


with open(os.path.join(os.path.dirname(__file__), "README.md"), "r") as f:
    long_description = f.read()


setuptools.setup(
    name="jacobi-fracdiff",
    description="Jacobi sliding window estimators of fractional derivatives of noisy signals",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    classifiers=[
        "Programming Language :: Python :: 3.8",
    ],
    python_requires=">=3.8",
    include_package_data=True,
    package_data={
        "fracdiff": ["config/experiments/*.xml"],
    },
    install_requires=[
        "lxml",
        "numpy",
        "scipy",
    ],
    entry_points={
        "console_scripts": [
            "fracdiff=fracdiff.harness.cli:main",
        ],
    },
)
