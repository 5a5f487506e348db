"""Setup for mvstack.

See:
https://packaging.python.org/en/latest/distributing.html
Templated from:
https://github.com/pypa/sampleproject
"""

from os import path

from setuptools import find_packages, setup

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="mvstack",
    version="0.1.0",
    description="Multi-view stacking with penalized GLMs and random forests",
    long_description=long_description,
    # Denotes that our long_description is in Markdown; valid values are
    # text/plain, text/x-rst, and text/markdown
    long_description_content_type="text/markdown",
    # Classifiers help users find your project by categorizing it.
    #
    # For a list of valid classifiers, see https://pypi.org/classifiers/
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Developers",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    keywords="multi-view stacking stacked generalization elastic net lasso random forest",
    packages=find_packages(exclude=["docs", "tests"]),
    python_requires=">=3.8",
    install_requires=["numpy>=1.17", "scipy>=1.4", "numba>=0.50", "joblib>=0.14"],
    extras_require={
        "dev": ["tox"],
        "test": ["tox", "pytest", "pytest-cov"],
    },
    package_data={},
    entry_points={"console_scripts": ["mvstack=mvstack.cli:main"]},
)
