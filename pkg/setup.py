"""Set up the subtree_order package."""
import setuptools


setuptools.setup(
    name="subtree_order",
    version="1.0.0",
    description=(
        "Exact computation and verification of the mean subtree order of "
        "trees."
    ),
    long_description=(
        "This code counts the subtrees of trees exactly (global, rooted, "
        "per-vertex and set-local means), builds the broom, double-broom "
        "and caterpillar families, searches all free trees for the largest "
        "mean subtree order, and machine-checks the inequalities used to "
        "bound that maximum."
    ),
    python_requires=">=3.8",
    license="CC0-1.0",
    author="subtree_order developers",
    packages=setuptools.find_packages(exclude=["tests"]),
    package_data={"": ["tests/data/*"]},
    install_requires=["networkx", "numpy", "pandas"],
    extras_require={
        "dev": ["check-manifest"],
        "test": [
            "black",
            "coverage",
            "flake8",
            "pandas >= 1.0",
            "pytest",
            "testfixtures",
        ],
    },
    tests_require=[
        "pandas >= 1.0",
        "pytest",
        "testfixtures",
    ],
    test_suite="tests",
    entry_points={
        "console_scripts": ["subtree-order=subtree_order.cli:main"]
    },
    keywords="mathematics combinatorics graph-theory trees",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "Operating System :: MacOS",
        "Operating System :: Microsoft :: Windows",
        "Operating System :: POSIX",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
