"""Setup script for the poscomm CLI tool."""

from setuptools import setup

setup(
    name="poscomm",
    version="0.1.0",
    description="Positive Commutator Toolkit - exact checks for AB >= BA >= 0 on R^n",
    py_modules=["poscomm", "__version__"],
    packages=["search", "lattice_core", "lattice_classical"],
    package_dir={
        "lattice_core": "libs/py-lattice-core/lattice_core",
        "lattice_classical": "libs/py-lattice-classical/lattice_classical",
    },
    install_requires=[
        "typer[all]>=0.9.0",
        "rich>=13.0.0",
        "python-dotenv>=1.0.0",
        "pydantic>=2.0.0",
        # Floating-point sweeps in lattice_classical and seeded sampling in search
        "numpy>=1.26.0",
    ],
    entry_points={
        "console_scripts": [
            "poscomm=poscomm:app",
        ],
    },
    python_requires=">=3.11",
)
