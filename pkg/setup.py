from setuptools import setup, find_packages

setup(
    name="separability_formulas",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    install_requires=[
        "langgraph>=0.3.21",
        "numpy>=1.26.0",
        "mpmath>=1.3.0",
        "python-dotenv>=1.0.1",
        "tenacity>=8.2.3",
        "pydantic>=2.6.4",
        "pytest>=8.0.0"
    ],
    python_requires=">=3.9",
)
