import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="algebroidpy",
    license="BSD 3-Clause",
    description="Numerical value distribution of algebroid curves in Python",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: BSD License",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Operating System :: OS Independent"
    ],
    entry_points={
        "console_scripts": ["algebroid=algebroidpy.cli:main"],
    },
)
