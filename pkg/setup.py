from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "kempe_edge._speedups",
                ["src/kempe_edge/_speedups.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython available: the package falls back to the pure-Python kernels.
    extensions = []

setup(ext_modules=extensions)
