from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # fall back to the pure-Python kernel
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("opext._modp", ["src/opext/_modp.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
