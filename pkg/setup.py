from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; lenseta._kernels falls back
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("lenseta._cdefect", ["src/lenseta/_cdefect.pyx"], optional=True)],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
