from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # no Cython: install the numpy kernels only
    ext_modules = []
else:
    # optional=True: a failed compile leaves the numpy fallback in charge
    ext_modules = cythonize([Extension("gckit._ckernels", ["src/gckit/_ckernels.pyx"], optional=True)],
                            compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
