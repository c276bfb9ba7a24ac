# Builds the optional compiled kernel.  The package works without it
# (pure-Python fallback), so a failed build is not fatal for development:
#   python setup.py build_ext --inplace
from setuptools import setup
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("kwayrelay.kernel._ckernel",
                   ["src/kwayrelay/kernel/_ckernel.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
