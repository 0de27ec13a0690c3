import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PERMHOM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("permhom._kernel", ["src/permhom/_kernel.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
