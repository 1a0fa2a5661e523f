"""Build script: compiles the optional kernel extension when Cython is present.

The package is fully functional without the extension; `odc._backend` falls
back to the pure-Python kernels at import time.  Set ODC_SKIP_EXTENSION=1 to
force a pure-Python install.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ODC_SKIP_EXTENSION"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("odc._kernels", ["src/odc/_kernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
