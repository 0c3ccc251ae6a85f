"""Build the optional compiled Gibbs kernel.

If Cython or a C compiler is unavailable the package still installs and the
pure-Python sweep is used.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("ATMKIT_NO_EXT", "") in ("", "0"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "atmkit.atm._sweep",
                    ["src/atmkit/atm/_sweep.pyx"],
                    include_dirs=[np.get_include()],
                    # no FMA contraction or fast-math: results must match the Python sweep bit for bit
                    extra_compile_args=["-O3", "-ffp-contract=off", "-fno-fast-math"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
