"""Build script: compiles the optional gate-kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so a failed compile only costs performance.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, missing Cython, ...
            print(f"warning: skipping extension build ({exc}); "
                  "umtrace will use the pure-numpy backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); "
                  "umtrace will use the pure-numpy backend")


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "umtrace.backends._gatekernels",
        ["src/umtrace/backends/_gatekernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3", "-fcx-limited-range"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
