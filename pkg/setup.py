import os
import sys

from setuptools import Extension, setup


def extensions():
    """Build the compiled kernel core when a toolchain is available.

    The package is fully functional without it (pure-Python fallback is
    selected at import time), so any build failure here just means a
    slower install, not a broken one.  Set APXPAT_NO_EXT=1 to skip.
    """
    if os.environ.get("APXPAT_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    if os.name == "nt":
        flags = ["/O2", "/fp:precise"]
    else:
        # -ffp-contract=off keeps float results bit-identical to the
        # pure-Python fallback (no fused multiply-add contraction).
        flags = ["-O3", "-ffp-contract=off"]
    ext = Extension(
        "apxpat._kernels._core",
        ["src/apxpat/_kernels/_core.pyx"],
        extra_compile_args=flags,
    )
    try:
        return cythonize([ext], compiler_directives={"language_level": "3"})
    except Exception as exc:  # noqa: BLE001 - degrade to pure python
        print(f"warning: skipping compiled core ({exc})", file=sys.stderr)
        return []


setup(ext_modules=extensions())
