"""Uniform mixing of continuous quantum walks on Cayley graphs over Z_q^d.

Thin re-export of the compiled extension.  Installed wheels carry the
extension inside this package; in a build tree it sits next to the package
on sys.path.
"""

try:
    from ._qmix import *  # noqa: F401,F403
    from ._qmix import __version__  # noqa: F401
except ImportError:
    from _qmix import *  # noqa: F401,F403
    from _qmix import __version__  # noqa: F401
