"""Skew group quivers with potential, double covers and their modules."""

try:
    from ._core import *  # noqa: F401,F403  (installed layout)
except ImportError:  # in-tree build: the extension sits next to the package
    from _core import *  # noqa: F401,F403

__all__ = [
    "validate",
    "blocks",
    "adjacency_qp",
    "skew",
    "cover",
    "string_module",
    "band_module",
    "classify",
    "ginzburg_check",
    "run_cli",
    "QpskewError",
]
