"""Pseudospectral runs and inequality checks for the slightly supercritical
2-D Euler family."""

try:
    from ._supercrit2d import *  # installed wheel layout
except ImportError:  # in-tree build: module sits next to the package on sys.path
    from _supercrit2d import *  # noqa: F401,F403
