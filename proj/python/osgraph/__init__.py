"""Cluster-forcing oriented graph synthesis, sparsity bounds and simulation."""

from osgraph._core import *  # noqa: F401,F403
from osgraph._core import __version__  # noqa: F401
