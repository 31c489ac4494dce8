"""Switching curves, double-Hopf analysis and simulation for a diffusive
Leslie-Gower model with two delays."""

from ._lgdelay import *  # noqa: F401,F403
from ._lgdelay import __version__  # noqa: F401
