"""Bjorling surfaces and curve interpolation in E^3 and L^3.

Thin wrapper around the C++ core; see the project README for the full API.
"""

from _bjorling import *  # noqa: F401,F403
from _bjorling import __doc__  # noqa: F401
