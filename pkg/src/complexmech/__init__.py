"""Complexified quantum and classical mechanics toolkit."""

__version__ = "0.1.0"

from .units import Units

__all__ = ["Units", "__version__"]
