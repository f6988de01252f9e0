"""Exact verification toolkit for two affine key varieties and the Q-Fano threefolds cut from them."""

__version__ = "0.1.0"
