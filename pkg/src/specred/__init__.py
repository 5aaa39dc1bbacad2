"""Exact complementarity spectra and spectral redundancy, with a fast path for pineapple graphs."""

__version__ = "0.1.0"
