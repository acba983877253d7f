"""Exceptional flat surfaces from Poisson spectra on the unit circle."""

__version__ = "0.1.0"
