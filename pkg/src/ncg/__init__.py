"""Exact symbolic workbench for spectral triples built from bimodule connections."""

__version__ = "0.1.0"
