"""Exact toolkit for trivial extension algebras and singularity-category checks."""

__version__ = "0.1.0"
