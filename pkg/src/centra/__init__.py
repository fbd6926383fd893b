"""Normalized network centralization measures and their axiomatic/numerical assessment."""

__version__ = "0.1.0"
