"""Symbolic engine for finite bicategories with model structures."""

from __future__ import annotations

__version__ = "0.1.0"
