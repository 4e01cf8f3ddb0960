"""Exact q-series laboratory for overpartitions with odd parts below twice the smallest part."""

from .series import Monomial, Q, QSeries

__all__ = ["Monomial", "Q", "QSeries"]
__version__ = "0.1.0"
