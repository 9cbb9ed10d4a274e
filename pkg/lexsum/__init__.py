"""Extractive single-document summarization: features, LSA, lexical networks and 0-1 optimization."""

import logging

__version__ = '1.0.0'

logging.getLogger(__name__).addHandler(logging.NullHandler())
