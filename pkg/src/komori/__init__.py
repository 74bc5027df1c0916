"""Lexical distance between related languages and lexicon-driven corpus mining."""

__version__ = "0.1.0"
