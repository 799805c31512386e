"""Associative one-way function constructions over binary strings, with
exhaustive property checkers and a key-agreement simulator."""

__version__ = "0.1.0"
