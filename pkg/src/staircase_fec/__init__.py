"""Staircase and product codes with BCH components, iterative BDD and
soft-aided bit-marking (SABM) decoding."""

__version__ = "0.1.0"
