"""Service rates of binary linear codes, orthogonal parity checks and majority-logic decoding."""

__version__ = "0.1.0"
