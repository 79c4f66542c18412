"""Exact counts of commuting pairs in the Lie algebras of GL, GU and Sp over finite fields."""

__version__ = "0.1.0"
