"""Categorical models of finite regular semigroups, checked by brute force."""

from .semigroup import FiniteSemigroup, from_cayley_table, green_data, classify  # noqa: F401

__version__ = "0.1.0"
