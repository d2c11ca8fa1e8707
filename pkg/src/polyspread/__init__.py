"""Entropy and complexity measures of classical orthogonal polynomial
densities, their first-order asymptotics, and a verification harness."""

__version__ = "0.1.0"
