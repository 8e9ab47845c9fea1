"""Power-log series solutions of algebraic ODEs: expansion and convergence certification."""

__version__ = "0.1.0"
