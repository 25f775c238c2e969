"""Exact adjoint cohomology of finite-dimensional Hopf algebras."""

__version__ = "0.1.0"
