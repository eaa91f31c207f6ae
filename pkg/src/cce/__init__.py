"""Exact commutant algebra engine for Cartan subalgebras of the classical
Lie algebras: root systems, zero-weight generator catalogs, Poisson closure,
symmetrization into the enveloping algebra and superintegrability
certificates."""

from .liealg import build_algebra

__all__ = ["build_algebra"]
__version__ = "0.1.0"
