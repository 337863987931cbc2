"""Finite-depth combinatorics of G_0-style level graphs, frames, ideals on
omega, and the inductive embedding constructions built from them."""

__version__ = "0.1.0"

from .words import pair, phi, psi, psi_inv, sn, unpair  # noqa: E402
from .kernels import BACKEND  # noqa: E402

__all__ = ["BACKEND", "pair", "phi", "psi", "psi_inv", "sn", "unpair", "__version__"]
