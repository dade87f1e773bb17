"""locps: certify (n-1)-locally positive semidefinite matrices and verify the
extended Hadamard / Fischer / Koteljanskii determinant bounds, with exact
rational arbitration for the closed-form extremal families.
"""

from ._backend import backend_name
from .symcore import IndexSet, Spectrum, SymMatrix

__version__ = "0.1.0"

__all__ = ["SymMatrix", "IndexSet", "Spectrum", "backend_name", "__version__"]
