"""Al-Salam-Carlitz polynomials, q-operators and identity verification."""

from .scalars import Mode, QContext, compare

__version__ = "0.1.0"

__all__ = ["Mode", "QContext", "compare", "__version__"]
