"""
Linkform - Tools Package

Pure arithmetic, family, cohomology, linking-form, classification,
search, oracle and export tools.
"""

from . import arith
from . import classify
from . import cohomology
from . import export
from . import family
from . import linking
from . import oracle
from . import search

__all__ = ["arith", "classify", "cohomology", "export", "family", "linking", "oracle", "search"]
