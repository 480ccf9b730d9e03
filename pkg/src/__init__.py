"""
Linkform - Linking-Form Classifier for the 7-Manifolds M(a, b)

Computes the cohomology order, the linking residue and the S^3-bundle
homotopy verdict of each member of the family, with certificates.
"""

from .graph import create_classification_graph, run_classification, run_classification_with_trace
from .state import (
    ClassificationReport,
    ClassificationState,
    FamilyParams,
    LinkingFormData,
    Verdict,
    VerdictKind,
    create_initial_state,
)

__version__ = "0.1.0"

__all__ = [
    # Graph
    "create_classification_graph",
    "run_classification",
    "run_classification_with_trace",
    # State
    "ClassificationReport",
    "ClassificationState",
    "FamilyParams",
    "LinkingFormData",
    "Verdict",
    "VerdictKind",
    "create_initial_state",
]
