"""
Linkform - Nodes Package

LangGraph node implementations:
- Analysts: parameter validation, invariants, SNF cross-check, linking form
- Verdict: standardness decision and report rendering
- Verification: the invariant suite behind `linkform verify`
"""

from . import analysts
from . import verdict
from . import verification

__all__ = ["analysts", "verdict", "verification"]
