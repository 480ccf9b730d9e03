"""
Linkform - Analyst Nodes

LangGraph nodes that validate the parameters and compute the invariants:
ParameterValidator, InvariantCalculator, CohomologyChecker and
LinkingAnalyst. Each node returns a partial state update; trace lines and
errors are appended through the list reducers on ClassificationState.
"""

from typing import Any

from ..errors import CertificateError, InfiniteTorsion, InvalidArgument
from ..state import ClassificationState
from ..tools import cohomology, family, linking


def parameter_validator(state: ClassificationState) -> dict[str, Any]:
    """
    Parameter Validator Node - Checks the congruence and freeness conditions.

    Every violated condition is recorded, not only the first one.

    Args:
        state: Current classification state

    Returns:
        Update with params on success, or status "invalid" and the violations
    """
    raw = tuple(state["raw"])
    trace = [f"ParameterValidator: Checking {raw}"]

    try:
        found = family.violations(raw)
    except InvalidArgument as e:
        return {
            "status": "invalid",
            "errors": [f"ParameterValidator: {e}"],
            "execution_trace": trace + ["ParameterValidator: Aborted - malformed input"],
        }

    if found:
        return {
            "status": "invalid",
            "violations": found,
            "errors": [f"ParameterValidator: {v.describe()}" for v in found],
            "execution_trace": trace + [f"ParameterValidator: {len(found)} violation(s)"],
        }

    params = family.validate(raw)
    return {
        "params": params,
        "execution_trace": trace + ["ParameterValidator: Parameters valid"],
    }


def invariant_calculator(state: ClassificationState) -> dict[str, Any]:
    """Invariant Calculator Node - a0, b0, n and |H^4|."""
    params = state["params"]
    assert params is not None
    inv = family.derived(params)
    return {
        "invariants": inv,
        "execution_trace": [f"InvariantCalculator: a0={inv.a0}, b0={inv.b0}, n={inv.n}"],
    }


def cohomology_checker(state: ClassificationState) -> dict[str, Any]:
    """
    Cohomology Checker Node - Cross-checks |H^4| against the Smith normal form.

    The restriction matrix must reduce to diag(1, |n|). Marks the state
    "infinite" when n = 0 so the graph skips the linking form.

    Args:
        state: Current classification state

    Returns:
        Update with the SNF result and possibly a new status
    """
    params, inv = state["params"], state["invariants"]
    assert params is not None and inv is not None

    try:
        snf = cohomology.smith_normal_form(cohomology.restriction_matrix(params))
        if snf.d1 != 1 or snf.d2 != inv.h4_order:
            raise CertificateError(f"SNF {snf.divisors} disagrees with |n| = {inv.h4_order}")
    except CertificateError as e:
        return {
            "status": "certificate_failed",
            "errors": [f"CohomologyChecker: {e}"],
            "execution_trace": ["CohomologyChecker: SNF cross-check failed"],
        }

    update: dict[str, Any] = {
        "snf": snf,
        "execution_trace": [f"CohomologyChecker: SNF {snf.divisors} agrees with |n| = {inv.h4_order}"],
    }
    if inv.n == 0:
        update["status"] = "infinite"
        update["execution_trace"].append("CohomologyChecker: H^4 infinite cyclic, no linking form")
    return update


def linking_analyst(state: ClassificationState) -> dict[str, Any]:
    """Linking Analyst Node - Bezout certificates, rho and kappa."""
    params = state["params"]
    assert params is not None

    try:
        lf = linking.linking_form(params)
    except InfiniteTorsion as e:
        return {"status": "infinite", "execution_trace": [f"LinkingAnalyst: {e}"]}
    except CertificateError as e:
        return {
            "status": "certificate_failed",
            "errors": [f"LinkingAnalyst: {e}"],
            "execution_trace": ["LinkingAnalyst: Certificate failed"],
        }

    return {
        "linking": lf,
        "execution_trace": [f"LinkingAnalyst: rho={lf.rho}, kappa={lf.kappa} mod {lf.h4_order}"],
    }
