"""
Linkform - LangGraph Infrastructure

Classification pipeline for one family member M(a, b).

Graph structure:
    START → ParameterValidator
           → (invalid → ReportRenderer)
           → InvariantCalculator
           → CohomologyChecker
           → (n = 0 or failed cross-check → ReportRenderer)
           → LinkingAnalyst
           → StandardnessClassifier
           → ReportRenderer
           → END
"""

from collections.abc import Sequence
from functools import lru_cache
from typing import Any, Union

from langgraph.graph import END, START, StateGraph

from .nodes.analysts import (
    cohomology_checker,
    invariant_calculator,
    linking_analyst,
    parameter_validator,
)
from .nodes.verdict import report_renderer, standardness_classifier
from .state import ClassificationState, create_initial_state
from .tools.family import parse_params


def _after_validation(state: ClassificationState) -> str:
    return "invariant_calculator" if state["status"] == "ok" else "report_renderer"


def _after_cohomology(state: ClassificationState) -> str:
    return "linking_analyst" if state["status"] == "ok" else "report_renderer"


@lru_cache(maxsize=1)
def create_classification_graph() -> Any:
    """
    Create and compile the classification graph.

    Returns:
        Compiled StateGraph ready for execution
    """
    workflow = StateGraph(ClassificationState)

    workflow.add_node("parameter_validator", parameter_validator)
    workflow.add_node("invariant_calculator", invariant_calculator)
    workflow.add_node("cohomology_checker", cohomology_checker)
    workflow.add_node("linking_analyst", linking_analyst)
    workflow.add_node("standardness_classifier", standardness_classifier)
    workflow.add_node("report_renderer", report_renderer)

    workflow.add_edge(START, "parameter_validator")
    workflow.add_conditional_edges(
        "parameter_validator",
        _after_validation,
        ["invariant_calculator", "report_renderer"],
    )
    workflow.add_edge("invariant_calculator", "cohomology_checker")
    workflow.add_conditional_edges(
        "cohomology_checker",
        _after_cohomology,
        ["linking_analyst", "report_renderer"],
    )
    # the classifier skips itself when the linking analyst failed
    workflow.add_edge("linking_analyst", "standardness_classifier")
    workflow.add_edge("standardness_classifier", "report_renderer")
    workflow.add_edge("report_renderer", END)

    return workflow.compile()


def run_classification(params: Union[str, Sequence[int]]) -> ClassificationState:
    """
    Run the classification workflow.

    Args:
        params: "a1,a2,a3;b1,b2,b3" or the six integers

    Returns:
        Final classification state (report set for ok and infinite outcomes)

    Raises:
        InvalidArgument: if a parameter string does not parse
    """
    raw = list(parse_params(params)) if isinstance(params, str) else list(params)
    graph = create_classification_graph()
    final_state: ClassificationState = graph.invoke(create_initial_state(raw))
    return final_state


def run_classification_with_trace(
    params: Union[str, Sequence[int]],
) -> tuple[ClassificationState, list[str]]:
    """
    Run classification and return the execution trace alongside the state.

    Args:
        params: "a1,a2,a3;b1,b2,b3" or the six integers

    Returns:
        Tuple of (final state, execution trace)
    """
    final_state = run_classification(params)
    return final_state, list(final_state.get("execution_trace", []))


__all__ = [
    "ClassificationState",
    "create_classification_graph",
    "create_initial_state",
    "run_classification",
    "run_classification_with_trace",
]
