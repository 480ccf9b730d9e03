"""
Linkform - Verdict Nodes

StandardnessClassifier decides the linking form and runs the fast
non-standard test; ReportRenderer assembles the ClassificationReport.
"""

from typing import Any

from ..errors import CertificateError, ResourceExceeded
from ..state import ClassificationReport, ClassificationState, Verdict, VerdictKind
from ..tools import classify, cohomology
from ..tools.family import format_params, is_bundle_subfamily


def standardness_classifier(state: ClassificationState) -> dict[str, Any]:
    """
    Standardness Classifier Node - Verdict with witness, then the fast test.

    A fast-test witness on a Standard verdict would contradict soundness
    and is reported as a certificate failure.

    Args:
        state: Current classification state

    Returns:
        Update with verdict and optional EGS witness
    """
    params, lf = state["params"], state["linking"]
    if state["status"] != "ok" or params is None or lf is None:
        return {"execution_trace": ["StandardnessClassifier: Skipped"]}

    try:
        verdict = classify.is_standard(lf)
        witness = classify.egs_fast_check(params)
    except ResourceExceeded as e:
        return {
            "status": "resource_exceeded",
            "errors": [f"StandardnessClassifier: {e}"],
            "execution_trace": ["StandardnessClassifier: Factorization guard hit"],
        }
    except CertificateError as e:
        return {
            "status": "certificate_failed",
            "errors": [f"StandardnessClassifier: {e}"],
            "execution_trace": ["StandardnessClassifier: Certificate failed"],
        }

    trace = [f"StandardnessClassifier: {verdict.kind.value}"]
    if witness is not None:
        trace.append(f"StandardnessClassifier: Fast test fired at p = {witness.p}")
        if verdict.kind != VerdictKind.NON_STANDARD:
            return {
                "status": "certificate_failed",
                "errors": [f"StandardnessClassifier: fast test at p = {witness.p} contradicts {verdict.kind.value}"],
                "execution_trace": trace,
            }

    return {"verdict": verdict, "egs": witness, "execution_trace": trace}


def report_renderer(state: ClassificationState) -> dict[str, Any]:
    """Report Renderer Node - Builds the report for ok and infinite outcomes."""
    status = state["status"]
    params, inv, snf = state["params"], state["invariants"], state["snf"]

    if status not in ("ok", "infinite") or params is None or inv is None or snf is None:
        return {"execution_trace": [f"ReportRenderer: No report (status {status})"]}

    verdict = state["verdict"]
    if status == "infinite" or verdict is None:
        verdict = Verdict(kind=VerdictKind.INFINITE_TORSION, n=inv.n)

    report = ClassificationReport(
        params=params,
        invariants=inv,
        h4_divisors=(snf.d1, snf.d2),
        linking=state["linking"],
        verdict=verdict,
        egs=state["egs"],
        conclusion=classify.conclusion(verdict),
        cohomology=cohomology.cohomology_groups(params),
        leaf_cohomology=cohomology.LEAF_COHOMOLOGY,
        bundle_subfamily=is_bundle_subfamily(params),
        # |n| was already factorized by the classifier
        admits_nonstandard=classify.admits_nonstandard(inv.n) if status == "ok" else None,
    )
    return {"report": report, "execution_trace": [f"ReportRenderer: {verdict.kind.value}"]}


def _describe_verdict(verdict: Verdict) -> str:
    if verdict.kind == VerdictKind.STANDARD:
        sign = "+" if verdict.sign == 1 else "-"
        return f"Standard  (lambda = {verdict.root}, lambda^2 = {sign}rho)"
    if verdict.kind == VerdictKind.NON_STANDARD:
        return (
            f"NonStandard  (+rho obstructed mod {verdict.obstruction_plus}, "
            f"-rho obstructed mod {verdict.obstruction_minus})"
        )
    return verdict.kind.value


def render_table(report: ClassificationReport) -> str:
    """
    Human-readable classification report.

    Args:
        report: Completed classification

    Returns:
        Multi-line text block
    """
    inv = report.invariants
    rows = [
        ("parameters", format_params(report.params)),
        ("validation", "ok"),
        ("a0, b0", f"{inv.a0}, {inv.b0}"),
        ("n", str(inv.n)),
        ("|H^4|", str(inv.h4_order) if inv.h4_order else "infinite"),
        ("SNF", f"{report.h4_divisors} (agrees)"),
    ]
    if report.cohomology:
        groups = ", ".join(f"H^{k} = {g}" for k, g in sorted(report.cohomology.items()) if g != "0")
        rows.append(("cohomology", groups))
    for leaf, leaf_groups in report.leaf_cohomology.items():
        rows.append((f"leaf {leaf}", ", ".join(f"H^{k} = {g}" for k, g in sorted(leaf_groups.items()))))
    rows.append(("a1 = b1 = 1", "yes (S^3-bundle over S^4)" if report.bundle_subfamily else "no"))
    if report.admits_nonstandard is not None:
        rows.append(("p^2 | n", "yes" if report.admits_nonstandard else "no (only standard forms occur)"))
    if report.linking is not None:
        cert = report.linking.cert
        rows += [
            ("rho, kappa", f"{report.linking.rho}, {report.linking.kappa}  (mod {inv.h4_order})"),
            ("Bezout", f"e = ({cert.e1}, {cert.e0}), f = ({cert.f1}, {cert.f0})"),
        ]
    rows.append(("verdict", _describe_verdict(report.verdict)))
    if report.egs is not None:
        rows.append(("fast test", f"p = {report.egs.p}"))
    rows.append(("conclusion", report.conclusion))

    width = max(len(label) for label, _ in rows)
    return "\n".join(f"  {label.ljust(width)} : {value}" for label, value in rows)
