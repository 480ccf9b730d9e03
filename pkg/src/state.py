"""
Linkform - State Management Module

This module defines the domain models shared by the tools and the typed state
that flows through the LangGraph classification pipeline.
Uses Pydantic BaseModel for the domain records and TypedDict for the graph state.
"""

import operator
from enum import Enum
from typing import Annotated, Any, Literal, Optional, TypedDict

from pydantic import BaseModel, ConfigDict, Field


class PrimePower(BaseModel):
    """A prime power p^e, used as an obstruction witness."""

    model_config = ConfigDict(frozen=True)

    prime: int = Field(..., gt=1)
    exponent: int = Field(..., ge=1)

    @property
    def value(self) -> int:
        return self.prime**self.exponent

    def __str__(self) -> str:
        return f"{self.prime}^{self.exponent}"


# --- Arithmetic records ---

class Factorization(BaseModel):
    """Complete prime factorization: value = sign * prod(p ** e)."""

    model_config = ConfigDict(frozen=True)

    value: int
    sign: Literal[-1, 1]
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def prime_powers(self) -> list[PrimePower]:
        return [PrimePower(prime=p, exponent=e) for p, e in self.factors]

    def __str__(self) -> str:
        body = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "1"
        return f"{'-' if self.sign < 0 else '+'}1 * {body}"


class SquareTest(BaseModel):
    """Outcome of is_square_unit_mod with its witness."""

    model_config = ConfigDict(frozen=True)

    is_square: bool
    modulus: int
    root: Optional[int] = None
    obstruction: Optional[PrimePower] = None


class BruteCoker(BaseModel):
    """Cokernel of M: Z^2 -> Z^2 found by enumeration. order None means infinite."""

    model_config = ConfigDict(frozen=True)

    order: Optional[int] = None
    cyclic: bool


# --- Family parameters ---

class ParamTriple(BaseModel):
    """One triple (x1, x2, x3); half of a family specification."""

    model_config = ConfigDict(frozen=True)

    x1: int
    x2: int
    x3: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x1, self.x2, self.x3)


class CongruenceViolation(BaseModel):
    """An entry that is not congruent to 1 mod 4."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["congruence"] = "congruence"
    side: Literal["a", "b"]
    index: int = Field(..., ge=1, le=3)
    value: int
    residue: int = Field(..., description="value mod 4")

    def describe(self) -> str:
        return f"CongruenceViolation {self.side}{self.index}={self.value} ({self.value} mod 4 = {self.residue})"


class FreenessViolation(BaseModel):
    """A failing freeness condition gcd(x1, x2 +/- x3) = 1."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["freeness"] = "freeness"
    side: Literal["a", "b"]
    sign: Literal["+", "-"]
    gcd: int

    def describe(self) -> str:
        s = self.side
        return f"FreenessViolation gcd({s}1, {s}2 {self.sign} {s}3) = {self.gcd}"


class FamilyParams(BaseModel):
    """
    Validated pair (a, b) of parameter triples; the coordinates of M(a, b).

    Instances are produced by `tools.family.validate`, which checks the
    congruence and freeness conditions.
    """

    model_config = ConfigDict(frozen=True)

    a: ParamTriple
    b: ParamTriple

    def entries(self) -> tuple[int, int, int, int, int, int]:
        return self.a.as_tuple() + self.b.as_tuple()

    def field_dict(self) -> dict[str, int]:
        names = ("a1", "a2", "a3", "b1", "b2", "b3")
        return dict(zip(names, self.entries()))


class ManifoldInvariants(BaseModel):
    """Derived quantities a0, b0 and the signed cohomology order n."""

    model_config = ConfigDict(frozen=True)

    a0: int = Field(..., description="(a2^2 - a3^2) / 8")
    b0: int = Field(..., description="(b2^2 - b3^2) / 8")
    n: int = Field(..., description="a1^2 b0 - a0 b1^2")
    h4_order: int = Field(..., ge=0, description="|n|; 0 encodes the infinite cyclic group")


# --- Cohomology ---

class IntMatrix2x2(BaseModel):
    """Integer 2x2 matrix with entries [[m11, m12], [m21, m22]]."""

    model_config = ConfigDict(frozen=True)

    m11: int
    m12: int
    m21: int
    m22: int

    def rows(self) -> list[list[int]]:
        return [[self.m11, self.m12], [self.m21, self.m22]]

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21


class SnfResult(BaseModel):
    """Smith normal form: left * M * right = diag(divisors)."""

    model_config = ConfigDict(frozen=True)

    divisors: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def d1(self) -> int:
        return self.divisors[0] if self.divisors else 0

    @property
    def d2(self) -> int:
        return self.divisors[1] if len(self.divisors) > 1 else 0


# --- Linking form ---

class BezoutCert(BaseModel):
    """Bezout certificates e1 a1^2 + e0 a0 = 1 and f1 b1^2 + f0 b0 = 1."""

    model_config = ConfigDict(frozen=True)

    e1: int
    e0: int
    f1: int
    f0: int


class LinkingFormData(BaseModel):
    """
    Linking-form data of a family member with finite H^4.

    lk(x 1, y 1) = +/- rho x y / n mod 1 with respect to the generator 1,
    and +/- kappa x y / n with respect to 1' = kappa 1. The global sign is
    not determined by the parameters, hence sign_ambiguous.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., description="Signed cohomology order, non-zero")
    rho: int = Field(..., ge=0)
    kappa: int = Field(..., ge=0)
    cert: BezoutCert
    sign_ambiguous: bool = True

    @property
    def h4_order(self) -> int:
        return abs(self.n)


# --- Classification ---

class VerdictKind(str, Enum):
    """Outcome of the standardness decision."""
    STANDARD = "Standard"
    NON_STANDARD = "NonStandard"
    TRIVIAL_TORSION = "TrivialTorsion"
    INFINITE_TORSION = "InfiniteTorsion"


class Verdict(BaseModel):
    """
    Standardness verdict with a machine-checkable witness.

    Standard: root^2 = sign * rho mod |n| with gcd(root, n) = 1.
    NonStandard: an obstructing prime power for each of +rho and -rho.
    """

    model_config = ConfigDict(frozen=True)

    kind: VerdictKind
    n: int
    rho: Optional[int] = None
    sign: Optional[int] = None
    root: Optional[int] = Field(default=None, description="The unit lambda of the standard witness")
    obstruction_plus: Optional[PrimePower] = None
    obstruction_minus: Optional[PrimePower] = None

    @property
    def homotopy_bundle(self) -> Optional[bool]:
        """Whether M is homotopy equivalent to an S^3-bundle over S^4 (None: no verdict)."""
        if self.kind == VerdictKind.INFINITE_TORSION:
            return None
        return self.kind != VerdictKind.NON_STANDARD


class EgsWitness(BaseModel):
    """A prime p = 1 mod 4 dividing gcd(a1, b1) with a0 a non-square and b0 a square mod p."""

    model_config = ConfigDict(frozen=True)

    p: int
    a0_symbol: int = -1
    b0_symbol: int = 1
    e0_symbol: int = Field(default=-1, description="Legendre symbol of the Bezout coefficient e0")


# --- Search ---

class SearchSpec(BaseModel):
    """Enumeration bounds and filters for a census."""

    model_config = ConfigDict(frozen=True)

    bound: int = Field(..., ge=1, description="Bound on |entries|")
    pin_p: Optional[int] = Field(default=None, description="Pin a1 = b1 = p")
    require_finite: bool = False
    verdict_filter: Literal["all", "standard", "nonstandard"] = "all"
    min_order: Optional[int] = Field(default=None, ge=0)
    max_order: Optional[int] = Field(default=None, ge=0)
    coprime_only: bool = False
    dedup: bool = True


class CensusRow(BaseModel):
    """One classified family of a census; every field is re-derivable from params."""

    model_config = ConfigDict(frozen=True)

    params: FamilyParams
    n: int
    h4_order: int
    rho: Optional[int] = None
    kappa: Optional[int] = None
    verdict: Optional[VerdictKind] = None
    egs_prime: Optional[int] = None
    error: Optional[str] = None


class DistinctTypes(BaseModel):
    """NonStandard census rows grouped by |H^4|."""

    counts: dict[int, int] = Field(default_factory=dict)
    representatives: dict[int, FamilyParams] = Field(default_factory=dict)

    @property
    def orders(self) -> list[int]:
        return sorted(self.counts)


# --- Reports ---

class ClassificationReport(BaseModel):
    """Complete classification of one family member."""

    params: FamilyParams
    invariants: ManifoldInvariants
    h4_divisors: tuple[int, int]
    linking: Optional[LinkingFormData] = None
    verdict: Verdict
    egs: Optional[EgsWitness] = None
    conclusion: str
    cohomology: dict[int, str] = Field(default_factory=dict, description="H^k(M; Z) for k = 0..7")
    leaf_cohomology: dict[str, dict[int, str]] = Field(default_factory=dict, description="Groups of the leaves M_pm and M_0")
    bundle_subfamily: bool = False
    admits_nonstandard: Optional[bool] = Field(default=None, description="Some p^2 divides n; None for n = 0")

    def to_json_dict(self) -> dict[str, Any]:
        """Flat JSON rendering: params, invariants, linking data and the verdict schema."""
        out: dict[str, Any] = dict(self.params.field_dict())
        out.update(
            a0=self.invariants.a0,
            b0=self.invariants.b0,
            n=self.invariants.n,
            h4_order=self.invariants.h4_order,
            snf=list(self.h4_divisors),
        )
        if self.linking is not None:
            cert = self.linking.cert
            out.update(
                rho=self.linking.rho,
                kappa=self.linking.kappa,
                e1=cert.e1,
                e0=cert.e0,
                f1=cert.f1,
                f0=cert.f0,
            )
        verdict: dict[str, Any] = {"kind": self.verdict.kind.value, "sign": self.verdict.sign}
        if self.verdict.root is not None:
            verdict["lambda"] = self.verdict.root
        if self.verdict.obstruction_plus is not None:
            verdict["obstruction_plus"] = str(self.verdict.obstruction_plus)
        if self.verdict.obstruction_minus is not None:
            verdict["obstruction_minus"] = str(self.verdict.obstruction_minus)
        if self.egs is not None:
            verdict["egs_prime"] = self.egs.p
        out["verdict"] = verdict
        out["conclusion"] = self.conclusion
        out["cohomology"] = {str(k): v for k, v in sorted(self.cohomology.items())}
        out["leaf_cohomology"] = {
            leaf: {str(k): v for k, v in sorted(groups.items())} for leaf, groups in self.leaf_cohomology.items()
        }
        out["bundle_subfamily"] = self.bundle_subfamily
        out["admits_nonstandard"] = self.admits_nonstandard
        return out


class CheckResult(BaseModel):
    """Result of one invariant check of the verification suite."""

    name: str
    passed: bool
    cases: int = 0
    counterexample: Optional[str] = None


class VerificationReport(BaseModel):
    """All check results of a verification run."""

    seed: int
    samples: int
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


# --- Graph state ---

class ClassificationState(TypedDict):
    """
    Typed state for the classification graph.

    Uses Annotated list reducers so every node can append trace lines and
    errors without overwriting earlier entries.
    """

    raw: list[int]

    params: Optional[FamilyParams]
    invariants: Optional[ManifoldInvariants]
    snf: Optional[SnfResult]
    linking: Optional[LinkingFormData]
    verdict: Optional[Verdict]
    egs: Optional[EgsWitness]
    report: Optional[ClassificationReport]

    # "ok", "invalid", "infinite", "resource_exceeded" or "certificate_failed"
    status: str

    violations: Annotated[list[Any], operator.add]
    errors: Annotated[list[str], operator.add]
    execution_trace: Annotated[list[str], operator.add]


def create_initial_state(raw: list[int]) -> ClassificationState:
    """
    Factory function to create the initial classification state.

    Args:
        raw: The six parameters a1, a2, a3, b1, b2, b3

    Returns:
        Initial ClassificationState
    """
    return {
        "raw": list(raw),
        "params": None,
        "invariants": None,
        "snf": None,
        "linking": None,
        "verdict": None,
        "egs": None,
        "report": None,
        "status": "ok",
        "violations": [],
        "errors": [],
        "execution_trace": [],
    }
