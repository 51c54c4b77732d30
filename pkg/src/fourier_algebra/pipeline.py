"""Check-all ledger: every theorem checker run against one input document.

STAGES:
    triple_from_document  → S / s / P document → FourierTriple
    algebra_from_document → triple or λ table → CAlgebra (unchecked)
    run_ledger            → one LedgerModel row per registered check

Checks whose hypotheses the input does not meet are recorded as
not_applicable, never skipped silently. USE run_check_all() for the standard
flow.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Optional

from fourier_algebra import analysis, fusion, rescale
from fourier_algebra.analysis import CheckResult
from fourier_algebra.config import CheckConfig
from fourier_algebra.constants import Forms
from fourier_algebra.constants import Sections as SEC
from fourier_algebra.constants import Verdicts as V
from fourier_algebra.exceptions import (
    AxiomFailure,
    ClassificationError,
    DominanceFailed,
    HypothesisNotMet,
    InputError,
    IrrationalDegree,
    NonIntegerDegree,
    NotClosed,
)
from fourier_algebra.fusion import AxiomReport, CAlgebra
from fourier_algebra.ingest import loader
from fourier_algebra.ingest.parser import MatrixDocument
from fourier_algebra.math.cyclo import Cyclotomic
from fourier_algebra.math.interval import PrecisionPolicy
from fourier_algebra.math.linalg import ExactMatrix
from fourier_algebra.output.report import Report
from fourier_algebra.rescale import FourierTriple

logger = logging.getLogger(__name__)


def triple_from_document(
    doc: MatrixDocument, policy: PrecisionPolicy | None = None
) -> FourierTriple:
    matrix = loader.as_matrix(doc)
    if doc.form == Forms.S:
        return rescale.from_S(matrix, policy)
    if doc.form == Forms.SMALL_S:
        return rescale.from_s(matrix)
    if doc.form == Forms.P:
        return rescale.from_P(matrix)
    raise InputError(f"form {doc.form} has no Fourier triple")


def algebra_from_document(
    doc: MatrixDocument, triple: Optional[FourierTriple] = None
) -> CAlgebra:
    if doc.form == Forms.LAMBDA:
        return loader.as_calgebra(doc)
    if triple is None:
        raise ValueError(f"form {doc.form} needs a triple to build its algebra")
    return fusion.calgebra_of(triple)


# =============================================================================
# LEDGER
# =============================================================================


@dataclass
class _Context:
    config: CheckConfig
    triple: Optional[FourierTriple] = None
    alg: Optional[CAlgebra] = None
    degrees: Optional[tuple[Cyclotomic, ...]] = None
    fourier: Optional[AxiomReport] = None
    calgebra: Optional[AxiomReport] = None
    cache: dict = field(default_factory=dict)

    @property
    def policy(self) -> PrecisionPolicy:
        return self.config.precision

    @property
    def fourier_valid(self) -> bool:
        return self.fourier is not None and self.fourier.passed


Outcome = tuple[str, Optional[str]]  # (ledger verdict, witness)

_TO_LEDGER = {
    V.PASS: V.PASS,
    V.HOLDS: V.PASS,
    V.CONSISTENT: V.PASS,
    V.INCONSISTENT: V.FAIL,
    V.FAIL: V.FAIL,
    V.VACUOUS: V.VACUOUS,
    V.NOT_APPLICABLE: V.NOT_APPLICABLE,
    V.COUNTEREXAMPLE: V.COUNTEREXAMPLE,
}


def _outcome(result: CheckResult) -> Outcome:
    witness = None
    if result.witness is not None:
        witness = str(list(result.witness))
        if result.value is not None:
            witness += f" = {result.value}"
    return _TO_LEDGER[result.verdict], witness


def _report_outcome(report: Optional[AxiomReport]) -> Outcome:
    if report is None:
        return V.NOT_APPLICABLE, None
    if report.passed:
        return V.PASS, None
    first = report.failures()[0]
    return V.FAIL, f"{first.name} {list(first.witness or ())}"


_SKIP: Outcome = (V.NOT_APPLICABLE, None)


def _fourier_only(fn: Callable[[_Context], Outcome]) -> Callable[[_Context], Outcome]:
    def wrapped(ctx: _Context) -> Outcome:
        if not ctx.fourier_valid:
            return _SKIP
        return fn(ctx)

    return wrapped


def _duality(ctx: _Context) -> analysis.DualityReport:
    assert ctx.triple is not None
    if "duality" not in ctx.cache:
        ctx.cache["duality"] = analysis.duality_report(ctx.triple)
    return ctx.cache["duality"]


def _multiplicities(ctx: _Context) -> Outcome:
    report = _duality(ctx)
    return (V.PASS, None) if report.degrees_match else (V.COUNTEREXAMPLE, None)


def _self_dual(ctx: _Context) -> Outcome:
    return (V.PASS, None) if _duality(ctx).is_self_dual else (V.COUNTEREXAMPLE, None)


def _integrality_result(ctx: _Context) -> Optional[CheckResult]:
    if ctx.alg is None:
        return None
    if "integrality" not in ctx.cache:
        try:
            ctx.cache["integrality"] = analysis.integrality_condition(ctx.alg)
        except IrrationalDegree:
            ctx.cache["integrality"] = None
    return ctx.cache["integrality"]


def _integrality(ctx: _Context) -> Outcome:
    result = _integrality_result(ctx)
    return _SKIP if result is None else _outcome(result)


def _reconstruct(ctx: _Context) -> Outcome:
    if ctx.triple is None or ctx.alg is None:
        return _SKIP
    integrality = _integrality_result(ctx)
    if integrality is None or not integrality.ok or not _duality(ctx).is_self_dual:
        return _SKIP
    try:
        analysis.reconstruct_fourier(
            ctx.alg, ctx.triple.P, ctx.config.strict_nonnegative, ctx.policy
        )
    except AxiomFailure as exc:
        return V.COUNTEREXAMPLE, str(exc)
    return V.PASS, None


def _screen(ctx: _Context) -> Outcome:
    if ctx.degrees is None:
        return _SKIP
    try:
        result = analysis.divisibility_screen(ctx.degrees)
    except NonIntegerDegree:
        return _SKIP
    verdict, witness = _outcome(result)
    if verdict == V.FAIL and ctx.fourier_valid:
        return V.COUNTEREXAMPLE, witness
    return verdict, witness


def _degree_one(ctx: _Context) -> Outcome:
    assert ctx.triple is not None
    try:
        return _outcome(analysis.degree_one_check(ctx.triple, ctx.policy))
    except HypothesisNotMet:
        return _SKIP


def _classification(ctx: _Context) -> Outcome:
    assert ctx.triple is not None
    try:
        report = analysis.classify(ctx.triple, ctx.policy)
    except HypothesisNotMet:
        return _SKIP
    except DominanceFailed as exc:
        return V.FAIL, str(list(exc.witness))
    except NotClosed as exc:
        return V.COUNTEREXAMPLE, str(list(exc.witness))
    ctx.cache["classification"] = report
    if report.passed:
        return V.PASS, None
    return V.COUNTEREXAMPLE, "; ".join(report.anomalies) or None


def _dominance(ctx: _Context) -> Outcome:
    assert ctx.triple is not None
    strict = fusion.verify_fourier(ctx.triple.S, strict_nonnegative=True, policy=ctx.policy)
    if not strict.passed:
        return _SKIP
    verdict, witness = _outcome(analysis.dominance_check(ctx.triple, ctx.policy))
    return (V.COUNTEREXAMPLE if verdict == V.FAIL else verdict), witness


def _valid_algebra(fn: Callable[[CAlgebra], CheckResult]) -> Callable[[_Context], Outcome]:
    def wrapped(ctx: _Context) -> Outcome:
        if ctx.alg is None or ctx.calgebra is None or not ctx.calgebra.passed:
            return _SKIP
        return _outcome(fn(ctx.alg))

    return wrapped


def _with_P(fn: Callable[[CAlgebra, ExactMatrix], CheckResult]) -> Callable[[_Context], Outcome]:
    def wrapped(ctx: _Context) -> Outcome:
        if ctx.alg is None or ctx.triple is None:
            return _SKIP
        return _outcome(fn(ctx.alg, ctx.triple.P))

    return wrapped


def _on_triple(fn: Callable[[FourierTriple], CheckResult]) -> Callable[[_Context], Outcome]:
    def wrapped(ctx: _Context) -> Outcome:
        assert ctx.triple is not None
        return _outcome(fn(ctx.triple))

    return wrapped


@dataclass(frozen=True)
class LedgerCheck:
    name: str
    section: str
    statement: str
    run: Callable[[_Context], Outcome]
    needs_triple: bool = True


LEDGER: tuple[LedgerCheck, ...] = (
    LedgerCheck(
        "fourier", SEC.FOURIER,
        "S is unitary and symmetric with positive first column and integral N",
        lambda ctx: _report_outcome(ctx.fourier),
    ),
    LedgerCheck(
        "calgebra", SEC.CALGEBRA,
        "the rescaled basis satisfies the C-algebra axioms",
        lambda ctx: _report_outcome(ctx.calgebra),
        needs_triple=False,
    ),
    LedgerCheck(
        "multiplicities", SEC.DUALITY,
        "degrees equal multiplicities d_0/d_j",
        _fourier_only(_multiplicities),
    ),
    LedgerCheck(
        "self_dual", SEC.DUALITY,
        "an algebra from a Fourier matrix is self-dual",
        _fourier_only(_self_dual),
    ),
    LedgerCheck(
        "norm_identity", SEC.DUALITY,
        "d_0 = d_j·δ(b_j) for every j",
        _fourier_only(_on_triple(analysis.norm_identity_check)),
    ),
    LedgerCheck(
        "integrality", SEC.INTEGRALITY,
        "λ_ijk·√δ(b_k)/√(δ(b_i)δ(b_j)) is a rational integer",
        _integrality,
        needs_triple=False,
    ),
    LedgerCheck(
        "reconstruct", SEC.INTEGRALITY,
        "a self-dual algebra satisfying integrality arises from a Fourier matrix",
        _reconstruct,
    ),
    LedgerCheck(
        "square_order", SEC.SQUARE_ORDER,
        "odd rank with integral det(P) forces a square order",
        _fourier_only(_on_triple(analysis.square_order_check)),
    ),
    LedgerCheck(
        "divisibility", SEC.SCREEN,
        "a nontrivial degree dividing all nontrivial degrees equals 1",
        _screen,
        needs_triple=False,
    ),
    LedgerCheck(
        "degree_one", SEC.HOMOGENEITY,
        "homogeneous or prime-order Fourier data has all degrees 1",
        _degree_one,
    ),
    LedgerCheck(
        "classification", SEC.CLASSIFICATION,
        "columns of a homogeneous s-matrix form an abelian group of unimodular vectors",
        _classification,
    ),
    LedgerCheck(
        "unique_norm_scaling", SEC.CLASSIFICATION,
        "an s-matrix with unique norm gives S = r^(-1/2)·s",
        _fourier_only(_on_triple(analysis.unique_norm_scaling_check)),
    ),
    LedgerCheck(
        "perfect_square_degrees", SEC.PROPERTIES,
        "an integral s-matrix has square-integer degrees and rational constants",
        _fourier_only(_on_triple(analysis.perfect_square_degrees_check)),
    ),
    LedgerCheck(
        "degree_norm_divisibility", SEC.PROPERTIES,
        "rational degrees are integers, and degrees and norms divide the order",
        _fourier_only(_on_triple(analysis.degree_norm_divisibility_check)),
    ),
    LedgerCheck(
        "unique_norm", SEC.PROPERTIES,
        "unique degree holds exactly when the s-matrix has unique norm",
        _fourier_only(_on_triple(analysis.unique_norm_check)),
    ),
    LedgerCheck(
        "symmetric_algebra", SEC.PROPERTIES,
        "the involution is trivial exactly when S is real",
        _fourier_only(_on_triple(analysis.symmetric_algebra_check)),
    ),
    LedgerCheck(
        "rational_algebra", SEC.PROPERTIES,
        "rational structure constants force integer degrees",
        _fourier_only(_valid_algebra(analysis.rational_algebra_check)),
    ),
    LedgerCheck(
        "eigenmatrix", SEC.PROPERTIES,
        "rows of P are characters of the λ table",
        _fourier_only(_with_P(analysis.eigenmatrix_check)),
    ),
    LedgerCheck(
        "dominance", SEC.PROPERTIES,
        "nonnegative constants force |s_ij| <= s_0j",
        _dominance,
    ),
    LedgerCheck(
        "group_algebra", SEC.PROPERTIES,
        "self-dual with unique degree and nonnegative constants is a group algebra",
        _fourier_only(_with_P(analysis.group_algebra_check)),
    ),
)


def run_ledger(ctx: _Context) -> list[dict]:
    selected = set(ctx.config.ledger) if ctx.config.ledger else None
    rows = []
    for check in LEDGER:
        if selected is not None and check.name not in selected:
            continue
        if check.needs_triple and ctx.triple is None:
            verdict, witness = _SKIP
        else:
            try:
                verdict, witness = check.run(ctx)
            except ClassificationError as exc:
                verdict, witness = V.FAIL, str(exc)
        logger.debug("ledger %s: %s", check.name, verdict)
        rows.append(
            {
                "section": check.section,
                "check": check.name,
                "statement": check.statement,
                "verdict": verdict,
                "witness": witness,
            }
        )
    return rows


def run_check_all(
    doc: MatrixDocument, config: CheckConfig, digest: Optional[str] = None
) -> Report:
    """Standard flow: document → triple/algebra → axiom sections + ledger."""
    unknown = set(config.ledger or ()) - {c.name for c in LEDGER}
    if unknown:
        raise ValueError(f"Unknown ledger checks: {sorted(unknown)}")

    if doc.form == Forms.T:
        raise InputError("check-all takes an S, s, P, lambda-table or degrees document")

    ctx = _Context(config)
    if doc.form in (Forms.S, Forms.SMALL_S, Forms.P):
        ctx.triple = triple_from_document(doc, ctx.policy)
        ctx.degrees = ctx.triple.degrees
        ctx.fourier = fusion.verify_fourier(
            ctx.triple.S, config.strict_nonnegative, ctx.policy
        )
    elif doc.form == Forms.DEGREES:
        ctx.degrees = loader.as_degrees(doc)
    if doc.form != Forms.DEGREES:
        ctx.alg = algebra_from_document(doc, ctx.triple)
        ctx.calgebra = fusion.verify_calgebra(ctx.alg, ctx.policy)
        if ctx.degrees is None:
            ctx.degrees = ctx.alg.degrees

    report = Report(input_digest=digest)
    if ctx.fourier is not None:
        report.add_section(SEC.FOURIER, ctx.fourier.to_dict(), ctx.fourier.passed)
    if ctx.calgebra is not None:
        report.add_section(SEC.CALGEBRA, ctx.calgebra.to_dict(), ctx.calgebra.passed)
    report.set_ledger(run_ledger(ctx))
    classification = ctx.cache.get("classification")
    if classification is not None:
        report.add_section(SEC.CLASSIFICATION, classification.to_dict(), classification.passed)
    logger.debug("check-all finished: exit %d", report.exit_code)
    return report
