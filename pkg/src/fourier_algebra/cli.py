import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from fourier_algebra import analysis, fusion, genlib, pipeline, rescale
from fourier_algebra.config import CheckConfig, resolve_config
from fourier_algebra.constants import Forms
from fourier_algebra.constants import Sections as SEC
from fourier_algebra.exceptions import (
    AxiomFailure,
    ClassificationError,
    FourierAlgebraError,
    HypothesisNotMet,
    InputError,
    IntegralityFailed,
    IrrationalDegree,
    MatrixShapeError,
    NonIntegerDegree,
    NotSelfDual,
    RescaleError,
)
from fourier_algebra.ingest import loader
from fourier_algebra.ingest.parser import (
    MatrixDocument,
    format_matrix,
    parse_cyclotomic,
)
from fourier_algebra.math.linalg import ExactMatrix
from fourier_algebra.output.report import Report

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR = 0, 1, 2


def _add_shared_args(
    parser: argparse.ArgumentParser, default: object | None = None
) -> None:
    parser.add_argument(
        "--config",
        help="Path to etc/checks.yml (precision and ledger settings).",
        default=default,
    )
    parser.add_argument(
        "--json",
        action="store_true",
        help="Emit the machine-readable JSON report instead of text.",
        default=default if default is not None else False,
    )
    parser.add_argument(
        "--output",
        help="Write JSON reports or generated matrices here instead of stdout.",
        default=default,
    )
    parser.add_argument(
        "--verbose", action="store_true", default=default if default is not None else False
    )
    parser.add_argument(
        "--quiet", action="store_true", default=default if default is not None else False
    )
    parser.add_argument(
        "--max-precision-bits",
        type=int,
        help="Cap for interval sign escalation (default 4096). Overrides config.",
        default=default,
    )
    parser.add_argument(
        "--strict-nonnegative",
        action="store_true",
        help="Also require N_ijk >= 0 (fusion-ring convention).",
        default=default if default is not None else False,
    )


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "file",
        nargs="?",
        default=loader.STDIN,
        help="Matrix file, or - for stdin (default).",
    )
    parser.add_argument(
        "--form",
        choices=Forms.ALL,
        help="Document form; a 'form:' header in the file takes precedence.",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fourier-algebra")
    _add_shared_args(parser)
    subparsers = parser.add_subparsers(dest="command", required=True)

    def sub(name: str, help: str) -> argparse.ArgumentParser:
        p = subparsers.add_parser(name, help=help)
        _add_shared_args(p, default=argparse.SUPPRESS)
        return p

    _add_input(sub("verify", "Check the Fourier-matrix axioms"))

    rescale_cmd = sub("rescale", "Convert between the S, s and P forms")
    _add_input(rescale_cmd)
    rescale_cmd.add_argument("--to", choices=(Forms.S, Forms.SMALL_S, Forms.P), required=True)

    calgebra = sub("calgebra", "Build the C-algebra and check its axioms")
    _add_input(calgebra)
    calgebra.add_argument(
        "--constants-out",
        help="Write N and lambda as .csv or .parquet (S, s or P input only).",
    )

    _add_input(sub("duality", "Self-duality and degrees versus multiplicities"))
    _add_input(sub("integrality", "Test the integrality condition on lambda"))
    _add_input(sub("reconstruct", "Rebuild S from a self-dual integral P-matrix"))

    screen = sub("screen", "Divisibility screen on a degree vector")
    _add_input(screen)
    screen.add_argument("--degrees", help="Comma-separated degree vector, e.g. 1,2,2")

    _add_input(sub("classify", "Classification of homogeneous Fourier matrices"))

    generate = sub("generate", "Print a corpus matrix")
    generate.add_argument("family", choices=("abelian", "rank2"))
    generate.add_argument(
        "parameter", help="Cyclic factors for abelian (e.g. 2,2,3); n for rank2 (e.g. 4 or 3/2)"
    )
    generate.add_argument(
        "--as", dest="as_form", choices=(Forms.S, Forms.SMALL_S, Forms.P), default=Forms.P
    )

    _add_input(sub("check-all", "Run the full theorem ledger"))

    modular = sub("modular", "Check a modular datum (S, T)")
    modular.add_argument("s_file", help="S matrix file")
    modular.add_argument("t_file", help="T matrix file, full matrix or one diagonal row")

    return parser


# =============================================================================
# Output helpers
# =============================================================================


def _emit_report(report: Report, args: argparse.Namespace, config: CheckConfig) -> int:
    if args.json:
        report.write(args.output, config.json_indent)
    else:
        report.log()
    return report.exit_code


def _emit_matrix(doc: MatrixDocument, args: argparse.Namespace) -> int:
    text = format_matrix(doc)
    if args.output:
        Path(args.output).write_text(text)
        logger.info("Wrote %s matrix to %s", doc.form, args.output)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _document(matrix: ExactMatrix, form: str) -> MatrixDocument:
    return MatrixDocument(form, matrix.entries)


def _pick(triple, form: str) -> ExactMatrix:
    return {Forms.S: triple.S, Forms.SMALL_S: triple.s, Forms.P: triple.P}[form]


# =============================================================================
# Commands
# =============================================================================


def cmd_verify(args: argparse.Namespace, config: CheckConfig) -> int:
    loaded = loader.load_document(args.file, args.form)
    doc = loaded.document
    if doc.form == Forms.S:
        S = loader.as_matrix(doc)
    else:
        S = pipeline.triple_from_document(doc, config.precision).S
    result = fusion.verify_fourier(S, config.strict_nonnegative, config.precision)
    report = Report(input_digest=loaded.digest)
    report.add_section(SEC.FOURIER, result.to_dict(), result.passed)
    return _emit_report(report, args, config)


def cmd_rescale(args: argparse.Namespace, config: CheckConfig) -> int:
    doc = loader.load_document(args.file, args.form).document
    triple = pipeline.triple_from_document(doc, config.precision)
    return _emit_matrix(_document(_pick(triple, args.to), args.to), args)


def cmd_calgebra(args: argparse.Namespace, config: CheckConfig) -> int:
    loaded = loader.load_document(args.file, args.form)
    doc = loaded.document
    triple = None
    if doc.form != Forms.LAMBDA:
        triple = pipeline.triple_from_document(doc, config.precision)
    alg = pipeline.algebra_from_document(doc, triple)
    result = fusion.verify_calgebra(alg, config.precision)

    if args.constants_out:
        if triple is None:
            raise InputError("--constants-out needs an S, s or P document")
        frame = fusion.structure_constants(triple).to_frame()
        out = Path(args.constants_out)
        if out.suffix == ".parquet":
            frame.write_parquet(out)
        else:
            frame.write_csv(out)
        logger.info("Wrote %d structure constants to %s", frame.height, out)

    report = Report(input_digest=loaded.digest)
    payload = result.to_dict()
    payload.update(
        rank=alg.rank,
        order=str(alg.order),
        degrees=[str(d) for d in alg.degrees],
        involution=list(alg.involution),
    )
    report.add_section(SEC.CALGEBRA, payload, result.passed)
    return _emit_report(report, args, config)


def cmd_duality(args: argparse.Namespace, config: CheckConfig) -> int:
    loaded = loader.load_document(args.file, args.form)
    triple = pipeline.triple_from_document(loaded.document, config.precision)
    duality = analysis.duality_report(triple)
    report = Report(input_digest=loaded.digest)
    report.add_section(
        SEC.DUALITY, duality.to_dict(), duality.is_self_dual and duality.degrees_match
    )
    return _emit_report(report, args, config)


def _algebra(doc: MatrixDocument, config: CheckConfig):
    triple = None
    if doc.form != Forms.LAMBDA:
        triple = pipeline.triple_from_document(doc, config.precision)
    return triple, pipeline.algebra_from_document(doc, triple)


def cmd_integrality(args: argparse.Namespace, config: CheckConfig) -> int:
    loaded = loader.load_document(args.file, args.form)
    _, alg = _algebra(loaded.document, config)
    result = analysis.integrality_condition(alg)
    report = Report(input_digest=loaded.digest)
    report.add_section(SEC.INTEGRALITY, result.to_dict(), result.ok)
    return _emit_report(report, args, config)


def _reconstruction_failure(exc: AxiomFailure) -> tuple[str, dict]:
    """Report section and payload for a failed reconstruction."""
    if isinstance(exc, IntegralityFailed):
        return SEC.INTEGRALITY, {
            "error": str(exc),
            "witness": list(exc.witness),
            "value": exc.value,
        }
    if isinstance(exc, NotSelfDual):
        return SEC.DUALITY, {"error": str(exc)}
    payload = exc.report.to_dict() if exc.report is not None else {}
    return SEC.FOURIER, {**payload, "error": str(exc)}


def cmd_reconstruct(args: argparse.Namespace, config: CheckConfig) -> int:
    loaded = loader.load_document(args.file, args.form)
    triple, alg = _algebra(loaded.document, config)
    if triple is None:
        raise InputError("reconstruct needs the P-matrix (S, s or P document)")
    try:
        S = analysis.reconstruct_fourier(
            alg, triple.P, config.strict_nonnegative, config.precision
        )
    except AxiomFailure as exc:
        logger.error("reconstruction failed: %s", exc)
        report = Report(input_digest=loaded.digest)
        section, payload = _reconstruction_failure(exc)
        report.add_section(section, payload, False)
        return _emit_report(report, args, config)
    return _emit_matrix(_document(S, Forms.S), args)


def cmd_screen(args: argparse.Namespace, config: CheckConfig) -> int:
    report = Report()
    if args.degrees:
        degrees = [parse_cyclotomic(d.strip()) for d in args.degrees.split(",")]
    else:
        loaded = loader.load_document(args.file, args.form)
        report.input_digest = loaded.digest
        doc = loaded.document
        if doc.form == Forms.DEGREES:
            degrees = list(loader.as_degrees(doc))
        elif doc.form == Forms.P:
            degrees = list(analysis.integer_table_degrees(loader.as_matrix(doc)))
        else:
            _, alg = _algebra(doc, config)
            degrees = list(alg.degrees)
    result = analysis.divisibility_screen(degrees)
    payload = result.to_dict()
    payload["degrees"] = [str(d) for d in degrees]
    report.add_section(SEC.SCREEN, payload, result.ok)
    return _emit_report(report, args, config)


def cmd_classify(args: argparse.Namespace, config: CheckConfig) -> int:
    loaded = loader.load_document(args.file, args.form)
    triple, alg = _algebra(loaded.document, config)
    if triple is None:
        raise InputError("classify needs an S, s or P document")
    report = Report(input_digest=loaded.digest)

    fourier = fusion.verify_fourier(triple.S, config.strict_nonnegative, config.precision)
    report.add_section(SEC.FOURIER, fourier.to_dict(), fourier.passed)
    try:
        integrality = analysis.integrality_condition(alg)
        report.add_section(SEC.INTEGRALITY, integrality.to_dict(), integrality.ok)
    except IrrationalDegree as exc:
        report.add_section(SEC.INTEGRALITY, {"verdict": "not_applicable", "detail": str(exc)}, True)

    t = analysis.homogeneity(triple)
    report.add_section(
        SEC.HOMOGENEITY, {"t": str(t) if t is not None else None}, True
    )
    if fourier.passed:
        try:
            classification = analysis.classify(triple, config.precision)
            report.add_section(
                SEC.CLASSIFICATION, classification.to_dict(), classification.passed
            )
        except HypothesisNotMet as exc:
            report.add_section(SEC.CLASSIFICATION, {"hypothesis": str(exc)}, False)
        except ClassificationError as exc:
            report.add_section(SEC.CLASSIFICATION, {"anomaly": str(exc)}, False)
    return _emit_report(report, args, config)


def cmd_generate(args: argparse.Namespace, config: CheckConfig) -> int:
    if args.family == "abelian":
        try:
            spec = genlib.AbelianGroupSpec.parse(args.parameter)
        except ValueError as exc:
            raise InputError(f"abelian parameter: {exc}") from exc
        P = genlib.abelian_character_table(spec)
        if args.as_form == Forms.S:
            matrix = genlib.abelian_fourier_matrix(spec)
        else:
            # unit degrees: s coincides with P
            matrix = P
    else:
        try:
            P = genlib.rank2_family(Fraction(args.parameter))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"rank2 parameter: {exc}") from exc
        matrix = P if args.as_form == Forms.P else _pick(
            rescale.from_P(P), args.as_form
        )
    return _emit_matrix(_document(matrix, args.as_form), args)


def cmd_check_all(args: argparse.Namespace, config: CheckConfig) -> int:
    loaded = loader.load_document(args.file, args.form)
    try:
        report = pipeline.run_check_all(loaded.document, config, loaded.digest)
    except ValueError as exc:
        raise InputError(f"config ledger: {exc}") from exc
    return _emit_report(report, args, config)


def cmd_modular(args: argparse.Namespace, config: CheckConfig) -> int:
    s_loaded = loader.load_document(args.s_file, Forms.S)
    t_loaded = loader.load_document(args.t_file, Forms.T)
    S = loader.as_matrix(s_loaded.document)
    T = loader.as_diagonal(t_loaded.document)
    result = fusion.verify_modular_datum(S, T, config.strict_nonnegative, config.precision)
    report = Report(input_digest=f"{s_loaded.digest}:{t_loaded.digest}")
    report.add_section(SEC.MODULAR, result.to_dict(), result.passed)
    return _emit_report(report, args, config)


COMMANDS: dict[str, Callable[[argparse.Namespace, CheckConfig], int]] = {
    "verify": cmd_verify,
    "rescale": cmd_rescale,
    "calgebra": cmd_calgebra,
    "duality": cmd_duality,
    "integrality": cmd_integrality,
    "reconstruct": cmd_reconstruct,
    "screen": cmd_screen,
    "classify": cmd_classify,
    "generate": cmd_generate,
    "check-all": cmd_check_all,
    "modular": cmd_modular,
}


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)

    try:
        # Priority: flag > config file > default
        config = resolve_config(
            args.config, args.max_precision_bits, args.strict_nonnegative
        )
    except (OSError, ValueError) as exc:
        logger.error("Error: bad config %s: %s", args.config, exc)
        return EXIT_INPUT_ERROR

    try:
        return COMMANDS[args.command](args, config)
    except (InputError, RescaleError, MatrixShapeError, NonIntegerDegree) as exc:
        logger.error("Error: %s", exc)
        return EXIT_INPUT_ERROR
    except FourierAlgebraError as exc:
        logger.error("Error: %s", exc)
        return EXIT_CHECK_FAILED
    except Exception:
        logger.exception("[%s] unhandled exception", args.command)
        raise


if __name__ == "__main__":
    sys.exit(main())
