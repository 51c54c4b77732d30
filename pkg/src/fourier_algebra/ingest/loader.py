"""Read matrix documents from files or stdin and convert them by form."""

import hashlib
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from fourier_algebra.constants import Forms
from fourier_algebra.exceptions import (
    InputError,
    classify_input_error,
    log_input_error,
)
from fourier_algebra.fusion import CAlgebra, calgebra_from_lambda
from fourier_algebra.ingest.parser import MatrixDocument, parse_matrix
from fourier_algebra.math.cyclo import Cyclotomic
from fourier_algebra.math.linalg import ExactMatrix, diag

logger = logging.getLogger(__name__)

STDIN = "-"


@dataclass(frozen=True)
class LoadedInput:
    document: MatrixDocument
    digest: str  # sha256 of the raw bytes

    @property
    def path(self) -> str:
        return self.document.source or STDIN


def _read_bytes(path: str) -> bytes:
    if path == STDIN:
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def load_document(path: str, form: Optional[str] = None) -> LoadedInput:
    """Load and parse one document; failures become typed InputErrors."""
    try:
        data = _read_bytes(path)
        document = parse_matrix(data.decode("utf-8"), form, source=path)
    except Exception as exc:
        typed = classify_input_error(path, exc)
        log_input_error(logger, path, typed)
        if typed is exc:
            raise
        raise typed from exc
    logger.debug(
        "Loaded %s: form %s, %d rows", path, document.form, document.rank
    )
    return LoadedInput(document, hashlib.sha256(data).hexdigest())


# =============================================================================
# Form conversions
# =============================================================================


def _where(doc: MatrixDocument) -> str:
    return doc.source or STDIN


def as_matrix(doc: MatrixDocument) -> ExactMatrix:
    widths = {len(row) for row in doc.rows}
    if widths != {doc.rank}:
        raise InputError(
            f"{_where(doc)}: expected a square matrix, got {doc.rank} rows "
            f"of widths {sorted(widths)}"
        )
    return ExactMatrix(doc.rank, doc.rows)


def as_degrees(doc: MatrixDocument) -> tuple[Cyclotomic, ...]:
    """A bare degree row, or row 0 of a P-matrix."""
    if doc.form == Forms.DEGREES:
        if doc.rank != 1:
            raise InputError(f"{_where(doc)}: a degree vector is a single row")
        return doc.rows[0]
    if doc.form == Forms.P:
        return as_matrix(doc).row(0)
    raise InputError(f"{_where(doc)}: degrees need form degrees or P, got {doc.form}")


def as_diagonal(doc: MatrixDocument) -> ExactMatrix:
    """T written either as a full matrix or as its diagonal row."""
    if doc.rank == 1 and len(doc.rows[0]) > 1:
        return diag(doc.rows[0])
    return as_matrix(doc)


def as_calgebra(doc: MatrixDocument) -> CAlgebra:
    """Rows "i, j, k, value"; omitted entries are zero."""
    if doc.form != Forms.LAMBDA:
        raise InputError(f"{_where(doc)}: expected form {Forms.LAMBDA}, got {doc.form}")
    entries: dict[tuple[int, int, int], Cyclotomic] = {}
    for lineno, row in enumerate(doc.rows, start=1):
        if len(row) != 4:
            raise InputError(f"{_where(doc)}: row {lineno} is not 'i, j, k, value'")
        indices = []
        for x in row[:3]:
            q = x.as_rational()
            if q is None or q.denominator != 1 or q < 0:
                raise InputError(f"{_where(doc)}: row {lineno} index {x} is not a natural number")
            indices.append(q.numerator)
        i, j, k = indices
        entries[(i, j, k)] = row[3]
    return calgebra_from_lambda(entries)
