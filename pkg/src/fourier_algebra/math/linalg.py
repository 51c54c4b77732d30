"""Dense square matrices over Cyclotomic.

Matrices are immutable; every operation returns a new matrix. Indexing is
0-based for both rows and columns.
"""

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from fourier_algebra.exceptions import AmbiguousPairing, MatrixShapeError, RankMismatch
from fourier_algebra.math.cyclo import ONE, ZERO, Cyclotomic, sum_of_products

Scalar = Cyclotomic | int | Fraction


@dataclass(frozen=True)
class ExactMatrix:
    rank: int
    entries: tuple[tuple[Cyclotomic, ...], ...]

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise MatrixShapeError(f"rank must be positive, got {self.rank}")
        if len(self.entries) != self.rank or any(
            len(row) != self.rank for row in self.entries
        ):
            raise MatrixShapeError(f"entries are not {self.rank}x{self.rank}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Scalar]]) -> "ExactMatrix":
        entries = tuple(tuple(Cyclotomic.coerce(x) for x in row) for row in rows)
        return cls(len(entries), entries)

    def __getitem__(self, index: tuple[int, int]) -> Cyclotomic:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Cyclotomic, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Cyclotomic, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Cyclotomic, ...]]:
        return [self.column(j) for j in range(self.rank)]

    def map(self, fn: Callable[[Cyclotomic], Cyclotomic]) -> "ExactMatrix":
        return ExactMatrix(
            self.rank, tuple(tuple(fn(x) for x in row) for row in self.entries)
        )

    def scale(self, factor: Scalar) -> "ExactMatrix":
        factor = Cyclotomic.coerce(factor)
        return self.map(lambda x: x * factor)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return matmul(self, other)

    def __str__(self) -> str:
        return "\n".join(", ".join(str(x) for x in row) for row in self.entries)


@dataclass(frozen=True)
class PermutationVerdict:
    """A = scale · Π_σ, where Π_σ has its 1 in row i at column σ(i)."""

    is_permutation: bool
    permutation: Optional[tuple[int, ...]] = None
    scale: Optional[Cyclotomic] = None


# =============================================================================
# Constructors
# =============================================================================


def identity(rank: int) -> ExactMatrix:
    return diag([ONE] * rank)


def diag(values: Sequence[Scalar]) -> ExactMatrix:
    r = len(values)
    return ExactMatrix.from_rows(
        [[values[i] if i == j else ZERO for j in range(r)] for i in range(r)]
    )


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product, row index (i_a, i_b) flattened as i_a·rank(b) + i_b."""
    rows = []
    for i in range(a.rank):
        for k in range(b.rank):
            rows.append(
                [a[i, j] * b[k, l] for j in range(a.rank) for l in range(b.rank)]
            )
    return ExactMatrix.from_rows(rows)


# =============================================================================
# Products and transforms
# =============================================================================


def _check_ranks(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs rank {b.rank}")


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_ranks(a, b)
    columns = b.columns()
    return ExactMatrix(
        a.rank,
        tuple(
            tuple(sum_of_products(zip(row, col)) for col in columns)
            for row in a.entries
        ),
    )


def conj_entrywise(a: ExactMatrix) -> ExactMatrix:
    return a.map(Cyclotomic.conj)


def transpose(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(a.rank, tuple(a.columns()))


def conj_transpose(a: ExactMatrix) -> ExactMatrix:
    return transpose(conj_entrywise(a))


# =============================================================================
# Predicates
# =============================================================================


def is_unitary(a: ExactMatrix) -> bool:
    return matmul(a, conj_transpose(a)) == identity(a.rank)


def is_symmetric(a: ExactMatrix) -> bool:
    return all(
        a[i, j] == a[j, i] for i in range(a.rank) for j in range(i + 1, a.rank)
    )


def diagonal(a: ExactMatrix) -> tuple[Cyclotomic, ...]:
    return tuple(a[i, i] for i in range(a.rank))


def determinant(a: ExactMatrix) -> Cyclotomic:
    """Gaussian elimination over the field, pivoting on the first nonzero entry."""
    rows = [list(row) for row in a.entries]
    n = a.rank
    det = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c]), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        p = rows[c][c]
        det = det * p
        p_inv = p.inv()
        for i in range(c + 1, n):
            if not rows[i][c]:
                continue
            factor = rows[i][c] * p_inv
            rows[i] = rows[i][:c] + [
                x - factor * y for x, y in zip(rows[i][c:], rows[c][c:])
            ]
    return det


def as_scaled_permutation(a: ExactMatrix) -> PermutationVerdict:
    scale: Cyclotomic | None = None
    sigma: list[int] = []
    for row in a.entries:
        support = [j for j, x in enumerate(row) if x]
        if len(support) != 1:
            return PermutationVerdict(False)
        (j,) = support
        if scale is None:
            scale = row[j]
        elif row[j] != scale:
            return PermutationVerdict(False)
        sigma.append(j)
    if len(set(sigma)) != a.rank:
        return PermutationVerdict(False)
    return PermutationVerdict(True, tuple(sigma), scale)


def find_conjugate_column_pairing(a: ExactMatrix) -> Optional[tuple[int, ...]]:
    """σ with column σ(j) equal to the entrywise conjugate of column j."""
    columns = a.columns()
    index: dict[tuple[Cyclotomic, ...], int] = {}
    for j, col in enumerate(columns):
        if col in index:
            raise AmbiguousPairing(f"columns {index[col]} and {j} are equal")
        index[col] = j
    sigma = []
    for col in columns:
        match = index.get(tuple(x.conj() for x in col))
        if match is None:
            return None
        sigma.append(match)
    return tuple(sigma)
