"""
Constants defined in one place for reuse.
"""


class Verdicts:
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"
    VACUOUS = "vacuous"
    HOLDS = "holds"
    COUNTEREXAMPLE = "counterexample"
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"


class Forms:
    """Matrix document forms accepted on input."""

    S = "S"
    SMALL_S = "s"
    P = "P"
    LAMBDA = "lambda-table"
    DEGREES = "degrees"
    T = "T"

    ALL = (S, SMALL_S, P, LAMBDA, DEGREES, T)


class Hypotheses:
    HOMOGENEOUS = "homogeneous"
    PRIME_ORDER = "prime_order"
    NEITHER = "neither"


class Axioms:
    """Verdict names used in AxiomReport."""

    # Fourier / modular datum
    UNITARY = "unitary"
    SYMMETRIC = "symmetric"
    T_DIAGONAL = "T_diagonal"
    T_FINITE_ORDER = "T_finite_order"
    FIRST_COLUMN_POSITIVE = "first_column_positive"
    MODULAR_RELATION = "ST_cubed_equals_S_squared"
    INTEGRAL_N = "integral_N"
    NONNEGATIVE_N = "nonnegative_N"

    # C-algebra
    INVOLUTION_CLOSED = "involution_closed"
    REAL_CONSTANTS = "real_constants"
    IDENTITY_SUPPORT = "identity_support"
    IDENTITY_POSITIVE = "identity_positive"
    DEGREE_POSITIVE = "degree_positive"
    DEGREE_HOMOMORPHISM = "degree_homomorphism"
    STANDARD_BASIS = "standard_basis"
    COMMUTATIVE = "commutative"
    ASSOCIATIVE = "associative"


class Sections:
    """Report section names, in output order."""

    FOURIER = "fourier_axioms"
    MODULAR = "modular_axioms"
    CALGEBRA = "calgebra_axioms"
    DUALITY = "duality"
    INTEGRALITY = "integrality"
    SQUARE_ORDER = "square_order"
    SCREEN = "screen"
    HOMOGENEITY = "homogeneity"
    CLASSIFICATION = "classification"
    PROPERTIES = "properties"

    ORDER = (
        FOURIER,
        MODULAR,
        CALGEBRA,
        DUALITY,
        INTEGRALITY,
        SQUARE_ORDER,
        SCREEN,
        HOMOGENEITY,
        CLASSIFICATION,
        PROPERTIES,
    )


REPORT_SCHEMA_VERSION = 1
TOOL_NAME = "fourier-algebra"
