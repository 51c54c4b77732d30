"""Frame schemas for report and export boundaries."""

import pandera.polars as pa
import polars as pl
from pandera.api.polars.model_config import BaseConfig

from fourier_algebra.constants import Verdicts as V

LEDGER_VERDICTS = (V.PASS, V.FAIL, V.NOT_APPLICABLE, V.VACUOUS, V.COUNTEREXAMPLE)


class _OrderedModel(pa.DataFrameModel):
    """Base model that coerces column order to match schema.

    See https://github.com/unionai-oss/pandera/issues/1317
    """

    class Config(BaseConfig):
        strict = False
        ordered = True

    @classmethod
    def validate(cls, check_obj, *args, **kwargs):
        """Reorder schema columns to front, preserve extra columns, then validate."""
        schema_cols = list(cls.to_schema().columns.keys())
        all_cols = check_obj.collect_schema().names()
        extra_cols = [c for c in all_cols if c not in schema_cols]
        check_obj = check_obj.select(*schema_cols, *extra_cols)
        return super().validate(check_obj, *args, **kwargs)


class LedgerModel(_OrderedModel):
    """One row per theorem check exercised by check-all."""

    section: str
    check: str
    statement: str
    verdict: str = pa.Field(isin=list(LEDGER_VERDICTS))
    witness: str = pa.Field(nullable=True)


class ConstantsModel(_OrderedModel):
    """Long-format structure constants, values printed in E(n) notation."""

    i: int = pa.Field(ge=0, coerce=True)
    j: int = pa.Field(ge=0, coerce=True)
    k: int = pa.Field(ge=0, coerce=True)
    N: str
    lambda_: str = pa.Field(alias="lambda")


def empty_ledger() -> pl.DataFrame:
    return pl.DataFrame(
        schema={
            "section": pl.String,
            "check": pl.String,
            "statement": pl.String,
            "verdict": pl.String,
            "witness": pl.String,
        }
    )
