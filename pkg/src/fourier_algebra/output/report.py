"""Report assembly and deterministic serialization.

Identical inputs produce byte-identical JSON: keys are sorted, every exact
value is a string in E(n) notation, and nothing time- or host-dependent is
recorded.
"""

import json
import logging
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Optional

import polars as pl
from packaging.version import Version

from fourier_algebra.constants import REPORT_SCHEMA_VERSION, TOOL_NAME, Sections
from fourier_algebra.constants import Verdicts as V
from fourier_algebra.schemas import LedgerModel, empty_ledger

logger = logging.getLogger(__name__)

FAILING_VERDICTS = (V.FAIL, V.COUNTEREXAMPLE)


def tool_version() -> str:
    try:
        return str(Version(version(TOOL_NAME)))
    except PackageNotFoundError:
        return str(Version("0.0.0"))


@dataclass
class Report:
    input_digest: Optional[str] = None
    sections: dict[str, dict[str, Any]] = field(default_factory=dict)
    ledger: pl.DataFrame = field(default_factory=empty_ledger)
    failed: bool = False

    def add_section(self, name: str, payload: dict[str, Any], passed: bool) -> None:
        self.sections[name] = {**payload, "passed": passed}
        if not passed:
            self.failed = True

    def set_ledger(self, rows: list[dict[str, Any]]) -> None:
        frame = pl.DataFrame(rows, schema=empty_ledger().schema) if rows else empty_ledger()
        self.ledger = LedgerModel.validate(frame)
        if self.ledger.filter(pl.col("verdict").is_in(FAILING_VERDICTS)).height:
            self.failed = True

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": REPORT_SCHEMA_VERSION,
            "tool": TOOL_NAME,
            "version": tool_version(),
            "input_digest": self.input_digest,
            "sections": self.sections,
            "ledger": self.ledger.to_dicts(),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent, ensure_ascii=False) + "\n"

    def text_lines(self) -> list[str]:
        lines = []
        ordered = [s for s in Sections.ORDER if s in self.sections]
        ordered += sorted(set(self.sections) - set(ordered))
        for name in ordered:
            payload = self.sections[name]
            lines.append(f"[{name}] {'pass' if payload['passed'] else 'FAIL'}")
            for key in sorted(payload):
                if key != "passed":
                    lines.append(f"  {key}: {_flatten(payload[key])}")
        for row in self.ledger.iter_rows(named=True):
            witness = f" at {row['witness']}" if row["witness"] else ""
            lines.append(f"  {row['section']}/{row['check']}: {row['verdict']}{witness}")
        return lines

    def log(self) -> None:
        for line in self.text_lines():
            logger.info("%s", line)

    def write(self, output: Optional[str], indent: int = 2) -> None:
        """JSON to `output`, or to stdout when no path is given."""
        text = self.to_json(indent)
        if output:
            Path(output).write_text(text)
            logger.info("Wrote report to %s", output)
        else:
            print(text, end="")


def _flatten(value: Any) -> str:
    if isinstance(value, dict):
        return ", ".join(f"{k}={_flatten(v)}" for k, v in sorted(value.items()))
    if isinstance(value, list):
        return "[" + ", ".join(_flatten(v) for v in value) + "]"
    return str(value)
