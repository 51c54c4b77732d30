from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import yaml

from fourier_algebra.math.interval import PrecisionPolicy


@dataclass(frozen=False)
class CheckConfig:
    start_precision_bits: int = 128
    max_precision_bits: int = 4096
    strict_nonnegative: bool = False
    json_indent: int = 2
    ledger: Optional[list[str]] = None

    @property
    def precision(self) -> PrecisionPolicy:
        return PrecisionPolicy(self.start_precision_bits, self.max_precision_bits)


def load_config(path: str | Path) -> CheckConfig:
    data = yaml.safe_load(Path(path).read_text()) or {}
    unknown = set(data) - {f.name for f in fields(CheckConfig)}
    if unknown:
        raise ValueError(f"Unknown config keys: {sorted(unknown)}")
    config = CheckConfig(**data)
    if config.start_precision_bits > config.max_precision_bits:
        raise ValueError(
            f"start_precision_bits ({config.start_precision_bits}) exceeds "
            f"max_precision_bits ({config.max_precision_bits})"
        )
    return config


def resolve_config(
    path: str | Path | None,
    max_precision_bits: int | None = None,
    strict_nonnegative: bool = False,
) -> CheckConfig:
    """Priority: CLI flag > config file > dataclass default."""
    config = load_config(path) if path else CheckConfig()
    if max_precision_bits is not None:
        config.max_precision_bits = max_precision_bits
        config.start_precision_bits = min(
            config.start_precision_bits, max_precision_bits
        )
    if strict_nonnegative:
        config.strict_nonnegative = True
    return config
