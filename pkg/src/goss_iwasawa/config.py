"""Run configuration shared by the CLI and the verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any

from .algebra import GF, FiniteField, PrimeData
from .errors import ConfigError

# documented default modulus for F_9 = F_3[alpha]/(alpha^2 + 1)
DEFAULT_MODULI = {(3, 2): (1, 0, 1)}

FORMATS = ("table", "json", "csv")


def parse_int_list(text: str | list | tuple | None) -> tuple[int, ...] | None:
    """Parse "0,1" (or a JSON list) into a tuple of ints."""
    if text is None:
        return None
    if isinstance(text, (list, tuple)):
        return tuple(int(c) for c in text)
    try:
        return tuple(int(c) for c in str(text).split(",") if c.strip() != "")
    except ValueError as exc:
        raise ConfigError(f"cannot parse coefficient list {text!r}") from exc


@dataclass
class RunConfig:
    p: int = 3
    e: int = 1
    modulus: tuple[int, ...] | None = None
    prime: tuple[int, ...] | None = None
    level: int = 0
    prec: int | None = None
    xdeg: int | None = None
    ydigits: int | None = None
    format: str = "table"
    threads: int = 1

    @classmethod
    def from_sources(cls, flags: dict[str, Any], config_path: str | None = None) -> "RunConfig":
        """Built-in defaults, overridden by the config file, overridden by flags."""
        values: dict[str, Any] = {}
        if config_path:
            try:
                data = json.loads(Path(config_path).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config file {config_path}: {exc}") from exc
            if not isinstance(data, dict):
                raise ConfigError("config file must contain a JSON object")
            values.update({k.replace("-", "_"): v for k, v in data.items()})
        values.update({k: v for k, v in flags.items() if v is not None})
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        for key in ("modulus", "prime"):
            values[key] = parse_int_list(values.get(key))
        cfg = cls(**values)
        cfg.validate()
        return cfg

    @property
    def explicit_field(self) -> bool:
        return self.prime is not None or self.p != 3 or self.e != 1

    def validate(self) -> None:
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.level < 0:
            raise ConfigError("level must be >= 0")
        for name in ("prec", "xdeg", "ydigits"):
            v = getattr(self, name)
            if v is not None and v < (0 if name == "ydigits" else 1):
                raise ConfigError(f"{name} out of range: {v}")
        self.field()
        if self.prime is not None:
            self.prime_data()
        if self.prec is not None and self.ydigits is not None and self.prec > self.p ** self.ydigits:
            raise ConfigError(f"precision {self.prec} exceeds p^m = {self.p ** self.ydigits}")

    def field(self) -> FiniteField:
        modulus = self.modulus
        if self.e > 1 and modulus is None:
            modulus = DEFAULT_MODULI.get((self.p, self.e))
            if modulus is None:
                raise ConfigError(f"--modulus is required for q = {self.p}^{self.e}")
        return GF(self.p, self.e, modulus if self.e > 1 else None)

    def prime_data(self) -> PrimeData:
        F = self.field()
        coeffs = self.prime if self.prime is not None else (0, 1)
        for c in coeffs:
            if not 0 <= c < F.q:
                raise ConfigError(f"prime coefficient {c} is not an element of F_{F.q}")
        return PrimeData.from_coeffs(F, coeffs)
