"""Result and report records shared by the verification pipelines."""

from __future__ import annotations

import json
import os
import time
from dataclasses import asdict, dataclass, field
from typing import Any

from ..exactalg import Rational, rational_to_str

DEFAULT_MAX_ROWS = 10**6
STATUSES = ("verified", "verified-probabilistic", "falsified", "skipped")


class ResourceLimitError(RuntimeError):
    """Raised when a matrix would exceed the configured row budget."""


def max_rows() -> int:
    raw = os.environ.get("SUPERBRAUER_MAX_ROWS")
    if raw is None:
        return DEFAULT_MAX_ROWS
    try:
        value = int(raw)
    except ValueError:
        raise ResourceLimitError(f"SUPERBRAUER_MAX_ROWS must be an integer, got {raw!r}")
    if value < 0:
        raise ResourceLimitError("SUPERBRAUER_MAX_ROWS must be non-negative")
    return value


def check_budget(rows: int, what: str) -> None:
    limit = max_rows()
    if rows > limit:
        raise ResourceLimitError(f"{what} needs {rows} rows, budget is {limit} (set SUPERBRAUER_MAX_ROWS)")


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return rational_to_str(x)


@dataclass
class KernelResult:
    """A subspace of a coordinate space, given by a basis of dense vectors."""

    setting: dict
    ambient_dim: int
    kernel_basis: list[list[Rational]]
    certificate: str = "exact"

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_basis)

    def to_json_obj(self) -> dict:
        return {
            "setting": _jsonable(self.setting),
            "ambient_dim": self.ambient_dim,
            "kernel_dim": self.kernel_dim,
            "certificate": self.certificate,
            "kernel_basis": _jsonable(self.kernel_basis),
        }


@dataclass
class VerificationReport:
    claim: str
    params: dict
    status: str = "skipped"
    dims: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status in ("verified", "verified-probabilistic")

    def falsify(self, reason: str, witness: Any = None) -> None:
        """Mark as falsified; a concrete witness is mandatory."""
        if witness is None:
            raise ValueError("a falsified report needs a witness")
        self.status = "falsified"
        self.witnesses.setdefault("failures", []).append({"reason": reason, "witness": _jsonable(witness)})

    def to_json_obj(self) -> dict:
        obj = asdict(self)
        obj["params"] = _jsonable(self.params)
        obj["dims"] = _jsonable(self.dims)
        obj["witnesses"] = _jsonable(self.witnesses)
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


class Timer:
    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int(round((time.perf_counter() - self._t0) * 1000))
        return False
