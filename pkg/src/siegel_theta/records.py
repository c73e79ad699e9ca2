"""Pass/fail records shared by the check suites and the CLI."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class CheckCase:
    """One numerical identity check.

    ``tag`` names the identity (see the identity table in the README);
    ``residual`` is compared with ``tolerance`` using ``<=``.
    """

    id: str
    tag: str
    residual: float
    tolerance: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.residual) and self.residual <= self.tolerance)

    def as_record(self) -> dict:
        return {
            "id": self.id,
            "paper_ref": self.tag,
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
        }


@dataclass(frozen=True)
class ResidualReport:
    name: str
    cases: tuple = field(default_factory=tuple)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.cases), default=0.0)

    def case(self, case_id: str) -> CheckCase:
        for c in self.cases:
            if c.id == case_id:
                return c
        raise KeyError(case_id)

    def as_dict(self) -> dict:
        return {"name": self.name, "cases": [asdict(c) | {"pass": c.passed} for c in self.cases]}


def rel(a, b) -> float:
    """``|a - b| / |b|`` with ``|a|`` when ``b`` is zero."""
    a, b = complex(a), complex(b)
    return abs(a - b) / abs(b) if b != 0 else abs(a)
