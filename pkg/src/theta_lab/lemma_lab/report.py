"""The report every verifier returns."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

VERIFY_TOL = 1e-9


def _clean(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if hasattr(v, "item"):
        return _clean(v.item())
    return v


@dataclass
class LemmaReport:
    """Outcome of one verifier run.

    ``max_potential`` is the largest value of the bounding potential over
    the grid, in normalized units.  Each entry of ``checks`` maps a name to
    ``(value, limit)``; the run passes when the potential and every check
    are within their limits.
    """

    lemma_id: str
    K_tested: Optional[float]
    max_potential: float
    argmax_params: dict
    grid_resolution: int
    frame: str = ""
    threshold: Optional[float] = None
    checks: dict[str, tuple[float, float]] = field(default_factory=dict)
    samples: int = 0
    role: str = "main"
    note: str = ""

    @property
    def passed(self) -> bool:
        if not self.max_potential <= VERIFY_TOL:
            return False
        return all(v <= lim for v, lim in self.checks.values())

    @property
    def expected(self) -> bool:
        return self.role == "main"

    @property
    def ok(self) -> bool:
        """Main runs must pass and negative controls must fail."""
        return self.passed == self.expected

    def failed_checks(self) -> list[str]:
        return [k for k, (v, lim) in self.checks.items() if not v <= lim]

    def to_dict(self) -> dict:
        return _clean(
            {
                "lemma_id": self.lemma_id,
                "role": self.role,
                "K_tested": self.K_tested,
                "threshold": self.threshold,
                "max_potential": self.max_potential,
                "argmax_params": self.argmax_params,
                "grid_resolution": self.grid_resolution,
                "frame": self.frame,
                "samples": self.samples,
                "checks": {k: {"value": v, "limit": lim} for k, (v, lim) in self.checks.items()},
                "pass": self.passed,
                "ok": self.ok,
                "note": self.note,
            }
        )
