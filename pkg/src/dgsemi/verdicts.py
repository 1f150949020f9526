"""Three-valued verdicts and the degree windows they are certified on."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TrustWindow:
    """Closed integer interval; ``None`` marks an infinite end."""

    lo: int | None = None
    hi: int | None = None

    def __contains__(self, i: int) -> bool:
        return (self.lo is None or i >= self.lo) and (self.hi is None or i <= self.hi)

    def intersect(self, other: "TrustWindow") -> "TrustWindow":
        lo = _max_opt(self.lo, other.lo)
        hi = _min_opt(self.hi, other.hi)
        return TrustWindow(lo, hi)

    @property
    def is_empty(self) -> bool:
        return self.lo is not None and self.hi is not None and self.lo > self.hi

    def clip(self, lo: int, hi: int) -> range:
        """Degrees of the window inside the finite range ``[lo, hi]``."""
        a = lo if self.lo is None else max(lo, self.lo)
        b = hi if self.hi is None else min(hi, self.hi)
        return range(a, b + 1)

    def as_list(self) -> list:
        return [self.lo, self.hi]

    def __str__(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        return f"[{lo}, {hi}]"


EVERYWHERE = TrustWindow()


def _max_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass
class VerdictReport:
    check: str
    verdict: str
    window: TrustWindow = EVERYWHERE
    reason: str = ""
    witnesses: dict[str, Any] = field(default_factory=dict)
    parameters: dict[str, Any] = field(default_factory=dict)
    seconds: float | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict == FAILS

    @property
    def inconclusive(self) -> bool:
        return self.verdict == INCONCLUSIVE

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "window": self.window.as_list(),
            "reason": self.reason,
            "witnesses": _jsonable(self.witnesses),
            "parameters": _jsonable(self.parameters),
            "seconds": self.seconds,
        }

    def __str__(self) -> str:
        tail = f" ({self.reason})" if self.reason else ""
        return f"{self.check}: {self.verdict} on {self.window}{tail}"


def holds(check: str, **kw) -> VerdictReport:
    return VerdictReport(check, HOLDS, **kw)


def fails(check: str, reason: str, **kw) -> VerdictReport:
    return VerdictReport(check, FAILS, reason=reason, **kw)


def inconclusive(check: str, reason: str, **kw) -> VerdictReport:
    return VerdictReport(check, INCONCLUSIVE, reason=reason, **kw)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, TrustWindow):
        return x.as_list()
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)
