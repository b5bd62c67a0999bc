"""Distance values: a finite count, a proved infinity, or an undecided result."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class DistanceValue:
    kind: str  # "finite" | "infinite" | "unknown"
    k: int | None = None
    note: str = ""

    @classmethod
    def finite(cls, k: int) -> "DistanceValue":
        if k < 0:
            raise ValueError("distance values are non-negative")
        return cls("finite", int(k))

    @classmethod
    def unknown(cls, note: str) -> "DistanceValue":
        return cls("unknown", None, note)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    @property
    def is_decided(self) -> bool:
        return self.kind != "unknown"

    def _key(self):
        if self.kind == "unknown":
            raise TypeError(f"cannot order an undecided value ({self})")
        return (1, 0) if self.kind == "infinite" else (0, self.k)

    def __lt__(self, other):
        if not isinstance(other, DistanceValue):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self):
        if self.kind == "finite":
            return f"Finite({self.k})"
        if self.kind == "infinite":
            return "inf"
        return f"unknown({self.note})"

    @classmethod
    def parse(cls, text: str) -> "DistanceValue":
        text = text.strip()
        if text == "inf":
            return INFINITE
        if text.startswith("Finite(") and text.endswith(")"):
            return cls.finite(int(text[7:-1]))
        if text.startswith("unknown(") and text.endswith(")"):
            return cls.unknown(text[8:-1])
        return cls.finite(int(text))


INFINITE = DistanceValue("infinite")


def finite(k: int) -> DistanceValue:
    return DistanceValue.finite(k)
