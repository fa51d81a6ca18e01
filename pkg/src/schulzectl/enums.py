from __future__ import annotations

from enum import Enum


class Goal(str, Enum):
    CONSTRUCTIVE = "constructive"
    DESTRUCTIVE = "destructive"

    @classmethod
    def parse(cls, value: "str | Goal") -> "Goal":
        if isinstance(value, Goal):
            return value
        v = value.lower()
        if v in ("c", "cc", "constructive"):
            return cls.CONSTRUCTIVE
        if v in ("d", "dc", "destructive"):
            return cls.DESTRUCTIVE
        raise ValueError(f"unknown goal {value!r}")


class WinnerModel(str, Enum):
    NONUNIQUE = "nonunique"
    UNIQUE = "unique"


class TieModel(str, Enum):
    """Subelection survival: TE keeps only a unique winner, TP keeps all winners."""

    TE = "te"
    TP = "tp"

    @classmethod
    def parse(cls, value: "str | TieModel") -> "TieModel":
        if isinstance(value, TieModel):
            return value
        return cls(value.lower())
