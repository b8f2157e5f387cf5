"""Query-metered access to a hidden set system.

The oracle is the only path by which a covert algorithm may learn the
instance: the number of elements and sets is free knowledge, everything
else costs exactly one ledger increment per call. Repeated identical
queries are charged again; callers that want caching must build their own.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO

from .setsystem import SetSystem

KINDS = ("hitting", "set", "layered")


@dataclass
class QueryLedger:
    """Monotone query counters plus a per-phase breakdown."""

    hitting_queries: int = 0
    set_queries: int = 0
    layered_queries: int = 0
    phase_counts: dict[str, dict[str, int]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return self.hitting_queries + self.set_queries + self.layered_queries

    def record(self, kind: str, phase: str) -> None:
        if kind == "hitting":
            self.hitting_queries += 1
        elif kind == "set":
            self.set_queries += 1
        elif kind == "layered":
            self.layered_queries += 1
        else:
            raise ValueError(f"unknown query kind {kind!r}")
        bucket = self.phase_counts.setdefault(
            phase, {"hitting": 0, "set": 0, "layered": 0}
        )
        bucket[kind] += 1

    def snapshot(self) -> "QueryLedger":
        """Value copy, detached from future updates."""
        return QueryLedger(
            hitting_queries=self.hitting_queries,
            set_queries=self.set_queries,
            layered_queries=self.layered_queries,
            phase_counts={k: dict(v) for k, v in self.phase_counts.items()},
        )

    def delta_since(self, earlier: "QueryLedger") -> dict[str, int]:
        return {
            "hitting": self.hitting_queries - earlier.hitting_queries,
            "set": self.set_queries - earlier.set_queries,
            "layered": self.layered_queries - earlier.layered_queries,
        }

    def to_json_dict(self) -> dict:
        return {
            "hitting_queries": self.hitting_queries,
            "set_queries": self.set_queries,
            "layered_queries": self.layered_queries,
            "total": self.total,
            "phases": {k: dict(v) for k, v in sorted(self.phase_counts.items())},
        }


class CovertOracle:
    """Answers hitting-set and set-content queries about a hidden instance.

    Algorithms should treat the hidden system as unreachable except through
    :meth:`hitting_query` and :meth:`set_query`; tests audit that covert
    runs only ever use set indices that appeared in some logged answer.

    ``log_stream``, when given, receives one JSON line per query:
    {"kind": "hit"|"set", "arg": id, "answer": [...], "phase": label}.
    """

    def __init__(self, hidden: SetSystem, log_stream: IO[str] | None = None):
        self._hidden = hidden
        self.ledger = QueryLedger()
        self._phase = "init"
        self._log = log_stream

    @property
    def n_elements(self) -> int:
        """Universe size; free knowledge, not charged."""
        return self._hidden.universe_size

    @property
    def n_sets(self) -> int:
        """Family size; free knowledge, not charged."""
        return self._hidden.n_sets

    def mark_phase(self, label: str) -> None:
        """Attribute subsequent query counts to ``label``."""
        self._phase = label

    def hitting_query(self, e: int) -> tuple[int, ...]:
        """All set indices containing element ``e``. Charges one hitting query."""
        if not 1 <= e <= self._hidden.universe_size:
            raise ValueError(
                f"element {e} outside [1, {self._hidden.universe_size}]"
            )
        self.ledger.record("hitting", self._phase)
        answer = tuple(sorted(self._hidden.sets_containing(e)))
        self._emit("hit", e, answer)
        return answer

    def set_query(self, s: int) -> tuple[int, ...]:
        """All elements of set ``s``. Charges one set query."""
        if not 1 <= s <= self._hidden.n_sets:
            raise ValueError(f"set index {s} outside [1, {self._hidden.n_sets}]")
        self.ledger.record("set", self._phase)
        answer = tuple(sorted(self._hidden.members(s)))
        self._emit("set", s, answer)
        return answer

    def ledger_snapshot(self) -> QueryLedger:
        return self.ledger.snapshot()

    def _emit(self, kind: str, arg: int, answer: tuple[int, ...]) -> None:
        if self._log is not None:
            self._log.write(
                json.dumps(
                    {"kind": kind, "arg": arg, "answer": list(answer), "phase": self._phase}
                )
                + "\n"
            )
