"""Validation reports with capped witness lists."""

from __future__ import annotations

from dataclasses import dataclass, field

DEFAULT_WITNESS_CAP = 16


@dataclass
class ValidationReport:
    """Outcome of an exhaustive check suite.

    ``witnesses`` maps a check name to at most ``cap`` violating tuples;
    ``counts`` keeps the full violation count per check so a capped list is
    never mistaken for the whole story. An empty report means every check
    passed.
    """

    cap: int = DEFAULT_WITNESS_CAP
    witnesses: dict[str, list[tuple]] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    # set when a law that provably follows from already-passing checks fails;
    # that combination indicates a bug in this package, not in the input
    internal_inconsistency: bool = False

    @property
    def ok(self) -> bool:
        return not self.counts

    def add(self, check: str, witness: tuple) -> None:
        self.counts[check] = self.counts.get(check, 0) + 1
        bucket = self.witnesses.setdefault(check, [])
        if len(bucket) < self.cap:
            bucket.append(tuple(witness))

    def add_many(self, check: str, witnesses, total: int | None = None) -> None:
        """Record a batch of witnesses; ``total`` overrides the count when the
        batch itself was already truncated."""
        witnesses = [tuple(w) for w in witnesses]
        n = total if total is not None else len(witnesses)
        if n == 0:
            return
        self.counts[check] = self.counts.get(check, 0) + n
        bucket = self.witnesses.setdefault(check, [])
        bucket.extend(witnesses[: self.cap - len(bucket)])

    def merge(self, other: "ValidationReport", prefix: str = "") -> None:
        for check, n in other.counts.items():
            name = prefix + check
            self.counts[name] = self.counts.get(name, 0) + n
            bucket = self.witnesses.setdefault(name, [])
            extra = other.witnesses.get(check, [])
            bucket.extend(extra[: self.cap - len(bucket)])
        self.internal_inconsistency |= other.internal_inconsistency

    def summary(self) -> str:
        if self.ok:
            return "valid (no violations)"
        lines = []
        for check in sorted(self.counts):
            shown = self.witnesses.get(check, [])
            lines.append(f"{check}: {self.counts[check]} violation(s), e.g. "
                         + "; ".join(map(str, shown[:4])))
        if self.internal_inconsistency:
            lines.append("INTERNAL INCONSISTENCY: a derived law failed while "
                         "the defining axioms passed")
        return "\n".join(lines)

    def to_jsonable(self) -> dict:
        return {
            "ok": self.ok,
            "counts": dict(sorted(self.counts.items())),
            "witnesses": {k: [list(w) for w in v]
                          for k, v in sorted(self.witnesses.items())},
            "internal_inconsistency": self.internal_inconsistency,
        }


class PropertyReport(ValidationReport):
    """Per-law report for derived property suites (same shape, clearer name)."""

    def law_ok(self, law: str) -> bool:
        return law not in self.counts
