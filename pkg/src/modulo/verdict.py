from __future__ import annotations

from dataclasses import dataclass, field

VERIFIED = "verified"
REFUTED = "refuted"
UNKNOWN = "unknown"

EXIT_CODES = {VERIFIED: 0, REFUTED: 1, UNKNOWN: 2}


@dataclass(frozen=True)
class Issue:
    where: str
    message: str
    definite: bool = True

    def __str__(self):
        tag = "" if self.definite else "(unknown) "
        return f"{self.where}: {tag}{self.message}"


@dataclass
class Verdict:
    """Outcome of a check.  Any definite issue refutes; otherwise any
    inconclusive one leaves the verdict unknown."""

    issues: list[Issue] = field(default_factory=list)

    def fail(self, where: str, message: str):
        self.issues.append(Issue(where, message, True))

    def unknown(self, where: str, message: str):
        self.issues.append(Issue(where, message, False))

    def extend(self, other: Verdict, prefix: str = ""):
        for i in other.issues:
            self.issues.append(Issue(prefix + i.where, i.message, i.definite))

    @property
    def status(self) -> str:
        if any(i.definite for i in self.issues):
            return REFUTED
        if self.issues:
            return UNKNOWN
        return VERIFIED

    @property
    def ok(self) -> bool:
        return not self.issues

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def failures(self, where_prefix: str = "") -> list[Issue]:
        return [i for i in self.issues if i.definite and i.where.startswith(where_prefix)]

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return VERIFIED
        lines = [self.status] + [f"  {i}" for i in self.issues[:20]]
        if len(self.issues) > 20:
            lines.append(f"  ... {len(self.issues) - 20} more")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"status": self.status,
                "issues": [{"where": i.where, "message": i.message, "definite": i.definite} for i in self.issues]}
