"""Pass/fail records for identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_FAILED = "hypothesis-failed"
SKIPPED = "skipped"


@dataclass
class IdentityReport:
    """Outcome of checking one identity on one instance.

    ``status`` is ``pass`` or ``fail`` for a checked identity.  Checks with a
    precondition use ``hypothesis-failed``/``skipped`` when the conclusion was
    not asserted; those count as passing since nothing was contradicted.
    ``left``/``right`` hold the two sides on failure (or always, when cheap).
    """

    name: str
    instance: str
    status: str
    left: Any = None
    right: Any = None
    detail: str = ""
    children: list["IdentityReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status != FAIL and all(c.passed for c in self.children)

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def compare(cls, name: str, instance: str, left, right, detail: str = "") -> "IdentityReport":
        ok = left == right
        return cls(name, instance, PASS if ok else FAIL, None if ok else left, None if ok else right, detail)

    @classmethod
    def group(cls, name: str, instance: str, children: Iterable["IdentityReport"]) -> "IdentityReport":
        kids = list(children)
        return cls(name, instance, PASS if all(k.passed for k in kids) else FAIL, children=kids)

    def failures(self) -> list["IdentityReport"]:
        out = []
        if self.status == FAIL:
            out.append(self)
        for c in self.children:
            out.extend(c.failures())
        return out

    def to_json(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "instance": self.instance, "status": self.status}
        if self.left is not None or self.right is not None:
            d["left"] = _jsonable(self.left)
            d["right"] = _jsonable(self.right)
        if self.detail:
            d["detail"] = self.detail
        if self.children:
            d["children"] = [c.to_json() for c in self.children]
        return d


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)
