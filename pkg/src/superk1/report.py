"""Claim records shared by the verification pipeline and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__

SCHEMA_VERSION = 1


def _encode(obj):
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class Claim:
    id: str
    anchor: str
    status: str  # pass | fail | skipped
    witness: object = None
    seconds: float = 0.0

    def to_json(self):
        return {"id": self.id, "anchor": self.anchor, "status": self.status, "witness": self.witness}


@dataclass
class Report:
    params: dict
    claims: list = field(default_factory=list)

    def add(self, claim):
        if any(c.id == claim.id for c in self.claims):
            raise ValueError(f"duplicate claim {claim.id}")
        self.claims.append(claim)
        return claim

    @property
    def passed(self):
        return all(c.status != "fail" for c in self.claims)

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def claim(self, cid):
        return next(c for c in self.claims if c.id == cid)

    def to_json(self):
        # timings are left out on purpose so that reruns are byte-identical
        return {"schema": SCHEMA_VERSION, "tool": "superk1", "version": __version__,
                "params": self.params, "claims": [c.to_json() for c in sorted(self.claims, key=lambda c: c.id)]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=True, default=_encode) + "\n"

    def to_text(self):
        lines = [f"superk1 {__version__}  " + "  ".join(f"{k}={v}" for k, v in sorted(self.params.items()))]
        width = max((len(c.id) for c in self.claims), default=0)
        for c in sorted(self.claims, key=lambda c: c.id):
            lines.append(f"  {c.id:<{width}}  {c.status.upper():<7}  {c.seconds:7.3f}s  {c.anchor}")
        lines.append("OVERALL: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"
