"""Report container and JSON/CSV rendering."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

from . import __version__

PASS, FAIL, FINDING = "pass", "fail", "finding"


def decimal_string(x: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def encode(value):
    """JSON-ready form; non-integral rationals become {num, den, decimal}."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, float)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return {"num": str(value.numerator), "den": str(value.denominator),
                "decimal": decimal_string(value)}
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return str(value)


def rational_field(x: Fraction) -> dict:
    """Always-structured rational, also for integers."""
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator), "decimal": decimal_string(x)}


@dataclass
class Check:
    name: str
    status: str
    lhs: object = None
    rhs: object = None
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "lhs": encode(self.lhs),
                "rhs": encode(self.rhs), "detail": self.detail}


def check(name: str, ok: bool, lhs=None, rhs=None, detail: str = "") -> Check:
    return Check(name, PASS if ok else FAIL, lhs, rhs, detail)


@dataclass
class Report:
    command: str
    params: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    version: str = __version__

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for c in self.checks)

    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "params": encode(self.params),
            "rows": [encode(r) for r in self.rows],
            "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.name)],
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_csv(self) -> str:
        """Rows only; nested values are JSON-encoded into their cell."""
        buf = io.StringIO()
        rows = [encode(r) for r in self.rows]
        if not rows:
            return ""
        fields: list[str] = []
        for r in rows:
            for key in r:
                if key not in fields:
                    fields.append(key)
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (json.dumps(v) if isinstance(v, (dict, list)) else v)
                             for k, v in r.items()})
        return buf.getvalue()
