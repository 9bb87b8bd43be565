"""JSON formats for instances, allocations and reports.

Rationals are written as bare integers or ``"p/q"`` strings in lowest terms.
Item and agent numbers in files are 1-indexed, matching how results are
presented to people.
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction
from typing import Any

from .contiguous import FractionalAllocation
from .fairness import FairnessReport
from .model import Allocation, Instance, to_rational


class FormatError(ValueError):
    """A file does not match the expected JSON layout."""


def rational_to_json(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def instance_to_json(inst: Instance) -> dict[str, Any]:
    doc = {
        "agents": inst.n,
        "items": inst.m,
        "utilities": [[rational_to_json(u) for u in row] for row in inst.utilities],
    }
    if inst.names:
        doc["names"] = inst.names
    return doc


def instance_from_json(doc: Any) -> Instance:
    if not isinstance(doc, dict) or "utilities" not in doc:
        raise FormatError("instance must be an object with a 'utilities' matrix")
    rows = doc["utilities"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError("'utilities' must be a list of rows")
    n = doc.get("agents", len(rows))
    m = doc.get("items", len(rows[0]) if rows else 0)
    if n != len(rows) or any(len(r) != m for r in rows):
        raise FormatError(f"'utilities' must be {n}x{m}")
    try:
        for r in rows:
            for u in r:
                if isinstance(u, float):
                    raise FormatError(f"floats are not allowed, write {u!r} as \"p/q\"")
        return Instance(rows, names=doc.get("names"), m=m)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from None


def allocation_to_json(alloc: Allocation, m: int | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"bundles": [sorted(o + 1 for o in b) for b in alloc]}
    if m is not None:
        doc["complete"] = alloc.is_complete(m)
    return doc


def allocation_from_json(doc: Any) -> Allocation:
    if not isinstance(doc, dict) or not isinstance(doc.get("bundles"), list):
        raise FormatError("allocation must be an object with a 'bundles' list")
    bundles = []
    for b in doc["bundles"]:
        if not isinstance(b, list) or not all(isinstance(o, int) and not isinstance(o, bool) for o in b):
            raise FormatError("each bundle must be a list of item numbers")
        if any(o < 1 for o in b):
            raise FormatError("item numbers are 1-indexed")
        bundles.append([o - 1 for o in b])
    try:
        return Allocation(bundles)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def fractional_to_json(frac: FractionalAllocation) -> dict[str, Any]:
    return {
        "intervals": [None if iv is None else [rational_to_json(iv[0]), rational_to_json(iv[1])]
                      for iv in frac.intervals],
        "order": [i + 1 for i in frac.order],
    }


def fractional_from_json(doc: Any, m: int) -> FractionalAllocation:
    intervals = tuple(None if iv is None else (to_rational(iv[0]), to_rational(iv[1]))
                      for iv in doc["intervals"])
    return FractionalAllocation(m, intervals, tuple(i - 1 for i in doc.get("order", [])))


def report_to_json(report: FairnessReport) -> dict[str, Any]:
    doc: dict[str, Any] = {"property": str(report.property), "holds": report.holds}
    if report.witnesses:
        out = []
        for key, val in sorted(report.witnesses.items(), key=lambda kv: str(kv[0])):
            if isinstance(key, tuple):
                out.append({"agent": key[0] + 1, "other": key[1] + 1, "item": val + 1})
            else:
                clause, item = val
                out.append({"agent": key + 1, "clause": clause, "item": None if item is None else item + 1})
        doc["witnesses"] = out
    if report.violation is not None:
        v = report.violation
        if len(v) == 1:
            doc["violation"] = {"agent": v[0] + 1}
        elif len(v) == 2:
            doc["violation"] = {"agent": v[0] + 1, "other": v[1] + 1}
        else:
            doc["violation"] = {"agent": v[0] + 1, "other": v[1] + 1, "item": v[2] + 1}
    if report.dominating is not None:
        doc["dominating"] = allocation_to_json(report.dominating)["bundles"]
    return doc


def read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def write_json(doc: Any, path: str = "-") -> None:
    text = json.dumps(doc, indent=2)
    if path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def load_instance(path: str) -> Instance:
    return instance_from_json(read_json(path))


def load_allocation(path: str) -> Allocation:
    return allocation_from_json(read_json(path))
