"""Reproduction manifest: run a grid of checks and record the outcomes.

The manifest is JSON with a ``header`` (tool, version, timestamp, per-record
wall times) and a deterministic ``body`` (config and records).  Two runs with
the same config produce byte-identical bodies.
"""

from __future__ import annotations

import datetime
import json
import time
from typing import Any

from . import __version__
from .checks import check_size, run_check
from .errors import OrthInvError
from .solver import default_ceiling

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped(out-of-range)"

G_GRID = [(2, 2), (2, 4), (2, 6), (2, 8), (3, 2), (3, 4), (3, 6), (4, 4), (4, 6), (5, 4), (5, 6)]
H_GRID = [(3, 3), (3, 5), (3, 7), (4, 4), (4, 6), (5, 5)]
F_GRID = [(4, 4), (4, 6)]
CERTIFY_GRID = [("g", 2, 4), ("g", 2, 6), ("g", 2, 8), ("h", 3, 3), ("g", 3, 4),
                ("h", 3, 5), ("g", 4, 6), ("f", 4, 4), ("f", 4, 6)]


def default_grid() -> list[dict[str, Any]]:
    """One entry per acceptance check: ``{"check": kind, "params": {...}}``."""
    grid: list[dict[str, Any]] = []

    def add(kind, **params):
        grid.append({"check": kind, "params": params})

    for n, m in G_GRID:
        add("pfaffian-family", n=n, m=m)
    for n, m in H_GRID:
        add("shuffle-family", n=n, m=m)
    for n, m in F_GRID:
        add("gh-identity", n=n, m=m)
    add("f-construct", n=4, m=4, terms=16)
    add("f-construct", n=4, m=6)
    for n, m in G_GRID:
        add("invariance", family="g", n=n, m=m, group="O", char="two")
        add("invariance", family="tilde-g", n=n, m=m, group="O", char="zero")
    for n, m in H_GRID:
        add("invariance", family="h", n=n, m=m, group="SO", char="two")
        add("invariance", family="tilde-h", n=n, m=m, group="SO", char="zero")
    for n, m in F_GRID:
        add("invariance", family="f", n=n, m=m, group="SO", char="two")
        add("invariance", family="tilde-f", n=n, m=m, group="SO", char="zero")
    add("invariance", family="tilde-h", n=3, m=3, group="O", char="zero",
        expect={"reflection-x1y1": "anti-invariant"})
    for mu in (1, 2, 3):
        add("pfaffian-checkerboard", mu=mu)
    for mu in (1, 2, 3):
        add("pfaffian-doubled", mu=mu)
    for size in (2, 4, 6):
        for seed in (0, 1):
            add("pf-squared-det", size=size, seed=seed)
    for family, n, m in [("h", 3, 3), ("g", 3, 4), ("h", 3, 5), ("h", 5, 5)]:
        add("multiplicity-xy", family=family, n=n, m=m)
    for n, m in [(2, 4), (2, 6), (4, 6)]:
        add("multiplicity-s", n=n, m=m)
    for m in range(1, 6):
        add("lemma-audit", n=3, m=m, group="SO")
    for m in range(1, 9):
        add("lemma-audit", n=2, m=m, group="O")
    for m in range(1, 7):
        add("lemma-audit", n=4, m=m, group="O")
    for family, n, m in CERTIFY_GRID:
        if (family, n, m) == ("g", 2, 4):
            add("certify", family=family, n=n, m=m, dim_decomposable=2)
        else:
            add("certify", family=family, n=n, m=m)
    add("bproduct-relation", n=2, m=4)
    for n, m, group in [(4, 3, "SO"), (2, 3, "SO"), (2, 1, "SO"), (3, 1, "SO"), (4, 1, "SO"), (5, 1, "SO")]:
        add("vanishing", n=n, m=m, group=group)
    for n, m in [(4, 2), (4, 4), (5, 2), (5, 4)]:
        add("bproduct-span", n=n, m=m)
    for n, m in F_GRID:
        add("image", n=n, m=m)
    for n, m in G_GRID:
        add("roundtrip", family="tilde-g", n=n, m=m)
    for n, m in H_GRID:
        add("roundtrip", family="h", n=n, m=m)
    for n, m in F_GRID:
        add("roundtrip", family="tilde-f", n=n, m=m)
    return grid


def _record_id(k: int, entry: dict) -> str:
    params = entry["params"]
    parts = [f"{k:03d}", entry["check"]]
    for key in ("family", "n", "m", "group", "char", "mu", "size", "seed"):
        if key in params:
            parts.append(f"{key}={params[key]}")
    return ":".join(parts)


def run_grid(grid: list[dict[str, Any]], ceiling: int | None = None) -> dict[str, Any]:
    ceiling = default_ceiling() if ceiling is None else ceiling
    records = []
    timing = {}
    for k, entry in enumerate(grid):
        rid = _record_id(k, entry)
        params = dict(entry["params"])
        record: dict[str, Any] = {"id": rid, "check": entry["check"], "inputs": params}
        size = check_size(params)
        start = time.perf_counter()
        if size is not None and size > ceiling:
            record.update(expected=None, observed=f"n**m = {size} exceeds ceiling {ceiling}", status=SKIPPED)
        else:
            try:
                res = run_check(entry["check"], **params)
                record.update(expected=res.expected, observed=res.observed, status=PASS if res.ok else FAIL)
            except OrthInvError as exc:
                record.update(expected=None, observed=f"{type(exc).__name__}: {exc}", status=FAIL)
        timing[rid] = round(time.perf_counter() - start, 6)
        records.append(record)
    return {
        "header": {
            "tool": "orthinv",
            "version": __version__,
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "timing": timing,
        },
        "body": {
            "config": {"ceiling": ceiling, "grid_size": len(grid)},
            "records": records,
        },
    }


def manifest_ok(manifest: dict) -> bool:
    return all(r["status"] != FAIL for r in manifest["body"]["records"])


def _sorted(obj):
    if isinstance(obj, dict):
        return {k: _sorted(obj[k]) for k in sorted(obj)}
    if isinstance(obj, (list, tuple)):
        return [_sorted(v) for v in obj]
    return obj


def dumps(manifest: dict) -> str:
    """Header first, then the body; keys sorted below the top level."""
    ordered = {"header": _sorted(manifest["header"]), "body": _sorted(manifest["body"])}
    return json.dumps(ordered, indent=2, default=str) + "\n"


def body_text(manifest: dict) -> str:
    return json.dumps(manifest["body"], indent=2, sort_keys=True, default=str)


def load_grid(path: str) -> tuple[list[dict[str, Any]], int | None]:
    """Read a custom grid: ``{"ceiling": N?, "checks": [{"check": ..., "params": {...}}]}``."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, list):
        return data, None
    return data.get("checks", []), data.get("ceiling")
