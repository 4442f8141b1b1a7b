"""Parameter scans over height grids.

Deterministic by construction: cells are enumerated in row-major index
order, the CSV and certificate files are regenerated in index order after
all cells finish, floats use one fixed format, and neither artifact contains
a timestamp. Reruns with the same config produce byte-identical CSV and
certificate files. The manifest is different on purpose: an append-only
JSONL journal written as cells complete, which is what makes --resume work;
its line order is not part of the deterministic surface.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ConstraintViolation, SawlabError
from .explore import Budgets, classify
from .family import Shape, StuntedSawtoothMap, validate_heights
from .rational import Rat, format_rat, parse_rat

FLOAT_FMT = "{:.12g}"


@dataclass(frozen=True)
class ScanConfig:
    shape: Shape
    cells: tuple[tuple[Rat, ...], ...]
    budgets: Budgets
    csv_path: str
    manifest_path: str
    certificates_path: str | None

    @staticmethod
    def from_json(obj: dict) -> "ScanConfig":
        try:
            shape = Shape.from_string(obj["shape"])
            grid = obj["grid"]
            kind = grid["kind"]
            if kind == "line":
                start = [parse_rat(x) for x in grid["start"]]
                stop = [parse_rat(x) for x in grid["stop"]]
                steps = int(grid["steps"])
                if len(start) != shape.d or len(stop) != shape.d:
                    raise ConstraintViolation("grid endpoints must match the shape arity")
                if steps < 1:
                    raise ConstraintViolation("steps must be positive")
                cells = []
                for i in range(steps):
                    t = Fraction(i, steps - 1) if steps > 1 else Fraction(0)
                    cells.append(
                        tuple(a + (b - a) * t for a, b in zip(start, stop))
                    )
            elif kind == "product":
                axes = [[parse_rat(x) for x in axis] for axis in grid["axes"]]
                if len(axes) != shape.d:
                    raise ConstraintViolation("need one axis per turning point")
                cells = [()]
                for axis in axes:
                    cells = [c + (v,) for c in cells for v in axis]
            else:
                raise ConstraintViolation(f"unknown grid kind {kind!r}")
            out = obj["output"]
            return ScanConfig(
                shape=shape,
                cells=tuple(tuple(c) for c in cells),
                budgets=Budgets.from_json(obj.get("budgets", {})),
                csv_path=out["csv"],
                manifest_path=out["manifest"],
                certificates_path=out.get("certificates"),
            )
        except KeyError as e:
            raise ConstraintViolation(f"scan config missing key {e}") from e

    @staticmethod
    def load(path: str) -> "ScanConfig":
        with open(path) as fh:
            return ScanConfig.from_json(json.load(fh))


CSV_FIELDS = (
    "index",
    "w",
    "verdict",
    "label",
    "entropy",
    "max_period",
    "tower_depth",
    "homoclinic",
    "reason",
)


def _classify_cell(args) -> dict:
    """Worker: one cell to a manifest entry. Must stay picklable/top-level."""
    index, shape_word, w_strs, budgets_json, want_record = args
    shape = Shape.from_string(shape_word)
    w = tuple(parse_rat(x) for x in w_strs)
    entry: dict = {"index": index, "w": [format_rat(x) for x in w]}
    try:
        validate_heights(shape, w)
    except ConstraintViolation as e:
        entry["row"] = {
            "verdict": "Skipped",
            "label": "Skipped",
            "entropy": "",
            "max_period": "",
            "tower_depth": "",
            "homoclinic": "",
            "reason": str(e),
        }
        entry["record"] = None
        return entry
    record = classify(StuntedSawtoothMap(shape, w), Budgets.from_json(budgets_json))
    detail = record.detail
    row = {
        "verdict": record.verdict,
        "label": record.label,
        "entropy": FLOAT_FMT.format(record.entropy.value) if record.entropy else "",
        "max_period": str(detail.get("max_period", "")),
        "tower_depth": str(detail.get("tower_depth", "")),
        "homoclinic": {True: "yes", False: "no"}.get(detail.get("homoclinic_found"), ""),
        "reason": "; ".join(record.notes),
    }
    entry["row"] = row
    entry["record"] = record.to_json() if want_record else None
    return entry


@dataclass(frozen=True)
class ScanSummary:
    cells: int
    computed: int
    resumed: int
    verdict_counts: dict
    csv_path: str
    manifest_path: str
    certificates_path: str | None

    def to_json(self) -> dict:
        return {
            "cells": self.cells,
            "computed": self.computed,
            "resumed": self.resumed,
            "verdict_counts": self.verdict_counts,
            "csv": self.csv_path,
            "manifest": self.manifest_path,
            "certificates": self.certificates_path,
        }


def run_scan(config: ScanConfig, resume: bool = False, workers: int = 0) -> ScanSummary:
    done: dict[int, dict] = {}
    manifest = Path(config.manifest_path)
    if resume and manifest.exists():
        with manifest.open() as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                entry = json.loads(line)
                done[entry["index"]] = entry
    elif manifest.exists():
        manifest.unlink()

    want_record = config.certificates_path is not None
    todo = [
        (
            i,
            config.shape.to_string(),
            [format_rat(x) for x in cell],
            config.budgets.to_json(),
            want_record,
        )
        for i, cell in enumerate(config.cells)
        if i not in done
    ]
    manifest.parent.mkdir(parents=True, exist_ok=True)
    computed = 0
    with manifest.open("a") as journal:
        if workers and workers > 1 and todo:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for entry in pool.map(_classify_cell, todo):
                    done[entry["index"]] = entry
                    journal.write(json.dumps(entry, sort_keys=True) + "\n")
                    journal.flush()
                    computed += 1
        else:
            for args in todo:
                entry = _classify_cell(args)
                done[entry["index"]] = entry
                journal.write(json.dumps(entry, sort_keys=True) + "\n")
                journal.flush()
                computed += 1

    ordered = [done[i] for i in range(len(config.cells))]
    csv_path = Path(config.csv_path)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    with csv_path.open("w", newline="") as fh:
        fh.write(",".join(CSV_FIELDS) + "\n")
        for entry in ordered:
            row = entry["row"]
            cells = [
                str(entry["index"]),
                ";".join(entry["w"]),
                row["verdict"],
                row["label"],
                row["entropy"],
                row["max_period"],
                row["tower_depth"],
                row["homoclinic"],
                row["reason"].replace(",", ";"),
            ]
            fh.write(",".join(cells) + "\n")

    if config.certificates_path is not None:
        cert_path = Path(config.certificates_path)
        cert_path.parent.mkdir(parents=True, exist_ok=True)
        with cert_path.open("w") as fh:
            for entry in ordered:
                fh.write(
                    json.dumps(
                        {"index": entry["index"], "record": entry["record"]},
                        sort_keys=True,
                    )
                    + "\n"
                )

    counts: dict[str, int] = {}
    for entry in ordered:
        v = entry["row"]["verdict"]
        counts[v] = counts.get(v, 0) + 1
    return ScanSummary(
        cells=len(config.cells),
        computed=computed,
        resumed=len(config.cells) - computed,
        verdict_counts=counts,
        csv_path=str(csv_path),
        manifest_path=str(manifest),
        certificates_path=config.certificates_path,
    )
