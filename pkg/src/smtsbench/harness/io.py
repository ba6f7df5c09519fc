"""Persistence: dataset CSV + JSON sidecar, binary dissimilarity matrices,
result records, partitions, and the run manifest."""

from __future__ import annotations

import csv
import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .. import __version__
from ..core import N_SAMPLES, LabeledDataset
from ..errors import InvariantViolation, ParseError
from .config import ExperimentConfig

MATRIX_MAGIC = b"SMTSMAT\x01"  # 8-byte header of the binary matrix format
RESULT_HEADER = ("scenario", "dataset_index", "method_id", "params", "metric", "value")
_FLOAT_FMT = "%.12g"  # fixed so reruns are byte-identical


@dataclass(frozen=True)
class ResultRecord:
    scenario: str
    dataset_index: int
    method_id: str
    params: str
    metric: str
    value: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.value):
            raise InvariantViolation(f"non-finite value for {self.method_id}/{self.metric}")
        base = self.metric.split("_cluster_")[0]
        if self.metric not in ("ARI", "AMI", "NVD1m", "PSI", "acc_overall") and base != "acc":
            raise InvariantViolation(f"metric {self.metric!r} outside the closed set")


def write_dataset_csv(path: str | Path, dataset: LabeledDataset) -> None:
    """CSV with header id,label,v0..v47 plus a .json metadata sidecar."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "label"] + [f"v{i}" for i in range(N_SAMPLES)])
        for i, (label, row) in enumerate(zip(dataset.labels, dataset.series)):
            writer.writerow([i, int(label)] + [_FLOAT_FMT % v for v in row])
    sidecar = path.with_suffix(".json")
    sidecar.write_text(json.dumps(dataset.meta, sort_keys=True, indent=1))


def load_labeled_csv(path: str | Path) -> LabeledDataset:
    """Read the dataset CSV format back, validating every row."""
    path = Path(path)
    rows = []
    labels = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        expected = ["id", "label"] + [f"v{i}" for i in range(N_SAMPLES)]
        if header != expected:
            raise ParseError(f"{path}: bad header; expected id,label,v0..v{N_SAMPLES - 1}")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(expected):
                raise ParseError(f"{path}: row {lineno} has {len(row)} fields, expected {len(expected)}")
            try:
                labels.append(int(row[1]))
                rows.append([float(v) for v in row[2:]])
            except ValueError as exc:
                raise ParseError(f"{path}: row {lineno}: {exc}") from exc
    sidecar = path.with_suffix(".json")
    meta = json.loads(sidecar.read_text()) if sidecar.exists() else {"scenario": "unknown", "k": None}
    if meta.get("k") is None:
        present = sorted({lab for lab in labels if lab >= 0})
        meta["k"] = len(present)
    series = np.asarray(rows, dtype=np.float64)
    dataset = LabeledDataset(series=series, labels=np.asarray(labels, dtype=np.int64), meta=meta)
    dataset.validate()
    return dataset


def write_matrix(path: str | Path, matrix: np.ndarray) -> None:
    """Binary row-major float64 matrix: 8-byte magic, uint64 n, then data."""
    matrix = np.ascontiguousarray(matrix, dtype=np.float64)
    with Path(path).open("wb") as fh:
        fh.write(MATRIX_MAGIC)
        fh.write(struct.pack("<Q", len(matrix)))
        fh.write(matrix.tobytes())


def read_matrix(path: str | Path) -> np.ndarray:
    with Path(path).open("rb") as fh:
        magic = fh.read(8)
        if magic != MATRIX_MAGIC:
            raise ParseError(f"{path}: bad magic {magic!r}")
        (n,) = struct.unpack("<Q", fh.read(8))
        data = np.frombuffer(fh.read(), dtype=np.float64)
    if len(data) != n * n:
        raise ParseError(f"{path}: expected {n}x{n} entries, found {len(data)}")
    return data.reshape(n, n)


def write_partition_csv(path: str | Path, assignments: np.ndarray) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "assigned"])
        for i, a in enumerate(assignments):
            writer.writerow([i, int(a)])


def write_results_csv(path: str | Path, records: list[ResultRecord], append: bool = False) -> None:
    path = Path(path)
    fresh = not (append and path.exists())
    with path.open("a" if not fresh else "w", newline="") as fh:
        writer = csv.writer(fh)
        if fresh:
            writer.writerow(RESULT_HEADER)
        for r in records:
            writer.writerow(
                [r.scenario, r.dataset_index, r.method_id, r.params, r.metric, _FLOAT_FMT % r.value]
            )


def read_results_csv(path: str | Path) -> list[ResultRecord]:
    out = []
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != list(RESULT_HEADER):
            raise ParseError(f"{path}: bad header {reader.fieldnames}")
        for row in reader:
            out.append(
                ResultRecord(
                    scenario=row["scenario"],
                    dataset_index=int(row["dataset_index"]),
                    method_id=row["method_id"],
                    params=row["params"],
                    metric=row["metric"],
                    value=float(row["value"]),
                )
            )
    return out


def write_manifest(out_dir: str | Path, config: ExperimentConfig, dataset_seeds: dict[str, list]) -> None:
    """Reproducibility audit trail: config, its hash, and every dataset's
    seed stream so any record can be regenerated."""
    from dataclasses import asdict

    manifest = {
        "package_version": __version__,
        "numpy_version": np.__version__,
        "config": asdict(config),
        "config_hash": config.digest(),
        "dataset_seeds": dataset_seeds,
    }
    Path(out_dir, "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=1))
