"""CSV helpers shared by the exporters."""

from __future__ import annotations

import csv
import os
from pathlib import Path

import numpy as np


def fmt(value) -> str:
    # shortest repr that round-trips float64 exactly
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([fmt(v) for v in row])
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {os.fspath(path)}: {exc.strerror}") from exc
    return path


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader]
