"""Input parsing: point-cloud CSV, edge lists, distance-matrix CSV.

Every parse error reports the row and column where it occurred.
"""

from __future__ import annotations

import csv
from fractions import Fraction


class ParseError(ValueError):
    """Malformed input file; carries 1-based row/column positions."""

    def __init__(self, message: str, row: int, col: int):
        super().__init__(f"row {row}, col {col}: {message}")
        self.row = row
        self.col = col


def _number(text: str, row: int, col: int):
    """Parse a number, preferring exact rationals ('3/10', '2') over floats."""
    text = text.strip()
    try:
        if "/" in text or ("." not in text and "e" not in text.lower()):
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {text!r}", row, col) from None


def load_points_csv(path: str):
    """One point per row; a non-numeric first field is taken as the label."""
    coords, labels = [], []
    with open(path, newline="") as fh:
        for r, rec in enumerate(csv.reader(fh), start=1):
            if not rec or all(not f.strip() for f in rec):
                continue
            fields = [f for f in rec]
            start = 0
            try:
                _number(fields[0], r, 1)
            except ParseError:
                labels.append(fields[0].strip())
                start = 1
                if len(fields) == 1:
                    raise ParseError("label with no coordinates", r, 1)
            row = [float(_number(f, r, c)) for c, f in
                   enumerate(fields[start:], start=start + 1)]
            coords.append(row)
    if not coords:
        raise ParseError("no points found", 1, 1)
    return coords, (labels if len(labels) == len(coords) else None)


def load_edges(path: str):
    """Whitespace-separated `i j weight` triples, 0-based indices."""
    edges = []
    with open(path) as fh:
        for r, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(f"expected 'i j weight', got {len(parts)} fields",
                                 r, 1)
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("endpoint indices must be integers", r, 1) from None
            if i < 0 or j < 0:
                raise ParseError("indices must be nonnegative", r, 1)
            w = _number(parts[2], r, 3)
            edges.append((i, j, w))
    if not edges:
        raise ParseError("no edges found", 1, 1)
    return edges


def load_matrix_csv(path: str):
    """n x n distance matrix, one row per line."""
    rows = []
    with open(path, newline="") as fh:
        for r, rec in enumerate(csv.reader(fh), start=1):
            if not rec or all(not f.strip() for f in rec):
                continue
            rows.append([_number(f, r, c) for c, f in enumerate(rec, start=1)])
    if not rows:
        raise ParseError("no matrix rows found", 1, 1)
    n = len(rows)
    for r, row in enumerate(rows, start=1):
        if len(row) != n:
            raise ParseError(f"matrix is not square: row has {len(row)} of {n} entries",
                             r, len(row))
    return rows
