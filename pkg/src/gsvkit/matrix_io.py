"""CSV ingestion and emission for the batch front-end.

Matrix files are headerless CSV, one row per matrix row, comma-separated
decimal values.  Floats are emitted with 17 significant digits so every file
written by the toolkit re-parses to bit-identical values.
"""

from __future__ import annotations

import csv

import numpy as np

from .errors import ParseError


def format_float(x):
    """Decimal serialization with 17 significant digits (lossless for float64)."""
    return format(float(x), ".17g")


def _parse_float(token, path, line_no):
    try:
        value = float(token)
    except ValueError:
        raise ParseError(path, line_no, f"not a decimal number: {token!r}") from None
    if not np.isfinite(value):
        raise ParseError(path, line_no, f"non-finite value: {token!r}")
    return value


def read_matrix_csv(path):
    """Parse a headerless CSV file into a dense real matrix.

    Raises ParseError (with file and line) on malformed values, ragged rows,
    or an empty file.
    """
    rows = []
    width = None
    with open(path, newline="", encoding="utf-8") as fh:
        for line_no, record in enumerate(csv.reader(fh), start=1):
            if not record:
                continue
            values = [_parse_float(tok.strip(), path, line_no) for tok in record]
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise ParseError(
                    path, line_no, f"row has {len(values)} values, expected {width}"
                )
            rows.append(values)
    if not rows:
        raise ParseError(path, 1, "file contains no data rows")
    return np.array(rows, dtype=float)


def write_matrix_csv(path, arr):
    """Emit a matrix as headerless CSV with lossless decimal values."""
    arr = np.atleast_2d(np.asarray(arr, dtype=float))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        for row in arr:
            fh.write(",".join(format_float(v) for v in row))
            fh.write("\n")


def write_vector_csv(path, vec):
    """Emit a vector as one value per row."""
    write_matrix_csv(path, np.asarray(vec, dtype=float).reshape(-1, 1))


def read_probability_csv(path):
    """Parse a single-column CSV with header ``rho`` into a probability vector."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(path, 1, "file is empty") from None
        if [h.strip() for h in header] != ["rho"]:
            raise ParseError(path, 1, f"expected header 'rho', got {header!r}")
        values = []
        for line_no, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != 1:
                raise ParseError(path, line_no, "expected exactly one column")
            values.append(_parse_float(record[0].strip(), path, line_no))
    if not values:
        raise ParseError(path, 2, "no probability rows found")
    return np.array(values, dtype=float)


def read_table_csv(path):
    """Parse a CSV with an ``id`` column plus numeric data columns.

    Returns ``(ids, column_names, data)`` where ``data`` is a dense float
    matrix over the non-id columns.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError(path, 1, "file is empty") from None
        if "id" not in header:
            raise ParseError(path, 1, f"missing 'id' column in header {header!r}")
        id_pos = header.index("id")
        names = [h for i, h in enumerate(header) if i != id_pos]
        if not names:
            raise ParseError(path, 1, "need at least one numeric column besides 'id'")
        ids = []
        rows = []
        for line_no, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(header):
                raise ParseError(
                    path, line_no, f"row has {len(record)} fields, expected {len(header)}"
                )
            ids.append(record[id_pos].strip())
            rows.append(
                [
                    _parse_float(tok.strip(), path, line_no)
                    for i, tok in enumerate(record)
                    if i != id_pos
                ]
            )
    if not rows:
        raise ParseError(path, 2, "no data rows found")
    return ids, names, np.array(rows, dtype=float)
