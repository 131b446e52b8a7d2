"""Plain-text array format.

::

    CA <N> <k> <v>
    # comments anywhere are ignored
    <k space-separated symbols>   (N lines)

The file must end with a newline.
"""

from __future__ import annotations

import os

import numpy as np

from .arrays import ArrayMatrix
from .errors import ParseError


def format_array(a: ArrayMatrix) -> str:
    lines = [f"CA {a.n_rows} {a.n_cols} {a.v}"]
    lines.extend(" ".join(map(str, row)) for row in a.data.tolist())
    return "\n".join(lines) + "\n"


def parse_array(text: str) -> ArrayMatrix:
    if not text.endswith("\n"):
        raise ParseError(text.count("\n") + 1, "missing trailing newline")
    header = None
    rows: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("#"):
            continue
        if header is None:
            parts = stripped.split()
            if len(parts) != 4 or parts[0] != "CA":
                raise ParseError(lineno, f"expected header 'CA <N> <k> <v>', got {line!r}")
            try:
                n, k, v = (int(p) for p in parts[1:])
            except ValueError:
                raise ParseError(lineno, f"non-integer header field in {line!r}") from None
            if n < 1 or k < 1 or v < 2:
                raise ParseError(lineno, "header needs N >= 1, k >= 1, v >= 2")
            header = (n, k, v)
            continue
        if not stripped:
            raise ParseError(lineno, "blank line inside array body")
        try:
            row = [int(p) for p in stripped.split()]
        except ValueError:
            raise ParseError(lineno, f"non-integer symbol in row {len(rows) + 1}") from None
        n, k, v = header
        if len(row) != k:
            raise ParseError(lineno, f"row {len(rows) + 1} has {len(row)} entries, expected {k}")
        bad = [s for s in row if not 0 <= s < v]
        if bad:
            raise ParseError(lineno, f"row {len(rows) + 1} has symbol {bad[0]} outside [0, {v})")
        if len(rows) == n:
            raise ParseError(lineno, f"more than the declared {n} rows")
        rows.append(row)
    if header is None:
        raise ParseError(1, "empty file")
    if len(rows) != header[0]:
        raise ParseError(text.count("\n"), f"found {len(rows)} rows, header declares {header[0]}")
    return ArrayMatrix(np.array(rows, dtype=np.int64), header[2])


def read_array(path: str | os.PathLike) -> ArrayMatrix:
    with open(path, encoding="ascii", newline="") as fh:
        return parse_array(fh.read())


def write_array(a: ArrayMatrix, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_array(a))
