"""Atomic CSV/JSON writers used by the command line."""
from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import tempfile
from typing import Iterable, Sequence


def format_float(x: float) -> str:
    """12 significant digits; infinity is written as ``inf``."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def atomic_write(path: str | None, text: str):
    """Write text to path via a temp file and rename; ``None`` or ``-`` means stdout."""
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def write_csv(path, header, rows):
    atomic_write(path, csv_text(header, rows))


def write_json(path, obj):
    atomic_write(path, json_text(obj))
