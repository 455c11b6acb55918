"""Deterministic delimited-text output.

Every float is rendered with repr-faithful 17 significant digits so a
rerun with identical inputs produces byte-identical files.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def fmt(x) -> str:
    """Render one value: floats at 17 significant digits, rest via str."""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def render_table(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """Comma-separated table with a header line and \\n endings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def write_table(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(render_table(header, rows))


def columns_to_rows(*columns):
    # zip() but strict, so a length bug fails loudly
    return zip(*columns, strict=True)
