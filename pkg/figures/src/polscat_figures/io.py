"""CSV ingestion for polscat outputs.

The files carry a ``# key = value`` metadata preamble, then a header row,
then comma-separated data rows. Values stay as strings until a recipe
asks for a numeric column, so flags like ``pole`` keep their exact form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SchemaError(ValueError):
    """Input CSV lacks a column (or value) a recipe needs."""


@dataclass(frozen=True)
class Table:
    path: str
    meta: dict
    header: tuple
    rows: tuple

    def __len__(self) -> int:
        return len(self.rows)

    def require(self, *names: str) -> None:
        for name in names:
            if name not in self.header:
                raise SchemaError(
                    f"{self.path}: missing column {name!r} "
                    f"(has: {', '.join(self.header)})"
                )

    def column(self, name: str) -> list:
        self.require(name)
        idx = self.header.index(name)
        return [row[idx] for row in self.rows]

    def floats(self, name: str) -> np.ndarray:
        try:
            return np.array([float(v) for v in self.column(name)])
        except ValueError as exc:
            raise SchemaError(f"{self.path}: column {name!r} is not numeric: {exc}") from None

    def meta_float(self, key: str) -> float:
        if key not in self.meta:
            raise SchemaError(f"{self.path}: missing metadata key {key!r}")
        try:
            return float(self.meta[key])
        except ValueError:
            raise SchemaError(
                f"{self.path}: metadata {key!r} = {self.meta[key]!r} is not numeric"
            ) from None


def read_table(path: str) -> Table:
    meta: dict = {}
    header = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, sep, value = line.lstrip("# ").partition(" = ")
                if sep:
                    meta[key] = value
                continue
            cells = line.split(",")
            if header is None:
                header = tuple(cells)
                continue
            if len(cells) != len(header):
                raise SchemaError(
                    f"{path}: row has {len(cells)} cells, header has {len(header)}"
                )
            rows.append(tuple(cells))
    if header is None:
        raise SchemaError(f"{path}: no header row found")
    return Table(path=path, meta=meta, header=header, rows=tuple(rows))
