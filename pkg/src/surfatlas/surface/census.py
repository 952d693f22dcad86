"""Census tables: components grouped by genus and cell structure."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import astuple, dataclass
from importlib import resources
from pathlib import Path

from ..errors import AtlasError
from .complex import SurfaceComplex, format_symbol

__all__ = [
    "CSV_COLUMNS",
    "CensusRow",
    "GoldenFormatError",
    "census",
    "rows_to_csv",
    "rows_from_csv",
    "render_text",
    "golden_name",
    "load_golden",
    "diff_census",
]

CSV_COLUMNS = ("genus", "faces", "n", "lambda1", "lambda2", "vertices", "edges", "count")


class GoldenFormatError(AtlasError, ValueError):
    exit_code = 2


@dataclass(frozen=True, order=True)
class CensusRow:
    genus: int
    faces: int
    n: int
    lambda1: int
    lambda2: int
    vertices: int
    edges: int
    count: int

    @property
    def symbol(self) -> str:
        return format_symbol(self.n, self.lambda1, self.lambda2)

    def as_dict(self) -> dict:
        return dict(zip(CSV_COLUMNS, astuple(self)))


def census(cx: SurfaceComplex) -> list[CensusRow]:
    """Rows sorted by genus, faces, face size, then valencies."""
    counts = Counter(
        zip(cx.comp_genus.tolist(), cx.comp_F.tolist(), cx.comp_n.tolist(),
            cx.comp_lambda[:, 0].tolist(), cx.comp_lambda[:, 1].tolist(),
            cx.comp_V.tolist(), cx.comp_E.tolist())
    )
    return sorted(CensusRow(*key, count) for key, count in counts.items())


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(astuple(r))
    return buf.getvalue()


def rows_from_csv(text: str) -> list[CensusRow]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise GoldenFormatError("golden file is empty") from None
    if tuple(h.strip() for h in header) != CSV_COLUMNS:
        raise GoldenFormatError(f"golden header must be {','.join(CSV_COLUMNS)}, got {','.join(header)}")
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not f.strip() for f in rec):
            continue
        if len(rec) != len(CSV_COLUMNS):
            raise GoldenFormatError(f"line {lineno}: expected {len(CSV_COLUMNS)} fields, got {len(rec)}")
        try:
            vals = [int(f) for f in rec]
        except ValueError:
            raise GoldenFormatError(f"line {lineno}: non-integer field") from None
        g, F, n, l1, l2, V, E, k = vals
        # symbols may be written with the larger valency first
        l1, l2 = min(l1, l2), max(l1, l2)
        if k < 1:
            raise GoldenFormatError(f"line {lineno}: count must be positive")
        rows.append(CensusRow(g, F, n, l1, l2, V, E, k))
    return sorted(rows)


def render_text(rows, title: str = "") -> str:
    total = sum(r.count for r in rows)
    header = ("Genus", "# Faces", "Symbol", "# Vertices", "# Edges", "# Components")
    body = [(str(r.genus), str(r.faces), r.symbol, str(r.vertices), str(r.edges), str(r.count)) for r in rows]
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(header)]
    lines = []
    if title:
        lines.append(f"{title} - {total} total components, {len({r.genus for r in rows})} distinct genus values")
    lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    lines.append("  ".join("-" * w for w in widths))
    for b in body:
        lines.append("  ".join(c.rjust(w) for c, w in zip(b, widths)))
    return "\n".join(lines) + "\n"


_GOLDEN = {
    "S3": "S3", "A4": "A4", "PSL2(3)": "A4", "S4": "S4", "SL2(3)": "SL2_3",
    "A5": "A5", "PSL2(5)": "A5", "S5": "S5", "SL2(5)": "SL2_5", "PSL2(7)": "PSL2_7",
    "SL2(7)": "SL2_7", "A6": "A6", "S6": "S6", "A7": "A7",
}


def golden_name(label: str) -> str | None:
    """Bundled table name for a canonical group label, if one ships."""
    return _GOLDEN.get(label)


def load_golden(source) -> list[CensusRow]:
    """Read a golden census from a path or a bundled table name (``"S4"``, ``"SL2_7"``)."""
    if isinstance(source, Path) or (isinstance(source, str) and ("/" in source or source.endswith(".csv"))):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise GoldenFormatError(f"cannot read golden file {path}: {exc}") from None
        return rows_from_csv(text)
    name = _GOLDEN.get(source, source)
    try:
        text = resources.files("surfatlas.golden").joinpath(f"{name}.csv").read_text()
    except FileNotFoundError:
        raise GoldenFormatError(f"no bundled golden table named {source!r}") from None
    return rows_from_csv(text)


def diff_census(computed, golden) -> list[str]:
    """Row-level differences; empty when the tables agree exactly."""
    mine = Counter(computed)
    theirs = Counter(golden)
    out = []
    for r in sorted(theirs - mine):
        out.append(f"- missing  genus {r.genus} F{r.faces} {r.symbol} V{r.vertices} E{r.edges} x{r.count}")
    for r in sorted(mine - theirs):
        out.append(f"+ extra    genus {r.genus} F{r.faces} {r.symbol} V{r.vertices} E{r.edges} x{r.count}")
    return out
