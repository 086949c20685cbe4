"""Text file formats: edge lists, attribute CSVs and pair TSVs."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, build_graph


class ParseError(ValueError):
    pass


def _sort_ids(ids: Iterable[str]) -> list[str]:
    ids = list(ids)
    try:
        return sorted(ids, key=int)
    except ValueError:
        return sorted(ids)


def load_edge_list(path: str | Path) -> tuple[Graph, list[str]]:
    """Read a whitespace-separated edge list.

    Lines starting with ``#`` and blank lines are skipped. A line with a
    single id declares a (possibly isolated) node. External ids are mapped to
    dense indices in sorted order (numeric order when every id is an
    integer); the returned list maps index to external id.
    """
    raw_edges: list[tuple[str, str]] = []
    nodes: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) == 1:
                nodes.add(parts[0])
            elif len(parts) == 2:
                nodes.update(parts)
                raw_edges.append((parts[0], parts[1]))
            else:
                raise ParseError(f"{path}:{lineno}: expected 'u v', got {line!r}")
    ids = _sort_ids(nodes)
    index = {name: i for i, name in enumerate(ids)}
    edges = [(index[a], index[b]) for a, b in raw_edges]
    return build_graph(len(ids), edges), ids


def save_edge_list(g: Graph, path: str | Path, ids: Sequence[str] | None = None) -> None:
    """Write canonical edges, plus single-id lines for isolated nodes."""
    ids = [str(i) for i in range(g.node_count)] if ids is None else list(ids)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u, v in g.edges.tolist():
            fh.write(f"{ids[u]} {ids[v]}\n")
        for i in np.flatnonzero(g.degrees == 0).tolist():
            fh.write(f"{ids[i]}\n")


def load_attributes(path: str | Path, n: int) -> np.ndarray:
    """Read an ``n x d`` numeric CSV, row ``i`` belonging to node index ``i``."""
    rows: list[list[float]] = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row:
                continue
            try:
                rows.append([float(x) for x in row])
            except ValueError:
                raise ParseError(f"{path}: row {lineno} has a non-numeric cell") from None
            if len(rows[-1]) != len(rows[0]):
                raise ParseError(f"{path}: row {lineno} has {len(rows[-1])} cells, expected {len(rows[0])}")
    if len(rows) != n:
        raise ParseError(f"{path}: expected {n} rows, found {len(rows)}")
    if n == 0:
        return np.zeros((0, 0))
    return np.array(rows, dtype=np.float64)


def save_attributes(attrs: np.ndarray, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in np.asarray(attrs):
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")


def load_pairs(path: str | Path, src_ids: Sequence[str] | None = None,
               tgt_ids: Sequence[str] | None = None) -> list[tuple[int, int]]:
    """Read ``src<TAB>tgt`` lines, translating external ids to indices when maps are given."""
    src_index = None if src_ids is None else {s: i for i, s in enumerate(src_ids)}
    tgt_index = None if tgt_ids is None else {s: i for i, s in enumerate(tgt_ids)}
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"{path}:{lineno}: expected 'src<TAB>tgt', got {line!r}")
            a, b = parts
            try:
                u = src_index[a] if src_index is not None else int(a)
                v = tgt_index[b] if tgt_index is not None else int(b)
            except (KeyError, ValueError):
                raise ParseError(f"{path}:{lineno}: unknown node id in {line!r}") from None
            pairs.append((u, v))
    return pairs


def save_pairs(pairs: Iterable[tuple[int, int]], path: str | Path,
               src_ids: Sequence[str] | None = None, tgt_ids: Sequence[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_pairs(pairs, src_ids, tgt_ids))


def format_pairs(pairs, src_ids=None, tgt_ids=None) -> str:
    lines = []
    for u, v in pairs:
        a = src_ids[u] if src_ids is not None else u
        b = tgt_ids[v] if tgt_ids is not None else v
        lines.append(f"{a}\t{b}\n")
    return "".join(lines)
