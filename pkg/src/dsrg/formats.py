"""Reading and writing digraphs: digraph01 text, JSON, label sidecars, fixtures."""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional, Union

from .graphs import Digraph, StructuralError

FIXTURE_NAMES = tuple([f"N{i}" for i in range(1, 8)] + [f"T{i}" for i in range(1, 8)] + ["J8", "J9"])


class FormatError(ValueError):
    """Malformed graph file."""


def _label_to_json(label) -> list:
    out = []
    for x in label:
        out.append(list(x) if isinstance(x, (tuple, list)) else x)
    return out


def _label_from_json(item) -> tuple:
    return tuple(tuple(x) if isinstance(x, list) else x for x in item)


def dumps_digraph01(g: Digraph) -> str:
    lines = [str(g.n)]
    for i in range(g.n):
        lines.append("".join("1" if g.rows[i] >> j & 1 else "0" for j in range(g.n)))
    return "\n".join(lines) + "\n"


def _parse_rows(n: int, lines: list[str], where: str) -> tuple[int, ...]:
    rows = []
    for i, line in enumerate(lines):
        if len(line) != n or set(line) - {"0", "1"}:
            raise FormatError(f"{where}: row {i} must be {n} characters of 0/1, got {line!r}")
        rows.append(sum(1 << j for j, ch in enumerate(line) if ch == "1"))
    return tuple(rows)


def iter_digraph01(text: str, source: str = "<input>") -> Iterator[Digraph]:
    """All graphs in a digraph01 stream (blocks of ``n`` then ``n`` rows; blank lines ignored)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    pos = 0
    while pos < len(lines):
        try:
            n = int(lines[pos])
        except ValueError:
            raise FormatError(f"{source}: expected a vertex count, got {lines[pos]!r}") from None
        if n < 0:
            raise FormatError(f"{source}: negative vertex count {n}")
        block = lines[pos + 1:pos + 1 + n]
        if len(block) != n:
            raise FormatError(f"{source}: graph on {n} vertices has only {len(block)} rows")
        yield Digraph(n, _parse_rows(n, block, source))
        pos += n + 1


def loads_digraph01(text: str, source: str = "<input>") -> Digraph:
    graphs = list(iter_digraph01(text, source))
    if len(graphs) != 1:
        raise FormatError(f"{source}: expected one graph, found {len(graphs)}")
    return graphs[0]


def digraph_to_json(g: Digraph) -> dict:
    data = {
        "n": g.n,
        "rows": dumps_digraph01(g).split("\n")[1:g.n + 1],
    }
    if g.labels is not None:
        data["labels"] = [_label_to_json(lab) for lab in g.labels]
    return data


def digraph_from_json(data: dict, source: str = "<json>") -> Digraph:
    try:
        n = int(data["n"])
        rows = _parse_rows(n, list(data["rows"]), source)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"{source}: malformed graph JSON ({exc})") from exc
    if len(rows) != n:
        raise FormatError(f"{source}: {len(rows)} rows for n = {n}")
    labels = data.get("labels")
    if labels is not None:
        labels = tuple(_label_from_json(x) for x in labels)
    return Digraph(n, rows, labels)


def _sidecar(path: Path) -> Path:
    return path.with_name(path.name.rsplit(".", 1)[0] + ".labels.json")


def read_graph(path: Union[str, os.PathLike]) -> Digraph:
    """Read a digraph01 or JSON file; a ``<stem>.labels.json`` sidecar supplies labels."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if text.lstrip().startswith("{"):
        try:
            return digraph_from_json(json.loads(text), str(path))
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    g = loads_digraph01(text, str(path))
    side = _sidecar(path)
    if side.exists():
        labels = tuple(_label_from_json(x) for x in json.loads(side.read_text()))
        try:
            g = Digraph(g.n, g.rows, labels)
        except StructuralError as exc:
            raise FormatError(f"{side}: {exc}") from exc
    return g


def read_graphs(path: Union[str, os.PathLike]) -> list[Digraph]:
    """All graphs in a file (a digraph01 stream, a JSON graph or a JSON list of graphs)."""
    path = Path(path)
    text = path.read_text()
    return list(parse_graphs(text, str(path)))


def parse_graphs(text: str, source: str = "<input>") -> Iterator[Digraph]:
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            # one JSON object per line
            for i, line in enumerate(text.splitlines()):
                if line.strip():
                    yield digraph_from_json(json.loads(line), f"{source}:{i + 1}")
            return
        items = data if isinstance(data, list) else data.get("graphs", [data])
        for item in items:
            yield digraph_from_json(item, source)
        return
    yield from iter_digraph01(text, source)


def write_graph(g: Digraph, path: Union[str, os.PathLike], fmt: str = "digraph01") -> None:
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(digraph_to_json(g)) + "\n")
        return
    if fmt != "digraph01":
        raise FormatError(f"unknown format {fmt!r}")
    path.write_text(dumps_digraph01(g))
    if g.labels is not None:
        _sidecar(path).write_text(json.dumps([_label_to_json(lab) for lab in g.labels]) + "\n")


def write_stream(graphs: Iterable[Digraph], fh: IO[str], fmt: str = "digraph01") -> int:
    count = 0
    for g in graphs:
        if fmt == "json":
            fh.write(json.dumps(digraph_to_json(g)) + "\n")
        else:
            fh.write(dumps_digraph01(g))
        count += 1
    return count


def data_path(name: str):
    return resources.files("dsrg") / "data" / name


def load_fixture(name: str) -> Digraph:
    """Transcribed adjacency matrix ``N1..N7``, ``T1..T7``, ``J8`` or ``J9``.

    ``T*`` fixtures carry ``(point, block)`` labels in the transcribed row order.
    """
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    g = loads_digraph01(data_path(f"{name}.txt").read_text(), name)
    side = data_path(f"{name}.labels.json")
    if side.is_file():
        labels = tuple(_label_from_json(x) for x in json.loads(side.read_text()))
        g = Digraph(g.n, g.rows, labels)
    return g


def load_data_json(name: str) -> dict:
    return json.loads(data_path(name).read_text())


def load_data_text(name: str) -> str:
    return data_path(name).read_text()


def maybe_labels(g: Digraph) -> Optional[list]:
    return None if g.labels is None else [_label_to_json(x) for x in g.labels]
