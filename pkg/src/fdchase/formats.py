"""Reading and writing schemas, tables, FD lists and tuple literals.

Schema files hold one ``attribute <name> domain <tag> [ordered]`` line per
attribute.  Tables are comma-separated with a header naming a subset of the
universe; an empty cell is a null.  FD files hold ``A B -> C`` lines.  Blank
lines and ``#`` comments are ignored in schema and FD files.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any, TextIO

from .chase import IncMap
from .core import FD, Tuple, Universe, canonical_sort

__all__ = [
    "FormatError",
    "parse_schema",
    "read_schema",
    "parse_table",
    "read_table",
    "parse_fds",
    "read_fds",
    "parse_value",
    "parse_tuple_literal",
    "format_tuple",
    "format_value",
    "write_table",
    "table_csv",
    "format_inc",
    "format_fds",
]


class FormatError(ValueError):
    """Malformed input file or literal."""


def _lines(text: str) -> Iterable[tuple[int, str]]:
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def parse_schema(text: str) -> Universe:
    attrs: list[str] = []
    domains: dict[str, str] = {}
    ordered: set[str] = set()
    for n, line in _lines(text):
        parts = line.split()
        if len(parts) not in (4, 5) or parts[0] != "attribute" or parts[2] != "domain":
            raise FormatError(f"schema line {n}: expected 'attribute <name> domain <tag> [ordered]'")
        if len(parts) == 5 and parts[4] != "ordered":
            raise FormatError(f"schema line {n}: unexpected trailing word {parts[4]!r}")
        name, tag = parts[1], parts[3]
        if name in domains:
            raise FormatError(f"schema line {n}: attribute {name} declared twice")
        attrs.append(name)
        domains[name] = tag
        if len(parts) == 5:
            ordered.add(tag)
    if not attrs:
        raise FormatError("schema declares no attributes")
    return Universe(tuple(attrs), domains, frozenset(ordered))


def parse_value(raw: str, attr: str, universe: Universe) -> Any:
    """Cells of ordered domains are numbers; everything else stays text."""
    if not universe.is_ordered(attr):
        return raw
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        raise FormatError(f"{raw!r} is not a number, but {attr} has an ordered domain") from None


def format_value(v: Any) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def parse_table(text: str, universe: Universe) -> frozenset[Tuple]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise FormatError("table file is empty") from None
    unknown = [h for h in header if h not in universe]
    if unknown:
        raise FormatError(f"table header names unknown attributes {unknown}")
    if len(set(header)) != len(header):
        raise FormatError("table header repeats an attribute")
    rows = set()
    for n, cells in enumerate(reader, 2):
        if not cells:
            continue
        if len(cells) != len(header):
            raise FormatError(f"table line {n}: {len(cells)} cells for {len(header)} columns")
        bound = {a: parse_value(c.strip(), a, universe) for a, c in zip(header, cells) if c.strip()}
        if not bound:
            raise FormatError(f"table line {n}: a row needs at least one non-null cell")
        rows.add(Tuple(bound))
    return frozenset(rows)


def parse_fds(text: str, universe: Universe) -> tuple[FD, ...]:
    """One dependency per line; ``X -> A B`` expands to ``X -> A`` and ``X -> B``."""
    out: list[FD] = []
    for n, line in _lines(text):
        left, sep, right = line.partition("->")
        lhs = left.replace(",", " ").split()
        rhs = right.replace(",", " ").split()
        if not sep or not lhs or not rhs:
            raise FormatError(f"FD line {n}: expected '<A1> <A2> ... -> <B>'")
        for a in lhs + rhs:
            if a not in universe:
                raise FormatError(f"FD line {n}: unknown attribute {a!r}")
        for b in rhs:
            if b not in lhs:
                out.append(FD(frozenset(lhs), b))
    return tuple(dict.fromkeys(out))


def parse_tuple_literal(text: str, universe: Universe) -> Tuple:
    """``"Id=i1,K=k'"``; a pair containing a comma may be wrapped in double quotes."""
    try:
        fields = next(csv.reader([text]))
    except (StopIteration, csv.Error) as e:
        raise FormatError(f"bad tuple literal {text!r}") from e
    bound: dict[str, Any] = {}
    for f in fields:
        attr, sep, value = f.partition("=")
        attr, value = attr.strip(), value.strip()
        if not sep or not attr or not value:
            raise FormatError(f"bad tuple literal component {f!r}; expected Attr=value")
        if attr not in universe:
            raise FormatError(f"unknown attribute {attr!r} in tuple literal")
        if attr in bound:
            raise FormatError(f"attribute {attr!r} given twice in tuple literal")
        bound[attr] = parse_value(value, attr, universe)
    if not bound:
        raise FormatError("empty tuple literal")
    return Tuple(bound)


def format_tuple(t: Tuple, universe: Universe) -> str:
    return ",".join(f"{a}={format_value(t[a])}" for a in universe.attributes if a in t)


def table_csv(rows: Iterable[Tuple], universe: Universe, extra: Mapping[Tuple, Any] | None = None,
              extra_name: str = "truth", columns: Iterable[str] | None = None) -> str:
    """Canonically ordered CSV text; ``extra`` adds one trailing column."""
    cols = list(universe.attributes if columns is None else columns)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols + ([extra_name] if extra is not None else []))
    for t in canonical_sort(rows, universe):
        line = [format_value(t[a]) if a in t else "" for a in cols]
        if extra is not None:
            line.append(str(extra[t]))
        w.writerow(line)
    return buf.getvalue()


def write_table(dest: str | Path | TextIO, rows: Iterable[Tuple], universe: Universe, **kw: Any) -> None:
    text = table_csv(rows, universe, **kw)
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(text, encoding="utf-8")
    else:
        dest.write(text)


def format_inc(inc: IncMap, universe: Universe) -> str:
    """``<FD>: <x values>`` for every recorded conflict; FDs with none are left out."""
    lines = []
    for fd, xs in inc.nonempty().items():
        lhs = universe.sort_attrs(fd.lhs)
        for x in canonical_sort(xs, universe):
            lines.append(f"{fd.format(universe)}: {','.join(format_value(x[a]) for a in lhs)}")
    return "".join(line + "\n" for line in sorted(lines))


def format_fds(fds: Iterable[FD], universe: Universe) -> str:
    return "".join(f"{fd.format(universe)}\n" for fd in fds)


def format_schema(universe: Universe) -> str:
    lines = []
    for a in universe.attributes:
        tag = universe.domain(a)
        lines.append(f"attribute {a} domain {tag}" + (" ordered" if tag in universe.ordered else ""))
    return "\n".join(lines) + "\n"


def read_schema(path: str | Path) -> Universe:
    return parse_schema(_read(path))


def read_table(path: str | Path, universe: Universe) -> frozenset[Tuple]:
    return parse_table(_read(path), universe)


def read_fds(path: str | Path | None, universe: Universe) -> tuple[FD, ...]:
    return () if path is None else parse_fds(_read(path), universe)


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from e
    except UnicodeDecodeError as e:
        raise FormatError(f"{path} is not UTF-8 text") from e
