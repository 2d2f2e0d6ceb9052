"""Line-oriented text formats for algebras and group presentations.

Three document kinds share one syntax: ``key: value`` header lines, blocks
introduced by a bare ``key:`` line, and ``#`` comments.

Effect algebra (``.ea``)::

    elements: 0 h u
    zero: 0
    unit: u
    sum:
      h + h = u

MV-algebra (``.mv``) uses total ``mvsum:`` and ``supp:`` blocks
(``a' = b``).  Group presentations (``.grp``) use ``rank:``, ``unit:``,
a ``cone:`` block with one integer vector per line, and an optional
``images:`` block of ``name = vector`` lines.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .core import EffectAlgebraTable
from .errors import FormatError, ParseError
from .structures import MVTable, mv_from_sums
from .unigroup import GroupPresentation

KINDS = ("effect-algebra", "mv-algebra", "group-presentation")
_KEYS = {"name", "elements", "zero", "unit", "sum", "mvsum", "supp", "rank", "cone", "images",
         "torsion"}
_BLOCKS = {"sum", "mvsum", "supp", "cone", "images"}
_NAME = re.compile(r"[^\s+=#:']+\Z")
_HEADER = re.compile(r"([A-Za-z_]+)\s*:(.*)\Z")
_SUM = re.compile(r"(\S+?)\s*\+\s*(\S+?)\s*=\s*(\S+)\Z")
_SUPP = re.compile(r"(\S+?)\s*'\s*=\s*(\S+)\Z")
_IMAGE = re.compile(r"(\S+?)\s*=\s*(.+)\Z")

Payload = Union[EffectAlgebraTable, MVTable, GroupPresentation]


@dataclass
class AlgebraDocument:
    kind: str
    payload: Payload
    name: str = ""
    source: str = ""
    comments: List[str] = field(default_factory=list)


@dataclass
class _Line:
    number: int
    column: int
    text: str


def _split(text: str):
    """Header values and block bodies, each remembering source positions."""
    headers: Dict[str, _Line] = {}
    blocks: Dict[str, List[_Line]] = {}
    comments: List[str] = []
    current: Optional[str] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        body, hash_, comment = raw.partition("#")
        if hash_:
            comments.append(comment.strip())
        stripped = body.strip()
        if not stripped:
            continue
        column = len(body) - len(body.lstrip()) + 1
        m = _HEADER.match(stripped)
        if m and m.group(1) in _KEYS:
            key, value = m.group(1), m.group(2).strip()
            if key in headers or key in blocks:
                raise ParseError(f"duplicate section '{key}'", number, column)
            if key in _BLOCKS:
                if value:
                    raise ParseError(f"'{key}:' starts a block; put entries on following lines",
                                     number, column + len(key) + 1)
                blocks[key] = []
                current = key
            else:
                headers[key] = _Line(number, column + len(key) + 1, value)
                current = None
            continue
        if m:
            raise ParseError(f"unknown section '{m.group(1)}'", number, column)
        if current is None:
            raise ParseError("entry outside of any block", number, column)
        blocks[current].append(_Line(number, column, stripped))
    return headers, blocks, comments


def _require(headers, key, kind):
    if key not in headers:
        raise ParseError(f"{kind} document is missing '{key}:'")
    return headers[key]


def _names(line: _Line) -> List[str]:
    names = line.text.split()
    for name in names:
        if not _NAME.match(name):
            raise ParseError(f"invalid element name {name!r}", line.number, line.column)
    if len(set(names)) != len(names):
        raise ParseError("duplicate element name", line.number, line.column)
    return names


def _element(name: str, known, line: _Line) -> str:
    if name not in known:
        raise ParseError(f"unknown element {name!r}", line.number,
                         line.column + max(line.text.find(name), 0))
    return name


def _sums(lines: List[_Line], known, total: bool = False):
    seen: Dict[Tuple[str, str], Tuple[str, int]] = {}
    out = []
    for line in lines:
        m = _SUM.match(line.text)
        if not m:
            raise ParseError("expected '<a> + <b> = <c>'", line.number, line.column)
        a, b, c = (_element(x, known, line) for x in m.groups())
        key = tuple(sorted((a, b)))
        if key in seen:
            prev, prev_line = seen[key]
            if prev != c:
                raise ParseError(f"conflicting sums for {a} + {b}: {prev} (line {prev_line}) "
                                 f"and {c}", line.number, line.column)
            continue
        seen[key] = (c, line.number)
        out.append((a, b, c))
    return out


def _ints(line: _Line, text: Optional[str] = None) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in (line.text if text is None else text).split())
    except ValueError:
        raise ParseError("expected integers", line.number, line.column) from None


def _detect(headers, blocks) -> str:
    if "rank" in headers or "cone" in blocks:
        return "group-presentation"
    if "mvsum" in blocks or "supp" in blocks:
        return "mv-algebra"
    return "effect-algebra"


def parse(text: str, source: str = "") -> AlgebraDocument:
    """Parse a document; the kind is inferred from the sections present."""
    headers, blocks, comments = _split(text)
    kind = _detect(headers, blocks)
    name = headers["name"].text if "name" in headers else (Path(source).stem if source else "")
    if kind == "group-presentation":
        payload = _parse_group(headers, blocks, name)
    else:
        elements = _names(_require(headers, "elements", kind))
        zero = _element(_require(headers, "zero", kind).text, elements, headers["zero"])
        unit = _element(_require(headers, "unit", kind).text, elements, headers["unit"])
        if kind == "effect-algebra":
            if "sum" not in blocks:
                raise ParseError("effect-algebra document is missing 'sum:'")
            sums = _sums(blocks["sum"], elements)
            try:
                payload = EffectAlgebraTable.from_sums(elements, zero, unit, sums, name)
            except FormatError as exc:
                raise ParseError(str(exc)) from None
        else:
            for key in ("mvsum", "supp"):
                if key not in blocks:
                    raise ParseError(f"mv-algebra document is missing '{key}:'")
            sums = _sums(blocks["mvsum"], elements)
            supps = []
            for line in blocks["supp"]:
                m = _SUPP.match(line.text)
                if not m:
                    raise ParseError("expected \"<a>' = <b>\"", line.number, line.column)
                supps.append(tuple(_element(x, elements, line) for x in m.groups()))
            try:
                payload = mv_from_sums(elements, zero, unit, sums, supps, name)
            except FormatError as exc:
                raise ParseError(str(exc)) from None
    return AlgebraDocument(kind, payload, name, source, comments)


def _parse_group(headers, blocks, name) -> GroupPresentation:
    rline = _require(headers, "rank", "group-presentation")
    try:
        r = int(rline.text)
    except ValueError:
        raise ParseError("rank must be an integer", rline.number, rline.column) from None
    uline = _require(headers, "unit", "group-presentation")
    unit = _ints(uline)
    if len(unit) != r:
        raise ParseError(f"unit has {len(unit)} entries, rank is {r}", uline.number, uline.column)
    if "cone" not in blocks:
        raise ParseError("group-presentation document is missing 'cone:'")
    gens = []
    for line in blocks["cone"]:
        v = _ints(line)
        if len(v) != r:
            raise ParseError(f"cone vector has {len(v)} entries, rank is {r}",
                             line.number, line.column)
        gens.append(v)
    torsion = _ints(headers["torsion"]) if "torsion" in headers else ()
    images = labels = None
    if "images" in blocks:
        images, labels = [], []
        for line in blocks["images"]:
            m = _IMAGE.match(line.text)
            if not m or not _NAME.match(m.group(1)):
                raise ParseError("expected '<name> = <integers>'", line.number, line.column)
            v = _ints(line, m.group(2))
            if len(v) != r:
                raise ParseError(f"image has {len(v)} entries, rank is {r}",
                                 line.number, line.column)
            if m.group(1) in labels:
                raise ParseError(f"duplicate image for {m.group(1)!r}", line.number, line.column)
            labels.append(m.group(1))
            images.append(v)
    return GroupPresentation(r, unit, tuple(gens), torsion, tuple(images) if images else None,
                             name, image_labels=tuple(labels or ()))


def parse_file(path) -> AlgebraDocument:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), str(path))


# --------------------------------------------------------------------------
# serialization

def _vec(v) -> str:
    return " ".join(str(x) for x in v)


def serialize(obj) -> str:
    """Normalized text for a document or a bare payload."""
    if isinstance(obj, AlgebraDocument):
        payload, name = obj.payload, obj.name
    else:
        payload, name = obj, getattr(obj, "name", "") or getattr(obj, "label", "")
    lines = []
    if name:
        lines.append(f"name: {name}")
    if isinstance(payload, EffectAlgebraTable):
        t, lab = payload, payload.labels
        lines += [f"elements: {' '.join(lab)}", f"zero: {lab[t.zero]}", f"unit: {lab[t.unit]}",
                  "sum:"]
        for x in range(t.n):
            for y in range(x, t.n):
                c = t.osum[x][y]
                if c is not None and t.zero not in (x, y):
                    lines.append(f"  {lab[x]} + {lab[y]} = {lab[c]}")
    elif isinstance(payload, MVTable):
        m, lab = payload, payload.labels
        lines += [f"elements: {' '.join(lab)}", f"zero: {lab[m.zero]}", f"unit: {lab[m.unit]}",
                  "mvsum:"]
        for x in range(m.n):
            for y in range(x, m.n):
                lines.append(f"  {lab[x]} + {lab[y]} = {lab[m.mvsum[x][y]]}")
        lines.append("supp:")
        lines += [f"  {lab[x]}' = {lab[m.supp[x]]}" for x in range(m.n)]
    elif isinstance(payload, GroupPresentation):
        P = payload
        lines += [f"rank: {P.rank}", f"unit: {_vec(P.unit)}"]
        if P.torsion:
            lines.append(f"torsion: {_vec(P.torsion)}")
        lines.append("cone:")
        lines += [f"  {_vec(g)}" for g in P.cone_gens]
        if P.images is not None:
            lines.append("images:")
            lines += [f"  {l} = {_vec(v)}" for l, v in zip(P.image_labels, P.images)]
    else:
        raise TypeError(f"cannot serialize {type(payload).__name__}")
    for name in _labels_of(payload):
        if not _NAME.match(name):
            raise FormatError(f"element name {name!r} cannot be written")
    return "\n".join(lines) + "\n"


def _labels_of(payload):
    if isinstance(payload, GroupPresentation):
        return payload.image_labels if payload.images is not None else ()
    return payload.labels
