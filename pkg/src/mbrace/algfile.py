"""Loader for ``.alg.json`` algebra definitions.

A file looks like::

    {
      "name": "exterior",
      "basis": [["1", 0], ["th", 1]],
      "product": "m",
      "maps": {
        "m": ["m(1,1) = 1", "m(1,th) = th", "m(th,1) = th", "m(th,th) = 0"]
      },
      "elements": {"a": "2*th + 1"}
    }

A rule reads ``name(l_1,...,l_k) = sum``, where each summand is an optional
coefficient (integer or ``p/q``) times a basis label or a word ``{x,y}``;
``{}`` is the empty word.  Inputs without a rule map to 0.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .cochains import Cochain, Table, add_into
from .scalars import Element, GradedSpace


class AlgFileError(ValueError):
    pass


@dataclass
class AlgebraFile:
    name: str
    space: GradedSpace
    maps: Dict[str, Cochain] = field(default_factory=dict)
    elements: Dict[str, Element] = field(default_factory=dict)
    product: Optional[str] = None
    coproduct: Optional[str] = None
    source: Optional[str] = None

    def names(self) -> Dict[str, object]:
        out: Dict[str, object] = dict(self.maps)
        out.update(self.elements)
        return out

    def environment(self):
        from .engine import Environment
        return Environment(self.space, self.names(), self.product or "m", self.coproduct)


_RULE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\(([^)]*)\)\s*=\s*(.*?)\s*$")
_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(\{[^}]*\}|[A-Za-z0-9_]+)\s*")


def _labels(space: GradedSpace, text: str, where: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    out = []
    for lab in text.split(","):
        lab = lab.strip()
        if lab not in space._index:
            raise AlgFileError(f"{where}: unknown basis label {lab!r}")
        out.append(space.index(lab))
    return tuple(out)


def parse_sum(space: GradedSpace, text: str, where: str = "rule") -> Dict[Tuple[int, ...], Fraction]:
    """Parse ``3*x - 1/2*{x,y} + {}`` into word coefficients."""
    text = text.strip()
    if text == "0":
        return {}
    out: Dict[Tuple[int, ...], Fraction] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise AlgFileError(f"{where}: cannot read {text[pos:]!r}")
        sgn, coef, atom = m.groups()
        if sgn is None and not first:
            raise AlgFileError(f"{where}: missing + or - before {text[pos:]!r}")
        c = Fraction(coef) if coef else Fraction(1)
        if sgn == "-":
            c = -c
        if atom.startswith("{"):
            w = _labels(space, atom[1:-1], where)
        else:
            w = _labels(space, atom, where)
        out[w] = out.get(w, 0) + c
        pos = m.end()
        first = False
    return {w: c for w, c in out.items() if c != 0}


def _basis(raw) -> GradedSpace:
    if not isinstance(raw, list) or not raw:
        raise AlgFileError("basis must be a nonempty list")
    pairs = []
    for item in raw:
        if isinstance(item, dict):
            pairs.append((str(item["label"]), int(item.get("deg", item.get("degree", 0)))))
        elif isinstance(item, (list, tuple)) and len(item) == 2:
            pairs.append((str(item[0]), int(item[1])))
        elif isinstance(item, str):
            pairs.append((item, 0))
        else:
            raise AlgFileError(f"bad basis entry {item!r}")
    labels = [p[0] for p in pairs]
    if len(set(labels)) != len(labels):
        raise AlgFileError("duplicate basis labels")
    return pairs


def load_dict(data: dict, name: str = "algebra") -> AlgebraFile:
    pairs = _basis(data.get("basis"))
    space = GradedSpace.from_basis(data.get("name", name), pairs)
    maps: Dict[str, Cochain] = {}
    for mname, rules in (data.get("maps") or {}).items():
        if isinstance(rules, dict):
            rules = rules.get("rules", [])
        table: Table = {}
        for k, rule in enumerate(rules):
            where = f"map {mname} rule {k + 1}"
            m = _RULE.match(rule)
            if not m:
                raise AlgFileError(f"{where}: expected name(args) = value, got {rule!r}")
            if m.group(1) != mname:
                raise AlgFileError(f"{where}: rule is for {m.group(1)!r}")
            w = _labels(space, m.group(2), where)
            if w in table:
                raise AlgFileError(f"{where}: duplicate rule for ({m.group(2)})")
            table[w] = {}
            for o, c in parse_sum(space, m.group(3), where).items():
                add_into(table, w, o, c)
        maps[mname] = Cochain(space, {w: r for w, r in table.items() if r})
    elements = {}
    for ename, text in (data.get("elements") or {}).items():
        elements[ename] = Element(space, parse_sum(space, text, f"element {ename}"))
    clash = set(maps) & set(elements)
    if clash:
        raise AlgFileError(f"names defined twice: {sorted(clash)}")
    return AlgebraFile(data.get("name", name), space, maps, elements,
                       data.get("product"), data.get("coproduct"))


def load(path) -> AlgebraFile:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise AlgFileError(f"{path}: invalid JSON at line {err.lineno}: {err.msg}") from err
    out = load_dict(data, path.name.split(".")[0])
    out.source = str(path)
    return out


def dump_dict(space: GradedSpace, maps: Dict[str, Cochain], name: str = "algebra", **extra) -> dict:
    """Inverse of :func:`load_dict` for maps (used to write the shipped data files)."""
    def word(o):
        if len(o) == 1:
            return space.labels[o[0]]
        return "{" + ",".join(space.labels[i] for i in o) + "}"

    out = {"name": name, "basis": [{"label": l, "deg": d} for l, d in zip(space.labels, space.degrees)], "maps": {}}
    for mname, c in maps.items():
        rules: List[str] = []
        for w, row in sorted(c.table.items()):
            terms = []
            for o, v in sorted(row.items()):
                coef = "" if v == 1 else "-" if v == -1 else f"{v}*"
                terms.append(f"{coef}{word(o)}")
            rhs = " + ".join(terms).replace("+ -", "- ")
            rules.append(f"{mname}({','.join(space.labels[i] for i in w)}) = {rhs}")
        out["maps"][mname] = rules
    out.update(extra)
    return out
