"""Expression trees for brace notation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Group:
    """One pair of braces ``{e1, ..., en}``, optionally primed."""

    entries: Tuple["Expr", ...]
    primed: bool = False


@dataclass(frozen=True)
class Braces:
    """A row of groups ``{..}{..}...``; the first group is the head string."""

    groups: Tuple[Group, ...]


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Dot:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Tilde:
    operand: "Expr"


@dataclass(frozen=True)
class Susp:
    operand: "Expr"


@dataclass(frozen=True)
class SuspMap:
    pass


@dataclass(frozen=True)
class Ad:
    target: "Expr"
    group: Group


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Name, Braces, Bracket, Dot, Tilde, Susp, SuspMap, Ad, Call]

CALLS = ("d", "D", "R", "deg", "delta")
RESERVED = ("s", "ad", "id") + CALLS


def names_in(expr) -> set:
    """All identifiers referenced by an expression."""
    out = set()
    stack = [expr]
    while stack:
        e = stack.pop()
        if isinstance(e, Name):
            out.add(e.ident)
        elif isinstance(e, Braces):
            for g in e.groups:
                stack.extend(g.entries)
        elif isinstance(e, (Bracket, Dot)):
            stack.extend([e.left, e.right])
        elif isinstance(e, (Tilde, Susp)):
            stack.append(e.operand)
        elif isinstance(e, Ad):
            stack.append(e.target)
            stack.extend(e.group.entries)
        elif isinstance(e, Call):
            stack.append(e.arg)
    return out


def depth(expr) -> int:
    """Nesting depth of brace groups."""
    if isinstance(expr, Braces):
        return 1 + max((depth(e) for g in expr.groups for e in g.entries), default=0)
    if isinstance(expr, (Bracket, Dot)):
        return max(depth(expr.left), depth(expr.right))
    if isinstance(expr, (Tilde, Susp, Call)):
        return depth(expr.operand if not isinstance(expr, Call) else expr.arg)
    if isinstance(expr, Ad):
        return max(depth(expr.target), 1 + max((depth(e) for e in expr.group.entries), default=0))
    return 0
