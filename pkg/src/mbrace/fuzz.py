"""Seeded random brace expressions and the engine/oracle comparison."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional

from . import exprs as E
from . import oracle
from .cochains import Cochain, random_cochain
from .dsl import to_text
from .engine import BraceError, Environment, evaluate, infer_degrees
from .scalars import Element, GradedSpace

SPACES = (
    GradedSpace.from_basis("ext", [("1", 0), ("th", 1)]),
    GradedSpace.from_basis("mixed", [("u", 0), ("v", 1), ("w", -1)]),
    GradedSpace.from_basis("flat", [("p", 0), ("q", 0)]),
)


@dataclass
class Case:
    expr: object
    env: Environment

    @property
    def text(self) -> str:
        return to_text(self.expr)


def random_env(rng: random.Random, space: Optional[GradedSpace] = None) -> Environment:
    space = space or rng.choice(SPACES)
    names = {}
    for k, ident in enumerate(("x", "y", "z", "w")):
        arity = rng.choice([1, 2, 2, 3]) if k < 3 else rng.choice([0, 1])
        names[ident] = random_cochain(space, arity, rng.randint(-1, 1), rng, density=0.5)
    for ident in ("a", "b", "c"):
        i = rng.randrange(space.dim)
        names[ident] = Element.basis(space, i) * rng.choice([1, -1, 2])
    names["m"] = random_cochain(space, 2, 0, rng, density=0.5)
    return Environment(space, names)


def _map_expr(rng: random.Random, depth: int):
    if depth <= 1 or rng.random() < 0.4:
        return E.Name(rng.choice("xyzw"))
    r = rng.random()
    if r < 0.5:
        head = E.Group((_map_expr(rng, depth - 1),))
        k = rng.choice([1, 1, 2])
        return E.Braces((head, E.Group(tuple(_map_expr(rng, depth - 1) for _ in range(k)))))
    if r < 0.8:
        return E.Bracket(_map_expr(rng, depth - 1), _map_expr(rng, depth - 1))
    return E.Dot(_map_expr(rng, depth - 1), _map_expr(rng, depth - 1))


def random_expr(rng: random.Random, max_depth: int = 3):
    depth = rng.randint(1, max_depth)
    head = _map_expr(rng, depth)
    groups = [E.Group((head,))]
    if rng.random() < 0.7:
        for _ in range(rng.choice([1, 1, 2])):
            groups.append(E.Group(tuple(_map_expr(rng, max(1, depth - 1)) for _ in range(rng.choice([1, 2])))))
    if rng.random() < 0.5:
        groups.append(E.Group(tuple(E.Name(rng.choice("abc")) for _ in range(rng.choice([1, 2])))))
    if len(groups) == 1:
        return head
    return E.Braces(tuple(groups))


def _subexprs(expr):
    yield expr
    if isinstance(expr, E.Braces):
        for g in expr.groups:
            for e in g.entries:
                yield from _subexprs(e)
    elif isinstance(expr, (E.Bracket, E.Dot)):
        yield from _subexprs(expr.left)
        yield from _subexprs(expr.right)


def within_arity(expr, env: Environment, max_arity: int = 5) -> bool:
    """True when every subexpression has at most ``max_arity`` inputs by the degree rules."""
    try:
        return all(infer_degrees(e, env).D <= max_arity for e in _subexprs(expr))
    except (BraceError, ValueError):
        return False


def _same(u, v) -> bool:
    if isinstance(u, Element):
        u = Cochain.from_element(u)
    if isinstance(v, Element):
        v = Cochain.from_element(v)
    return u == v


@dataclass
class Comparison:
    text: str
    space: str
    agree: bool
    zero: bool
    engine: str
    oracle: str


def compare(case: Case) -> Comparison:
    ev = evaluate(case.expr, case.env)
    ov = oracle.evaluate(case.expr, case.env).value
    zero = (ov.is_zero() if isinstance(ov, Cochain) else not ov.terms)
    return Comparison(case.text, case.env.space.name, _same(ev, ov), zero, repr(ev), repr(ov))


def corpus(seed: int, count: int, max_depth: int = 3, max_arity: int = 5, max_tries: int = 200) -> List[Comparison]:
    """``count`` comparisons on expressions both evaluators cover, regenerating the rest."""
    rng = random.Random(seed)
    out: List[Comparison] = []
    while len(out) < count:
        for _ in range(max_tries):
            env = random_env(rng)
            expr = random_expr(rng, max_depth)
            if isinstance(expr, E.Name) or not within_arity(expr, env, max_arity):
                continue
            try:
                out.append(compare(Case(expr, env)))
                break
            except (oracle.OracleError, BraceError):
                continue
        else:
            raise RuntimeError("could not generate a covered expression")
    return out
