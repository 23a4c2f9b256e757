"""A deliberately naive evaluator of brace expressions.

Every non-head entry picks a parent entry from an earlier string and one of
its slots; all such choices are listed by brute force and filtered down to
those that fill every slot exactly once and keep the order inside each
string.  Each surviving tree is read in pre-order, its sign is the Koszul
sign of the permutation from written order to reading order, and its value
is plain nested function application.

Only maps with a single output and elements of A are covered.  Open slots
are handled by feeding every basis word into them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

from . import exprs as E
from .cochains import Cochain, Table, add_into
from .engine import Environment, as_cochain
from .scalars import Element, sign
from . import signs

MAX_ASSIGNMENTS = 10 ** 6


class OracleError(Exception):
    pass


@dataclass
class OracleTerm:
    sign: int
    reading: Tuple[Tuple[int, int], ...]
    row: Dict  # output word -> coefficient, before the sign


@dataclass
class OracleResult:
    value: object
    terms: List[OracleTerm] = field(default_factory=list)


@dataclass
class _Atom:
    key: Tuple[int, int]
    D: int
    super: int
    table: Table


def _components(c: Cochain):
    out = []
    for (k, l, s), comp in c.components().items():
        if l != 1:
            raise OracleError("the oracle only handles maps with a single output")
        out.append((k, s, comp.table))
    return out


def _tree_value(atom_by_key, children, key):
    """Values of the subtree at ``key`` as {letter word: coefficient}."""
    atom = atom_by_key[key]
    kids = [c for _, c in sorted(children.get(key, []))]
    kid_vals = [_tree_value(atom_by_key, children, c) for c in kids]
    out: Dict = {}
    for sel in product(*(list(v.items()) for v in kid_vals)):
        word = ()
        coef = 1
        for w, c in sel:
            word += w
            coef *= c
        for o, v in atom.table.get(word, {}).items():
            out[o] = out.get(o, 0) + coef * v
    return out


def _shapes(slot_counts: Tuple[Tuple[int, ...], ...]):
    """All trees for strings whose entries have the given numbers of slots.

    Returns a list of (children, reading) pairs, found by trying every
    parent and slot for every entry and keeping the valid choices.
    """
    keys = [[(i, j) for j in range(len(s))] for i, s in enumerate(slot_counts)]
    D = {(i, j): n for i, s in enumerate(slot_counts) for j, n in enumerate(s)}
    head = keys[0][0]
    lower = [k for s in keys[1:] for k in s]
    if sum(D.values()) != len(lower):
        raise OracleError("expression is not saturated")
    candidates = []
    for (i, j) in lower:
        candidates.append([(p, slot) for s in keys[:i] for p in s for slot in range(D[p])])
    count = 1
    for c in candidates:
        count *= max(len(c), 1)
    if count > MAX_ASSIGNMENTS:
        raise OracleError(f"too many candidate trees ({count})")
    found = []
    for choice in product(*candidates):
        if len(set(choice)) != len(choice):
            continue
        children: Dict = {}
        for key, (parent, slot) in zip(lower, choice):
            children.setdefault(parent, []).append((slot, key))
        reading = []
        stack = [head]
        while stack:
            k = stack.pop()
            reading.append(k)
            stack.extend(c for _, c in sorted(children.get(k, []), reverse=True))
        if len(reading) != len(lower) + 1:
            continue
        pos = {k: t for t, k in enumerate(reading)}
        if all([pos[k] for k in s] == sorted(pos[k] for k in s) for s in keys[1:]):
            found.append((children, tuple(reading)))
    return found


_shape_cache: Dict = {}


def _saturated(atoms: List[List[_Atom]], terms: Optional[list]) -> Dict:
    shape = tuple(tuple(a.D for a in s) for s in atoms)
    if shape not in _shape_cache:
        _shape_cache[shape] = _shapes(shape)
    flat = [a for s in atoms for a in s]
    by_key = {a.key: a for a in flat}
    written = [a.key for a in flat]
    bidegrees = [(a.D - 1, a.super) for a in flat]
    head = atoms[0][0].key
    out: Dict = {}
    for children, reading in _shape_cache[shape]:
        sigma = tuple(written.index(k) for k in reading)
        e = signs.p_exponent(sigma, bidegrees)
        val = _tree_value(by_key, children, head)
        for o, v in val.items():
            out[o] = out.get(o, 0) + sign(e) * v
        if terms is not None:
            terms.append(OracleTerm(sign(e), reading, dict(val)))
    return out


def eval_strings(head: Cochain, strings: Sequence[Sequence[Cochain]], keep_terms: bool = False) -> OracleResult:
    """{head}{S_1}...{S_r}, residual if slots stay open."""
    if head.target != head.space:
        raise OracleError("maps between different spaces are not covered")
    seen_element = False
    for s in strings:
        if seen_element and any(not c.is_element() for c in s):
            raise OracleError("maps after elements of A are not determined")
        if any(c.is_element() for c in s):
            seen_element = True
    space = head.space
    entry_comps = [[_components(c) for c in s] for s in [[head]] + [list(s) for s in strings]]
    keys = [[(i, j) for j in range(len(s))] for i, s in enumerate(entry_comps)]
    flat_comps = [comp for s in entry_comps for comp in s]
    flat_keys = [k for s in keys for k in s]
    acc: Table = {}
    terms = [] if keep_terms else None
    for choice in product(*flat_comps):
        atom_of = {k: _Atom(k, D, s, t) for k, (D, s, t) in zip(flat_keys, choice)}
        atoms = [[atom_of[k] for k in s] for s in keys]
        n_open = atoms[0][0].D
        for s in atoms[1:]:
            if len(s) > n_open:
                raise OracleError("more arguments than slots: sliding is not covered")
            n_open += sum(a.D for a in s) - len(s)
        if n_open == 0:
            for o, v in _saturated(atoms, terms).items():
                add_into(acc, (), o, v)
            continue
        last = len(atoms)
        for w in space.words(n_open):
            extra = [_Atom((last, j), 0, space.degrees[i], {(): {(i,): 1}}) for j, i in enumerate(w)]
            for o, v in _saturated(atoms + [extra], None).items():
                add_into(acc, w, o, v)
    value = Cochain._raw(space, acc)
    return OracleResult(value, terms or [])


def evaluate(expr, env: Environment, keep_terms: bool = False) -> OracleResult:
    """Definitional value of an expression built from names, braces, brackets and cup products."""
    res = _eval(expr, env, keep_terms)
    v = res.value
    if isinstance(v, Cochain) and v.is_element():
        res.value = v.to_element()
    return res


def _eval(expr, env, keep_terms=False) -> OracleResult:
    if isinstance(expr, E.Name):
        return OracleResult(as_cochain(env.lookup(expr.ident)))
    if isinstance(expr, E.Braces):
        if any(g.primed for g in expr.groups):
            raise OracleError("primed braces are not covered")
        if len(expr.groups[0].entries) != 1:
            raise OracleError("the oracle needs a single head entry")
        head = _eval(expr.groups[0].entries[0], env).value
        strings = [[_eval(e, env).value for e in g.entries] for g in expr.groups[1:]]
        return eval_strings(head, strings, keep_terms)
    if isinstance(expr, E.Bracket):
        x = _eval(expr.left, env).value
        y = _eval(expr.right, env).value
        return OracleResult(bracket(x, y))
    if isinstance(expr, E.Dot):
        x = _eval(expr.left, env).value
        y = _eval(expr.right, env).value
        m = env.product_map()
        total = Cochain.zero(x.space)
        for (k, _, _), xc in x.components().items():
            t = eval_strings(m, [[xc, y]]).value
            total = total + (t * sign(k))
        return OracleResult(total)
    raise OracleError(f"{type(expr).__name__} is not covered by the oracle")


def bracket(x: Cochain, y: Cochain) -> Cochain:
    """[x, y] from definitional compositions of single-output maps."""
    total = Cochain.zero(x.space)
    for (kx, lx, sx), xc in x.components().items():
        for (ky, ly, sy), yc in y.components().items():
            e = signs.koszul(kx - lx, sx, ky - ly, sy, x.space.suspended)
            xy = eval_strings(xc, [[yc]]).value
            yx = eval_strings(yc, [[xc]]).value
            total = total + xy - yx * sign(e)
    return total


def antisymmetrize_definitional(m: Cochain, args) -> Element:
    """sum over all sigma of (-1)^{p(sigma)} m(a_sigma(1), ..., a_sigma(n)), one permutation at a time."""
    space = m.space
    word = tuple(a if isinstance(a, int) else space.index(a) for a in args)
    degs = [space.degrees[i] for i in word]
    out: Dict = {}
    for sigma in permutations(range(len(word))):
        e = signs.p_for_elements(sigma, degs)
        for o, c in m.table.get(tuple(word[u] for u in sigma), {}).items():
            out[o] = out.get(o, 0) + sign(e) * c
    return Element(m.target, out)
