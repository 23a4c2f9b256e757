"""Evaluation of multibraces.

The workhorse is :func:`brace`, which computes {x}{y_1, ..., y_m} for one
head map and one string of entries.  Longer expressions {x}{S_1}{S_2}...
are evaluated as a left fold, each step producing the residual map whose
open slots wait for the next string.

When the outputs of the entries fit into the slots of x they are inserted
in order, leaving the remaining slots open.  When they do not fit, x slides
over the output word instead.  Signs follow the Koszul rule: an entry pays
for every input letter it is moved past, and a sliding head pays for every
output letter in front of it.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from . import exprs as E
from .cochains import Cochain, Degrees, Table, add_into, adjoint, suspension_map, tilde
from .scalars import Element, GradedSpace, Word, sign, suspend
from .signs import koszul


class BraceError(Exception):
    """Base class for evaluation errors."""


class UnderdeterminedExpression(BraceError):
    """Raised for mixtures of strings whose meaning is not fixed by the rules."""


class SaturationError(BraceError):
    """Raised in strict mode when slots are left open."""


class UnresolvedName(BraceError):
    pass


def _is_element(c: Cochain) -> bool:
    return c.is_element()


def _is_map(c: Cochain) -> bool:
    return any(len(w) > 0 for w in c.table)


# --- one step ---------------------------------------------------------------

def brace(x: Cochain, entries: Sequence[Cochain]) -> Cochain:
    """{x}{entries}: insert the entries into x, or slide x over their outputs."""
    if not entries:
        return x
    dom = entries[0].space
    for e in entries:
        if e.space != dom:
            raise BraceError("entries of one string act on different spaces")
        if e.target != x.space:
            raise BraceError(f"outputs of an entry live in {e.target.name}, but the head acts on {x.space.name}")
    acc: Table = {}
    entry_pieces = [list(e.pieces().items()) for e in entries]
    for (k, l), xp in x.pieces().items():
        for combo in product(*entry_pieces):
            total_out = sum(kl[1] for kl, _ in combo)
            if total_out <= k:
                _insert(acc, xp, k, combo, dom, x.space)
            else:
                if x.target != x.space:
                    raise BraceError("a map between different spaces cannot slide over a word")
                _slide(acc, xp, k, l, combo, dom, x.space)
    return Cochain._raw(dom, acc, x.target)


def _entry_options(row, kp, lp, block_deg, tdeg, passed_d, passed_s, susp):
    dy = kp - lp
    opts = []
    for out, c in row.items():
        sy = sum(tdeg[i] for i in out) - block_deg
        opts.append((out, c, koszul(dy, sy, passed_d, passed_s, susp)))
    return opts


def _insert(acc, xp, k, combo, dom: GradedSpace, mid: GradedSpace):
    m = len(combo)
    total_out = sum(kl[1] for kl, _ in combo)
    n_open = k - total_out
    ddeg, tdeg, susp = dom.degrees, mid.degrees, dom.suspended
    letters = list(range(dom.dim))
    piece_items = [list(t.items()) for _, t in combo]
    for ypos in combinations(range(n_open + m), m):
        layout = [-1] * (n_open + m)
        for q, pos in enumerate(ypos):
            layout[pos] = q
        choice_lists = [letters if item < 0 else piece_items[item] for item in layout]
        for choice in product(*choice_lists):
            w: List[int] = []
            parts = []
            passed_d = passed_s = 0
            for item, ch in zip(layout, choice):
                if item < 0:
                    w.append(ch)
                    parts.append((((ch,), 1, 0),))
                    passed_d -= 1
                    passed_s += ddeg[ch]
                else:
                    block, row = ch
                    kp, lp = combo[item][0]
                    bdeg = sum(ddeg[i] for i in block)
                    parts.append(_entry_options(row, kp, lp, bdeg, tdeg, passed_d, passed_s, susp))
                    w.extend(block)
                    passed_d -= kp
                    passed_s += bdeg
            w_t = tuple(w)
            for sel in product(*parts):
                xin = ()
                coef = 1
                par = 0
                for out, c, p in sel:
                    xin += out
                    coef *= c
                    par += p
                row = xp.get(xin)
                if not row:
                    continue
                s = -coef if par & 1 else coef
                for xo, xc in row.items():
                    add_into(acc, w_t, xo, s * xc)


def _slide(acc, xp, k, l, combo, dom: GradedSpace, mid: GradedSpace):
    ddeg, tdeg = dom.degrees, mid.degrees
    in_susp, out_susp = dom.suspended, mid.suspended
    piece_items = [list(t.items()) for _, t in combo]
    dx = k - l
    for choice in product(*piece_items):
        w: List[int] = []
        parts = []
        passed_d = passed_s = 0
        for q, (block, row) in enumerate(choice):
            kp, lp = combo[q][0]
            bdeg = sum(ddeg[i] for i in block)
            parts.append(_entry_options(row, kp, lp, bdeg, tdeg, passed_d, passed_s, in_susp))
            w.extend(block)
            passed_d -= kp
            passed_s += bdeg
        w_t = tuple(w)
        for sel in product(*parts):
            word = ()
            coef = 1
            par = 0
            for out, c, p in sel:
                word += out
                coef *= c
                par += p
            if k == 0:
                _shuffle_in(acc, xp.get((), {}), w_t, word, coef, par, tdeg, out_susp)
                continue
            pre_deg = 0
            for i in range(len(word) - k + 1):
                if i:
                    pre_deg += tdeg[word[i - 1]]
                window = word[i:i + k]
                row = xp.get(window)
                if not row:
                    continue
                wdeg = sum(tdeg[j] for j in window)
                for xo, xc in row.items():
                    sx = sum(tdeg[j] for j in xo) - wdeg
                    p2 = koszul(dx, sx, -i, pre_deg, out_susp)
                    s = coef * xc
                    if (par + p2) & 1:
                        s = -s
                    add_into(acc, w_t, word[:i] + xo + word[i + k:], s)


def _shuffle_in(acc, row, w_t, word, coef, par, tdeg, susp):
    # an element of TA has no inputs: its letters shuffle into the word,
    # so that {a}{b} is the (associative) shuffle product
    n = len(word)
    for xo, xc in row.items():
        m = len(xo)
        for pos in combinations(range(n + m), m):
            out = []
            p2 = 0
            ih = iw = 0
            for t in range(n + m):
                if ih < m and pos[ih] == t:
                    h = xo[ih]
                    for wj in word[:iw]:
                        p2 += koszul(-1, tdeg[h], -1, tdeg[wj], susp)
                    out.append(h)
                    ih += 1
                else:
                    out.append(word[iw])
                    iw += 1
            s = coef * xc
            if (par + p2) & 1:
                s = -s
            add_into(acc, w_t, tuple(out), s)


def brace_fold(head: Cochain, strings: Sequence[Sequence[Cochain]], check_heights: bool = True) -> Cochain:
    """{head}{S_1}{S_2}... evaluated as a left fold of :func:`brace`."""
    if check_heights:
        _check_heights(strings)
    value = head
    for s in strings:
        value = brace(value, list(s))
    return value


def _check_heights(strings):
    seen_element = False
    for s in strings:
        if seen_element and any(_is_map(e) for e in s):
            raise UnderdeterminedExpression(
                "a string containing maps follows a string containing elements of A; "
                "the placement is not determined")
        if any(_is_element(e) for e in s):
            seen_element = True


def compose(x: Cochain, y: Cochain) -> Cochain:
    """The extended composition x o y = {x}{y}."""
    return brace(x, [y])


# --- tensor products and shuffles ------------------------------------------

def tensor(*maps: Cochain, convention: Optional[str] = None) -> Cochain:
    """Koszul tensor product x_1 (x) ... (x) x_p of maps, split by exact arities.

    Entry t pays for the input letters of entries 1..t-1.  ``convention``
    overrides the sign rule: "super" ignores the d-degree.
    """
    if not maps:
        raise ValueError("empty tensor product")
    dom = maps[0].space
    tgt = maps[0].target
    for x in maps:
        if x.space != dom or x.target != tgt:
            raise BraceError("tensor factors act on different spaces")
    susp = dom.suspended if convention is None else convention == "super"
    ddeg, tdeg = dom.degrees, tgt.degrees
    acc: Table = {}
    items = [list(x.table.items()) for x in maps]
    for choice in product(*items):
        w = ()
        parts = []
        passed_d = passed_s = 0
        for block, row in choice:
            bdeg = sum(ddeg[i] for i in block)
            kp = len(block)
            opts = []
            for out, c in row.items():
                sy = sum(tdeg[i] for i in out) - bdeg
                opts.append((out, c, koszul(kp - len(out), sy, passed_d, passed_s, susp)))
            parts.append(opts)
            w += block
            passed_d -= kp
            passed_s += bdeg
        for sel in product(*parts):
            out = ()
            coef = 1
            par = 0
            for o, c, p in sel:
                out += o
                coef *= c
                par += p
            add_into(acc, w, out, -coef if par & 1 else coef)
    return Cochain._raw(dom, acc, tgt)


def shuffle(first: Sequence[Cochain], second: Sequence[Cochain]) -> Cochain:
    """{u_1..u_k}{v_1..v_n} for elements of TA: signed shuffles of the entries."""
    space = first[0].target
    susp = space.suspended
    k, n = len(first), len(second)
    terms_a = [list(e.table.get((), {}).items()) for e in first]
    terms_b = [list(e.table.get((), {}).items()) for e in second]
    acc: Table = {}
    for choice in product(*(terms_a + terms_b)):
        units = [w for w, _ in choice]
        coef = 1
        for _, c in choice:
            coef *= c
        bideg = [(-len(u), space.word_degree(u)) for u in units]
        for pos_b in combinations(range(k + n), n):
            order = []
            ia, ib = 0, k
            pos_set = set(pos_b)
            for t in range(k + n):
                if t in pos_set:
                    order.append(ib)
                    ib += 1
                else:
                    order.append(ia)
                    ia += 1
            par = 0
            # b-unit j passes every a-unit that comes after it in the reading
            for t, u in enumerate(order):
                if u >= k:
                    for u2 in order[t + 1:]:
                        if u2 < k:
                            par += koszul(*bideg[u], *bideg[u2], susp)
            word = ()
            for u in order:
                word += units[u]
            add_into(acc, (), word, -coef if par & 1 else coef)
    return Cochain._raw(space, acc)


def insert_into_tensor(head: Sequence[Cochain], ys: Sequence[Cochain]) -> Cochain:
    """{x_1..x_p}{y_1..y_m}: every y goes into one x, blocks in order.

    y_q lands in x_t and so moves past x_{t+1}, ..., x_p.
    """
    p = len(head)
    head_comps = [list(x.components().items()) for x in head]
    y_comps = [list(y.components().items()) for y in ys]
    total: Optional[Cochain] = None
    for targets in _monotone_maps(len(ys), p):
        for hc in product(*head_comps):
            for yc in product(*y_comps):
                par = 0
                for q, t in enumerate(targets):
                    (ky, ly, sy), _ = yc[q]
                    for t2 in range(t + 1, p):
                        (kx, lx, sx), _ = hc[t2]
                        par += koszul(ky - ly, sy, kx - lx, sx, head[0].space.suspended)
                factors = []
                for t in range(p):
                    block = [yc[q][1] for q in range(len(ys)) if targets[q] == t]
                    factors.append(brace(hc[t][1], block) if block else hc[t][1])
                term = tensor(*factors)
                if par & 1:
                    term = -term
                total = term if total is None else total + term
    if total is None:
        return Cochain.zero(ys[0].space, head[0].target)
    return total


def _monotone_maps(m: int, p: int):
    def rec(q, lo):
        if q == m:
            yield ()
            return
        for t in range(lo, p):
            for rest in rec(q + 1, t):
                yield (t,) + rest
    return rec(0, 0)


def eval_strings(head: Sequence[Cochain], strings: Sequence[Sequence[Cochain]]) -> Cochain:
    """Evaluate {head}{S_1}... where the head string may have several entries."""
    if len(head) == 1:
        return brace_fold(head[0], strings)
    if not strings:
        return tensor(*head)
    first = list(strings[0])
    if all(_is_element(e) for e in first):
        if all(_is_element(h) for h in head):
            value = shuffle(head, first)
        else:
            value = _apply_exact(tensor(*head), tensor(*first))
    elif not any(_is_element(e) for e in first):
        value = insert_into_tensor(head, first)
    else:
        raise UnderdeterminedExpression("a several-entry head followed by a string mixing maps and elements")
    return brace_fold(value, strings[1:])


def _apply_exact(t: Cochain, word: Cochain) -> Cochain:
    acc: Table = {}
    for w, c in word.table.get((), {}).items():
        for o, v in t.table.get(w, {}).items():
            add_into(acc, (), o, c * v)
    return Cochain._raw(word.space, acc, t.target)


# --- degrees ------------------------------------------------------------------

def composition_degrees(x: Degrees, y: Degrees) -> Degrees:
    """(D, R) of x o y for the extended composition; super degrees add."""
    if y.R <= x.D:
        D, R = y.D + x.D - y.R, x.R
    else:
        D, R = y.D, x.R + y.R - x.D
    return Degrees(D, R, D - R, x.super + y.super)


def string_degrees(x: Degrees, ys: Sequence[Degrees]) -> Degrees:
    total_out = sum(y.R for y in ys)
    if total_out <= x.D:
        D, R = x.D - total_out + sum(y.D for y in ys), x.R
    else:
        D, R = sum(y.D for y in ys), x.R + total_out - x.D
    return Degrees(D, R, D - R, x.super + sum(y.super for y in ys))


def tensor_degrees(ds: Sequence[Degrees]) -> Degrees:
    D = sum(d.D for d in ds)
    R = sum(d.R for d in ds)
    return Degrees(D, R, D - R, sum(d.super for d in ds))


# --- placements ---------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    """Shape of a bihomogeneous entry with a single output: D slots, degrees (d, |x|)."""

    D: int
    super: int = 0

    @property
    def d(self) -> int:
        return self.D - 1


@dataclass(frozen=True)
class Placement:
    """``parent[(i, j)] = ((i', j'), slot)`` for every non-head entry (string i, position j)."""

    parent: Tuple[Tuple[Tuple[int, int], Tuple[Tuple[int, int], int]], ...]

    def as_dict(self):
        return dict(self.parent)


def enumerate_placements(strings: Sequence[Sequence[Atom]], suspended: bool = False) -> List[Tuple[Placement, int]]:
    """All fillings of a saturated {x}{S_1}...{S_r} with their sign exponents.

    ``strings[0]`` must hold the single head entry.  Strings are processed in
    order; each entry takes one of the currently open slots, entries of a
    string keep their order, and the entry's own slots replace the slot it
    took.  An entry pays for the entries it overtakes.
    """
    if len(strings[0]) != 1:
        raise BraceError("placements need a single head entry")
    head = (0, 0)
    results: List[Tuple[Placement, int]] = []

    def slots_of(entry_id, atom):
        return [(entry_id, s) for s in range(atom.D)]

    def rec(i, open_slots, assignment):
        if i == len(strings):
            if open_slots:
                return
            results.append(assignment)
            return
        string = strings[i]
        n = len(string)
        for chosen in combinations(range(len(open_slots)), n):
            new_open = []
            new_assign = dict(assignment)
            chosen_set = {c: j for j, c in enumerate(chosen)}
            for idx, slot in enumerate(open_slots):
                if idx in chosen_set:
                    j = chosen_set[idx]
                    new_assign[(i, j)] = slot
                    new_open.extend(slots_of((i, j), string[j]))
                else:
                    new_open.append(slot)
            rec(i + 1, new_open, new_assign)

    rec(1, slots_of(head, strings[0][0]), {})
    atoms = {(i, j): a for i, s in enumerate(strings) for j, a in enumerate(s)}
    out = []
    for assign in results:
        order = _reading_order(head, assign)
        written = sorted(atoms)
        pos = {e: t for t, e in enumerate(order)}
        par = 0
        for a_i, e in enumerate(written):
            for f in written[a_i + 1:]:
                if pos[f] < pos[e]:
                    ae, af = atoms[e], atoms[f]
                    par += koszul(ae.d, ae.super, af.d, af.super, suspended)
        out.append((Placement(tuple(sorted(assign.items()))), par & 1))
    return out


def _reading_order(head, assign):
    children: Dict = {}
    for e, (parent, slot) in assign.items():
        children.setdefault(parent, []).append((slot, e))
    order = []

    def visit(e):
        order.append(e)
        for _, c in sorted(children.get(e, [])):
            visit(c)

    visit(head)
    return order


# --- expression evaluation ------------------------------------------------------

class Environment:
    """Names visible to an expression: maps, elements and basis labels of one space."""

    def __init__(self, space: GradedSpace, names: Optional[Dict[str, object]] = None,
                 product: str = "m", coproduct: Optional[str] = None):
        self.space = space
        self.names: Dict[str, object] = dict(names or {})
        self.product = product
        self.coproduct = coproduct

    def lookup(self, ident: str):
        if ident in self.names:
            return self.names[ident]
        if ident == "id":
            from .cochains import identity
            return identity(self.space)
        if ident in self.space._index:
            return Element.basis(self.space, ident)
        raise UnresolvedName(f"unresolved name {ident!r}")

    def product_map(self) -> Cochain:
        val = self.lookup(self.product)
        if not isinstance(val, Cochain):
            raise BraceError(f"{self.product!r} is not a map")
        return val

    def with_names(self, **extra) -> "Environment":
        names = dict(self.names)
        names.update(extra)
        return Environment(self.space, names, self.product, self.coproduct)


def as_cochain(value) -> Cochain:
    if isinstance(value, Cochain):
        return value
    if isinstance(value, Element):
        return Cochain.from_element(value)
    raise BraceError(f"expected a map or an element, got {value!r}")


def _finish(c: Cochain):
    return c.to_element() if c.is_element() else c


def evaluate(expr, env: Environment, strict: bool = False):
    """Evaluate an expression to an :class:`Element`, a :class:`Cochain` or an int."""
    value = _eval(expr, env)
    if isinstance(value, Cochain):
        value = _finish(value)
    if strict and isinstance(value, Cochain):
        raise SaturationError("open slots remain after evaluation (strict mode)")
    return value


def _eval(expr, env: Environment):
    if isinstance(expr, E.Name):
        return env.lookup(expr.ident)
    if isinstance(expr, E.Braces):
        return _eval_braces(expr, env)
    if isinstance(expr, E.Bracket):
        from .gerstenhaber import g_bracket
        return g_bracket(as_cochain(_eval(expr.left, env)), as_cochain(_eval(expr.right, env)))
    if isinstance(expr, E.Dot):
        from .gerstenhaber import cup
        return cup(as_cochain(_eval(expr.left, env)), as_cochain(_eval(expr.right, env)), env.product_map())
    if isinstance(expr, E.Tilde):
        val = _eval(expr.operand, env)
        if not isinstance(val, Cochain):
            raise BraceError("~ applies to maps")
        return tilde(val)
    if isinstance(expr, E.SuspMap):
        return suspension_map(env.space)
    if isinstance(expr, E.Susp):
        val = _eval(expr.operand, env)
        if isinstance(val, Element):
            return suspend(val)
        if isinstance(val, Cochain):
            if val.is_element():
                return suspend(val.to_element())
            return brace(suspension_map(val.target), [val])
        raise BraceError("s applies to elements and maps")
    if isinstance(expr, E.Ad):
        x = as_cochain(_eval(expr.target, env))
        args = [as_cochain(_eval(e, env)) for e in expr.group.entries]
        return _adjoint_multilinear(x, args)
    if isinstance(expr, E.Call):
        val = as_cochain(_eval(expr.arg, env))
        if expr.func == "delta":
            from .gerstenhaber import hochschild_delta
            return hochschild_delta(val, env.product_map())
        deg = val.degrees()
        return {"d": deg.d, "D": deg.D, "R": deg.R, "deg": deg.super}[expr.func]
    raise BraceError(f"cannot evaluate {expr!r}")


def _adjoint_multilinear(x: Cochain, args: Sequence[Cochain]) -> Cochain:
    total = Cochain.zero(x.space, x.target)
    choices = []
    for a in args:
        if not a.is_element():
            raise BraceError("ad(x){...} takes elements of A")
        choices.append(list(a.table.get((), {}).items()))
    for sel in product(*choices):
        word = ()
        coef = 1
        for w, c in sel:
            word += w
            coef *= c
        total = total + adjoint(x, word) * coef
    return total


def _eval_braces(expr: E.Braces, env: Environment):
    groups = expr.groups
    if any(g.primed for g in groups):
        from .coalgebra import eval_primed
        return eval_primed(expr, env)
    head = [as_cochain(_eval(e, env)) for e in groups[0].entries]
    strings = [[as_cochain(_eval(e, env)) for e in g.entries] for g in groups[1:]]
    if not head:
        raise BraceError("empty head string")
    return eval_strings(head, strings)


def infer_degrees(expr, env: Environment) -> Degrees:
    """Bidegree of an expression from the degree rules alone."""
    if isinstance(expr, E.Name):
        return as_cochain(env.lookup(expr.ident)).degrees()
    if isinstance(expr, E.Braces):
        groups = expr.groups
        head = [infer_degrees(e, env) for e in groups[0].entries]
        cur = head[0] if len(head) == 1 else tensor_degrees(head)
        for g in groups[1:]:
            ys = [infer_degrees(e, env) for e in g.entries]
            if len(head) > 1 and g is groups[1] and all(y.D == 0 for y in ys):
                D, R = cur.D - sum(y.R for y in ys), cur.R
                cur = Degrees(D, R, D - R, cur.super + sum(y.super for y in ys))
            elif len(head) > 1 and g is groups[1]:
                cur = Degrees(cur.D + sum(y.D - y.R for y in ys), cur.R,
                              cur.D + sum(y.D - y.R for y in ys) - cur.R, cur.super + sum(y.super for y in ys))
            else:
                cur = string_degrees(cur, ys)
        return cur
    if isinstance(expr, E.Bracket):
        return composition_degrees(infer_degrees(expr.left, env), infer_degrees(expr.right, env))
    if isinstance(expr, E.Dot):
        x, y = infer_degrees(expr.left, env), infer_degrees(expr.right, env)
        m = env.product_map().degrees()
        D = x.D + y.D
        return Degrees(D, m.R, D - m.R, x.super + y.super + m.super)
    if isinstance(expr, E.Tilde):
        x = infer_degrees(expr.operand, env)
        return Degrees(x.D, x.R, x.d, x.super + x.d)
    if isinstance(expr, E.Susp):
        x = infer_degrees(expr.operand, env)
        return Degrees(x.D, x.R, x.d, x.super - x.R)
    if isinstance(expr, E.SuspMap):
        return Degrees(1, 1, 0, -1)
    if isinstance(expr, E.Ad):
        x = infer_degrees(expr.target, env)
        args = [infer_degrees(e, env) for e in expr.group.entries]
        return Degrees(x.D - len(args), x.R, x.D - len(args) - x.R, x.super + sum(a.super for a in args))
    if isinstance(expr, E.Call):
        x = infer_degrees(expr.arg, env)
        if expr.func == "delta":
            m = env.product_map().degrees()
            D = x.D + m.D - 1
            return Degrees(D, 1, D - 1, x.super + m.super)
        raise BraceError(f"{expr.func}(...) is an integer, not a map")
    raise BraceError(f"cannot infer degrees of {expr!r}")
