"""Multilinear maps TA -> TA stored as exact sparse tables.

A :class:`Cochain` keeps ``table[in_word][out_word] = coefficient``.  Its
pieces are the restrictions A^{(x)k} -> A^{(x)l}; each piece has
D = k, R = l and d = k - l, and every table entry has its own super degree
|out| - |in|.  An element of TA is the cochain with empty input word, so
elements and maps are handled uniformly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, Iterable, Optional, Tuple

from .scalars import Element, GradedSpace, Scalar, Word, format_terms, sign, to_scalar
from . import signs

Row = Dict[Word, Scalar]
Table = Dict[Word, Row]


@dataclass(frozen=True)
class Degrees:
    D: int
    R: int
    d: int
    super: int

    @property
    def suspended(self) -> int:
        """||x|| = |x| + d(x)."""
        return self.super + self.d

    def as_dict(self) -> dict:
        return {"D": self.D, "R": self.R, "d": self.d, "super": self.super, "suspended": self.suspended}


def add_into(acc: Table, w: Word, out: Word, c: Scalar) -> None:
    row = acc.get(w)
    if row is None:
        acc[w] = {out: c}
        return
    row[out] = row.get(out, 0) + c


def clean_table(table: Table) -> Table:
    out: Table = {}
    for w, row in table.items():
        r = {o: c for o, c in row.items() if c != 0}
        if r:
            out[w] = r
    return out


class Cochain:
    """A linear map TA -> TB given on basis words, with B = A unless ``target`` is set."""

    __slots__ = ("space", "target", "table", "_pieces")

    def __init__(self, space: GradedSpace, table: Optional[Table] = None, target: Optional[GradedSpace] = None):
        self.space = space
        self.target = target if target is not None else space
        self.table = clean_table({tuple(w): {tuple(o): to_scalar(c) for o, c in row.items()}
                                  for w, row in (table or {}).items()})
        self._pieces = None

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, space, table, target=None) -> "Cochain":
        obj = cls.__new__(cls)
        obj.space = space
        obj.target = target if target is not None else space
        obj.table = clean_table(table)
        obj._pieces = None
        return obj

    @classmethod
    def from_element(cls, e: Element) -> "Cochain":
        return cls._raw(e.space, {(): dict(e.terms)} if e.terms else {})

    @classmethod
    def zero(cls, space: GradedSpace, target: Optional[GradedSpace] = None) -> "Cochain":
        return cls._raw(space, {}, target)

    @classmethod
    def from_function(cls, space: GradedSpace, arity: int, fn, target=None) -> "Cochain":
        """Tabulate ``fn(word) -> {out_word: coef}`` on all basis words of one arity."""
        table = {}
        for w in space.words(arity):
            row = fn(w)
            if row:
                table[w] = dict(row)
        return cls(space, table, target)

    # structure ----------------------------------------------------------
    def pieces(self) -> Dict[Tuple[int, int], Table]:
        if self._pieces is None:
            pieces: Dict[Tuple[int, int], Table] = {}
            for w, row in self.table.items():
                for o, c in row.items():
                    add_into(pieces.setdefault((len(w), len(o)), {}), w, o, c)
            self._pieces = pieces
        return self._pieces

    def components(self) -> Dict[Tuple[int, int, int], "Cochain"]:
        """Split into bihomogeneous parts keyed by (D, R, super degree)."""
        parts: Dict[Tuple[int, int, int], Table] = {}
        dom, tgt = self.space, self.target
        for w, row in self.table.items():
            dw = dom.word_degree(w)
            for o, c in row.items():
                key = (len(w), len(o), tgt.word_degree(o) - dw)
                add_into(parts.setdefault(key, {}), w, o, c)
        return {k: Cochain._raw(dom, t, tgt) for k, t in sorted(parts.items())}

    def is_element(self) -> bool:
        return all(len(w) == 0 for w in self.table)

    def to_element(self) -> Element:
        if not self.is_element():
            raise ValueError("cochain still has open slots")
        return Element(self.target, dict(self.table.get((), {})))

    def degrees(self) -> Degrees:
        comps = list(self.components())
        if len(comps) != 1:
            if not comps:
                raise ValueError("the zero map has no well defined degrees")
            raise ValueError(f"cochain is not bihomogeneous: components {comps}")
        k, l, s = comps[0]
        return Degrees(k, l, k - l, s)

    def degree_or(self, default: Degrees) -> Degrees:
        try:
            return self.degrees()
        except ValueError:
            return default

    def restrict(self, k: Optional[int] = None, l: Optional[int] = None) -> "Cochain":
        table: Table = {}
        for w, row in self.table.items():
            if k is not None and len(w) != k:
                continue
            for o, c in row.items():
                if l is None or len(o) == l:
                    add_into(table, w, o, c)
        return Cochain._raw(self.space, table, self.target)

    def hochschild_part(self) -> "Cochain":
        """Projection onto maps with a single output, Hom(TA, A)."""
        return self.restrict(l=1)

    # linear structure ---------------------------------------------------
    def _same(self, other: "Cochain"):
        if not isinstance(other, Cochain):
            raise TypeError(f"expected a Cochain, got {type(other).__name__}")
        if other.space != self.space or other.target != self.target:
            raise ValueError("cochains act on different spaces")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        table = {w: dict(row) for w, row in self.table.items()}
        for w, row in other.table.items():
            for o, c in row.items():
                add_into(table, w, o, c)
        return Cochain._raw(self.space, table, self.target)

    def __neg__(self) -> "Cochain":
        return Cochain._raw(self.space, {w: {o: -c for o, c in row.items()} for w, row in self.table.items()}, self.target)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __mul__(self, scalar) -> "Cochain":
        if isinstance(scalar, Cochain):
            return NotImplemented
        s = to_scalar(scalar)
        return Cochain._raw(self.space, {w: {o: s * c for o, c in row.items()} for w, row in self.table.items()}, self.target)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.table
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.space == other.space and self.target == other.target and self.table == other.table

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.table

    # evaluation ---------------------------------------------------------
    def apply_word(self, word: Word) -> Row:
        return self.table.get(tuple(word), {})

    def apply(self, e: Element) -> Element:
        """Plain multilinear evaluation on every word of ``e`` (no sliding)."""
        if e.space != self.space:
            raise ValueError("element lives in a different space")
        out: Row = {}
        for w, c in e.terms.items():
            for o, v in self.table.get(w, {}).items():
                out[o] = out.get(o, 0) + c * v
        return Element(self.target, out)

    def __call__(self, *args) -> Element:
        """Evaluate on arguments given as labels, indices or elements of A."""
        e = Element(self.space, {(): 1})
        for a in args:
            if isinstance(a, Element):
                e = e @ a
            elif isinstance(a, int):
                e = e @ Element(self.space, {(a,): 1})
            else:
                e = e @ Element.basis(self.space, a)
        return self.apply(e)

    def __repr__(self):
        if self.is_element():
            return f"Cochain[element]({format_terms(self.target, self.table.get((), {}))})"
        return f"Cochain(space={self.space.name}, pieces={sorted(self.pieces())}, entries={sum(len(r) for r in self.table.values())})"

    def describe(self) -> str:
        lines = []
        for w in sorted(self.table, key=lambda w: (len(w), w)):
            row = self.table[w]
            arg = ",".join(self.space.labels[i] for i in w)
            lines.append(f"({arg}) -> {format_terms(self.target, row)}")
        return "\n".join(lines) if lines else "0"


def identity(space: GradedSpace) -> Cochain:
    return Cochain._raw(space, {(i,): {(i,): 1} for i in range(space.dim)})


def element(space: GradedSpace, label, coef: Scalar = 1) -> Cochain:
    return Cochain.from_element(Element.basis(space, label) * coef)


def suspension_map(space: GradedSpace) -> Cochain:
    """s : A -> sA, the identity on coefficients, of super degree -1 and d = 0."""
    return Cochain._raw(space, {(i,): {(i,): 1} for i in range(space.dim)}, space.suspend())


def desuspension_map(space: GradedSpace) -> Cochain:
    """s^{-1} : sA -> A; ``space`` is the suspended space."""
    return Cochain._raw(space, {(i,): {(i,): 1} for i in range(space.dim)}, space.desuspend())


def random_cochain(space: GradedSpace, arity: int, degree: int, rng: random.Random,
                   coarity: int = 1, density: float = 0.6, coef_range: int = 2) -> Cochain:
    """A random bihomogeneous map A^{(x)arity} -> A^{(x)coarity} of super degree ``degree``."""
    outs_by_deg: Dict[int, list] = {}
    for o in space.words(coarity):
        outs_by_deg.setdefault(space.word_degree(o), []).append(o)
    slots = [(w, o) for w in space.words(arity)
             for o in outs_by_deg.get(space.word_degree(w) + degree, [])]
    table: Table = {}
    for w, o in slots:
        if rng.random() < density:
            c = rng.randint(-coef_range, coef_range)
            if c:
                add_into(table, w, o, c)
    if not table and slots:
        # keep the map nonzero whenever its degree allows it
        w, o = rng.choice(slots)
        add_into(table, w, o, rng.choice([-1, 1]))
    return Cochain._raw(space, table)


# --- suspension of maps -----------------------------------------------------

def tilde(m: Cochain) -> Cochain:
    """m~ = s o m o (s^{-1})^{(x)n} as a map on sA, for maps with one output.

    On basis words m~(a_1..a_n) = (-1)^{sum_t (n-t)||a_t||} m(a_1..a_n).
    """
    if m.space.suspended:
        raise ValueError("map already acts on a suspended space")
    susp = m.space.suspend()
    table: Table = {}
    for w, row in m.table.items():
        if any(len(o) != 1 for o in row):
            raise ValueError("tilde is only defined for maps with a single output")
        s = sign(signs.tilde_exponent([m.space.degrees[i] for i in w]))
        table[w] = {o: s * c for o, c in row.items()}
    return Cochain._raw(susp, table)


def untilde(mt: Cochain) -> Cochain:
    """Inverse of :func:`tilde`."""
    if not mt.space.suspended:
        raise ValueError("map does not act on a suspended space")
    base = mt.space.desuspend()
    table: Table = {}
    for w, row in mt.table.items():
        if any(len(o) != 1 for o in row):
            raise ValueError("untilde is only defined for maps with a single output")
        s = sign(signs.tilde_exponent([base.degrees[i] for i in w]))
        table[w] = {o: s * c for o, c in row.items()}
    return Cochain._raw(base, table)


# --- antisymmetrization -----------------------------------------------------

def _perms_with_parity(n: int):
    """Steinhaus-Johnson-Trotter order; yields (perm, adjacent swap index or None)."""
    perm = list(range(n))
    direction = [-1] * n
    yield tuple(perm), None
    while True:
        mobile, mobile_pos = -1, -1
        for pos, val in enumerate(perm):
            nxt = pos + direction[val]
            if 0 <= nxt < n and perm[nxt] < val and val > mobile:
                mobile, mobile_pos = val, pos
        if mobile < 0:
            return
        nxt = mobile_pos + direction[mobile]
        perm[mobile_pos], perm[nxt] = perm[nxt], perm[mobile_pos]
        for val in range(mobile + 1, n):
            direction[val] = -direction[val]
        yield tuple(perm), min(mobile_pos, nxt)


def antisymmetrize(m: Cochain, args: Iterable) -> Element:
    """sum_sigma (-1)^{p(sigma)} m(a_sigma(1), ..., a_sigma(n)) for basis arguments.

    The sign is tracked by adjacent transpositions, each costing
    1 + |a||b| for the exchanged pair of elements of A.
    """
    space = m.space
    word = tuple(a if isinstance(a, int) else space.index(a) for a in args)
    out: Row = {}
    s = 1
    for perm, swap in _perms_with_parity(len(word)):
        if swap is not None:
            # after the swap perm[swap], perm[swap+1] hold the exchanged pair
            a, b = word[perm[swap]], word[perm[swap + 1]]
            if (1 + space.degrees[a] * space.degrees[b]) & 1:
                s = -s
        for o, c in m.table.get(tuple(word[u] for u in perm), {}).items():
            out[o] = out.get(o, 0) + s * c
    return Element(m.target, out)


def antisymmetrize_map(m: Cochain) -> Cochain:
    """The map l with l(a_1..a_n) = antisymmetrization of m at (a_1..a_n), arity by arity."""
    table: Table = {}
    for k in sorted({len(w) for w in m.table}):
        for w in m.space.words(k):
            e = antisymmetrize(m.restrict(k=k), w)
            if e.terms:
                table[w] = dict(e.terms)
    return Cochain._raw(m.space, table, m.target)


def adjoint(x: Cochain, args: Iterable) -> Cochain:
    """ad(x){a_1..a_{n-1}}: the linear map a -> x(a_1, ..., a_{n-1}, a)."""
    space = x.space
    prefix = tuple(a if isinstance(a, int) else space.index(a) for a in args)
    table: Table = {}
    for i in range(space.dim):
        row = x.table.get(prefix + (i,))
        if row:
            table[(i,)] = dict(row)
    return Cochain._raw(space, table, x.target)


def permutation_map(space: GradedSpace, perm, convention: str = "super") -> Cochain:
    """The map w -> +-(w[perm[0]], w[perm[1]], ...) on words of length len(perm).

    ``convention`` chooses the Koszul sign: "super" uses only super degrees,
    "bigraded" also counts the d-degree -1 of every letter.
    """
    perm = signs.check_perm(perm)
    table: Table = {}
    for w in space.words(len(perm)):
        degs = [space.degrees[i] for i in w]
        if convention == "super":
            e = signs.e_exponent(perm, degs)
        elif convention == "bigraded":
            e = signs.p_for_elements(perm, degs)
        else:
            raise ValueError(f"unknown convention {convention!r}")
        table[w] = {tuple(w[u] for u in perm): sign(e)}
    return Cochain._raw(space, table)


def suspended_exchange_holds(m: Cochain, a, b) -> bool:
    """{m~}{sa}{sb} == (-1)^{||a|| ||b||} {m~}{sb}{sa} for a bilinear m."""
    from .engine import brace_fold

    mt = tilde(m.restrict(k=2))
    susp = mt.space
    ia = a if isinstance(a, int) else m.space.index(a)
    ib = b if isinstance(b, int) else m.space.index(b)
    ea = element(susp, ia)
    eb = element(susp, ib)
    lhs = brace_fold(mt, [[ea], [eb]])
    rhs = brace_fold(mt, [[eb], [ea]])
    s = sign(susp.degrees[ia] * susp.degrees[ib])
    return lhs == rhs * s


__all__ = [
    "Cochain", "Degrees", "identity", "element", "random_cochain", "tilde", "untilde",
    "antisymmetrize", "antisymmetrize_map", "adjoint", "permutation_map",
    "suspension_map", "desuspension_map", "suspended_exchange_holds", "Row", "Table",
]
