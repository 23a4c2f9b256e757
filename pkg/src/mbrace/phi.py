"""Higher order operators: the Phi tower, order detection and BV brackets."""
from __future__ import annotations

from typing import Dict, Optional

from .cochains import Cochain, Table, add_into, adjoint, antisymmetrize_map
from .engine import brace, compose
from .gerstenhaber import g_bracket
from .scalars import Element, sign

DEFAULT_R_MAX = 6


class PhiTower:
    """Levels Phi^r_{m_l; m_k} of a base map m_k against a product m_l, computed on demand.

    Phi^1 = m_k, Phi^2 = [m_k, m_l], and each further level feeds all but
    the last argument of the previous one and brackets the resulting linear
    map with m_l.
    """

    def __init__(self, base: Cochain, product: Cochain):
        self.base = base
        self.product = product
        self.k = base.degrees().D if not base.is_zero() else 0
        self.l = product.degrees().D
        self._levels: Dict[int, Cochain] = {1: base}

    def arity(self, r: int) -> int:
        return (r - 1) * (self.l - 1) + self.k

    def level(self, r: int) -> Cochain:
        if r < 1:
            raise ValueError("levels start at 1")
        if r not in self._levels:
            if self.base.is_zero():
                return self.base
            if r == 2:
                self._levels[2] = g_bracket(self.base, self.product)
            else:
                prev = self.level(r - 1)
                n = self.arity(r - 1) - 1
                space = self.base.space
                acc: Table = {}
                for prefix in space.words(n):
                    t = adjoint(prev, prefix)
                    if t.is_zero():
                        continue
                    for w, row in g_bracket(t, self.product).table.items():
                        for o, c in row.items():
                            add_into(acc, prefix + w, o, c)
                self._levels[r] = Cochain._raw(space, acc, self.base.target)
        return self._levels[r]

    def is_order(self, r: int) -> bool:
        """True when the base has order at most r, i.e. Phi^{r+1} vanishes."""
        return self.level(r + 1).is_zero()

    def order(self, r_max: int = DEFAULT_R_MAX) -> Optional[int]:
        """Smallest r <= r_max with Phi^{r+1} = 0, or None past the cap."""
        for r in range(0, r_max + 1):
            if r == 0:
                if self.base.is_zero():
                    return 0
                continue
            if self.is_order(r):
                return r
        return None


def phi(base: Cochain, product: Cochain, r: int) -> Cochain:
    return PhiTower(base, product).level(r)


def phi_degrees(k: int, l: int, r: int, super_k: int, super_l: int) -> tuple:
    """(d, |.|) of Phi^r_{m_l; m_k}."""
    return ((r - 1) * (l - 1) + k - 1, (r - 1) * super_l + super_k)


def phi_inductive(base: Cochain, m: Cochain, r: int) -> Cochain:
    """Phi^r for a binary product by the explicit recursion

    Phi^{r+1}(.., a, b) = Phi^r(.., ab) - Phi^r(.., a) b - (-1)^{|a|(|Phi^r| + |..|)} a Phi^r(.., b).
    """
    space = base.space
    degs = space.degrees
    cur = base
    k = base.degrees().D
    s_base = base.degrees().super
    s_m = m.degrees().super
    for level in range(1, r):
        n = k + level - 1  # arity of cur
        s_cur = s_base + (level - 1) * s_m
        acc: Table = {}
        for w in space.words(n + 1):
            prefix, a, b = w[:n - 1], w[n - 1], w[n]
            sp = sum(degs[i] for i in prefix)
            for ab, c in m.table.get((a, b), {}).items():
                for o, v in cur.table.get(prefix + ab, {}).items():
                    add_into(acc, w, o, c * v)
            for o, v in cur.table.get(prefix + (a,), {}).items():
                for p, c in m.table.get(o + (b,), {}).items():
                    add_into(acc, w, p, -c * v)
            s = sign(degs[a] * (s_cur + sp))
            for o, v in cur.table.get(prefix + (b,), {}).items():
                for p, c in m.table.get((a,) + o, {}).items():
                    add_into(acc, w, p, -s * c * v)
        cur = Cochain._raw(space, acc, base.target)
    return cur


def is_order_r(base: Cochain, product: Cochain, r: int) -> bool:
    return PhiTower(base, product).is_order(r)


# --- BV brackets -------------------------------------------------------------

def _split_by_degree(e: Element):
    parts: Dict[int, Dict] = {}
    for w, c in e.terms.items():
        parts.setdefault(e.space.word_degree(w), {})[w] = c
    return [(d, Element(e.space, t)) for d, t in sorted(parts.items())]


def _as_elem(space, a) -> Element:
    if isinstance(a, Element):
        return a
    return Element.basis(space, a)


def bv_bracket(delta: Cochain, m: Cochain, a, b, tower: Optional[PhiTower] = None) -> Element:
    """{a, b}_Delta = (-1)^{|a|} Phi^2_Delta(a, b), extended bilinearly."""
    space = delta.space
    a, b = _as_elem(space, a), _as_elem(space, b)
    phi2 = (tower or PhiTower(delta, m)).level(2)
    out = Element.zero(space)
    for deg, part in _split_by_degree(a):
        out = out + phi2.apply(part @ b) * sign(deg)
    return out


def bv_bracket_via_commutator(delta: Cochain, m: Cochain, a, b) -> Element:
    """{a, b}_Delta = (-1)^{|a|-1} {s}[m, Delta]{a, b}, read on the underlying element."""
    space = delta.space
    a, b = _as_elem(space, a), _as_elem(space, b)
    comm = g_bracket(m, delta)
    out = Element.zero(space)
    for deg, part in _split_by_degree(a):
        val = brace(comm, [Cochain.from_element(part), Cochain.from_element(b)]).to_element()
        out = out + val * sign(deg - 1)
    return out


class BVLaws:
    """The four bracket laws of an odd operator Delta on (A, m), checked on basis triples."""

    def __init__(self, delta: Cochain, m: Cochain):
        self.delta = delta
        self.m = m
        self.space = delta.space
        self.tower = PhiTower(delta, m)
        self.delta_sq = compose(delta, delta)
        l2 = antisymmetrize_map(m.restrict(k=2))
        self.tower_l = PhiTower(delta, l2) if not l2.is_zero() else None

    def bv(self, a, b) -> Element:
        return bv_bracket(self.delta, self.m, a, b, self.tower)

    def _susp(self, i: int) -> int:
        return self.space.degrees[i] - 1

    def law_antisymmetry(self, a: int, b: int):
        """{a,b} + (-1)^{||a|| ||b||} {b,a} against (-1)^{|a|} Phi^2 taken with the antisymmetrized product."""
        lhs = self.bv(a, b) + self.bv(b, a) * sign(self._susp(a) * self._susp(b))
        if self.tower_l is None:
            rhs = Element.zero(self.space)
        else:
            rhs = self.tower_l.level(2)(a, b) * sign(self.space.degrees[a])
        return lhs, rhs

    def law_jacobi(self, a: int, b: int, c: int):
        """Jacobi defect of the bracket against (-1)^{|b|}(Phi^3_{Delta^2} - [Delta, Phi^3_Delta])."""
        A = Element.basis(self.space, a)
        lhs = (self.bv(A, self.bv(b, c)) - self.bv(self.bv(a, b), c)
               - self.bv(b, self.bv(a, c)) * sign(self._susp(a) * self._susp(b)))
        phi3_sq = PhiTower(self.delta_sq, self.m).level(3) if not self.delta_sq.is_zero() else None
        corr = g_bracket(self.delta, self.tower.level(3))
        rhs_map = (phi3_sq - corr) if phi3_sq is not None else -corr
        rhs = rhs_map(a, b, c) * sign(self.space.degrees[b])
        return lhs, rhs

    def law_leibniz(self, a: int, b: int, c: int):
        """{a, bc} - {a,b}c - (-1)^{||a|| |b|} b{a,c} against (-1)^{|a|} Phi^3_Delta(a,b,c)."""
        m = self.m
        bc = m(b, c)
        lhs = (self.bv(a, bc) - m.apply(self.bv(a, b) @ Element.basis(self.space, c))
               - m.apply(Element.basis(self.space, b) @ self.bv(a, c)) * sign(self._susp(a) * self.space.degrees[b]))
        rhs = self.tower.level(3)(a, b, c) * sign(self.space.degrees[a])
        return lhs, rhs

    def law_derivation(self, a: int, b: int):
        """Delta{a,b} - {Delta a, b} - (-1)^{||a||}{a, Delta b} against (-1)^{||a||} Phi^2_{Delta^2}(a, b)."""
        d = self.delta
        lhs = (d.apply(self.bv(a, b)) - self.bv(d(a), b)
               - self.bv(a, d(b)) * sign(self._susp(a)))
        if self.delta_sq.is_zero():
            rhs = Element.zero(self.space)
        else:
            rhs = PhiTower(self.delta_sq, self.m).level(2)(a, b) * sign(self._susp(a))
        return lhs, rhs

    def check_all(self) -> Dict[str, bool]:
        n = self.space.dim
        rng = range(n)
        res = {
            "antisymmetry": all(l == r for a in rng for b in rng for l, r in [self.law_antisymmetry(a, b)]),
            "jacobi": all(l == r for a in rng for b in rng for c in rng for l, r in [self.law_jacobi(a, b, c)]),
            "leibniz": all(l == r for a in rng for b in rng for c in rng for l, r in [self.law_leibniz(a, b, c)]),
            "derivation": all(l == r for a in rng for b in rng for l, r in [self.law_derivation(a, b)]),
        }
        return res


def commutator_identities(T: Cochain, U: Cochain, m: Cochain) -> Dict[str, bool]:
    """How the Phi tower of [T, U] splits into towers of T and U (odd T, U)."""
    TU = g_bracket(T, U)
    tT, tU, tTU = PhiTower(T, m), PhiTower(U, m), PhiTower(TU, m)
    first = tTU.level(1) == TU
    second = tTU.level(2) == g_bracket(T, tU.level(2)) + g_bracket(U, tT.level(2))
    space = T.space
    rhs3 = g_bracket(T, tU.level(3)) + g_bracket(U, tT.level(3))
    acc: Table = {}
    for a in range(space.dim):
        for src_a, src_b in ((tT, tU), (tU, tT)):
            br = g_bracket(src_a.level(2), adjoint(src_b.level(2), (a,)))
            for w, row in br.table.items():
                for o, c in row.items():
                    add_into(acc, (a,) + w, o, c)
    rhs3 = rhs3 + Cochain._raw(space, acc)
    third = tTU.level(3) == rhs3
    return {"phi1": first, "phi2": second, "phi3": third}
