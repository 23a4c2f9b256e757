"""The tensor algebra TA as a bialgebra of words, operators on it, and the bialgebra complex.

Second level objects (elements of T(TA)) are :class:`TensorOfWords`: finite
sums of tuples of words.  M concatenates, Delta splits a word in every place.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from . import exprs as E
from .cochains import Cochain, Table, add_into, identity, permutation_map
from .engine import BraceError, brace, compose, tensor
from .scalars import Element, GradedSpace, Scalar, Word, sign, to_scalar

Factors = Tuple[Word, ...]


class TensorOfWords:
    """An element of T(TA): coefficients on tuples of basis words."""

    def __init__(self, space: GradedSpace, terms: Optional[Dict[Factors, Scalar]] = None):
        self.space = space
        self.terms = {k: to_scalar(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def of(cls, space, *words) -> "TensorOfWords":
        return cls(space, {tuple(tuple(w) for w in words): 1})

    @classmethod
    def from_element(cls, e: Element) -> "TensorOfWords":
        return cls(e.space, {(w,): c for w, c in e.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TensorOfWords(self.space, out)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return TensorOfWords(self.space, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TensorOfWords) and self.space == other.space and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def to_element(self) -> Element:
        """Collapse a one-factor tensor to an element of TA."""
        out = {}
        for k, v in self.terms.items():
            if len(k) != 1:
                raise ValueError("not a single factor")
            out[k[0]] = out.get(k[0], 0) + v
        return Element(self.space, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        fmt = self.space.format_word
        parts = []
        for k, v in sorted(self.terms.items()):
            inner = ", ".join("{" + fmt(w) + "}" if w else "{}" for w in k)
            parts.append(f"{v}*{{{inner}}}'")
        return " + ".join(parts)


def word_bidegree(space: GradedSpace, w: Word) -> Tuple[int, int]:
    """(d, |w|) of a word: d = -len(w)."""
    return -len(w), space.word_degree(w)


def ta_multiply(t: TensorOfWords) -> TensorOfWords:
    """M: concatenate all factors of every term."""
    out: Dict[Factors, Scalar] = {}
    for k, v in t.terms.items():
        w = tuple(x for f in k for x in f)
        out[(w,)] = out.get((w,), 0) + v
    return TensorOfWords(t.space, out)


def diagonal(t: TensorOfWords) -> TensorOfWords:
    """Delta on a one-factor tensor: sum of all splits (u, v) with u v = w."""
    out: Dict[Factors, Scalar] = {}
    for k, v in t.terms.items():
        if len(k) != 1:
            raise ValueError("diagonal expects a single factor")
        w = k[0]
        for i in range(len(w) + 1):
            key = (w[:i], w[i:])
            out[key] = out.get(key, 0) + v
    return TensorOfWords(t.space, out)


def slide_prime(op: Cochain, t: TensorOfWords) -> TensorOfWords:
    """An operator on TA acting on each factor in turn, paying for the factors it passes.

    ``op`` is applied to a factor as the extension of its pieces (sliding), and
    passing a factor u costs (-1)^{d(op) d(u) + |op| |u|} per bihomogeneous piece.
    """
    space = t.space
    out = TensorOfWords(space)
    for (k, l, s), piece in op.components().items():
        d = k - l
        for factors, c in t.terms.items():
            pd = ps = 0
            for pos, f in enumerate(factors):
                val = apply_extended(piece, f)
                sg = sign(d * pd + s * ps)
                for w, v in val.terms.items():
                    key = factors[:pos] + (w,) + factors[pos + 1:]
                    out = out + TensorOfWords(space, {key: sg * c * v})
                fd, fs = word_bidegree(space, f)
                pd += fd
                ps += fs
    return out


def apply_extended(x: Cochain, w: Word) -> Element:
    """{x}{a_1, ..., a_n} with x sliding when it takes fewer inputs than n."""
    space = x.space
    out = Element.zero(space)
    for (k, l, s), piece in x.components().items():
        if k > len(w):
            continue
        if k == len(w):
            out = out + piece.apply(Element(space, {w: 1}))
            continue
        out = out + brace(piece, [Cochain.from_element(Element(space, {w: 1}))]).to_element()
    return out


def extend(x: Cochain, max_len: int) -> Cochain:
    """The operator TA -> TA obtained by letting x slide, on words up to ``max_len`` letters.

    For x : A -> TA this is the derivation extension; for x : TA -> A it is the
    coderivation extension.
    """
    space = x.space
    acc: Table = {}
    for n in range(max_len + 1):
        for w in space.words(n):
            for o, c in apply_extended(x, w).terms.items():
                add_into(acc, w, o, c)
    return Cochain._raw(space, acc)


def derivation_law_holds(x: Cochain, max_len: int = 3) -> bool:
    """[D, M]' = 0: D(uv) = D(u) v + (-1)^{d(D) d(u) + |D||u|} u D(v)."""
    if any(k != 1 for (k, _, _) in x.components()):
        raise BraceError("a derivation is determined by a map A -> TA")
    space = x.space
    for n in range(max_len + 1):
        for w in space.words(n):
            for cut in range(n + 1):
                t = TensorOfWords.of(space, w[:cut], w[cut:])
                lhs = slide_prime(x, ta_multiply(t))
                rhs = ta_multiply(slide_prime(x, t))
                if lhs != rhs:
                    return False
    return True


def coderivation_law_holds(x: Cochain, max_len: int = 3) -> bool:
    """[C, Delta]' = 0: Delta C = (C (x) id + id (x) C) Delta with Koszul signs."""
    if any(l != 1 for (_, l, _) in x.components()):
        raise BraceError("a coderivation is determined by a map TA -> A")
    space = x.space
    for n in range(max_len + 1):
        for w in space.words(n):
            t = TensorOfWords.of(space, w)
            lhs = diagonal(slide_prime(x, t))
            rhs = slide_prime(x, diagonal(t))
            if lhs != rhs:
                return False
    return True


# --- primed expressions ---------------------------------------------------------

def _words_of(expr, env) -> TensorOfWords:
    from .engine import _eval, as_cochain
    val = _eval(expr, env)
    if isinstance(val, TensorOfWords):
        return val
    if isinstance(val, Element):
        return TensorOfWords.from_element(val)
    c = as_cochain(val)
    if c.is_element():
        return TensorOfWords.from_element(c.to_element())
    raise BraceError("entries of a primed group must be words")


def _primed_group(g: E.Group, env) -> TensorOfWords:
    out = TensorOfWords(env.space, {(): 1})
    for e in g.entries:
        t = _words_of(e, env)
        nxt: Dict[Factors, Scalar] = {}
        for k, v in out.terms.items():
            for k2, v2 in t.terms.items():
                key = k + k2
                nxt[key] = nxt.get(key, 0) + v * v2
        out = TensorOfWords(env.space, nxt)
    return out


def eval_primed(expr: E.Braces, env):
    """Evaluate braces that contain a primed group.

    ``{{a, b}, {c}}'`` is a tensor of words; ``{M}'{..}'`` concatenates,
    ``{Delta}'{..}'`` splits, and a map name as head slides over the factors.
    """
    from .engine import as_cochain
    groups = expr.groups
    if len(groups) == 1:
        if not groups[0].primed:
            raise BraceError("expected a primed group")
        return _primed_group(groups[0], env)
    head, rest = groups[0], groups[1:]
    if len(head.entries) != 1:
        raise BraceError("a primed operator head takes one entry")
    val: Optional[TensorOfWords] = None
    for g in rest:
        t = _primed_group(g, env) if g.primed else TensorOfWords.from_element(
            _concat([_words_of(e, env) for e in g.entries]))
        val = t if val is None else val + t
    h = head.entries[0]
    if isinstance(h, E.Name) and h.ident == "M":
        return ta_multiply(val)
    if isinstance(h, E.Name) and h.ident == "Delta":
        return diagonal(val)
    from .engine import _eval
    return slide_prime(as_cochain(_eval(h, env)), val)


def _concat(ts) -> Element:
    out = None
    for t in ts:
        e = t.to_element()
        out = e if out is None else out @ e
    return out


# --- bialgebras -----------------------------------------------------------------

@dataclass
class Bialgebra:
    space: GradedSpace
    m: Cochain
    delta: Cochain
    unit: Optional[int] = None
    name: str = ""

    def associativity_defect(self) -> Cochain:
        return compose(self.m, self.m)

    def coassociativity_defect(self) -> Cochain:
        return compose(self.delta, self.delta)

    def compatibility_holds(self) -> bool:
        """Delta(ab) = Delta(a) Delta(b), with the super sign on the middle exchange."""
        lhs = compose(self.delta, self.m)
        rhs = compose(tensor(self.m, self.m, convention="super"),
                      compose(permutation_map(self.space, (0, 2, 1, 3)),
                              tensor(self.delta, self.delta, convention="super")))
        return lhs == rhs

    def validate(self) -> None:
        if not self.associativity_defect().is_zero():
            raise ValueError("multiplication is not associative")
        if not self.coassociativity_defect().is_zero():
            raise ValueError("comultiplication is not coassociative")
        if not self.compatibility_holds():
            raise ValueError("comultiplication is not multiplicative")


def sigma_perm(n: int) -> Tuple[int, ...]:
    """Interleave the halves: positions read 1, n+1, 2, n+2, ... (zero based here)."""
    return tuple(v for t in range(n) for v in (t, n + t))


def tau_perm(n: int) -> Tuple[int, ...]:
    """Inverse of :func:`sigma_perm`: odd positions first, then even ones."""
    return tuple(range(0, 2 * n, 2)) + tuple(range(1, 2 * n, 2))


def _ids(space, k):
    return [identity(space)] * k


def _t(*maps):
    return tensor(*maps, convention="super")


def module_maps(b: Bialgebra, n: int) -> Dict[str, Cochain]:
    """Left and right (co)module structure maps on A^{(x)n}, built as displayed compositions."""
    A = b.space
    idn = identity(A)
    if n == 1:
        return {"m_L": b.m, "Delta_L": b.delta, "m_R": b.m, "Delta_R": b.delta}
    sig = permutation_map(A, sigma_perm(n))
    tau = permutation_map(A, tau_perm(n))
    mn = _t(*[b.m] * n)
    dn = _t(*[b.delta] * n)

    # m_L: split a into n pieces, interleave with b_1..b_n, multiply pairs
    split = _t(idn, *_ids(A, n))
    for k in range(n, 2 * n - 1):
        split = compose(_t(b.delta, *_ids(A, k)), split)
    m_L = compose(mn, compose(sig, split))

    split = _t(*_ids(A, n), idn)
    for k in range(n, 2 * n - 1):
        split = compose(_t(*_ids(A, k), b.delta), split)
    m_R = compose(mn, compose(sig, split))

    gathered = compose(tau, dn)
    for k in range(2 * n - 2, n - 1, -1):
        gathered = compose(_t(b.m, *_ids(A, k)), gathered)
    Delta_L = gathered

    gathered = compose(tau, dn)
    for k in range(2 * n - 2, n - 1, -1):
        gathered = compose(_t(*_ids(A, k), b.m), gathered)
    Delta_R = gathered
    return {"m_L": m_L, "Delta_L": Delta_L, "m_R": m_R, "Delta_R": Delta_R}


def _by_shape(x: Cochain):
    out: Dict[Tuple[int, int], Cochain] = {}
    for (k, l, _), piece in x.components().items():
        out[(k, l)] = out[(k, l)] + piece if (k, l) in out else piece
    return out.items()


class BialgebraComplex:
    """The Gerstenhaber-Schack differential on pieces Hom(A^i, A^j), i, j >= 1.

    The signs are fixed so that the differentials reduce to [m, x] for j = 1 and
    to [Delta, x] for i = 1, and so that they anticommute:

        delta(x)    = (-1)^{j+1} {m_L}{id, x} + (-1)^i {x o m} + {m_R}{x, id}
        delta_co(x) = (-1)^j {id, x}{Delta_L} + (-1)^{i+1} {Delta o x}
                      + (-1)^{i+j+1} {x, id}{Delta_R}
    """

    def __init__(self, b: Bialgebra, permissive: bool = False):
        self.b = b
        self.permissive = permissive
        self._maps: Dict[int, Dict[str, Cochain]] = {}

    def maps(self, n: int) -> Dict[str, Cochain]:
        if n not in self._maps:
            self._maps[n] = module_maps(self.b, n)
        return self._maps[n]

    def _pieces(self, x: Cochain):
        for (i, j), piece in _by_shape(x):
            if (i == 0 or j == 0) and not self.permissive:
                raise BraceError("edge pieces with i = 0 or j = 0 need permissive mode")
            yield i, j, piece

    def delta(self, x: Cochain) -> Cochain:
        out = Cochain.zero(x.space)
        for i, j, piece in self._pieces(x):
            out = out + self._delta(piece, i, j)
        return out

    def delta_co(self, x: Cochain) -> Cochain:
        out = Cochain.zero(x.space)
        for i, j, piece in self._pieces(x):
            out = out + self._delta_co(piece, i, j)
        return out

    def _delta(self, x: Cochain, i: int, j: int) -> Cochain:
        A = self.b.space
        idn = identity(A)
        left = compose(self.maps(j)["m_L"], tensor(idn, x))
        right = compose(self.maps(j)["m_R"], tensor(x, idn))
        return left * sign(j + 1) + compose(x, self.b.m) * sign(i) + right

    def _delta_co(self, x: Cochain, i: int, j: int) -> Cochain:
        A = self.b.space
        idn = identity(A)
        left = compose(tensor(idn, x), self.maps(i)["Delta_L"])
        right = compose(tensor(x, idn), self.maps(i)["Delta_R"])
        return left * sign(j) + compose(self.b.delta, x) * sign(i + 1) + right * sign(i + j + 1)

    def delta_hat(self, x: Cochain) -> Cochain:
        return self.delta(x) + self.delta_co(x)

    def basis(self, i: int, j: int) -> Iterable[Cochain]:
        A = self.b.space
        for w in A.words(i):
            for o in A.words(j):
                yield Cochain(A, {w: {o: 1}})

    def square_zero(self, degree_max: int = 3) -> Dict[str, bool]:
        """delta^2, delta_co^2, the anticommutator and delta_hat^2 on all basis maps with i + j <= degree_max."""
        res = {"delta^2": True, "delta_co^2": True, "anticommute": True, "delta_hat^2": True}
        for i in range(1, degree_max):
            for j in range(1, degree_max + 1 - i):
                for x in self.basis(i, j):
                    a, c = self.delta(x), self.delta_co(x)
                    if not self.delta(a).is_zero():
                        res["delta^2"] = False
                    if not self.delta_co(c).is_zero():
                        res["delta_co^2"] = False
                    if not (self.delta(c) + self.delta_co(a)).is_zero():
                        res["anticommute"] = False
                    if not self.delta_hat(self.delta_hat(x)).is_zero():
                        res["delta_hat^2"] = False
        return res


def edge_degrees(i: int, j: int) -> Dict[str, Tuple[int, int]]:
    """(D, R) of {m}{x}, {x}{m}, {Delta}{x}, {x}{Delta} for x : A^i -> A^j, from the composition rule."""
    from .cochains import Degrees
    from .engine import composition_degrees
    x = Degrees(i, j, i - j, 0)
    m = Degrees(2, 1, 1, 0)
    dl = Degrees(1, 2, -1, 0)
    out = {}
    for name, (p, q) in {"m.x": (m, x), "x.m": (x, m), "Delta.x": (dl, x), "x.Delta": (x, dl)}.items():
        d = composition_degrees(p, q)
        out[name] = (d.D, d.R)
    return out
