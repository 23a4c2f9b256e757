"""A-infinity and L-infinity structures and the equivalences between their identities.

An :class:`AInfStructure` is a family of maps m_k : A^{(x)k} -> A with
(-1)^{|m_k|} = (-1)^k.  Its identity can be written four ways:

* on sA with suspended maps: sum_{i+j=n+1} m~_i o m~_j = 0 (via the engine),
* on sA term by term, with the sign (-1)^{||m_j|| (||a_1|| + ... + ||a_k||)},
* on A directly, with the sign (-1)^{j(|a_1|+..+|a_k|) + jk + j + k},
* on A through brackets, sum (-1)^i [m_i, m_j] = 2 sum (-1)^i m_i o m_j.

They differ by known global signs, so they vanish together.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import factorial
from typing import Dict, List, Optional, Sequence

from .cochains import Cochain, Table, add_into, antisymmetrize_map, random_cochain, tilde, untilde
from .engine import brace_fold, compose
from .gerstenhaber import g_bracket
from .scalars import Element, GradedSpace, sign, transport
from . import signs


@dataclass
class AInfStructure:
    space: GradedSpace
    components: Dict[int, Cochain] = field(default_factory=dict)

    def __post_init__(self):
        for k, mk in self.components.items():
            if mk.space != self.space:
                raise ValueError("component acts on another space")
            for (kk, l, s) in mk.components():
                if kk != k or l != 1:
                    raise ValueError(f"m_{k} must map A^{k} to A")
                if (s - k) & 1:
                    raise ValueError(f"m_{k} has super degree {s}, parity must match {k}")

    def m(self, k: int) -> Cochain:
        return self.components.get(k) or Cochain.zero(self.space)

    def total(self) -> Cochain:
        out = Cochain.zero(self.space)
        for mk in self.components.values():
            out = out + mk
        return out

    def tilde(self, k: int) -> Cochain:
        return tilde(self.m(k))

    def l(self, k: int) -> Cochain:
        """l_k = antisymmetrization of m_k."""
        return antisymmetrize_map(self.m(k))

    def l_tilde(self, k: int) -> Cochain:
        return tilde(self.l(k))

    def max_arity(self) -> int:
        return max(self.components, default=0)


def _pairs(n: int):
    return [(i, n + 1 - i) for i in range(1, n + 1)]


# --- four ways to write the A-infinity identity ----------------------------------

def ainf_defect(st: AInfStructure, n: int) -> Cochain:
    """sum_{i+j=n+1} m~_i o m~_j on sA, computed with the engine."""
    susp = st.space.suspend()
    out = Cochain.zero(susp)
    for i, j in _pairs(n):
        if i in st.components and j in st.components:
            out = out + compose(st.tilde(i), st.tilde(j))
    return out


def ainf_defect_explicit(st: AInfStructure, n: int) -> Cochain:
    """The same sum written out: (-1)^{||m_j||(||a_1||+..+||a_k||)} m~_i(a_1..a_k, m~_j(..), ..)."""
    susp = st.space.suspend()
    sd = susp.degrees
    acc: Table = {}
    for i, j in _pairs(n):
        if i not in st.components or j not in st.components:
            continue
        mi, mj = st.tilde(i), st.tilde(j)
        for w in susp.words(n):
            for k in range(i):
                inner_in = w[k:k + j]
                pre = sum(sd[t] for t in w[:k])
                for o, c in mj.table.get(inner_in, {}).items():
                    smj = sum(sd[t] for t in o) - sum(sd[t] for t in inner_in)
                    s = sign(smj * pre)
                    for p, v in mi.table.get(w[:k] + o + w[k + j:], {}).items():
                        add_into(acc, w, p, s * c * v)
    return Cochain._raw(susp, acc)


def ainf_defect_unsuspended(st: AInfStructure, n: int) -> Cochain:
    """sum (-1)^{j(|a_1|+..+|a_k|) + jk + j + k} m_i(a_1..a_k, m_j(..), ..) on A."""
    space = st.space
    deg = space.degrees
    acc: Table = {}
    for i, j in _pairs(n):
        if i not in st.components or j not in st.components:
            continue
        mi, mj = st.m(i), st.m(j)
        for w in space.words(n):
            for k in range(i):
                pre = sum(deg[t] for t in w[:k])
                s = sign(j * pre + j * k + j + k)
                for o, c in mj.table.get(w[k:k + j], {}).items():
                    for p, v in mi.table.get(w[:k] + o + w[k + j:], {}).items():
                        add_into(acc, w, p, s * c * v)
    return Cochain._raw(space, acc)


def ainf_bracket_sums(st: AInfStructure, n: int):
    """(sum (-1)^i [m_i, m_j], 2 sum (-1)^i m_i o m_j) over i + j = n + 1."""
    br = Cochain.zero(st.space)
    comp = Cochain.zero(st.space)
    for i, j in _pairs(n):
        if i in st.components and j in st.components:
            br = br + g_bracket(st.m(i), st.m(j)) * sign(i)
            comp = comp + compose(st.m(i), st.m(j)) * (2 * sign(i))
    return br, comp


def formulations_agree(st: AInfStructure, n: int) -> Dict[str, bool]:
    """Exact relations between the four forms at arity n."""
    f1 = ainf_defect(st, n)
    f2 = ainf_defect_explicit(st, n)
    f3 = ainf_defect_unsuspended(st, n)
    f4, f4c = ainf_bracket_sums(st, n)
    space = st.space
    rel13 = True
    for w in space.words(n):
        s = sign(signs.tilde_exponent([space.degrees[t] for t in w]) + n)
        if f1.table.get(w, {}) != {o: s * c for o, c in f3.table.get(w, {}).items()}:
            rel13 = False
            break
    rel34 = f4 == f3 * (2 * sign(n + 1)) and f4 == f4c
    return {"engine=explicit": f1 == f2, "suspended~unsuspended": rel13, "brackets~unsuspended": rel34}


def is_ainf(st: AInfStructure, n_max: int, form: str = "tilde") -> bool:
    for n in range(1, n_max + 1):
        if form == "tilde":
            d = ainf_defect(st, n)
        elif form == "explicit":
            d = ainf_defect_explicit(st, n)
        elif form == "unsuspended":
            d = ainf_defect_unsuspended(st, n)
        elif form == "brackets":
            d = ainf_bracket_sums(st, n)[0]
        else:
            raise ValueError(f"unknown formulation {form!r}")
        if not d.is_zero():
            return False
    return True


FORMULATIONS = ("tilde", "explicit", "unsuspended", "brackets")


# --- L-infinity -------------------------------------------------------------------

def _elem(susp, i):
    return Cochain.from_element(Element.basis(susp, i))


def symmetrized(x: Cochain, word) -> Element:
    """{x}{sa_1}...{sa_n} on a suspended space, evaluated with the engine."""
    susp = x.space
    return brace_fold(x, [[_elem(susp, i)] for i in word]).to_element()


def master_defect(st: AInfStructure, word) -> Element:
    """{m~ o m~}{sa_1}...{sa_n}."""
    return symmetrized(ainf_defect(st, len(word)), word)


def _nested(outer: Cochain, inner: Cochain, inner_args, rest_args) -> Element:
    val = inner.apply(Element(inner.space, {tuple(inner_args): 1}))
    tail = Element(inner.space, {tuple(rest_args): 1})
    return outer.apply(val @ tail)


def _weight(weighted, i: int, j: int, n: int) -> int:
    if not weighted:
        return 1
    if weighted == "counted":
        return factorial(j) * factorial(i)
    return factorial(j) * factorial(n - j)


def master_expansion(st: AInfStructure, word, weighted=None) -> Element:
    """sum_{i,j,J} eps~(sigma_J) l~_i(l~_j(a_beta), a_gamma), optionally weighted per (i, j)."""
    n = len(word)
    susp = st.space.suspend()
    degs = [st.space.degrees[t] for t in word]
    out = Element.zero(susp)
    for i, j in _pairs(n):
        if i not in st.components or j not in st.components:
            continue
        li, lj = st.l_tilde(i), st.l_tilde(j)
        for sigma in signs.unshuffles(n, j):
            e = signs.e_tilde(sigma, degs)
            w = [word[u] for u in sigma]
            term = _nested(li, lj, w[:j], w[j:]) * sign(e)
            out = out + term * _weight(weighted, i, j, n)
    return out


def linf_relation(st: AInfStructure, word) -> Element:
    """sum_{i+j=n+1} sum_{unshuffles} (-1)^{p(sigma)+i} l_i(l_j(a_sigma(1..j)), a_sigma(j+1..n)) on A."""
    n = len(word)
    degs = [st.space.degrees[t] for t in word]
    out = Element.zero(st.space)
    for i, j in _pairs(n):
        if i not in st.components or j not in st.components:
            continue
        li, lj = st.l(i), st.l(j)
        for sigma in signs.unshuffles(n, j):
            e = signs.p_for_elements(sigma, degs) + i
            w = [word[u] for u in sigma]
            out = out + _nested(li, lj, w[:j], w[j:]) * sign(e)
    return out


def equivalence_constant(space: GradedSpace, word) -> int:
    """alpha = sum_t (n-t)||a_t|| - 1, reduced mod 2."""
    return (signs.tilde_exponent([space.degrees[t] for t in word]) - 1) & 1


def equivalence_holds(st: AInfStructure, word) -> bool:
    """{m~ o m~}{sa_1}..{sa_n} == (-1)^alpha * (the L-infinity sum), coefficientwise."""
    lhs = master_defect(st, word)
    rhs = linf_relation(st, word) * sign(equivalence_constant(st.space, word))
    return lhs == transport(rhs, lhs.space)


def is_linf(st: AInfStructure, n_max: int) -> bool:
    for n in range(1, n_max + 1):
        for w in st.space.words(n):
            if not linf_relation(st, w).is_zero():
                return False
    return True


def l_tilde_total(st: AInfStructure, n_max: int) -> Cochain:
    susp = st.space.suspend()
    out = Cochain.zero(susp)
    for k in range(1, n_max + 1):
        if k in st.components:
            out = out + st.l_tilde(k)
    return out


def ll_defect(st: AInfStructure, n: int) -> Cochain:
    """Arity n part of l~ o l~."""
    susp = st.space.suspend()
    out = Cochain.zero(susp)
    for i, j in _pairs(n):
        if i in st.components and j in st.components:
            out = out + compose(st.l_tilde(i), st.l_tilde(j))
    return out


def factorial_weighted_holds(st: AInfStructure, word, factor: str = "stated") -> bool:
    """{l~ o l~}{sa_1}...{sa_n} against the sum of eps~(sigma_J) l~_i(l~_j(..), ..) weighted per (i, j).

    ``factor="stated"`` uses j!(n-j)!.  ``factor="counted"`` uses j! i!, which is
    what the sums over the insertion point and over orderings of both blocks
    actually produce: i positions times (i-1)! orderings of the remaining inputs.
    """
    lhs = symmetrized(ll_defect(st, len(word)), word)
    return lhs == master_expansion(st, word, weighted=factor)


def find_ll_witness(st: AInfStructure, n_max: int = 3):
    """A word where {l~ o l~}{sa..} is nonzero although {m~ o m~}{sa..} vanishes."""
    for n in range(1, n_max + 1):
        if not ainf_defect(st, n).is_zero():
            continue
        for w in st.space.words(n):
            if master_defect(st, w).is_zero():
                val = symmetrized(ll_defect(st, n), w)
                if not val.is_zero():
                    return w, val
    return None


def graded_symmetry_holds(lt: Cochain, n: int) -> bool:
    """l~_n(a_sigma) = eps~(sigma) l~_n(a) for every sigma and basis word."""
    space = lt.space
    for w in space.words(n):
        base = lt.apply_word(w)
        degs = [space.degrees[t] for t in w]  # already suspended degrees
        for sigma in permutations(range(n)):
            e = signs.e_exponent(sigma, degs)
            val = lt.apply_word(tuple(w[u] for u in sigma))
            if val != {o: sign(e) * c for o, c in base.items()}:
                return False
    return True


# --- sign splitting lemmas ---------------------------------------------------------

def split_lemma_holds(n: int, degrees: Sequence[int]) -> bool:
    """Sign of the rearrangement used in the L-infinity proof splits into four parts.

    For J = {beta} of size j, complement {gamma}, permutations delta of J and
    delta' of the complement and 0 <= k <= i-1, the sequence
    delta'(gamma_1..gamma_k), delta(beta_1..beta_j), delta'(gamma_{k+1}..)
    has eps~-exponent eps~(sigma_J) + eps~(delta) + eps~(delta')
    + (sum_{t<=k} ||a_{delta'(gamma_t)}||)(sum_t ||a_{beta_t}||).
    """
    susp = [d - 1 for d in degrees]
    for j in range(1, n + 1):
        i = n + 1 - j
        for beta in combinations(range(n), j):
            gamma = tuple(u for u in range(n) if u not in beta)
            sigma3 = beta + gamma
            e3 = signs.e_exponent(sigma3, susp)
            for dl in permutations(range(j)):
                db = [beta[t] for t in dl]
                e_d = signs.e_exponent(dl, [susp[b] for b in beta])
                for dlp in permutations(range(i - 1)):
                    dg = [gamma[t] for t in dlp]
                    e_dp = signs.e_exponent(dlp, [susp[g] for g in gamma])
                    sb = sum(susp[b] for b in beta)
                    for k in range(i):
                        seq = tuple(dg[:k] + db + dg[k:])
                        lhs = signs.e_exponent(seq, susp)
                        rhs = (e3 + e_d + e_dp + sb * sum(susp[g] for g in dg[:k])) & 1
                        if lhs != rhs:
                            return False
    return True


def insertion_lemma_holds(degrees0: int, degrees: Sequence[int]) -> bool:
    """Moving a_0 to place k+1 after applying delta' costs ||a_0|| times the passed degrees."""
    m = len(degrees)
    s0 = degrees0 - 1
    susp = [s0] + [d - 1 for d in degrees]
    for dlp in permutations(range(m)):
        e_dp = signs.e_exponent(dlp, susp[1:])
        for k in range(m + 1):
            seq = tuple(1 + t for t in dlp[:k]) + (0,) + tuple(1 + t for t in dlp[k:])
            lhs = signs.e_exponent(seq, susp)
            rhs = (e_dp + s0 * sum(susp[1 + t] for t in dlp[:k])) & 1
            if lhs != rhs:
                return False
    return True


# --- instances ----------------------------------------------------------------------

def random_structure(space: GradedSpace, rng: random.Random, arities=(1, 2, 3),
                     density: float = 0.5) -> AInfStructure:
    """Random (usually not A-infinity) structure obeying the parity rule."""
    comps = {}
    for k in arities:
        degs = [d for d in range(-2, 3) if (d - k) % 2 == 0]
        rng.shuffle(degs)
        for d in degs:
            c = random_cochain(space, k, d, rng, density=density)
            if not c.is_zero():
                comps[k] = c
                break
    return AInfStructure(space, comps)


def mutate(st: AInfStructure, rng: random.Random) -> AInfStructure:
    """Change one structure constant (keeping degrees), which usually breaks the identities."""
    k = rng.choice(sorted(st.components))
    mk = st.components[k]
    comps = mk.components()
    s = next(iter(comps))[2] if comps else k & 1
    space = st.space
    slots = [(w, (o,)) for w in space.words(k) for o in range(space.dim)
             if space.degrees[o] - space.word_degree(w) == s]
    w, o = rng.choice(slots)
    table = {ww: dict(r) for ww, r in mk.table.items()}
    table.setdefault(w, {})
    table[w][o] = table[w].get(o, 0) + rng.choice([1, -1, 2])
    comps = dict(st.components)
    comps[k] = Cochain(space, table)
    return AInfStructure(space, comps)


def dga_instance() -> AInfStructure:
    """Polynomial forms on an interval cut down to 1, t, dt: t^2 = t dt = 0, d t = dt."""
    space = GradedSpace.from_basis("forms", [("1", 0), ("t", 0), ("dt", 1)])
    m1 = Cochain(space, {(1,): {(2,): 1}})
    prod: Dict = {}
    for a in range(3):
        prod[(0, a)] = {(a,): 1}
        prod[(a, 0)] = {(a,): 1}
    return AInfStructure(space, {1: m1, 2: Cochain(space, prod)})


def even_products_instance(top: int = 6) -> AInfStructure:
    """k[x]/(x^2) in degree 0 with the n-fold product as m_n for even n <= top."""
    space = GradedSpace.from_basis("dual", [("1", 0), ("x", 0)])
    comps = {}
    for n in range(2, top + 1, 2):
        table = {w: {(sum(w),): 1} for w in space.words(n) if sum(w) <= 1}
        comps[n] = Cochain(space, table)
    return AInfStructure(space, comps)


def gauge_transform(st: AInfStructure, f2t: Cochain, n_max: int) -> AInfStructure:
    """Transport st along the A-infinity isomorphism (id, f_2), truncated at arity n_max.

    ``f2t`` is the suspended component f~_2 : (sA)^2 -> sA of degree 0, so the
    tensor powers of (id, f~_2) carry no Koszul signs.  The new components solve
    sum_r m~_r(f~ (x) .. (x) f~) = sum_i f~_i o m~'_j order by order.
    """
    susp = st.space.suspend()
    if f2t.space != susp:
        raise ValueError("f_2 must act on the suspended space")
    if set(f2t.components()) - {(2, 1, 0)}:
        raise ValueError("f~_2 must be a degree 0 map (sA)^2 -> sA")
    old = {k: tilde(v) for k, v in st.components.items()}
    new: Dict[int, Cochain] = {}

    def blocks(w):
        if not w:
            yield Element(susp, {(): 1})
            return
        for rest in blocks(w[1:]):
            yield Element(susp, {(w[0],): 1}) @ rest
        if len(w) >= 2:
            head = f2t.apply(Element(susp, {tuple(w[:2]): 1}))
            for rest in blocks(w[2:]):
                yield head @ rest

    for n in range(1, n_max + 1):
        acc: Table = {}
        for w in susp.words(n):
            for x in blocks(w):
                for word, c in x.terms.items():
                    mr = old.get(len(word))
                    if mr is None:
                        continue
                    for o, v in mr.table.get(word, {}).items():
                        add_into(acc, w, o, c * v)
        mt = Cochain._raw(susp, acc)
        if (n - 1) in new:
            mt = mt - compose(f2t, new[n - 1])
        if not mt.is_zero():
            new[n] = mt
    return AInfStructure(st.space, {k: untilde(v) for k, v in new.items()})


def gauged_dga_instance(n_max: int = 4) -> AInfStructure:
    """The forms DGA moved along a fixed (id, f_2); it has m_3 != 0 and m_1 != 0.

    Used as the small A-infinity algebra where {l~ o l~}{sa..} does not vanish.
    """
    base = dga_instance()
    susp = base.space.suspend()
    f2t = Cochain(susp, {(0, 2): {(1,): 1}, (1, 2): {(0,): 2, (1,): 2}})
    return gauge_transform(base, f2t, n_max)
