"""Bracket, Hochschild differential, cup product and the identities among them."""
from __future__ import annotations

import random
from typing import Optional, Sequence

from . import signs
from .cochains import Cochain, Degrees, Table, add_into, tilde
from .engine import brace, brace_fold, compose
from .scalars import Element, sign, transport
from .signs import koszul


def _exchange(x: Degrees, y: Degrees, suspended: bool) -> int:
    return koszul(x.d, x.super, y.d, y.super, suspended)


def g_bracket(x: Cochain, y: Cochain) -> Cochain:
    """[x, y] = x o y - (-1)^{d(x)d(y) + |x||y|} y o x, extended bilinearly.

    On a suspended space only the super degrees enter the sign.
    """
    susp = x.space.suspended
    total = Cochain.zero(x.space, x.target)
    for (kx, lx, sx), xc in x.components().items():
        dx = Degrees(kx, lx, kx - lx, sx)
        for (ky, ly, sy), yc in y.components().items():
            dy = Degrees(ky, ly, ky - ly, sy)
            term = compose(xc, yc)
            other = compose(yc, xc)
            total = total + (term - other if _exchange(dx, dy, susp) == 0 else term + other)
    return total


def hochschild_delta(x: Cochain, m: Cochain) -> Cochain:
    """delta(x) = [m, x], projected onto maps with a single output."""
    return g_bracket(m, x).hochschild_part()


def classical_delta(x: Cochain, m: Cochain) -> Cochain:
    """The textbook Hochschild coboundary of a map x: A^n -> A.

    (delta x)(a_0..a_n) = (-1)^{|a_0||x|} a_0 x(a_1..a_n)
        + sum_t (-1)^t x(.., a_{t-1} a_t, ..) + (-1)^{n+1} x(a_0..a_{n-1}) a_n
    """
    space = x.space
    degs = space.degrees
    acc: Table = {}
    for (n, l, s), xc in x.components().items():
        if l != 1:
            raise ValueError("classical coboundary needs maps with one output")
        for w in space.words(n + 1):
            a0 = w[0]
            for o, c in xc.table.get(w[1:], {}).items():
                for p, v in m.table.get((a0,) + o, {}).items():
                    add_into(acc, w, p, sign(degs[a0] * s) * c * v)
            for t in range(1, n + 1):
                for ab, c in m.table.get(w[t - 1:t + 1], {}).items():
                    for o, v in xc.table.get(w[:t - 1] + ab + w[t + 1:], {}).items():
                        add_into(acc, w, o, sign(t) * c * v)
            for o, c in xc.table.get(w[:n], {}).items():
                for p, v in m.table.get(o + (w[n],), {}).items():
                    add_into(acc, w, p, sign(n + 1) * c * v)
    return Cochain._raw(space, acc)


def delta_conversion_factor(x: Cochain, m: Cochain) -> Optional[int]:
    """The scalar c with [m, x] = c * classical_delta(x), or None if there is none."""
    a = hochschild_delta(x, m)
    b = classical_delta(x, m)
    if a.is_zero() and b.is_zero():
        return None
    if a == b:
        return 1
    if a == -b:
        return -1
    return None


def cup(x: Cochain, y: Cochain, m: Cochain) -> Cochain:
    """x . y = (-1)^{D(x)} {m}{x, y}."""
    total = Cochain.zero(x.space, m.target)
    for (k, _, _), xc in x.components().items():
        term = brace(m, [xc, y])
        total = total + (-term if k & 1 else term)
    return total


def cup_explicit(x: Cochain, y: Cochain, m: Cochain) -> Cochain:
    """(x . y)(a_1..a_{k+l}) = (-1)^{kl + |y|(|a_1|+..+|a_k|)} x(a_1..a_k) y(a_{k+1}..)."""
    space = x.space
    acc: Table = {}
    for (k, _, _), xc in x.components().items():
        for (l, _, sy), yc in y.components().items():
            for u, xr in xc.table.items():
                su = space.word_degree(u)
                for v, yr in yc.table.items():
                    s = sign(k * l + sy * su)
                    for o1, c1 in xr.items():
                        for o2, c2 in yr.items():
                            for p, cm in m.table.get(o1 + o2, {}).items():
                                add_into(acc, u + v, p, s * c1 * c2 * cm)
    return Cochain._raw(space, acc)


# --- pre-Lie and Jacobi -------------------------------------------------------

def pre_jacobi_defect(x: Cochain, y: Cochain, z: Cochain) -> Cochain:
    """{x}{y}{z} - {x}{[y,z]} - (-1)^{d(y)d(z)+|y||z|} {x}{z}{y}; zero for bihomogeneous y, z."""
    dy, dz = y.degrees(), z.degrees()
    s = sign(_exchange(dy, dz, x.space.suspended))
    return brace_fold(x, [[y], [z]]) - brace(x, [g_bracket(y, z)]) - brace_fold(x, [[z], [y]]) * s


def right_pre_lie_defect(x: Cochain, y: Cochain, z: Cochain) -> Cochain:
    """Associator (x,y,z) minus its signed swap (x,z,y) for the composition."""
    dy, dz = y.degrees(), z.degrees()
    s = sign(_exchange(dy, dz, x.space.suspended))
    assoc_yz = compose(compose(x, y), z) - compose(x, compose(y, z))
    assoc_zy = compose(compose(x, z), y) - compose(x, compose(z, y))
    return assoc_yz - assoc_zy * s


def left_pre_lie_defect(x: Cochain, y: Cochain, z: Cochain) -> Cochain:
    """x o (y o z) - (-1)^{..} y o (x o z) - [x, y] o z, which need not vanish."""
    dx, dy = x.degrees(), y.degrees()
    s = sign(_exchange(dx, dy, x.space.suspended))
    return compose(x, compose(y, z)) - compose(y, compose(x, z)) * s - compose(g_bracket(x, y), z)


def triple_defect(x: Cochain, y: Cochain, z1: Cochain, z2: Cochain) -> Cochain:
    """{x}{y}{z1,z2} - {x}{{y}{z1,z2}} - {x}{[y,z1],z2} - (-1)^{y z1}{x}{z1,[y,z2]}
    - (-1)^{y(z1+z2)} {x}{z1,z2}{y}."""
    susp = x.space.suspended
    dy, d1, d2 = y.degrees(), z1.degrees(), z2.degrees()
    e1 = _exchange(dy, d1, susp)
    e12 = (e1 + _exchange(dy, d2, susp)) & 1
    lhs = (brace_fold(x, [[y], [z1, z2]]) - brace(x, [brace(y, [z1, z2])])
           - brace(x, [g_bracket(y, z1), z2]) - brace(x, [z1, g_bracket(y, z2)]) * sign(e1))
    return lhs - brace_fold(x, [[z1, z2], [y]]) * sign(e12)


def jacobi_defect(x: Cochain, y: Cochain, z: Cochain) -> Cochain:
    """Graded cyclic sum (-1)^{xz}[x,[y,z]] + (-1)^{yx}[y,[z,x]] + (-1)^{zy}[z,[x,y]]."""
    susp = x.space.suspended
    dx, dy, dz = x.degrees(), y.degrees(), z.degrees()
    return (g_bracket(x, g_bracket(y, z)) * sign(_exchange(dx, dz, susp))
            + g_bracket(y, g_bracket(z, x)) * sign(_exchange(dy, dx, susp))
            + g_bracket(z, g_bracket(x, y)) * sign(_exchange(dz, dy, susp)))


def find_left_pre_lie_witness(space, rng: random.Random, attempts: int = 50):
    """Search small random maps for a failure of the left pre-Lie identity."""
    from .cochains import random_cochain

    for _ in range(attempts):
        x = random_cochain(space, rng.randint(1, 2), 0, rng)
        y = random_cochain(space, rng.randint(1, 2), 0, rng)
        z = random_cochain(space, rng.randint(1, 2), 0, rng)
        if x.is_zero() or y.is_zero() or z.is_zero():
            continue
        if not left_pre_lie_defect(x, y, z).is_zero():
            return x, y, z
    return None


# --- cup product identities ---------------------------------------------------

def mm(m: Cochain) -> Cochain:
    return compose(m, m)


def cup_associativity_sides(x, y, z, m):
    """((x.y).z - x.(y.z), (-1)^{D(y)} {m o m}{x, y, z})."""
    lhs = cup(cup(x, y, m), z, m) - cup(x, cup(y, z, m), m)
    rhs = brace(mm(m), [x, y, z]) * sign(y.degrees().D)
    return lhs, rhs


def leibniz_sides(x, y, m):
    """(delta(x.y) - delta(x).y - (-1)^{D(x)} x.delta(y), (-1)^{D(x)} {m o m}{x, y})."""
    Dx = x.degrees().D
    lhs = (hochschild_delta(cup(x, y, m), m) - cup(hochschild_delta(x, m), y, m)
           - cup(x, hochschild_delta(y, m), m) * sign(Dx))
    rhs = brace(mm(m), [x, y]) * sign(Dx)
    return lhs, rhs


def delta_squared(x: Cochain, m: Cochain) -> Cochain:
    return hochschild_delta(hochschild_delta(x, m), m)


def delta_squared_via_mm(x: Cochain, m: Cochain) -> Cochain:
    """[m o m, x] restricted to single-output maps."""
    return g_bracket(mm(m), x).hochschild_part()


def homotopy_commutativity_sides(x, y, m):
    """(x.y - (-1)^{D(x)D(y)} y.x, (-1)^{d(x)}(delta(x o y) - delta(x) o y - (-1)^{d(x)} x o delta(y)))."""
    dx, dy = x.degrees(), y.degrees()
    lhs = cup(x, y, m) - cup(y, x, m) * sign(dx.D * dy.D)
    inner = (hochschild_delta(compose(x, y), m) - compose(hochschild_delta(x, m), y)
             - compose(x, hochschild_delta(y, m)) * sign(dx.d))
    return lhs, inner * sign(dx.d)


def homotopy_g_first_sides(x1, x2, ys: Sequence[Cochain], m):
    """{x1.x2}{y_1..y_n} against sum_k (-1)^{..} {x1}{y_1..y_k} . {x2}{y_{k+1}..y_n}."""
    d2 = x2.degrees()
    lhs = brace(cup(x1, x2, m), list(ys))
    rhs = Cochain.zero(x1.space, m.target)
    acc_d = acc_s = 0
    for k in range(len(ys) + 1):
        if k:
            dk = ys[k - 1].degrees()
            acc_d += dk.d
            acc_s += dk.super
        s = sign(d2.D * acc_d + d2.super * acc_s)
        rhs = rhs + cup(brace(x1, list(ys[:k])), brace(x2, list(ys[k:])), m) * s
    return lhs, rhs


def homotopy_g_higher_sides(x, ys: Sequence[Cochain], m):
    """Both sides of the higher homotopy identity relating delta and {x}{y_1..y_{n+1}}."""
    dxs = x.degrees()
    dys = [y.degrees() for y in ys]
    n1 = len(ys)
    delta = lambda c: hochschild_delta(c, m)
    lhs = delta(brace(x, list(ys))) - brace(delta(x), list(ys))
    acc = 0
    for i in range(n1):
        args = list(ys)
        args[i] = delta(ys[i])
        lhs = lhs - brace(x, args) * sign(dxs.d + acc)
        acc += dys[i].d
    rhs = cup(ys[0], brace(x, list(ys[1:])), m) * sign(dxs.D * dys[0].d + dys[0].super * dxs.super)
    acc = 0
    for i in range(n1 - 1):
        acc += dys[i].d
        args = list(ys[:i]) + [cup(ys[i], ys[i + 1], m)] + list(ys[i + 2:])
        rhs = rhs - brace(x, args) * sign(dxs.d + acc)
    tail = sum(d.d for d in dys[:-1])
    rhs = rhs + cup(brace(x, list(ys[:-1])), ys[-1], m) * sign(dxs.d + tail)
    return lhs, rhs


def lemma_a_defect(x, y, m) -> Cochain:
    """delta[x,y] - [delta x, y] - (-1)^{d(x)} [x, delta y]."""
    d = x.degrees().d
    return (hochschild_delta(g_bracket(x, y), m) - g_bracket(hochschild_delta(x, m), y)
            - g_bracket(x, hochschild_delta(y, m)) * sign(d))


def lemma_b_sides(x, y, z, m):
    """The bracket-versus-cup identity for ungraded algebras, as (lhs, rhs)."""
    dx, dy, dz = x.degrees(), y.degrees(), z.degrees()
    delta = lambda c: hochschild_delta(c, m)
    lhs = (g_bracket(x, cup(y, z, m)) - cup(g_bracket(x, y), z, m)
           - cup(y, g_bracket(x, z), m) * sign(dx.d * dy.D))
    inner = (delta(brace(x, [y, z])) - brace(delta(x), [y, z])
             - brace(x, [delta(y), z]) * sign(dx.d) - brace(x, [y, delta(z)]) * sign(dx.d + dy.d))
    return lhs, inner * sign(dx.d + dy.D)


def second_level_gradings(x: Cochain, y: Cochain, m: Cochain) -> dict:
    """Gradings of delta and cup read off from how they shift D.

    In B = C(A) an element x has |x|' = D(x) and d'(x) = -1.  An operator
    with k inputs and one output has d' = k - 1 and |.|' = shift in D.
    """
    Dx, Dy = x.degrees().D, y.degrees().D
    dd = hochschild_delta(x, m)
    cc = cup(x, y, m)
    s1 = dd.degrees().D - Dx if not dd.is_zero() else 1
    s2 = cc.degrees().D - Dx - Dy
    return {"M1": {"super": s1, "d": 0, "suspended": s1}, "M2": {"super": s2, "d": 1, "suspended": s2 + 1}}


# --- suspended forms ---------------------------------------------------------------

def tilde_bracket(mt: Cochain, xt: Cochain) -> Cochain:
    """[m~, x~] = m~ o x~ - (-1)^{||m|| ||x||} x~ o m~ on sA."""
    if not mt.space.suspended:
        raise ValueError("expects maps on a suspended space")
    return g_bracket(mt, xt)


def tilde_bracket_holds(m: Cochain, x: Cochain) -> bool:
    """[m~, x~] = (-1)^{d(m)||x||} ([m, x])~ for single-output maps m, x."""
    lhs = tilde_bracket(tilde(m), tilde(x))
    rhs = Cochain.zero(lhs.space)
    for (km, _, _), mc in m.components().items():
        for (kx, _, sx), xc in x.components().items():
            s = sign((km - 1) * (sx + kx - 1))
            rhs = rhs + tilde(g_bracket(mc, xc)) * s
    return lhs == rhs


def symmetrized_tilde_holds(m: Cochain, word) -> bool:
    """{m~}{sa_1}...{sa_n} = (-1)^{sum (n-t)||a_t||} s {m}{a_1}...{a_n}."""
    space = m.space
    susp = space.suspend()
    lhs = brace_fold(tilde(m), [[Cochain.from_element(Element.basis(susp, i))] for i in word])
    rhs = brace_fold(m, [[Cochain.from_element(Element.basis(space, i))] for i in word])
    s = sign(signs.tilde_exponent([space.degrees[i] for i in word]))
    return lhs.to_element() == transport(rhs.to_element(), susp) * s
