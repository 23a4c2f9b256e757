"""One test per acceptance criterion; each prints a PASS/FAIL line.

Two criteria contain printed claims that the computation contradicts (the
order of the BV operator and the j!(n-j)! factor).  Their tests check every
other part normally and then report the claim as FAIL with the computed
counterexample, marking the test as an expected failure.
"""
import random
import shutil
import subprocess
import sys
from itertools import permutations, product

import pytest
from hypothesis import given, settings

from mbrace import dsl, instances
from mbrace import exprs as E
from mbrace import gerstenhaber as G
from mbrace import homotopy as H
from mbrace import signs
from mbrace.checks import flat_algebras, graded_space, mutated_product
from mbrace.coalgebra import BialgebraComplex, coderivation_law_holds, derivation_law_holds
from mbrace.cochains import Cochain, identity, random_cochain
from mbrace.fuzz import corpus
from mbrace.phi import BVLaws, PhiTower, bv_bracket, bv_bracket_via_commutator

from conftest import CRITERIA
from oracles import bubble_exponent, cycle_sign
from test_dsl import MALFORMED, _readme_examples, asts
from test_homotopy import stasheff_holds


def record(n, ok, what):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {what}"
    print(line)
    CRITERIA.append(line)
    return ok


# 1 -------------------------------------------------------------------------------

def test_criterion_01_oracle_equivalence():
    res = corpus(20261015, 500, max_depth=3)
    bad = [c.text for c in res if not c.agree]
    nonzero = sum(not c.zero for c in res)
    record(1, not bad and len(res) == 500,
           f"engine vs oracle on {len(res)} expressions, {len(bad)} mismatches, {nonzero} nonzero")
    assert len(res) == 500 and not bad, bad[:3]


# 2 -------------------------------------------------------------------------------

def test_criterion_02_sign_lemmas():
    rng = random.Random(2)
    lu_ok = True
    for n in range(1, 6):
        for _ in range(100):
            degs = [rng.randint(-3, 3) for _ in range(n)]
            lu_ok &= len({signs.lu_exponent(s, degs) for s in permutations(range(n))}) == 1
    split_ok = True
    pairs = 0
    for _ in range(2):
        bideg = [(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(4)]
        for s1 in permutations(range(4)):
            for s2 in permutations(range(4)):
                pairs += 1
                split_ok &= signs.split_law_holds(s1, s2, bideg)
    # (-1)^p = sgn(sigma) * eps(sigma), with p and eps from adjacent swaps
    p_ok = True
    for n in range(1, 6):
        for _ in range(20):
            degs = [rng.randint(-3, 3) for _ in range(n)]
            for s in permutations(range(n)):
                p = bubble_exponent(s, [(-1, d) for d in degs])
                eps = bubble_exponent(s, [(0, d) for d in degs])
                p_ok &= (-1) ** p == cycle_sign(s) * (-1) ** eps
                p_ok &= signs.p_for_elements(s, degs) == p and signs.e_exponent(s, degs) == eps
    ok = lu_ok and split_ok and p_ok
    record(2, ok, f"lu invariance {lu_ok}, split law on {pairs} S4 pairs {split_ok}, p = sgn*eps {p_ok}")
    assert ok


# 3 -------------------------------------------------------------------------------

def test_criterion_03_pre_lie():
    rng = random.Random(3)
    S = graded_space(2)
    rand = lambda ar=(1, 2): random_cochain(S, rng.choice(ar), rng.choice([-1, 0, 1]), rng, density=0.6)
    pj = all(G.pre_jacobi_defect(rand((1, 2, 3)), rand(), rand()).is_zero() for _ in range(200))
    wit = G.find_left_pre_lie_witness(S, random.Random(4))
    left = wit is not None and not G.left_pre_lie_defect(*wit).is_zero()
    triple = all(G.triple_defect(rand((2, 3)), rand((2, 3)), rand(), rand()).is_zero() for _ in range(50))
    jac = all(G.jacobi_defect(rand(), rand(), rand()).is_zero() for _ in range(50))
    ok = pj and left and triple and jac
    record(3, ok, f"pre-Jacobi on 200 triples {pj}, left pre-Lie witness {left}, triple {triple}, Jacobi {jac}")
    assert ok


# 4 -------------------------------------------------------------------------------

def _associator(m, a, b, c):
    # (ab)c - a(bc) straight from the table
    out = {}
    for (o1,), v1 in m.table.get((a, b), {}).items():
        for o, v in m.table.get((o1, c), {}).items():
            out[o] = out.get(o, 0) + v1 * v
    for (o1,), v1 in m.table.get((b, c), {}).items():
        for o, v in m.table.get((a, o1), {}).items():
            out[o] = out.get(o, 0) - v1 * v
    return {o: v for o, v in out.items() if v}


def test_criterion_04_hochschild():
    rng = random.Random(4)
    ext = instances.algebra("exterior")
    S, m = ext.space, ext.maps["m"]
    good = G.mm(m).is_zero() and all(
        G.delta_squared(random_cochain(S, rng.choice([0, 1, 2]), rng.choice([0, 1]), rng), m).is_zero()
        for _ in range(30))
    bad = mutated_product(m, rng)
    d2 = G.delta_squared(identity(S), bad)
    twice = True
    for w in product(range(S.dim), repeat=3):
        expect = {o: 2 * v for o, v in _associator(bad, *w).items()}
        twice &= d2.apply_word(w) == expect
    ok = good and twice and not d2.is_zero()
    record(4, ok, f"associative: delta^2 = 0 {good}; mutated: delta^2(id) = 2 * associator {twice}")
    assert ok


# 5 -------------------------------------------------------------------------------

def test_criterion_05_cup_and_derivation():
    rng = random.Random(5)
    ext = instances.algebra("exterior")
    S = ext.space
    cup_ok = lz_ok = True
    for m in (ext.maps["m"], mutated_product(ext.maps["m"], rng)):
        for _ in range(20):
            x, y, z = (random_cochain(S, rng.choice([0, 1, 2]), rng.choice([0, 1]), rng) for _ in range(3))
            a, b = G.cup_associativity_sides(x, y, z, m)
            cup_ok &= a == b
            a, b = G.leibniz_sides(x, y, m)
            lz_ok &= a == b
    hc = la = lb = True
    for name, m in flat_algebras():
        T = m.space
        for _ in range(20):
            x, y, z = (random_cochain(T, rng.choice([1, 2]), 0, rng) for _ in range(3))
            x2 = random_cochain(T, rng.choice([2, 3]), 0, rng)
            a, b = G.homotopy_commutativity_sides(x, y, m)
            hc &= a == b
            la &= G.lemma_a_defect(x, y, m).is_zero()
            a, b = G.lemma_b_sides(x2, y, z, m)
            lb &= a == b
    ok = cup_ok and lz_ok and hc and la and lb
    record(5, ok, f"cup defect {cup_ok}, derivation defect {lz_ok}, homotopy commutativity {hc}, "
                  f"lemma A {la}, lemma B {lb}")
    assert ok


# 6 -------------------------------------------------------------------------------

def test_criterion_06_phi_bv():
    bv = instances.algebra("bv")
    S, m, delta = bv.space, bv.maps["m"], bv.maps["Delta"]
    tower = PhiTower(delta, m)
    not_first = not tower.is_order(1)
    laws = BVLaws(delta, m).check_all()
    pairs = [(a, b) for a in range(S.dim) for b in range(S.dim)]
    routes = all(bv_bracket(delta, m, a, b, tower) == bv_bracket_via_commutator(delta, m, a, b) for a, b in pairs)
    assert not_first and all(laws.values()) and routes and len(pairs) == 16
    order2 = tower.is_order(2)
    x, th = S.index("x"), S.index("th")
    phi3 = tower.level(3)(x, x, th)
    record(6, order2, f"isOrderR(Delta, m, 2) = {order2} (Phi^3(x, x, th) = {phi3!r}); "
                      f"isOrderR(Delta, m, 1) = {not not_first}, laws {all(laws.values())}, "
                      f"two bracket routes on 16 pairs {routes}")
    if not order2:
        pytest.xfail("Delta has order 3 on k[x]/(x^2) (x) Lambda[th]: Phi^3(x, x, th) = -2x")


# 7 -------------------------------------------------------------------------------

def _population(seed, count, space):
    rng = random.Random(seed)
    base = [H.dga_instance(), H.gauged_dga_instance()]
    out = []
    for t in range(count):
        if t % 3 == 0:
            out.append(H.random_structure(space, rng))
        elif t % 3 == 1:
            out.append(base[t % 2])
        else:
            out.append(H.mutate(base[t % 2], rng))
    return out


def test_criterion_07_ainf():
    even = H.even_products_instance(6)
    even_ok = all(H.ainf_defect(even, n).is_zero() for n in range(1, 8))
    agree = True
    broken = 0
    for s in _population(7, 50, graded_space(3)):
        preds = {f: H.is_ainf(s, 3, f) for f in H.FORMULATIONS}
        agree &= len(set(preds.values())) == 1 and preds["tilde"] == stasheff_holds(s, 3)
        broken += not preds["tilde"]
    ok = even_ok and agree and broken > 0
    record(7, ok, f"even products n <= 7 {even_ok}; four formulations agree on 50 structures "
                  f"({broken} broken) {agree}")
    assert ok


# 8 -------------------------------------------------------------------------------

def test_criterion_08_linf():
    equi = co = True
    for s in _population(8, 50, graded_space(2)):
        for n in range(1, 5):
            words = list(s.space.words(n))
            equi &= all(H.equivalence_holds(s, w) for w in words)
            a = H.ainf_defect(s, n).is_zero()
            b = all(H.linf_relation(s, w).is_zero() for w in words)
            co &= b or not a
    master = all(H.is_linf(instances.ainf(name), 4) for name in ("forms", "gauged"))
    st = instances.ainf("gauged")
    words = [w for n in range(1, 4) for w in st.space.words(n)]
    wit = H.find_ll_witness(st, 3)
    counted = all(H.factorial_weighted_holds(st, w, "counted") for w in words)
    assert equi and co and master and wit is not None and counted
    stated_fail = [st.space.format_word(w) for w in words if not H.factorial_weighted_holds(st, w, "stated")]
    stated = not stated_fail
    record(8, stated, f"factor j!(n-j)! reproduced {stated} (fails on {len(stated_fail)} words, "
                      f"e.g. {stated_fail[:1]}; j! i! holds {counted}); equivalence n <= 4 on 50 structures "
                      f"{equi and co}; master defect 0 on A-inf inputs {master}; l~ o l~ witness "
                      f"{st.space.format_word(wit[0])} -> {wit[1]!r}")
    if not stated:
        pytest.xfail("the expansion produces j! i! equal terms, not j!(n-j)!")


# 9 -------------------------------------------------------------------------------

def test_criterion_09_tensor_coalgebra():
    S = graded_space(2)
    der = cod = True
    count = 0
    for o_len in (1, 2):
        for a in range(S.dim):
            for o in S.words(o_len):
                count += 1
                der &= derivation_law_holds(Cochain(S, {(a,): {o: 1}}), 3)
    for w_len in (1, 2):
        for w in S.words(w_len):
            for o in range(S.dim):
                count += 1
                cod &= coderivation_law_holds(Cochain(S, {w: {(o,): 1}}), 3)
    C = BialgebraComplex(instances.bialgebra("z2"))
    sq = C.square_zero(3)
    ok = der and cod and all(sq.values())
    record(9, ok, f"[D, M]' = 0 {der}, [C, Delta]' = 0 {cod} ({count} basis maps, words <= 3); "
                  f"k[Z/2] i + j <= 3: {sq}")
    assert ok


# 10 ------------------------------------------------------------------------------

NOTATION = {
    "{x}{a1, a2}": E.Braces((E.Group((E.Name("x"),)), E.Group((E.Name("a1"), E.Name("a2"))))),
    "{m}{m}{th, th, th}": E.Braces((E.Group((E.Name("m"),)), E.Group((E.Name("m"),)),
                                    E.Group((E.Name("th"), E.Name("th"), E.Name("th"))))),
    "{{x}{y}}{z}": E.Braces((E.Group((E.Braces((E.Group((E.Name("x"),)), E.Group((E.Name("y"),)))),)),
                             E.Group((E.Name("z"),)))),
    "{x}{{y}{z}}": E.Braces((E.Group((E.Name("x"),)),
                             E.Group((E.Braces((E.Group((E.Name("y"),)), E.Group((E.Name("z"),)))),)))),
    "{x, y}{a, b, c}": E.Braces((E.Group((E.Name("x"), E.Name("y"))),
                                 E.Group((E.Name("a"), E.Name("b"), E.Name("c"))))),
    "[m, x]": E.Bracket(E.Name("m"), E.Name("x")),
    "~m": E.Tilde(E.Name("m")),
    "{s}{m}{a, b}": E.Braces((E.Group((E.SuspMap(),)), E.Group((E.Name("m"),)),
                              E.Group((E.Name("a"), E.Name("b"))))),
    "{~m}{s a, s b}": E.Braces((E.Group((E.Tilde(E.Name("m")),)),
                                E.Group((E.Susp(E.Name("a")), E.Susp(E.Name("b")))))),
    "x . y": E.Dot(E.Name("x"), E.Name("y")),
    "{M}'{{a}, {b}}'": E.Braces((E.Group((E.Name("M"),), True),
                                 E.Group((E.Braces((E.Group((E.Name("a"),)),)),
                                          E.Braces((E.Group((E.Name("b"),)),))), True))),
    "{Delta}'{{a, b}}'": E.Braces((E.Group((E.Name("Delta"),), True),
                                   E.Group((E.Braces((E.Group((E.Name("a"), E.Name("b"))),)),), True))),
    "ad(m){x}": E.Ad(E.Name("m"), E.Group((E.Name("x"),))),
    "d(x)": E.Call("d", E.Name("x")),
}

_roundtrip = {"n": 0, "ok": True}


@given(asts)
@settings(max_examples=200, database=None)
def _roundtrip_property(expr):
    _roundtrip["n"] += 1
    ok = dsl.parse(dsl.to_text(expr)) == expr
    _roundtrip["ok"] &= ok
    assert ok


def test_criterion_10_parser():
    _roundtrip_property()
    rt = _roundtrip["ok"] and _roundtrip["n"] >= 200
    docs = _readme_examples()
    notation = bool(docs) and set(docs) == set(NOTATION) and all(dsl.parse(t) == NOTATION[t] for t in docs)
    positioned = True
    for text, pos, _ in MALFORMED:
        try:
            dsl.parse(text)
            positioned = False
        except dsl.ParseError as err:
            positioned &= (err.diagnostics[0].line, err.diagnostics[0].col) == pos
    ok = rt and notation and positioned
    record(10, ok, f"roundtrip on {_roundtrip['n']} ASTs {rt}; {len(docs)} documented examples parse to "
                   f"the intended AST {notation}; {len(MALFORMED)} malformed inputs positioned {positioned}")
    assert ok


# 11 ------------------------------------------------------------------------------

def test_criterion_11_determinism():
    exe = shutil.which("mbrace")
    cmd = [exe] if exe else [sys.executable, "-m", "mbrace.cli"]
    runs = [subprocess.run(cmd + ["check", "all", "--seed", "1"], capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and bool(runs[0].stdout)
    codes = [r.returncode for r in runs]
    summary = runs[0].stdout.decode().strip().splitlines()[-1] if runs[0].stdout else ""
    ok = same and codes == [0, 0]
    record(11, ok, f"two runs byte-identical {same}, exit codes {codes}; {summary}")
    assert ok
