"""Shipped example algebras.

Associative algebras and bialgebras come from the ``.alg.json`` files in
``mbrace/data``; the A-infinity examples are built in :mod:`mbrace.homotopy`.
"""
from __future__ import annotations

from importlib import resources
from typing import Dict

from . import homotopy
from .algfile import AlgebraFile, load, load_dict
from .cochains import Cochain
from .coalgebra import Bialgebra
from .scalars import GradedSpace

ALGEBRAS = ("exterior", "bv", "z2", "z3", "sweedler")
BIALGEBRAS = ("z2", "z3", "sweedler")
AINF = ("forms", "gauged", "even")


FILES = {"z2": "z2_bialgebra"}


def data_path(name: str):
    return resources.files("mbrace") / "data" / f"{FILES.get(name, name)}.alg.json"


def algebra(name: str) -> AlgebraFile:
    if name not in ALGEBRAS:
        raise KeyError(f"unknown instance {name!r}; choose from {', '.join(ALGEBRAS)}")
    with resources.as_file(data_path(name)) as p:
        return load(p)


def bialgebra(name: str) -> Bialgebra:
    alg = algebra(name) if name in ALGEBRAS else None
    if alg is None or name not in BIALGEBRAS:
        raise KeyError(f"{name!r} is not a bialgebra instance")
    b = Bialgebra(alg.space, alg.maps["m"], alg.maps["Delta"], name=name)
    b.validate()
    return b


def ainf(name: str) -> homotopy.AInfStructure:
    if name == "forms":
        return homotopy.dga_instance()
    if name == "gauged":
        return homotopy.gauged_dga_instance()
    if name == "even":
        return homotopy.even_products_instance()
    raise KeyError(f"unknown A-infinity instance {name!r}; choose from {', '.join(AINF)}")


# --- builders for the data files ----------------------------------------------------

def build_exterior() -> Dict:
    S = GradedSpace.from_basis("exterior", [("1", 0), ("th", 1)])
    m = Cochain(S, {(0, 0): {(0,): 1}, (0, 1): {(1,): 1}, (1, 0): {(1,): 1}})
    return {"space": S, "maps": {"m": m}, "product": "m"}


def build_bv() -> Dict:
    """k[x]/(x^2) (x) Lambda[th] with Delta = d^2/dx dth."""
    S = GradedSpace.from_basis("bv", [("1", 0), ("x", 0), ("th", 1), ("xth", 1)])
    mt = {}
    for a in range(4):
        mt[(0, a)] = {(a,): 1}
        mt[(a, 0)] = {(a,): 1}
    mt[(1, 2)] = {(3,): 1}
    mt[(2, 1)] = {(3,): 1}
    delta = Cochain(S, {(3,): {(0,): 1}})
    return {"space": S, "maps": {"m": Cochain(S, mt), "Delta": delta}, "product": "m"}


def build_group(n: int) -> Dict:
    S = GradedSpace.from_basis(f"z{n}", [("1", 0)] + [(f"g{k}" if n > 2 else "g", 0) for k in range(1, n)])
    m = Cochain(S, {(a, b): {((a + b) % n,): 1} for a in range(n) for b in range(n)})
    d = Cochain(S, {(a,): {(a, a): 1} for a in range(n)})
    return {"space": S, "maps": {"m": m, "Delta": d}, "product": "m", "coproduct": "Delta"}


def build_sweedler() -> Dict:
    """Basis g^a x^b: g^2 = 1, x^2 = 0, xg = -gx, Delta x = x (x) 1 + g (x) x."""
    S = GradedSpace.from_basis("sweedler", [("1", 0), ("g", 0), ("x", 0), ("gx", 0)])
    mt = {}
    for i in range(4):
        for j in range(4):
            a1, b1, a2, b2 = i % 2, i // 2, j % 2, j // 2
            if b1 and b2:
                continue
            s = -1 if (b1 and a2) else 1
            mt[(i, j)] = {((a1 + a2) % 2 + 2 * (b1 + b2),): s}
    d = {(0,): {(0, 0): 1}, (1,): {(1, 1): 1}, (2,): {(2, 0): 1, (1, 2): 1}, (3,): {(3, 1): 1, (0, 3): 1}}
    return {"space": S, "maps": {"m": Cochain(S, mt), "Delta": Cochain(S, d)},
            "product": "m", "coproduct": "Delta"}


BUILDERS = {
    "exterior": build_exterior,
    "bv": build_bv,
    "z2": lambda: build_group(2),
    "z3": lambda: build_group(3),
    "sweedler": build_sweedler,
}


def built(name: str) -> AlgebraFile:
    spec = BUILDERS[name]()
    return AlgebraFile(name, spec["space"], spec["maps"], {}, spec.get("product"), spec.get("coproduct"))


def write_data(directory) -> None:
    """Regenerate the shipped data files from the builders."""
    import json
    import re
    from pathlib import Path
    from .algfile import dump_dict
    for name in ALGEBRAS:
        spec = BUILDERS[name]()
        extra = {k: spec[k] for k in ("product", "coproduct") if k in spec}
        data = dump_dict(spec["space"], spec["maps"], name, **extra)
        text = json.dumps(data, indent=2)
        text = re.sub(r"\{\s*(\"label\": \"[^\"]*\"),\s*(\"deg\": -?\d+)\s*\}", r"{\1, \2}", text)
        Path(directory, f"{FILES.get(name, name)}.alg.json").write_text(text + "\n")
