"""Exact scalars, graded vector spaces and elements of the tensor algebra.

Scalars are Python ints or :class:`fractions.Fraction`; both compare exactly,
so no floating point ever enters a computation.  A word is a tuple of basis
indices and stands for the tensor a_{i1} (x) ... (x) a_{in}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, Tuple, Union

Scalar = Union[int, Fraction]
Word = Tuple[int, ...]


def to_scalar(value) -> Scalar:
    """Coerce ``value`` to an exact rational, collapsing integral fractions to int."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact scalars")
    q = Fraction(value)
    return q.numerator if q.denominator == 1 else q


def parity(n: int) -> int:
    return n & 1


def sign(exponent: int) -> int:
    """(-1)**exponent for any integer exponent."""
    return -1 if exponent & 1 else 1


@dataclass(frozen=True)
class GradedSpace:
    """A finite dimensional Z-graded vector space with a labelled basis.

    ``suspended`` marks a space whose exchange rule only uses the super
    degree (the shifted world sA); otherwise elements carry the bidegree
    (d, |a|) = (-1, deg) and both parts enter the Koszul sign.
    """

    name: str
    labels: Tuple[str, ...]
    degrees: Tuple[int, ...]
    suspended: bool = False
    _index: Dict[str, int] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        degrees = tuple(int(d) for d in self.degrees)
        if not labels:
            raise ValueError("a graded space needs at least one basis element")
        if len(labels) != len(degrees):
            raise ValueError("labels and degrees differ in length")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate basis labels")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    @classmethod
    def from_basis(cls, name: str, basis: Iterable[Tuple[str, int]]) -> "GradedSpace":
        pairs = list(basis)
        return cls(name, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown basis label {label!r} in {self.name}") from None

    def word_degree(self, word: Word) -> int:
        degs = self.degrees
        return sum(degs[i] for i in word)

    def words(self, n: int) -> Iterator[Word]:
        return product(range(self.dim), repeat=n)

    def suspend(self) -> "GradedSpace":
        if self.suspended:
            raise ValueError("space is already suspended")
        return GradedSpace("s" + self.name, self.labels, tuple(d - 1 for d in self.degrees), True)

    def desuspend(self) -> "GradedSpace":
        if not self.suspended:
            raise ValueError("space is not suspended")
        name = self.name[1:] if self.name.startswith("s") else self.name
        return GradedSpace(name, self.labels, tuple(d + 1 for d in self.degrees), False)

    def format_word(self, word: Word) -> str:
        if len(word) == 1:
            return self.labels[word[0]]
        return "{" + ",".join(self.labels[i] for i in word) + "}"

    def parse_word(self, labels: Iterable[str]) -> Word:
        return tuple(self.index(lab) for lab in labels)


def _clean(terms: Dict[Word, Scalar]) -> Dict[Word, Scalar]:
    return {w: c for w, c in terms.items() if c != 0}


def format_terms(space: GradedSpace, terms: Dict[Word, Scalar]) -> str:
    if not terms:
        return "0"
    parts = []
    for w in sorted(terms, key=lambda w: (len(w), w)):
        c = terms[w]
        body = space.format_word(w)
        if c == 1:
            parts.append(("+", body))
        elif c == -1:
            parts.append(("-", body))
        elif c > 0:
            parts.append(("+", f"{c}*{body}"))
        else:
            parts.append(("-", f"{-c}*{body}"))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, body in parts[1:]:
        out += f" {s} {body}"
    return out


class Element:
    """A finite linear combination of words in TA over a fixed graded space."""

    __slots__ = ("space", "terms")

    def __init__(self, space: GradedSpace, terms: Dict[Word, Scalar] | None = None):
        self.space = space
        self.terms = _clean({tuple(w): to_scalar(c) for w, c in (terms or {}).items()})

    @classmethod
    def basis(cls, space: GradedSpace, label) -> "Element":
        i = label if isinstance(label, int) else space.index(label)
        return cls(space, {(i,): 1})

    @classmethod
    def word(cls, space: GradedSpace, labels: Iterable, coef: Scalar = 1) -> "Element":
        w = tuple(lab if isinstance(lab, int) else space.index(lab) for lab in labels)
        return cls(space, {w: coef})

    @classmethod
    def zero(cls, space: GradedSpace) -> "Element":
        return cls(space, {})

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            return NotImplemented
        if other.space != self.space:
            raise ValueError(f"elements live in different spaces {self.space.name} and {other.space.name}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return Element(self.space, out)

    def __neg__(self):
        return Element(self.space, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            return NotImplemented
        s = to_scalar(scalar)
        return Element(self.space, {w: s * c for w, c in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "Element") -> "Element":
        """Plain concatenation product u (x) v of TA (no sign is involved)."""
        self._check(other)
        out: Dict[Word, Scalar] = {}
        for u, c in self.terms.items():
            for v, e in other.terms.items():
                out[u + v] = out.get(u + v, 0) + c * e
        return Element(self.space, out)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Element):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        return hash((self.space.name, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, labels) -> Scalar:
        w = tuple(lab if isinstance(lab, int) else self.space.index(lab) for lab in labels)
        return self.terms.get(w, 0)

    def lengths(self) -> set:
        return {len(w) for w in self.terms}

    def __repr__(self):
        return f"Element({format_terms(self.space, self.terms)})"

    def __str__(self):
        return format_terms(self.space, self.terms)


def super_degree(e: Element):
    """Total super degree if every term has the same one, else ``"mixed"``.

    The zero element is reported as degree 0.
    """
    degs = {e.space.word_degree(w) for w in e.terms}
    if not degs:
        return 0
    if len(degs) == 1:
        return degs.pop()
    return "mixed"


def tensor_length(e: Element):
    lens = e.lengths()
    if not lens:
        return 0
    if len(lens) == 1:
        return lens.pop()
    return "mixed"


def _suspension_exponent(space: GradedSpace, word: Word) -> int:
    # moving n suspensions to the front: the t-th s passes a_1 .. a_{t-1}
    n = len(word)
    return sum((n - 1 - t) * space.degrees[i] for t, i in enumerate(word))


def suspend(e: Element) -> Element:
    """Apply s^{(x)n} to an element of A^{(x)n}, giving an element of (sA)^{(x)n}.

    For a single letter there is no sign; for longer words each s passes the
    letters in front of it.
    """
    if e.space.suspended:
        raise ValueError("element already lives in a suspended space")
    target = e.space.suspend()
    return Element(target, {w: sign(_suspension_exponent(e.space, w)) * c for w, c in e.terms.items()})


def suspend_tensor(n: int, e: Element) -> Element:
    if any(len(w) != n for w in e.terms):
        raise ValueError(f"element is not in tensor power {n}")
    return suspend(e)


def desuspend(e: Element) -> Element:
    """Inverse of :func:`suspend`."""
    if not e.space.suspended:
        raise ValueError("element does not live in a suspended space")
    base = e.space.desuspend()
    return Element(base, {w: sign(_suspension_exponent(base, w)) * c for w, c in e.terms.items()})


def transport(e: Element, space: GradedSpace) -> Element:
    """Reinterpret the coefficients of ``e`` over another space with the same basis size."""
    if space.dim != e.space.dim:
        raise ValueError("dimension mismatch")
    return Element(space, dict(e.terms))
