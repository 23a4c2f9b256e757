"""Signs of permutations acting on graded arguments.

A permutation ``sigma`` is a tuple with ``sigma[t]`` the (0-based) index of
the argument that ends up in position ``t``, so the permuted sequence is
``a[sigma[0]], ..., a[sigma[n-1]]``.  A pair of indices u < v is inverted
when a_v ends up in front of a_u.

Every element of A carries the bidegree (d, |a|) = (-1, |a|); exchanging x
and y costs (-1)^(d(x)d(y) + |x||y|).  Exponents are returned reduced mod 2.
"""
from __future__ import annotations

from itertools import permutations
from typing import Iterator, List, Sequence, Tuple

Perm = Tuple[int, ...]
SignExponent = int


def check_perm(sigma: Sequence[int]) -> Perm:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(len(sigma))):
        raise ValueError(f"{sigma} is not a permutation")
    return sigma


def inverse(sigma: Sequence[int]) -> Perm:
    pos = [0] * len(sigma)
    for t, u in enumerate(sigma):
        pos[u] = t
    return tuple(pos)


def permute(seq: Sequence, sigma: Sequence[int]) -> list:
    return [seq[u] for u in sigma]


def compose(sigma: Sequence[int], sigma_prime: Sequence[int]) -> Perm:
    """The product sigma sigma': first rearrange by sigma', then by sigma.

    With this convention p(sigma sigma'; a) = p(sigma'; a) + p(sigma; a o sigma').
    """
    if len(sigma) != len(sigma_prime):
        raise ValueError("permutations of different sizes")
    return tuple(sigma_prime[u] for u in sigma)


def inversions(sigma: Sequence[int]) -> List[Tuple[int, int]]:
    pos = inverse(sigma)
    n = len(sigma)
    return [(u, v) for u in range(n) for v in range(u + 1, n) if pos[u] > pos[v]]


def sgn(sigma: Sequence[int]) -> int:
    return -1 if len(inversions(sigma)) & 1 else 1


def p_exponent(sigma: Sequence[int], bidegrees: Sequence[Tuple[int, int]]) -> SignExponent:
    """Bigraded Koszul exponent; ``bidegrees[u] = (d_u, |a_u|)``."""
    total = 0
    for u, v in inversions(sigma):
        du, su = bidegrees[u]
        dv, sv = bidegrees[v]
        total += du * dv + su * sv
    return total & 1


def p_for_elements(sigma: Sequence[int], degrees: Sequence[int]) -> SignExponent:
    """p(sigma) for elements of A, whose d-degree is always -1."""
    return p_exponent(sigma, [(-1, s) for s in degrees])


def e_exponent(sigma: Sequence[int], degrees: Sequence[int]) -> SignExponent:
    """Super-degree part of the Koszul exponent."""
    total = 0
    for u, v in inversions(sigma):
        total += degrees[u] * degrees[v]
    return total & 1


def e_tilde(sigma: Sequence[int], degrees: Sequence[int]) -> SignExponent:
    """Koszul exponent for suspended arguments, given the unsuspended degrees |a|."""
    return e_exponent(sigma, [s - 1 for s in degrees])


def lu_exponent(sigma: Sequence[int], degrees: Sequence[int]) -> SignExponent:
    """Sum over inversions of (||a_u|| + ||a_v||) plus sum_t (n-t) ||a_sigma(t)||.

    ``degrees`` are the unsuspended |a_u|; ||a|| = |a| - 1.  The value does
    not depend on sigma.
    """
    susp = [s - 1 for s in degrees]
    n = len(sigma)
    total = sum(susp[u] + susp[v] for u, v in inversions(sigma))
    total += sum((n - 1 - t) * susp[u] for t, u in enumerate(sigma))
    return total & 1


def tilde_exponent(degrees: Sequence[int]) -> SignExponent:
    """sum_t (n-t) ||a_t|| for unsuspended degrees |a_t|."""
    n = len(degrees)
    return sum((n - 1 - t) * (s - 1) for t, s in enumerate(degrees)) & 1


def all_perms(n: int) -> Iterator[Perm]:
    return permutations(range(n))


def unshuffles(n: int, j: int) -> Iterator[Perm]:
    """Permutations sigma with sigma(1) < ... < sigma(j) and sigma(j+1) < ... < sigma(n)."""
    from itertools import combinations

    for first in combinations(range(n), j):
        rest = tuple(u for u in range(n) if u not in first)
        yield first + rest


def split_law_holds(sigma: Sequence[int], sigma_prime: Sequence[int],
                    bidegrees: Sequence[Tuple[int, int]]) -> bool:
    """p(sigma sigma'; a) == p(sigma'; a) + p(sigma; a_{sigma'(1)}, ...)."""
    lhs = p_exponent(compose(sigma, sigma_prime), bidegrees)
    rhs = p_exponent(sigma_prime, bidegrees) + p_exponent(sigma, permute(bidegrees, sigma_prime))
    return lhs == rhs & 1


def koszul(dx: int, sx: int, dy: int, sy: int, suspended: bool = False) -> SignExponent:
    """Exponent for exchanging x and y."""
    if suspended:
        return (sx * sy) & 1
    return (dx * dy + sx * sy) & 1
