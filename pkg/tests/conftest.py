"""Shared oracles and cached cases.

The oracles here are deliberately naive (subset scans, literal set
formulas) so they share no code with the library's fast paths.
"""

from functools import lru_cache
from itertools import combinations

import pytest

from dfold.folding import fold_case, foldable_weights, make_folding
from dfold.minuscule import build_minuscule_poset
from dfold.roots import cartan, is_minuscule


def brute_filters(p):
    """Order filters by scanning all 2^n subsets."""
    out = []
    for mask in range(1 << p.n):
        ok = True
        for x, y in p.covers:
            if mask >> x & 1 and not mask >> y & 1:
                ok = False
                break
        if ok:
            out.append(mask)
    return out


def def_A(filters, kappa, f, c):
    """Union of all filters F' with F' minus F inside the color class."""
    out = 0
    for g in filters:
        if all(kappa[x] == c for x in range(len(kappa)) if g >> x & 1 and not f >> x & 1):
            out |= g
    return out


def def_R(filters, kappa, f, c):
    """Intersection of all filters F' with F minus F' inside the color class."""
    out = (1 << len(kappa)) - 1
    for g in filters:
        if all(kappa[x] == c for x in range(len(kappa)) if f >> x & 1 and not g >> x & 1):
            out &= g
    return out


def def_S(filters, kappa, f, c):
    a, r = def_A(filters, kappa, f, c), def_R(filters, kappa, f, c)
    t = (a & ~f) | r
    return t if t in set(filters) else f


def subsets(n, k):
    return [frozenset(s) for s in combinations(range(1, n + 1), k)]


MINUSCULE_CASES = [("A", 1, 1), ("A", 2, 1), ("A", 3, 2), ("A", 4, 2), ("A", 5, 2),
                   ("A", 5, 3), ("A", 6, 3), ("D", 4, 1), ("D", 4, 3), ("D", 4, 4),
                   ("D", 5, 1), ("D", 5, 4), ("D", 6, 1), ("D", 6, 5), ("E", 6, 1),
                   ("E", 6, 5), ("E", 7, 6)]

FOLDINGS = [("A", 2, "default"), ("A", 3, "default"), ("A", 4, "default"),
            ("A", 5, "default"), ("A", 6, "default"), ("D", 4, "swap"),
            ("D", 4, "triality"), ("D", 5, "default"), ("E", 6, "default")]


@lru_cache(maxsize=None)
def minuscule(t, n, i):
    d = cartan(t, n)
    return build_minuscule_poset(d, d.fundamental(i))


@lru_cache(maxsize=None)
def folded(t, n, sigma, i):
    fd = make_folding(t, n, sigma)
    return fold_case(fd, fd.source.fundamental(i), minuscule(t, n, i))


def folded_cases():
    out = []
    for t, n, s in FOLDINGS:
        for i in foldable_weights(make_folding(t, n, s)):
            out.append((t, n, s, i))
    return out


def all_minuscule(max_rank=7):
    out = []
    for t, ranks in (("A", range(1, max_rank + 1)), ("D", range(4, max_rank + 1)),
                     ("E", (6, 7))):
        for n in ranks:
            d = cartan(t, n)
            out += [(t, n, i) for i in d.nodes if is_minuscule(d, d.fundamental(i))]
    return out


@pytest.fixture(scope="session")
def a5():
    return minuscule("A", 5, 2)
