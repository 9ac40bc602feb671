"""Row-length description of the folded filter set for type A_n, lambda = Lambda_m.

Filters of the rectangle Y_{m, n-m+1} are encoded by their row lengths
k_1 >= ... >= k_m and the index set I(Y) = {k_l + m + 1 - l}.  The folded
filters are exactly those whose index set avoids its own reflection
i -> n + 2 - i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .colored import ColoredPoset, op_S
from .folding import folded_orbit, make_folding, tilde_F_set
from .minuscule import Report, build_minuscule_poset
from .poset import Poset, PosetError, bits, find_isomorphism, order_filters, young_rect
from .roots import cartan


class RangeError(ValueError):
    pass


def _check_range(m: int, n: int) -> None:
    if not (n >= 1 and 1 <= m and 2 * m <= n + 1):
        raise RangeError(f"need 1 <= m <= (n+1)/2, got m={m}, n={n}")


@dataclass(frozen=True)
class RowProfile:
    m: int
    n: int
    k: tuple

    @property
    def cols(self) -> int:
        return self.n - self.m + 1

    def index_set(self) -> frozenset:
        m = self.m
        return frozenset(self.k[l - 1] + m + 1 - l for l in range(1, m + 1))

    def reflected(self) -> frozenset:
        return frozenset(self.n + 2 - i for i in self.index_set())

    def to_filter(self) -> int:
        c = self.cols
        return sum(1 << ((l - 1) * c + j) for l in range(1, self.m + 1) for j in range(self.k[l - 1]))

    @classmethod
    def from_filter(cls, m: int, n: int, y: int) -> "RowProfile":
        c = n - m + 1
        rect = rectangle(m, n)
        if not rect.is_filter(y):
            raise PosetError("not an order filter of the rectangle")
        k = tuple(sum(1 for j in range(c) if y >> ((l - 1) * c + j) & 1) for l in range(1, m + 1))
        return cls(m, n, k)

    @classmethod
    def from_index_set(cls, m: int, n: int, idx) -> "RowProfile":
        vals = sorted(idx, reverse=True)
        return cls(m, n, tuple(v - (m + 1 - l) for l, v in enumerate(vals, 1)))


def rectangle(m: int, n: int) -> Poset:
    """Y_{m, n-m+1}, the poset of A_n with Lambda_m."""
    return young_rect(m, n - m + 1)


def rectangle_colored(m: int, n: int) -> ColoredPoset:
    """The rectangle with kappa((i, j)) = j - i + m."""
    p = rectangle(m, n)
    c = n - m + 1
    kappa = tuple(j - i + m for i in range(1, m + 1) for j in range(1, c + 1))
    return ColoredPoset(p, kappa, tuple(range(1, n + 1)))


def index_set(m: int, n: int, y: int) -> frozenset:
    return RowProfile.from_filter(m, n, y).index_set()


def is_ss(m: int, n: int, y: int) -> bool:
    _check_range(m, n)
    prof = RowProfile.from_filter(m, n, y)
    return not (prof.index_set() & prof.reflected())


def ss_family(m: int, n: int) -> list[int]:
    _check_range(m, n)
    return [y for y in order_filters(rectangle(m, n)) if is_ss(m, n, y)]


def lemma_9_2_check(m: int, n: int) -> Report:
    """Index-set membership of k, k+1 predicts how S_k moves each filter."""
    _check_range(m, n)
    cp = rectangle_colored(m, n)
    rep = Report(f"A{n}/L{m} index sets", [])
    grow, shrink, fix, update = [], [], [], []
    for y in order_filters(cp.poset):
        idx = index_set(m, n, y)
        for k in range(1, n + 1):
            s = op_S(cp, y, k)
            a, b = k in idx, k + 1 in idx
            up = s != y and s & y == y
            down = s != y and s & y == s
            if (a and not b) != up:
                grow.append([bits(y), k])
            if (b and not a) != down:
                shrink.append([bits(y), k])
            if (a == b) != (s == y):
                fix.append([bits(y), k])
            if a and not b and index_set(m, n, s) != (idx - {k}) | {k + 1}:
                update.append([bits(y), k])
    rep.add("k in I, k+1 not in I  <=>  S_k grows Y", grow)
    rep.add("k not in I, k+1 in I  <=>  S_k shrinks Y", shrink)
    rep.add("otherwise S_k fixes Y", fix)
    rep.add("S_k swaps k for k+1 in I and fixes the rest", update)
    return rep


def _folding(n: int):
    # A_1 has no nontrivial automorphism; the identity folding covers n = 1
    return make_folding("A", n, "default" if n >= 2 else "identity")


def rectangle_embedding(mp, m: int, n: int) -> list[int]:
    """Color-preserving isomorphism from P_{Lambda_m} onto the rectangle."""
    cp = rectangle_colored(m, n)
    phi = find_isomorphism(mp.poset, cp.poset, lambda x, y: mp.kappa[x] == cp.kappa[y])
    if phi is None:
        raise PosetError(f"P_Lambda_{m} of A_{n} is not the colored rectangle")
    return phi


def transport(phi: list[int], f: int) -> int:
    return sum(1 << phi[x] for x in bits(f))


def folded_rectangle_filters(m: int, n: int) -> list[int]:
    """The folded filter set for (A_n, Lambda_m), moved onto the rectangle."""
    d = cartan("A", n)
    mp = build_minuscule_poset(d, d.fundamental(m))
    phi = rectangle_embedding(mp, m, n)
    return sorted(transport(phi, f) for f in tilde_F_set(_folding(n), mp))


def verify_theorem_9_4(m: int, n: int) -> Report:
    _check_range(m, n)
    tf = set(folded_rectangle_filters(m, n))
    ss = set(ss_family(m, n))
    rep = Report(f"A{n}/L{m}", [])
    diff = sorted(tf ^ ss)
    rep.add("folded filter set equals SS family", [bits(y) for y in diff],
            {"folded": len(tf), "ss": len(ss)})
    return rep


def theorem_table(max_n: int) -> list[dict]:
    rows = []
    for n in range(1, max_n + 1):
        for m in range(1, (n + 1) // 2 + 1):
            orbit = len(folded_orbit(_folding(n), cartan("A", n).fundamental(m)))
            tf = set(folded_rectangle_filters(m, n))
            ss = set(ss_family(m, n))
            rows.append({"m": m, "n": n, "filters": len(order_filters(rectangle(m, n))),
                         "ss": len(ss), "folded_orbit": orbit,
                         "equal": tf == ss and len(ss) == orbit})
    return rows
