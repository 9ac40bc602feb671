"""Finite posets, order filters and d-complete axioms.

Elements are the integers ``0..n-1``; display labels are metadata only.
Subsets of the ground set (order filters in particular) are plain ``int``
bitmasks, bit ``x`` set iff element ``x`` is a member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence


class PosetError(ValueError):
    pass


def bits(mask: int) -> list[int]:
    """Members of a bitmask in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


class Poset:
    """Immutable finite poset given by its cover relation.

    ``covers`` holds pairs ``(x, y)`` meaning x is covered by y.  The
    constructor rejects cycles and non-reduced cover sets.
    """

    def __init__(self, n: int, covers: Iterable[tuple[int, int]],
                 labels: Optional[Sequence[str]] = None):
        if n < 0:
            raise PosetError("negative size")
        covers = frozenset((int(x), int(y)) for x, y in covers)
        for x, y in covers:
            if not (0 <= x < n and 0 <= y < n) or x == y:
                raise PosetError(f"bad cover pair {(x, y)}")
        self.n = n
        self.covers = covers
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise PosetError("label count does not match size")

        up = [[] for _ in range(n)]
        down = [[] for _ in range(n)]
        for x, y in sorted(covers):
            up[x].append(y)
            down[y].append(x)
        self.up = tuple(tuple(u) for u in up)
        self.down = tuple(tuple(d) for d in down)
        self.up_mask = tuple(to_mask(u) for u in up)
        self.down_mask = tuple(to_mask(d) for d in down)

        # Kahn order from the minimal elements upward.
        indeg = [len(d) for d in down]
        order = [x for x in range(n) if indeg[x] == 0]
        head = 0
        while head < len(order):
            x = order[head]
            head += 1
            for y in up[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    order.append(y)
        if len(order) != n:
            raise PosetError("cover relation has a cycle")
        self.topo = tuple(order)

        above = [0] * n
        for x in reversed(order):
            m = 1 << x
            for y in up[x]:
                m |= above[y]
            above[x] = m
        below = [0] * n
        for x in order:
            m = 1 << x
            for y in down[x]:
                m |= below[y]
            below[x] = m
        self.above = tuple(above)  # principal filter of x (x included)
        self.below = tuple(below)  # principal ideal of x (x included)

        for x, y in covers:
            if above[x] & below[y] != (1 << x) | (1 << y):
                raise PosetError(f"cover {(x, y)} is implied by a longer chain")

    @classmethod
    def from_leq(cls, n: int, leq: Callable[[int, int], bool],
                 labels: Optional[Sequence[str]] = None) -> "Poset":
        """Build from an order predicate by transitive reduction."""
        strict = [[y for y in range(n) if y != x and leq(x, y)] for x in range(n)]
        covers = []
        for x in range(n):
            for y in strict[x]:
                if not any(z != y and leq(z, y) for z in strict[x]):
                    covers.append((x, y))
        return cls(n, covers, labels)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.above[x] >> y & 1)

    def less(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def interval(self, x: int, y: int) -> int:
        return self.above[x] & self.below[y]

    def dual(self) -> "Poset":
        return Poset(self.n, [(y, x) for x, y in self.covers], self.labels)

    def maximal(self) -> list[int]:
        return [x for x in range(self.n) if not self.up[x]]

    def minimal(self) -> list[int]:
        return [x for x in range(self.n) if not self.down[x]]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def is_filter(self, mask: int) -> bool:
        return all(self.up_mask[x] & ~mask == 0 for x in bits(mask))

    def induced(self, elements: Sequence[int]) -> "Poset":
        """Subposet on ``elements`` (renumbered in the given order)."""
        return Poset.from_leq(len(elements),
                              lambda a, b: self.leq(elements[a], elements[b]),
                              [self.labels[x] for x in elements])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poset) and self.n == other.n and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.n, self.covers))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={len(self.covers)})"

    def to_json(self) -> dict:
        return {"n": self.n, "labels": list(self.labels),
                "covers": [list(c) for c in sorted(self.covers)]}

    @classmethod
    def from_json(cls, data: dict) -> "Poset":
        return cls(data["n"], [tuple(c) for c in data["covers"]], data.get("labels"))

    def to_dot(self, name: str = "P", node_attrs: Optional[Callable[[int], str]] = None) -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
        for x in range(self.n):
            extra = node_attrs(x) if node_attrs else ""
            lines.append(f'  n{x} [label="{self.labels[x]}"{extra}];')
        for x, y in sorted(self.covers):
            lines.append(f"  n{x} -> n{y};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- constructors

def _cell_poset(cells: list[tuple[int, int]]) -> Poset:
    index = {c: k for k, c in enumerate(cells)}
    covers = []
    for (i, j), k in index.items():
        # (i, j) is covered by the cell one step up or one step left
        for nb in ((i - 1, j), (i, j - 1)):
            if nb in index:
                covers.append((k, index[nb]))
    return Poset(len(cells), covers, [f"({i},{j})" for i, j in cells])


def young_rect(m: int, n: int) -> Poset:
    """Rectangle Y_{m,n}; cell (i, j) has id (i-1)*n + (j-1), maximum (1,1)."""
    if m < 1 or n < 1:
        raise PosetError("young_rect needs m, n >= 1")
    return _cell_poset([(i, j) for i in range(1, m + 1) for j in range(1, n + 1)])


def shifted_young(n: int) -> Poset:
    """Shifted staircase SY_n, cells (i, j) with i <= j <= n in row-major order."""
    if n < 1:
        raise PosetError("shifted_young needs n >= 1")
    return _cell_poset([(i, j) for i in range(1, n + 1) for j in range(i, n + 1)])


def double_tailed(k: int, minus: bool = False) -> Poset:
    """The double-tailed diamond d_k(1), or d_k^-(1) when ``minus``."""
    if k < 3:
        raise PosetError("double_tailed needs k >= 3")
    labels = [f"w{t}" for t in range(k, 2, -1)] + ["x", "y"]
    labels += [f"z{t}" for t in range(3, k + (0 if minus else 1))]
    idx = {name: t for t, name in enumerate(labels)}
    covers = [(idx[f"w{t}"], idx[f"w{t - 1}"]) for t in range(k, 3, -1)]
    covers += [(idx["w3"], idx["x"]), (idx["w3"], idx["y"])]
    if "z3" in idx:
        covers += [(idx["x"], idx["z3"]), (idx["y"], idx["z3"])]
        top = k - 1 if minus else k
        covers += [(idx[f"z{t}"], idx[f"z{t + 1}"]) for t in range(3, top)]
    return Poset(len(labels), covers, labels)


def disjoint_union(p: Poset, q: Poset) -> Poset:
    shift = p.n
    covers = list(p.covers) + [(x + shift, y + shift) for x, y in q.covers]
    return Poset(p.n + q.n, covers, list(p.labels) + list(q.labels))


# ------------------------------------------------------------------ filters

def order_filters(p: Poset) -> list[int]:
    """All order filters, sorted by size then mask.

    Walks the filter lattice upward from the empty filter, adding one
    maximal element of the complement at a time.
    """
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for f in frontier:
            for x in range(p.n):
                if not f >> x & 1 and p.up_mask[x] & ~f == 0:
                    g = f | 1 << x
                    if g not in seen:
                        seen.add(g)
                        nxt.append(g)
        frontier = nxt
    return sorted(seen, key=lambda m: (popcount(m), m))


# ------------------------------------------------------------ intervals

@dataclass(frozen=True)
class IntervalClass:
    tag: str  # "DkDiamond", "DkMinus", "D3MinusTriple", "Other"
    k: Optional[int] = None

    def __str__(self) -> str:
        return self.tag if self.k is None else f"{self.tag}({self.k})"


OTHER = IntervalClass("Other")


def _chain_up(p: Poset, start: int, inside: int) -> list[int]:
    chain = [start]
    cur = start
    while True:
        ups = [y for y in p.up[cur] if inside >> y & 1]
        if len(ups) != 1:
            return chain
        cur = ups[0]
        chain.append(cur)


def classify_interval(p: Poset, x: int, y: int) -> IntervalClass:
    """Match [x, y] against d_k(1) and d_k^-(1) via its rigid shape."""
    if not p.leq(x, y):
        raise PosetError(f"{p.labels[x]} is not below {p.labels[y]}")
    inside = p.interval(x, y)
    size = popcount(inside)
    if size < 4:
        return OTHER

    def ups(v):
        return [u for u in p.up[v] if inside >> u & 1]

    def downs(v):
        return [d for d in p.down[v] if inside >> d & 1]

    tail = _chain_up(p, x, inside)
    w3 = tail[-1]
    pair = ups(w3)
    if len(pair) != 2:
        return OTHER
    a, b = pair
    if ups(a) != ups(b) or len(ups(a)) != 1:
        return OTHER
    z3 = ups(a)[0]
    head = _chain_up(p, z3, inside)
    if head[-1] != y or len(tail) + 2 + len(head) != size:
        return OTHER
    if any(len(downs(v)) != 1 for v in tail[1:] + [a, b] + head[1:]):
        return OTHER
    if len(downs(z3)) != 2:
        return OTHER
    if len(tail) == len(head):
        return IntervalClass("DkDiamond", len(tail) + 2)
    if len(tail) == len(head) + 1:
        return IntervalClass("DkMinus", len(tail) + 2)
    return OTHER


def d_intervals(p: Poset) -> list[tuple[int, int, int]]:
    """All (bottom, top, k) with [bottom, top] a d_k-interval."""
    out = []
    for x in range(p.n):
        for y in bits(p.above[x]):
            if y != x:
                c = classify_interval(p, x, y)
                if c.tag == "DkDiamond":
                    out.append((x, y, c.k))
    return out


def _minus_intervals(p: Poset) -> list[tuple[int, int, int]]:
    out = []
    for x in range(p.n):
        for y in bits(p.above[x]):
            if y != x:
                c = classify_interval(p, x, y)
                if c.tag == "DkMinus":
                    out.append((x, y, c.k))
    return out


def _minus_triples(p: Poset) -> list[tuple[int, int, int]]:
    return [(w, a, b) for w in range(p.n)
            for i, a in enumerate(p.up[w]) for b in p.up[w][i + 1:]]


@dataclass
class DCompleteReport:
    ok: bool
    violations: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)


def is_d_complete(p: Poset) -> DCompleteReport:
    """Check axioms D1-D3; every violation is reported with its axiom tag."""
    violations: list[tuple[str, tuple[int, ...]]] = []
    diamonds = d_intervals(p)
    diamond_set = {(w, z) for w, z, _ in diamonds}

    # D1 and D3 for d_3^- triples {w, x, y}
    triples = _minus_triples(p)
    for w, a, b in triples:
        common = set(p.up[a]) & set(p.up[b])
        if not any((w, z) in diamond_set for z in common):
            violations.append(("D1", (w, a, b)))
    by_top: dict = {}
    for w, a, b in triples:
        by_top.setdefault((a, b), []).append(w)
    for (a, b), ws in by_top.items():
        if len(ws) > 1:
            for w in ws:
                violations.append(("D3", (w, a, b)))

    # D1 and D3 for d_k^- intervals, k >= 4
    minus = _minus_intervals(p)
    for w, y, k in minus:
        if not any((w, z) in diamond_set for z in p.up[y]):
            violations.append(("D1", (w, y)))
    groups: dict = {}
    for w, y, k in minus:
        groups.setdefault(p.interval(w, y) & ~(1 << w), []).append((w, y))
    for pairs in groups.values():
        if len(pairs) > 1:
            violations.extend(("D3", pair) for pair in pairs)

    # D2: the top of a d_k-interval covers nothing outside it
    for w, z, k in diamonds:
        inside = p.interval(w, z)
        if p.down_mask[z] & ~inside:
            violations.append(("D2", (w, z)))

    return DCompleteReport(not violations, violations)


def top_tree(p: Poset) -> list[int]:
    """Elements x whose every upper bound is covered by at most one element."""
    if not structure_checks(p)["connected"]:
        raise PosetError("top tree needs a connected poset")
    branching = to_mask(y for y in range(p.n) if len(p.up[y]) > 1)
    return [x for x in range(p.n) if p.above[x] & branching == 0]


# ---------------------------------------------------------- isomorphism

def _signature(p: Poset, x: int) -> tuple:
    return (len(p.up[x]), len(p.down[x]), popcount(p.above[x]), popcount(p.below[x]))


def find_isomorphism(p: Poset, q: Poset,
                     match: Optional[Callable[[int, int], bool]] = None) -> Optional[list[int]]:
    """Return phi with phi[x] in q, an order isomorphism p -> q, or None.

    ``match(x, y)`` may further restrict which images are allowed.
    """
    if p.n != q.n or len(p.covers) != len(q.covers):
        return None
    sig_q: dict = {}
    for y in range(q.n):
        sig_q.setdefault(_signature(q, y), []).append(y)
    cands = []
    for x in range(p.n):
        c = [y for y in sig_q.get(_signature(p, x), []) if match is None or match(x, y)]
        if not c:
            return None
        cands.append(c)
    # top-down order keeps each new element attached to placed ones
    order = list(reversed(p.topo))
    phi = [-1] * p.n
    used = [False] * q.n
    placed: list[int] = []

    def consistent(x, y):
        for u in placed:
            v = phi[u]
            if ((u in p.up[x]) != (v in q.up[y])) or ((u in p.down[x]) != (v in q.down[y])):
                return False
        return True

    def search(t):
        if t == len(order):
            return True
        x = order[t]
        for y in cands[x]:
            if not used[y] and consistent(x, y):
                phi[x] = y
                used[y] = True
                placed.append(x)
                if search(t + 1):
                    return True
                placed.pop()
                used[y] = False
                phi[x] = -1
        return False

    return list(phi) if search(0) else None


def structure_checks(p: Poset) -> dict:
    seen = 0
    if p.n:
        stack = [0]
        seen = 1
        while stack:
            x = stack.pop()
            for y in p.up[x] + p.down[x]:
                if not seen >> y & 1:
                    seen |= 1 << y
                    stack.append(y)
    connected = p.n > 0 and seen == p.full
    return {
        "connected": connected,
        "self_dual": find_isomorphism(p, p.dual()) is not None,
        "unique_max": len(p.maximal()) == 1,
    }
