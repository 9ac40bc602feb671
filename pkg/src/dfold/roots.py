"""Cartan data, Weyl-group orbits and the strong/weak orders on them.

Nodes of a Dynkin diagram are numbered ``1..rank``.  A weight is a tuple
whose entry ``i-1`` is its pairing with the simple coroot h_i, i.e. its
coordinates in the fundamental-weight basis.  Matrices follow
``a[i][j] = alpha_j(h_i)``.

Numbering: A_n is the path 1-...-n; D_n is the path 1-...-(n-2) with n-1
and n both attached to n-2; E_n is the path 1-...-(n-1) with n attached to
3, which makes Lambda_1, Lambda_5 minuscule for E_6 and Lambda_6 for E_7.
B_n, C_n, F_4 follow Bourbaki (the short simple root is the last for B_n,
the first two are long for F_4); G_2 has alpha_1 long.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

Weight = tuple


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    type_tag: str
    rank: int
    matrix: tuple

    def __post_init__(self):
        a = self.matrix
        n = self.rank
        if len(a) != n or any(len(row) != n for row in a):
            raise RootSystemError("matrix shape does not match rank")
        for i in range(n):
            if a[i][i] != 2:
                raise RootSystemError("diagonal entries must be 2")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise RootSystemError(f"bad off-diagonal entries at {(i + 1, j + 1)}")

    @property
    def name(self) -> str:
        return f"{self.type_tag}{self.rank}"

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def a(self, i: int, j: int) -> int:
        return self.matrix[i - 1][j - 1]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in self.nodes for j in self.nodes if i < j and self.a(i, j) != 0]

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.a(i, j) != 0

    def is_simply_laced(self) -> bool:
        return all(v in (0, -1) for i, row in enumerate(self.matrix)
                   for j, v in enumerate(row) if i != j)

    def simple_root(self, i: int) -> Weight:
        """alpha_i in fundamental-weight coordinates: entry j is a_{ji}."""
        return tuple(self.matrix[j][i - 1] for j in range(self.rank))

    def fundamental(self, i: int) -> Weight:
        return tuple(1 if j == i else 0 for j in self.nodes)

    def to_json(self) -> dict:
        return {"type": self.type_tag, "rank": self.rank,
                "matrix": [list(r) for r in self.matrix]}


def _from_edges(tag: str, n: int, edges, double=None, triple=None) -> CartanDatum:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    # (i, j, v): a_{ij} = v for a multiple bond
    for i, j, v in (double or []) + (triple or []):
        a[i - 1][j - 1] = v
    return CartanDatum(tag, n, tuple(tuple(r) for r in a))


def cartan(type_tag: str, rank: int) -> CartanDatum:
    t = type_tag.upper()
    n = rank
    path = [(i, i + 1) for i in range(1, n)]
    if t == "A" and n >= 1:
        return _from_edges(t, n, path)
    if t == "B" and n >= 2:
        return _from_edges(t, n, path, double=[(n, n - 1, -2)])
    if t == "C" and n >= 2:
        return _from_edges(t, n, path, double=[(n - 1, n, -2)])
    if t == "D" and n >= 4:
        return _from_edges(t, n, [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)])
    if t == "E" and n in (6, 7, 8):
        return _from_edges(t, n, [(i, i + 1) for i in range(1, n - 1)] + [(3, n)])
    if t == "F" and n == 4:
        return _from_edges(t, n, path, double=[(3, 2, -2)])
    if t == "G" and n == 2:
        return _from_edges(t, n, path, triple=[(2, 1, -3)])
    raise RootSystemError(f"no finite type {type_tag}{rank}")


def pairing(mu: Weight, coroot: tuple) -> int:
    """mu(beta^vee) for a coroot given in the simple-coroot basis."""
    return sum(m * c for m, c in zip(mu, coroot))


def simple_reflection(d: CartanDatum, mu: Weight, i: int) -> Weight:
    k = mu[i - 1]
    if k == 0:
        return tuple(mu)
    return tuple(m - k * d.matrix[j][i - 1] for j, m in enumerate(mu))


@dataclass(frozen=True)
class Root:
    root_coords: tuple    # in the simple-root basis
    coroot_coords: tuple  # in the simple-coroot basis

    def weight(self, d: CartanDatum) -> Weight:
        """The root in fundamental-weight coordinates."""
        return tuple(sum(r * d.matrix[j][i] for i, r in enumerate(self.root_coords))
                     for j in range(d.rank))


def positive_roots(d: CartanDatum) -> list[Root]:
    """Closure of the simple roots under simple reflections, kept positive.

    Coroots are carried through the same reflections, so for every root
    beta we know beta^vee without any inner product.
    """
    n = d.rank
    a = d.matrix
    unit = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    start = [Root(unit[i], unit[i]) for i in range(n)]
    seen = {r.root_coords: r for r in start}
    queue = list(start)
    while queue:
        r = queue.pop(0)
        for i in range(n):
            # beta(h_i) and alpha_i(beta^vee)
            b = sum(r.root_coords[j] * a[i][j] for j in range(n))
            c = sum(r.coroot_coords[j] * a[j][i] for j in range(n))
            if b == 0:
                continue
            rc = list(r.root_coords)
            rc[i] -= b
            cc = list(r.coroot_coords)
            cc[i] -= c
            if min(rc) < 0:
                continue
            key = tuple(rc)
            if key not in seen:
                seen[key] = Root(key, tuple(cc))
                queue.append(seen[key])
    return sorted(seen.values(), key=lambda r: (sum(r.root_coords), r.root_coords))


def reflect(d: CartanDatum, mu: Weight, beta: Root) -> Weight:
    k = pairing(mu, beta.coroot_coords)
    if k == 0:
        return tuple(mu)
    bw = beta.weight(d)
    return tuple(m - k * b for m, b in zip(mu, bw))


@dataclass
class OrbitGraph:
    """The orbit W.lambda with its weak-order edges.

    ``depth[k]`` holds the simple-root coordinates of lambda - nodes[k], so
    its sum is the height ht(lambda - mu).
    """
    datum: CartanDatum
    lam: Weight
    nodes: list
    index: dict
    weak_edges: list  # (source id, label i, target id)
    depth: list
    _weak: Optional[list] = field(default=None, repr=False)
    _strong: Optional[list] = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def height(self, k: int) -> int:
        return sum(self.depth[k])

    def node_id(self, mu: Weight) -> int:
        try:
            return self.index[tuple(mu)]
        except KeyError:
            raise RootSystemError(f"weight {tuple(mu)} is not in the orbit") from None

    def _closure(self, succ: list[list[int]]) -> list[int]:
        order = sorted(range(len(self.nodes)), key=self.height, reverse=True)
        reach = [0] * len(self.nodes)
        for k in order:
            m = 1 << k
            for t in succ[k]:
                m |= reach[t]
            reach[k] = m
        return reach

    def weak_reach(self) -> list[int]:
        if self._weak is None:
            succ = [[] for _ in self.nodes]
            for s, _, t in self.weak_edges:
                succ[s].append(t)
            self._weak = self._closure(succ)
        return self._weak

    def strong_reach(self) -> list[int]:
        if self._strong is None:
            roots = positive_roots(self.datum)
            succ = [[] for _ in self.nodes]
            for k, mu in enumerate(self.nodes):
                for beta in roots:
                    if pairing(mu, beta.coroot_coords) > 0:
                        succ[k].append(self.index[reflect(self.datum, mu, beta)])
            self._strong = self._closure(succ)
        return self._strong

    def weak_leq(self, mu1: Weight, mu2: Weight) -> bool:
        return bool(self.weak_reach()[self.node_id(mu1)] >> self.node_id(mu2) & 1)

    def strong_leq(self, mu1: Weight, mu2: Weight) -> bool:
        return bool(self.strong_reach()[self.node_id(mu1)] >> self.node_id(mu2) & 1)

    def dominant(self) -> list[int]:
        return [k for k, mu in enumerate(self.nodes) if min(mu) >= 0]

    def to_json(self) -> dict:
        return {"cartan": self.datum.to_json(), "lambda": list(self.lam),
                "nodes": [list(mu) for mu in self.nodes],
                "weak_edges": [[s, i, t] for s, i, t in self.weak_edges]}

    def to_dot(self, name: str = "orbit", label=None) -> str:
        """Weak-order Hasse diagram, one rank per height, edges labelled i."""
        label = label or (lambda i: str(i))
        lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=plaintext];"]
        by_height: dict = {}
        for k in range(len(self.nodes)):
            by_height.setdefault(self.height(k), []).append(k)
        for h in sorted(by_height):
            ids = " ".join(f"m{k};" for k in by_height[h])
            lines.append(f"  {{ rank=same; {ids} }}")
        for k, mu in enumerate(self.nodes):
            lines.append(f'  m{k} [label="({",".join(map(str, mu))})"];')
        for s, i, t in self.weak_edges:
            lines.append(f'  m{s} -> m{t} [label="{label(i)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def weyl_orbit(d: CartanDatum, lam: Weight) -> OrbitGraph:
    """Breadth-first orbit of a dominant weight along s_i with mu(h_i) > 0."""
    lam = tuple(lam)
    if len(lam) != d.rank:
        raise RootSystemError("weight length does not match rank")
    if min(lam) < 0:
        raise RootSystemError(f"{lam} is not dominant")
    nodes = [lam]
    index = {lam: 0}
    depth = [tuple(0 for _ in lam)]
    edges = []
    head = 0
    while head < len(nodes):
        mu = nodes[head]
        for i in d.nodes:
            k = mu[i - 1]
            if k > 0:
                nu = simple_reflection(d, mu, i)
                if nu not in index:
                    index[nu] = len(nodes)
                    nodes.append(nu)
                    dep = list(depth[head])
                    dep[i - 1] += k
                    depth.append(tuple(dep))
                edges.append((head, i, index[nu]))
        head += 1
    return OrbitGraph(d, lam, nodes, index, edges, depth)


def strong_leq(d: CartanDatum, g: OrbitGraph, mu1: Weight, mu2: Weight) -> bool:
    if g.datum != d:
        raise RootSystemError("orbit belongs to a different Cartan datum")
    return g.strong_leq(mu1, mu2)


def is_minuscule(d: CartanDatum, lam: Weight) -> bool:
    lam = tuple(lam)
    if min(lam) < 0:
        raise RootSystemError(f"{lam} is not dominant")
    # a pairing outside {-1,0,1} shows up before the full orbit is needed
    seen = {lam}
    queue = [lam]
    while queue:
        mu = queue.pop()
        if any(abs(v) > 1 for v in mu):
            return False
        for i in d.nodes:
            if mu[i - 1] > 0:
                nu = simple_reflection(d, mu, i)
                if nu not in seen:
                    seen.add(nu)
                    queue.append(nu)
    return True
