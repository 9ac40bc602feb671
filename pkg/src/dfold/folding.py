"""Folding by a Dynkin diagram automorphism and the folded filter maps.

The folded algebra g(0) has one node per sigma-orbit p.  Its simple coroot
is H_p = sum of h_i over p (doubled for the one non-orthogonal orbit of
A_{2n}), its simple root is beta_p = res(alpha_i) for any i in p, and its
Cartan matrix is read off the pairings beta_p(H_q).  Folded nodes are
numbered so that the result is the Bourbaki-ordered B_n, C_n, F_4 or the
G_2 of :mod:`dfold.roots`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colored import ColoredPoset, op_S, triangle_leq
from .minuscule import MinusculePoset, Report, build_minuscule_poset, weight_name
from .poset import bits
from .roots import (CartanDatum, OrbitGraph, RootSystemError, Weight, cartan, is_minuscule,
                    simple_reflection, weyl_orbit)


class FoldingError(ValueError):
    pass


@dataclass(frozen=True)
class FoldingDatum:
    source: CartanDatum
    sigma: tuple           # sigma[i-1] is the image of node i
    sigma_choice: str
    orbits: tuple          # orbits[p-1] is the tuple of source nodes in folded node p
    orthogonal: tuple
    folded: CartanDatum
    res_matrix: tuple      # res_matrix[p-1][i-1]: coefficient of h_i in H_p

    @property
    def J(self) -> range:
        return range(1, len(self.orbits) + 1)

    @property
    def order(self) -> int:
        k, perm = 1, self.sigma
        ident = tuple(range(1, len(perm) + 1))
        cur = perm
        while cur != ident:
            cur = tuple(perm[c - 1] for c in cur)
            k += 1
        return k

    def orbit_of(self, i: int) -> int:
        for p, orb in enumerate(self.orbits, 1):
            if i in orb:
                return p
        raise FoldingError(f"node {i} not in any orbit")

    def beta(self, p: int) -> Weight:
        return self.folded.simple_root(p)

    @property
    def name(self) -> str:
        return f"{self.source.name}[{self.sigma_choice}]->{self.folded.name}"


def _sigma_and_orbits(tag: str, n: int, choice: str):
    """The automorphism and its orbits, listed in folded-node order."""
    if choice == "identity":
        return tuple(range(1, n + 1)), [(i,) for i in range(1, n + 1)], (tag, n)
    if tag == "A" and n >= 2 and choice in ("default", "flip"):
        sigma = tuple(n + 1 - i for i in range(1, n + 1))
        orbits = [tuple(sorted({k, n + 1 - k})) for k in range(1, (n + 1) // 2 + 1)]
        return sigma, orbits, ("C" if n % 2 else "B", (n + 1) // 2)
    if tag == "D" and n >= 4 and choice in ("default", "swap"):
        sigma = tuple(list(range(1, n - 1)) + [n, n - 1])
        orbits = [(i,) for i in range(1, n - 1)] + [(n - 1, n)]
        return sigma, orbits, ("B", n - 1)
    if tag == "D" and n == 4 and choice == "triality":
        sigma = (3, 2, 4, 1)
        return sigma, [(2,), (1, 3, 4)], ("G", 2)
    if tag == "E" and n == 6 and choice in ("default", "flip"):
        sigma = (5, 4, 3, 2, 1, 6)
        return sigma, [(6,), (3,), (2, 4), (1, 5)], ("F", 4)
    raise FoldingError(f"no diagram automorphism '{choice}' for {tag}{n}")


def _expected_folded(tag: str, rank: int) -> CartanDatum:
    # B_1 arises from A_2 and is just A_1
    if tag == "B" and rank == 1:
        return CartanDatum("B", 1, ((2,),))
    return cartan(tag, rank)


def make_folding(source_type: str, rank: int, sigma_choice: str = "default") -> FoldingDatum:
    src = cartan(source_type, rank)
    if not src.is_simply_laced():
        raise FoldingError("folding needs a simply-laced source")
    sigma, orbits, (ftag, frank) = _sigma_and_orbits(src.type_tag, rank, sigma_choice)
    for i in src.nodes:
        for j in src.nodes:
            if src.a(sigma[i - 1], sigma[j - 1]) != src.a(i, j):
                raise FoldingError("sigma does not preserve the Cartan matrix")
    orthogonal = tuple(all(src.a(i, j) == 0 for i in orb for j in orb if i != j)
                       for orb in orbits)
    res_matrix = tuple(
        tuple((1 if ortho else 2) if i in orb else 0 for i in src.nodes)
        for orb, ortho in zip(orbits, orthogonal))

    def res(mu):
        return tuple(sum(c * m for c, m in zip(row, mu)) for row in res_matrix)

    q = len(orbits)
    cols = []
    for orb in orbits:
        images = {res(src.simple_root(i)) for i in orb}
        if len(images) != 1:
            raise FoldingError("res(alpha_i) depends on the choice of i in the orbit")
        cols.append(images.pop())
    matrix = tuple(tuple(cols[p][r] for p in range(q)) for r in range(q))
    folded = CartanDatum(ftag, frank, matrix)
    if sigma_choice == "identity":
        folded = src
    elif matrix != _expected_folded(ftag, frank).matrix:
        raise FoldingError(f"folded matrix {matrix} is not {ftag}{frank}")
    return FoldingDatum(src, sigma, sigma_choice, tuple(orbits), orthogonal, folded, res_matrix)


def res(fd: FoldingDatum, mu: Weight) -> Weight:
    return tuple(sum(c * m for c, m in zip(row, mu)) for row in fd.res_matrix)


def _hat_word(fd: FoldingDatum, p: int) -> tuple:
    orb = fd.orbits[p - 1]
    if fd.orthogonal[p - 1]:
        return orb
    a, b = orb
    return (a, b, a)


def hat_s(fd: FoldingDatum, p: int, mu: Weight) -> Weight:
    """Product of the simple reflections over p (s_a s_b s_a if p is not orthogonal)."""
    for i in reversed(_hat_word(fd, p)):
        mu = simple_reflection(fd.source, mu, i)
    return tuple(mu)


def tilde_s(fd: FoldingDatum, p: int, nu: Weight) -> Weight:
    return simple_reflection(fd.folded, nu, p)


@dataclass
class FoldedOrbit:
    graph: OrbitGraph       # the orbit of res(lambda) for g(0)
    lift: dict              # folded node id -> source weight in hat-W lambda

    @property
    def nodes(self) -> list:
        return self.graph.nodes

    def __len__(self) -> int:
        return len(self.graph)


def hat_orbit(fd: FoldingDatum, lam: Weight) -> set:
    """hat-W lambda: closure of lambda under all hat_s_p."""
    seen = {tuple(lam)}
    stack = [tuple(lam)]
    while stack:
        mu = stack.pop()
        for p in fd.J:
            nu = hat_s(fd, p, mu)
            if nu not in seen:
                seen.add(nu)
                stack.append(nu)
    return seen


def folded_orbit(fd: FoldingDatum, lam: Weight) -> FoldedOrbit:
    lam = tuple(lam)
    if not is_minuscule(fd.source, lam):
        raise RootSystemError(f"{weight_name(lam)} is not minuscule for {fd.source.name}")
    g = weyl_orbit(fd.folded, res(fd, lam))
    lift = {0: lam}
    for s, p, t in g.weak_edges:
        if t not in lift:
            lift[t] = hat_s(fd, p, lift[s])
    bad = [k for k, mu in lift.items() if res(fd, mu) != g.nodes[k]]
    hat = hat_orbit(fd, lam)
    if bad or len(lift) != len(g) or set(lift.values()) != hat:
        raise FoldingError("res does not restrict to a bijection on the hat-W orbit")
    return FoldedOrbit(g, lift)


def j_coloring(fd: FoldingDatum, m: MinusculePoset) -> ColoredPoset:
    proj = {i: fd.orbit_of(i) for i in fd.source.nodes}
    return m.colored.recolor(proj, list(fd.J))


def hat_S(fd: FoldingDatum, m: MinusculePoset, p: int, f: int) -> int:
    for k in reversed(_hat_word(fd, p)):
        f = op_S(m.colored, f, k)
    return f


@dataclass
class FoldedCase:
    """Everything needed to state the folded order isomorphism for one case."""
    fd: FoldingDatum
    m: MinusculePoset
    orbit: FoldedOrbit
    jcolored: ColoredPoset
    tilde_F: list = field(default_factory=list)

    @property
    def case(self) -> str:
        return f"{self.fd.name}/{weight_name(self.m.lam)}"


def tilde_S(fd: FoldingDatum, m: MinusculePoset, p: int, f: int,
            jcolored: ColoredPoset = None) -> int:
    return op_S(jcolored or j_coloring(fd, m), f, p)


def tilde_F_set(fd: FoldingDatum, m: MinusculePoset) -> list:
    """Filters reachable from the empty filter by the folded involutions."""
    jc = j_coloring(fd, m)
    seen = {0}
    stack = [0]
    while stack:
        f = stack.pop()
        for p in fd.J:
            g = op_S(jc, f, p)
            if g not in seen:
                seen.add(g)
                stack.append(g)
    return sorted(seen, key=lambda f: (bin(f).count("1"), f))


def fold_case(fd: FoldingDatum, lam: Weight, m: MinusculePoset = None) -> FoldedCase:
    m = m or build_minuscule_poset(fd.source, lam)
    fo = folded_orbit(fd, lam)
    return FoldedCase(fd, m, fo, j_coloring(fd, m), tilde_F_set(fd, m))


def tilde_f(case: FoldedCase, nu: Weight) -> int:
    k = case.orbit.graph.node_id(nu)
    return case.m.f_table[case.m.orbit.node_id(case.orbit.lift[k])]


def tilde_g(case: FoldedCase, f: int) -> Weight:
    if f not in set(case.tilde_F):
        raise FoldingError("filter is outside the folded filter set")
    nu = list(res(case.fd, case.m.lam))
    for p, c in case.jcolored.counts(f).items():
        if c:
            nu = [a - c * b for a, b in zip(nu, case.fd.beta(p))]
    return tuple(nu)


def _strict_weak(g: OrbitGraph, a: int, b: int) -> bool:
    return a != b and bool(g.weak_reach()[a] >> b & 1)


def verify_main_theorem(case: FoldedCase) -> Report:
    fd, m, fo, jc = case.fd, case.m, case.orbit, case.jcolored
    g = fo.graph
    src = m.orbit
    rep = Report(case.case, [])
    images = [tilde_f(case, nu) for nu in g.nodes]
    tf = set(case.tilde_F)

    rep.add("image of tilde_f equals the S-tilde closure of the empty filter",
            [] if set(images) == tf and len(tf) == len(g) else
            [len(set(images)), len(tf), len(g)])
    rep.add("tilde_g inverts tilde_f",
            [list(nu) for nu, f in zip(g.nodes, images) if tilde_g(case, f) != nu])

    weak, strong = g.weak_reach(), g.strong_reach()
    fails_w, fails_s = [], []
    witness = None
    n = len(g)
    for a in range(n):
        for b in range(n):
            fa, fb = images[a], images[b]
            tri = triangle_leq(jc, fa, fb)
            sub = fa & ~fb == 0
            if bool(weak[a] >> b & 1) != tri:
                fails_w.append([list(g.nodes[a]), list(g.nodes[b])])
            if bool(strong[a] >> b & 1) != sub:
                fails_s.append([list(g.nodes[a]), list(g.nodes[b])])
            if witness is None and sub and not tri:
                witness = [bits(fa), bits(fb)]
    rep.add("weak order ~ triangle order under tilde_f", fails_w)
    rep.add("strong order ~ inclusion under tilde_f", fails_s)
    rep.add("inclusion and triangle order differ (witness pair)", [], witness)

    src_strong = src.strong_reach()
    fails = []
    for a in range(n):
        for b in range(n):
            ia, ib = src.index[fo.lift[a]], src.index[fo.lift[b]]
            if bool(src_strong[ia] >> ib & 1) != bool(strong[a] >> b & 1):
                fails.append([list(fo.lift[a]), list(fo.lift[b])])
    rep.add("strong order on hat-W lambda matches the folded strong order", fails)

    fails = []
    for a in range(n):
        mu = fo.lift[a]
        ia = src.index[mu]
        for p in fd.J:
            vals = [mu[i - 1] for i in fd.orbits[p - 1]]
            if max(vals) > 0 and min(vals) < 0:
                fails.append([list(mu), p, "mixed signs"])
                continue
            ib = src.index[hat_s(fd, p, mu)]
            if max(vals) > 0 and not _strict_weak(src, ia, ib):
                fails.append([list(mu), p, "not weakly increasing"])
            if min(vals) < 0 and not _strict_weak(src, ib, ia):
                fails.append([list(mu), p, "not weakly decreasing"])
    rep.add("sign dichotomy on hat-W lambda", fails)

    fails = [[list(mu), p] for mu in src.nodes for p in fd.J
             if res(fd, hat_s(fd, p, mu)) != tilde_s(fd, p, res(fd, mu))]
    rep.add("res o hat_s = tilde_s o res", fails)

    fails = [[bits(f), p] for f in set(m.f_table) for p in fd.J
             if op_S(jc, f, p) != hat_S(fd, m, p, f)]
    rep.add("tilde_S = hat_S on every filter", fails)

    fails = [[list(nu), p] for k, nu in enumerate(g.nodes) for p in fd.J
             if tilde_f(case, tilde_s(fd, p, nu)) != op_S(jc, images[k], p)]
    rep.add("tilde_f(tilde_s nu) = tilde_S(tilde_f nu)", fails)

    fails = [[list(nu)] for k, nu in enumerate(g.nodes)
             if g.height(k) != sum(jc.counts(images[k]).values())]
    fails += [[list(nu)] for k, nu in enumerate(g.nodes)
              if tuple(g.depth[k]) != tuple(jc.counts(images[k])[p] for p in fd.J)]
    rep.add("height bookkeeping: ht(res(lambda) - nu) = sum of folded color counts", fails)
    return rep


# Folding-table rows, matched by structure rather than by printed labels.
def table4_row(fd: FoldingDatum, lam: Weight) -> str:
    t, n = fd.source.type_tag, fd.source.rank
    i = next(k + 1 for k, v in enumerate(lam) if v)
    if fd.sigma_choice == "identity":
        return "no folding"
    if t == "A":
        return f"A_{{{'2n-1' if n % 2 else '2n'}}} (Shape)"
    if t == "D" and fd.sigma_choice == "triality":
        return "D_4 -> G_2 (Shifted Shape)"
    if t == "D":
        return "D_{n+1} vector (Inset)" if i == 1 else "D_{n+1} spin (Shifted Shape)"
    return "E_6 -> F_4 (Swivel)"


def foldable_weights(fd: FoldingDatum) -> list[int]:
    """Minuscule fundamental weights, one per sigma-orbit."""
    src = fd.source
    out = []
    for i in src.nodes:
        if is_minuscule(src, src.fundamental(i)) and min(fd.orbits[fd.orbit_of(i) - 1]) == i:
            out.append(i)
    return out


def sigma_is_automorphism(fd: FoldingDatum) -> bool:
    return sorted(fd.sigma) == list(fd.source.nodes) and all(
        fd.source.a(fd.sigma[i - 1], fd.sigma[j - 1]) == fd.source.a(i, j)
        for i in fd.source.nodes for j in fd.source.nodes)
