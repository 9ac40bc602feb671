"""The colored d-complete poset P_lambda of a minuscule orbit and the maps f, g."""

from __future__ import annotations

from dataclasses import dataclass

from .colored import ColoredPoset, derive_coloring, op_S
from .poset import Poset, bits, is_d_complete, order_filters, popcount, structure_checks, top_tree
from .roots import (CartanDatum, OrbitGraph, RootSystemError, Weight, is_minuscule,
                    simple_reflection, weyl_orbit)


class ValidationError(RuntimeError):
    """A structural guarantee failed; this means a bug, not bad input."""


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass
class Report:
    case: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, failures: list, witness=None) -> None:
        self.checks.append(Check(name, not failures, failures[:5] if failures else witness))

    def to_json(self) -> dict:
        return {"case": self.case, "pass": self.passed,
                "checks": [c.to_json() for c in self.checks]}


@dataclass
class MinusculePoset:
    datum: CartanDatum
    lam: Weight
    orbit: OrbitGraph
    colored: ColoredPoset
    f_table: list       # f_table[k] is the filter of orbit node k
    node_of: dict       # filter mask -> orbit node id
    irreducible: list   # orbit node of each poset element

    @property
    def poset(self) -> Poset:
        return self.colored.poset

    @property
    def kappa(self) -> tuple:
        return self.colored.kappa

    @property
    def case(self) -> str:
        return f"{self.datum.name}/{weight_name(self.lam)}"

    def to_json(self) -> dict:
        return {"poset": self.poset.to_json(), "kappa": list(self.kappa),
                "orbit": self.orbit.to_json(),
                "f_table": [bits(f) for f in self.f_table]}


def weight_name(lam: Weight) -> str:
    terms = [(f"{c}*" if c != 1 else "") + f"L{i + 1}" for i, c in enumerate(lam) if c]
    return "+".join(terms) or "0"


def build_minuscule_poset(d: CartanDatum, lam: Weight) -> MinusculePoset:
    """P_lambda from the join-irreducibles of the orbit lattice.

    An orbit node covering exactly one node is join-irreducible and becomes
    an element of P_lambda colored by the label of that cover.  Elements
    near lambda are large, so f(mu), the irreducibles below mu in the
    lattice, is an order filter and f(lambda) is empty.
    """
    lam = tuple(lam)
    if not d.is_simply_laced():
        raise RootSystemError(f"{d.name} is not simply laced")
    if not is_minuscule(d, lam):
        raise RootSystemError(f"{weight_name(lam)} is not minuscule for {d.name}")
    g = weyl_orbit(d, lam)
    incoming: dict = {}
    for s, i, t in g.weak_edges:
        incoming.setdefault(t, []).append((s, i))
    irr = sorted((t for t, e in incoming.items() if len(e) == 1),
                 key=lambda t: (g.height(t), t))
    reach = g.weak_reach()
    n = len(irr)
    poset = Poset.from_leq(n, lambda x, y: bool(reach[irr[y]] >> irr[x] & 1),
                           [f"({','.join(map(str, g.nodes[t]))})" for t in irr])
    kappa = tuple(incoming[t][0][1] for t in irr)
    colored = ColoredPoset(poset, kappa, tuple(d.nodes))
    f_table = []
    for k in range(len(g)):
        f_table.append(sum(1 << x for x, t in enumerate(irr) if reach[t] >> k & 1))
    node_of = {f: k for k, f in enumerate(f_table)}
    m = MinusculePoset(d, lam, g, colored, f_table, node_of, irr)
    _validate(m)
    return m


def _validate(m: MinusculePoset) -> None:
    p = m.poset
    fail = []
    filters = set(order_filters(p))
    if len(m.node_of) != len(m.orbit) or set(m.f_table) != filters:
        fail.append("f is not a bijection onto the order filters")
    if m.f_table[0] != 0:
        fail.append("f(lambda) is not empty")
    for s, i, t in m.orbit.weak_edges:
        diff = m.f_table[t] & ~m.f_table[s]
        if m.f_table[s] & ~m.f_table[t] or popcount(diff) != 1 or m.kappa[bits(diff)[0]] != i:
            fail.append(f"cover {s}->{t} does not add one element of color {i}")
    rep = is_d_complete(p)
    if not rep.ok:
        fail.append(f"not d-complete: {rep.violations[:3]}")
    sc = structure_checks(p)
    if not all(sc.values()):
        fail.append(f"structure checks failed: {sc}")
    if not fail:
        top = p.maximal()[0]
        i = next(k + 1 for k, v in enumerate(m.lam) if v)
        if m.kappa[top] != i:
            fail.append("maximum is not colored by the weight index")
        tree = top_tree(p)
        derived = derive_coloring(p, {x: m.kappa[x] for x in tree})
        if derived.kappa != m.kappa:
            fail.append("coloring disagrees with the top-tree extension")
    if fail:
        raise ValidationError(f"{m.case}: " + "; ".join(fail))


def f_map(m: MinusculePoset, mu: Weight) -> int:
    return m.f_table[m.orbit.node_id(mu)]


def g_map(m: MinusculePoset, f: int) -> Weight:
    """lambda minus the color counts of f times the simple roots."""
    if f not in m.node_of:
        raise RootSystemError("not an order filter of P_lambda")
    d = m.datum
    mu = list(m.lam)
    for i, c in m.colored.counts(f).items():
        if c:
            alpha = d.simple_root(i)
            mu = [a - c * b for a, b in zip(mu, alpha)]
    return tuple(mu)


def verify_minuscule_correspondence(m: MinusculePoset) -> Report:
    d, g, p, cp = m.datum, m.orbit, m.poset, m.colored
    rep = Report(m.case, [])

    fails = []
    for k, mu in enumerate(g.nodes):
        for i in d.nodes:
            t = g.index[simple_reflection(d, mu, i)]
            if m.f_table[t] != op_S(cp, m.f_table[k], i):
                fails.append([list(mu), i])
    rep.add("f(s_i mu) = S_i(f(mu))", fails)

    fails = []
    strong = g.strong_reach()
    for a in range(len(g)):
        for b in range(len(g)):
            lhs = bool(strong[a] >> b & 1)
            rhs = m.f_table[a] & ~m.f_table[b] == 0
            if lhs != rhs:
                fails.append([list(g.nodes[a]), list(g.nodes[b])])
    rep.add("f order isomorphism (strong order vs inclusion)", fails)

    fails = [[p.labels[x], p.labels[y]] for x, y in sorted(p.covers)
             if not d.adjacent(m.kappa[x], m.kappa[y])]
    rep.add("covers have adjacent colors", fails)

    tree = top_tree(p)
    fails = []
    if sorted(m.kappa[x] for x in tree) != list(d.nodes):
        fails.append("top tree colors are not a bijection onto I")
    tree_edges = {tuple(sorted((m.kappa[x], m.kappa[y]))) for x, y in p.covers
                  if x in tree and y in tree}
    if tree_edges != set(d.edges()):
        fails.append(sorted(tree_edges ^ set(d.edges())))
    rep.add("top tree is the Dynkin diagram", fails)

    fails = [[g.nodes[k], bits(m.f_table[k])] for k in range(len(g))
             if g_map(m, m.f_table[k]) != g.nodes[k]]
    rep.add("g inverts f", fails)
    return rep
