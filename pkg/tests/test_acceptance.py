"""Acceptance criteria 1-8.

Each test prints one ``criterion N: PASS|FAIL ...`` line (visible with
``pytest -s`` or in the summary of ``pytest -v -rA``).
"""

import re
import time

import networkx as nx

from dfold.colored import ColoredPoset, op_A, op_R, op_S
from dfold.export import inclusion_covers
from dfold.folding import (fold_case, foldable_weights, hat_orbit, hat_S, hat_s, make_folding,
                           res, tilde_s, verify_main_theorem)
from dfold.minuscule import build_minuscule_poset, verify_minuscule_correspondence
from dfold.poset import (d_intervals, double_tailed, find_isomorphism, is_d_complete,
                         order_filters, shifted_young, structure_checks, top_tree, young_rect)
from dfold.roots import cartan, is_minuscule
from dfold.type_a import folded_rectangle_filters, ss_family

from conftest import brute_filters, def_A, def_R, def_S, folded, minuscule


def report(capsys, n, ok, detail=""):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}")


def built_minuscule(max_elements=None):
    """Every P_lambda for A_1..A_9, D_4..D_8, E_6, E_7 (optionally size-capped)."""
    out = []
    for t, ranks in (("A", range(1, 10)), ("D", range(4, 9)), ("E", (6, 7))):
        for n in ranks:
            d = cartan(t, n)
            for i in d.nodes:
                if not is_minuscule(d, d.fundamental(i)):
                    continue
                m = minuscule(t, n, i)
                if max_elements is None or m.poset.n <= max_elements:
                    out.append(m)
    return out


# 1 -------------------------------------------------------------------------

def test_criterion_1_a5_end_to_end(capsys):
    t0 = time.perf_counter()
    d = cartan("A", 5)
    m = build_minuscule_poset(d, d.fundamental(2))
    want = tuple(j - i + 2 for i in (1, 2) for j in (1, 2, 3, 4))
    rect = young_rect(2, 4)
    iso = find_isomorphism(m.poset, rect, lambda x, y: m.kappa[x] == want[y])
    fd = make_folding("A", 5)
    case = fold_case(fd, d.fundamental(2), m)
    rep = verify_main_theorem(case)
    elapsed = time.perf_counter() - t0
    ok = (len(m.orbit) == 15 and iso is not None and verify_minuscule_correspondence(m).passed
          and fd.folded.name == "C3" and res(fd, m.lam) == (0, 1, 0)
          and len(case.orbit) == 12 and len(case.tilde_F) == 12 and rep.passed and elapsed < 1)
    report(capsys, 1, ok, f"orbit {len(m.orbit)}, folded {len(case.orbit)}, "
                          f"tilde_F {len(case.tilde_F)}, {elapsed:.3f}s")
    assert ok


# 2 -------------------------------------------------------------------------

def test_criterion_2_tilde_S_equals_hat_S(capsys):
    t0 = time.perf_counter()
    cases = [("A", 3, "default"), ("A", 4, "default"), ("A", 5, "default"), ("A", 6, "default"),
             ("D", 4, "swap"), ("D", 4, "triality"), ("D", 5, "default"), ("E", 6, "default")]
    checked, bad = 0, []
    for t, n, s in cases:
        fd = make_folding(t, n, s)
        for i in foldable_weights(fd):
            c = folded(t, n, s, i)
            for f in order_filters(c.m.poset):
                for p in fd.J:
                    checked += 1
                    if op_S(c.jcolored, f, p) != hat_S(fd, c.m, p, f):
                        bad.append((c.case, f, p))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    report(capsys, 2, ok, f"{checked} (filter, p) pairs, {len(bad)} mismatches, {elapsed:.2f}s")
    assert ok


# 3 -------------------------------------------------------------------------

def test_criterion_3_type_a_equality(capsys):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for n in range(1, 9):
        for m in range(1, (n + 1) // 2 + 1):
            count += 1
            if set(folded_rectangle_filters(m, n)) != set(ss_family(m, n)):
                bad.append((m, n))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    report(capsys, 3, ok, f"{count} (m, n) cases, mismatches {bad}, {elapsed:.2f}s")
    assert ok


# 4 -------------------------------------------------------------------------

def test_criterion_4_involutions(capsys):
    posets = built_minuscule(max_elements=20)
    checked, bad = 0, []
    for m in posets:
        cp = m.colored
        for f in order_filters(m.poset):
            for c in cp.colors:
                checked += 1
                a, r, s = op_A(cp, f, c), op_R(cp, f, c), op_S(cp, f, c)
                ok = (op_S(cp, s, c) == f and op_A(cp, s, c) == a and op_R(cp, s, c) == r
                      and r & ~s == 0 and s & ~a == 0 and r & ~f == 0 and f & ~a == 0
                      and (r != f or s == a) and (a != f or s == r)
                      and bin(f ^ s).count("1") <= 1)
                if not ok:
                    bad.append((m.case, f, c))
    report(capsys, 4, not bad, f"{len(posets)} posets, {checked} (filter, color) pairs")
    assert not bad


# 5 -------------------------------------------------------------------------

def test_criterion_5_d_complete(capsys):
    posets = built_minuscule()
    bad = []
    for m in posets:
        p = m.poset
        if not is_d_complete(p).ok or not all(structure_checks(p).values()):
            bad.append(m.case)
            continue
        tree = set(top_tree(p))
        tops = {}
        for w, z, _ in d_intervals(p):
            tops.setdefault(w, []).append(z)
        for w in range(p.n):
            if w not in tree and len(tops.get(w, [])) != 1:
                bad.append((m.case, p.labels[w]))
    report(capsys, 5, not bad, f"{len(posets)} posets")
    assert not bad


# 6 -------------------------------------------------------------------------

def oracle_posets():
    out = [young_rect(2, 4), young_rect(3, 5), young_rect(4, 4), young_rect(4, 5),
           shifted_young(4), shifted_young(5), double_tailed(7), double_tailed(9, minus=True)]
    out += [m.poset for m in built_minuscule(max_elements=20)]
    return out


def test_criterion_6_oracles(capsys):
    t0 = time.perf_counter()
    bad = []
    posets = oracle_posets()
    for p in posets:
        if sorted(order_filters(p)) != brute_filters(p):
            bad.append(("filters", p))
    colored = [m.colored for m in built_minuscule(max_elements=16)]
    colored.append(ColoredPoset(young_rect(2, 4), (2, 3, 2, 1, 1, 2, 3, 2), (1, 2, 3)))
    colored.append(folded("E", 6, "default", 1).jcolored)
    pairs = 0
    for cp in colored:
        fs = order_filters(cp.poset)
        for f in fs:
            for c in cp.colors:
                pairs += 1
                if (op_A(cp, f, c) != def_A(fs, cp.kappa, f, c)
                        or op_R(cp, f, c) != def_R(fs, cp.kappa, f, c)):
                    bad.append(("maps", cp.poset, f, c))
    elapsed = time.perf_counter() - t0
    report(capsys, 6, not bad, f"{len(posets)} subset scans, {pairs} A/R pairs, {elapsed:.1f}s")
    assert not bad


# 7 -------------------------------------------------------------------------

def test_criterion_7_folding_algebra(capsys):
    t0 = time.perf_counter()
    expected = {("A", 3): ("C", 2), ("A", 4): ("B", 2), ("A", 5): ("C", 3), ("A", 6): ("B", 3),
                ("A", 7): ("C", 4), ("A", 8): ("B", 4), ("D", 4): ("B", 3), ("D", 5): ("B", 4),
                ("D", 6): ("B", 5), ("E", 6): ("F", 4)}
    bad = []
    for (t, n), (ft, fn) in expected.items():
        if make_folding(t, n).folded.matrix != cartan(ft, fn).matrix:
            bad.append((t, n))
    if make_folding("D", 4, "triality").folded.matrix != cartan("G", 2).matrix:
        bad.append("triality")
    if make_folding("A", 2).folded.matrix != ((2,),):
        bad.append("A2")

    cases = [(t, n, s) for t, n, s in
             [("A", 2, "default"), ("A", 3, "default"), ("A", 4, "default"), ("A", 5, "default"),
              ("A", 6, "default"), ("A", 7, "default"), ("D", 4, "swap"), ("D", 4, "triality"),
              ("D", 5, "default"), ("D", 6, "default"), ("E", 6, "default")]]
    nodes = 0
    for t, n, s in cases:
        fd = make_folding(t, n, s)
        for i in foldable_weights(fd):
            c = folded(t, n, s, i)
            for mu in c.m.orbit.nodes:
                for p in fd.J:
                    nodes += 1
                    if res(fd, hat_s(fd, p, mu)) != tilde_s(fd, p, res(fd, mu)):
                        bad.append(("square", c.case, mu, p))
            for mu in hat_orbit(fd, c.m.lam):
                for orb in fd.orbits:
                    vals = [mu[k - 1] for k in orb]
                    if max(vals) > 0 and min(vals) < 0:
                        bad.append(("sign", c.case, mu))
            g, src = c.orbit.graph, c.m.orbit
            fs, ss = g.strong_reach(), src.strong_reach()
            for a in range(len(g)):
                for b in range(len(g)):
                    lifted = bool(ss[src.index[c.orbit.lift[a]]] >> src.index[c.orbit.lift[b]] & 1)
                    if lifted != bool(fs[a] >> b & 1):
                        bad.append(("lift", c.case, a, b))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    report(capsys, 7, ok, f"{len(expected) + 2} folded matrices, {nodes} (node, p) squares, "
                          f"{elapsed:.2f}s")
    assert ok


# 8 -------------------------------------------------------------------------

EDGE = re.compile(r"^\s*(\w+) -> (\w+)(?: \[label=\"([^\"]*)\"\])?;", re.M)
NODE = re.compile(r"^\s*(\w+) \[label=", re.M)


def dot_graph(text):
    g = nx.DiGraph()
    g.add_nodes_from(NODE.findall(text))
    for a, b, lab in EDGE.findall(text):
        g.add_edge(a, b, label=lab)
    return g


def oracle_orbit(matrix, lam, prime=""):
    """Weak-order graph by a direct BFS, independent of the library."""
    n = len(matrix)
    g = nx.DiGraph()
    seen, queue = {lam}, [lam]
    g.add_node(lam)
    while queue:
        mu = queue.pop(0)
        for i in range(n):
            if mu[i] > 0:
                nu = tuple(mu[j] - mu[i] * matrix[j][i] for j in range(n))
                g.add_edge(mu, nu, label=f"{i + 1}{prime}")
                if nu not in seen:
                    seen.add(nu)
                    queue.append(nu)
    return g


def oracle_folded_filters():
    """Hasse diagram of the folded filters of Y_{2,4} under the triangle order."""
    p = young_rect(2, 4)
    fs = brute_filters(p)
    fold = {1: 1, 5: 1, 2: 2, 4: 2, 3: 3}
    kappa = [fold[j - i + 2] for i in (1, 2) for j in (1, 2, 3, 4)]
    reach, stack = {0}, [0]
    g = nx.DiGraph()
    while stack:
        f = stack.pop()
        for c in (1, 2, 3):
            h = def_S(fs, kappa, f, c)
            if h not in reach:
                reach.add(h)
                stack.append(h)
            if h != f and h & f == f:
                g.add_edge(f, h, label=f"{c}'")
    return g


def test_criterion_8_dot_graphs(tmp_path, capsys):
    from dfold.cli import main
    assert main(["build", "A", "5", "--weight", "2", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    orbit = dot_graph((tmp_path / "orbit.dot").read_text())
    filters = dot_graph((tmp_path / "filters.dot").read_text())
    f_orbit = dot_graph((tmp_path / "folded_orbit.dot").read_text())
    f_filters = dot_graph((tmp_path / "folded_filters.dot").read_text())

    same = lambda a, b: a["label"] == b["label"]
    a5 = oracle_orbit(cartan("A", 5).matrix, (0, 1, 0, 0, 0))
    rect = young_rect(2, 4)
    rect_lattice = nx.DiGraph(inclusion_covers(order_filters(rect)))
    kappa = [j - i + 2 for i in (1, 2) for j in (1, 2, 3, 4)]
    for a, b in rect_lattice.edges:
        rect_lattice[a][b]["label"] = str(kappa[(b & ~a).bit_length() - 1])
    c3 = oracle_orbit(((2, -1, 0), (-1, 2, -1), (0, -2, 2)), (0, 1, 0), prime="'")
    folded_oracle = oracle_folded_filters()

    checks = {
        "orbit has 15 nodes": orbit.number_of_nodes() == 15,
        "orbit ~ oracle weak order": nx.is_isomorphic(orbit, a5, edge_match=same),
        "filters ~ Y_{2,4} filter lattice": nx.is_isomorphic(filters, rect_lattice,
                                                             edge_match=same),
        "orbit ~ filter lattice": nx.is_isomorphic(orbit, filters, edge_match=same),
        "folded diagrams have 12 nodes": (f_orbit.number_of_nodes(), f_filters.number_of_nodes())
        == (12, 12),
        "folded orbit ~ C3 oracle": nx.is_isomorphic(f_orbit, c3, edge_match=same),
        "folded filters ~ triangle oracle": nx.is_isomorphic(f_filters, folded_oracle,
                                                             edge_match=same),
        "folded orbit ~ folded filters": nx.is_isomorphic(f_orbit, f_filters, edge_match=same),
    }
    failed = [k for k, v in checks.items() if not v]
    report(capsys, 8, not failed, f"{len(checks)} graph checks, failed: {failed}")
    assert not failed
