"""Colored posets and the filter maps A_c, R_c, S_c."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

from .poset import Poset, PosetError, bits, d_intervals, is_d_complete, to_mask, top_tree


@dataclass(frozen=True, eq=False)
class ColoredPoset:
    poset: Poset
    kappa: tuple  # kappa[x] is the color of element x
    colors: tuple
    _reach: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.kappa) != self.poset.n:
            raise PosetError("coloring must be total")
        unknown = set(self.kappa) - set(self.colors)
        if unknown:
            raise PosetError(f"colors {sorted(unknown, key=str)} not in the color set")
        masks = {c: 0 for c in self.colors}
        for x, c in enumerate(self.kappa):
            masks[c] |= 1 << x
        object.__setattr__(self, "_class_mask", masks)

    def color_class(self, c: Hashable) -> int:
        return self._class_mask[c]

    def recolor(self, projection: Mapping, colors: Sequence) -> "ColoredPoset":
        return ColoredPoset(self.poset, tuple(projection[c] for c in self.kappa), tuple(colors))

    def counts(self, f: int) -> dict:
        """Number of members of ``f`` in each color class."""
        return {c: bin(f & m).count("1") for c, m in self._class_mask.items()}

    def to_json(self) -> dict:
        return {"poset": self.poset.to_json(), "colors": list(self.colors),
                "kappa": list(self.kappa)}


def derive_coloring(p: Poset, assignment: Mapping[int, Hashable]) -> ColoredPoset:
    """Extend a top-tree coloring to all of ``p``.

    Each element w off the top tree lies at the bottom of exactly one
    d_k-interval [w, z] and takes the color of z; elements are handled from
    the top down so z is always colored first.
    """
    report = is_d_complete(p)
    if not report.ok:
        raise PosetError(f"not d-complete: {report.violations[:3]}")
    tree = top_tree(p)
    if sorted(assignment) != sorted(tree):
        raise PosetError("assignment must be defined exactly on the top tree")
    colors = tuple(assignment[x] for x in tree)
    if len(set(colors)) != len(colors):
        raise PosetError("assignment is not injective")

    tops: dict[int, list[int]] = {}
    for w, z, _ in d_intervals(p):
        tops.setdefault(w, []).append(z)
    kappa: dict[int, Hashable] = dict(assignment)
    for w in reversed(p.topo):
        if w in kappa:
            continue
        zs = tops.get(w, [])
        if len(zs) != 1:
            raise PosetError(f"{p.labels[w]} lies in {len(zs)} d_k-intervals, expected 1")
        kappa[w] = kappa[zs[0]]
    return ColoredPoset(p, tuple(kappa[x] for x in range(p.n)), colors)


def op_A(cp: ColoredPoset, f: int, c) -> int:
    out = f
    cls = cp.color_class(c)
    for x in range(cp.poset.n):
        if not f >> x & 1 and cp.poset.above[x] & ~f & ~cls == 0:
            out |= 1 << x
    return out


def op_R(cp: ColoredPoset, f: int, c) -> int:
    out = f
    cls = cp.color_class(c)
    for x in bits(f):
        if cp.poset.below[x] & f & ~cls == 0:
            out &= ~(1 << x)
    return out


def op_S(cp: ColoredPoset, f: int, c) -> int:
    t = (op_A(cp, f, c) & ~f) | op_R(cp, f, c)
    return t if cp.poset.is_filter(t) else f


def _reachable(cp: ColoredPoset, f: int) -> frozenset:
    hit = cp._reach.get(f)
    if hit is not None:
        return hit
    seen = {f}
    stack = [f]
    while stack:
        g = stack.pop()
        for c in cp.colors:
            h = op_S(cp, g, c)
            if h != g and h & g == g and h not in seen:
                seen.add(h)
                stack.append(h)
    out = frozenset(seen)
    cp._reach[f] = out
    return out


def triangle_leq(cp: ColoredPoset, f: int, g: int) -> bool:
    """f is below g when g is reached from f by strictly growing S_c steps."""
    return g in _reachable(cp, f)


def filter_elements(f: int) -> list[int]:
    return bits(f)


def filter_from_elements(p: Poset, elements) -> int:
    m = to_mask(elements)
    if not p.is_filter(m):
        raise PosetError("not an order filter")
    return m
