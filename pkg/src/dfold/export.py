"""JSON and DOT writers for posets, orbits and filter families."""

from __future__ import annotations

import json
from pathlib import Path

from .colored import ColoredPoset, _reachable
from .poset import Poset, bits, popcount

SCHEMA = "1"


def dumps(obj) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2, sort_keys=True) + "\n"


def write_json(path: Path, obj) -> None:
    Path(path).write_text(dumps(obj))


def reduce_relation(items: list[int], above: dict) -> list[tuple[int, int]]:
    """Covers of a partial order given by strict up-sets ``above[a]``."""
    covers = []
    for a in items:
        ups = above[a]
        for b in ups:
            if not any(b in above[c] for c in ups if c != b):
                covers.append((a, b))
    return sorted(covers)


def inclusion_covers(family: list[int]) -> list[tuple[int, int]]:
    fam = sorted(set(family), key=lambda f: (popcount(f), f))
    above = {f: [g for g in fam if g != f and f & ~g == 0] for f in fam}
    return reduce_relation(fam, above)


def triangle_covers(cp: ColoredPoset, family: list[int]) -> list[tuple[int, int]]:
    fam = sorted(set(family), key=lambda f: (popcount(f), f))
    members = set(fam)
    above = {f: [g for g in _reachable(cp, f) if g != f and g in members] for f in fam}
    return reduce_relation(fam, above)


def filter_label(p: Poset, f: int) -> str:
    return "{" + ",".join(p.labels[x] for x in bits(f)) + "}"


def family_dot(p: Poset, family: list[int], covers: list[tuple[int, int]],
               name: str = "filters", edge_label=None) -> str:
    """Hasse diagram of a filter family, one rank per filter size."""
    fam = sorted(set(family), key=lambda f: (popcount(f), f))
    ident = {f: k for k, f in enumerate(fam)}
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=plaintext];"]
    by_size: dict = {}
    for f in fam:
        by_size.setdefault(popcount(f), []).append(ident[f])
    for s in sorted(by_size):
        lines.append("  { rank=same; " + " ".join(f"f{k};" for k in by_size[s]) + " }")
    for f in fam:
        lines.append(f'  f{ident[f]} [label="{filter_label(p, f)}"];')
    for a, b in covers:
        attr = f' [label="{edge_label(a, b)}"]' if edge_label else ""
        lines.append(f"  f{ident[a]} -> f{ident[b]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def colors_added(cp: ColoredPoset, a: int, b: int) -> str:
    return ",".join(str(c) for c in sorted({cp.kappa[x] for x in bits(b & ~a)}, key=str))
