"""Command-line front end.

    dfold build A 5 --weight 2 --out out/
    dfold verify A 5 --weight 2
    dfold verify --all --level fast --jobs 4
    dfold table --theorem 9.4 --max-n 8
    dfold dump-filters E 6 --weight 1

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import export
from .folding import (FoldingError, fold_case, foldable_weights, make_folding, table4_row,
                      verify_main_theorem)
from .minuscule import ValidationError, build_minuscule_poset, verify_minuscule_correspondence
from .poset import bits, order_filters
from .roots import RootSystemError, cartan, is_minuscule
from .type_a import RangeError, lemma_9_2_check, theorem_table, verify_theorem_9_4

SIGMAS = ("default", "swap", "triality", "flip", "identity")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CaseSpec:
    type_tag: str
    rank: int
    weight: int
    sigma: Optional[str] = None  # None: the default automorphism when there is one

    @property
    def name(self) -> str:
        s = f"{self.type_tag}{self.rank}/L{self.weight}"
        return s + (f"[{self.sigma}]" if self.sigma else "")

    def datum(self):
        try:
            d = cartan(self.type_tag, self.rank)
        except RootSystemError as e:
            raise UsageError(str(e)) from None
        if not d.is_simply_laced():
            raise UsageError(f"{d.name} is not simply laced")
        if not 1 <= self.weight <= d.rank:
            raise UsageError(f"weight index {self.weight} out of range for {d.name}")
        if not is_minuscule(d, d.fundamental(self.weight)):
            raise UsageError(f"L{self.weight} is not minuscule for {d.name}")
        return d

    def folding(self):
        """The folding datum, or None when no automorphism was asked for or exists."""
        try:
            return make_folding(self.type_tag, self.rank, self.sigma or "default")
        except FoldingError as e:
            if self.sigma:
                raise UsageError(str(e)) from None
            return None


def _primed(p) -> str:
    return f"{p}'"


def run_case(spec: CaseSpec) -> dict:
    """Every applicable verifier for one case, as a JSON-ready dict."""
    d = spec.datum()
    m = build_minuscule_poset(d, d.fundamental(spec.weight))
    reports = [verify_minuscule_correspondence(m)]
    summary = {"orbit": len(m.orbit), "poset": m.poset.n, "filters": len(m.f_table)}
    fd = spec.folding()
    if fd is not None:
        case = fold_case(fd, d.fundamental(spec.weight), m)
        reports.append(verify_main_theorem(case))
        summary.update({"folding": fd.name, "folded_orbit": len(case.orbit),
                        "tilde_F": len(case.tilde_F), "table4": table4_row(fd, m.lam)})
    plain_a = spec.sigma in (None, "default", "flip") or spec.rank == 1
    if spec.type_tag == "A" and 2 * spec.weight <= spec.rank + 1 and plain_a:
        reports.append(lemma_9_2_check(spec.weight, spec.rank))
        reports.append(verify_theorem_9_4(spec.weight, spec.rank))
    out = [r.to_json() for r in reports]
    return {"case": spec.name, "pass": all(r["pass"] for r in out),
            "summary": summary, "reports": out}


def all_cases(level: str) -> list[CaseSpec]:
    foldings = [("A", n, "default") for n in range(2, 7)]
    foldings += [("D", 4, "swap"), ("D", 4, "triality"), ("D", 5, "default"), ("E", 6, "default")]
    if level == "slow":
        foldings += [("A", 7, "default"), ("A", 8, "default"), ("D", 6, "default"),
                     ("D", 7, "default")]
    cases = [CaseSpec("A", 1, 1, "identity")]
    for t, n, s in foldings:
        fd = make_folding(t, n, s)
        cases += [CaseSpec(t, n, i, s) for i in foldable_weights(fd)]
    if level == "slow":
        cases.append(CaseSpec("E", 7, 6, None))
    return cases


def _emit(text: str, out: Optional[str], filename: str) -> None:
    if out:
        Path(out).mkdir(parents=True, exist_ok=True)
        (Path(out) / filename).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    spec = CaseSpec(args.type, args.rank, args.weight, args.sigma)
    d = spec.datum()
    m = build_minuscule_poset(d, d.fundamental(spec.weight))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    p = m.poset
    attrs = lambda x: f'label="{p.labels[x]}:{m.kappa[x]}"'
    export.write_json(out / "poset.json", {"case": m.case, **m.colored.to_json()})
    (out / "poset.dot").write_text(p.to_dot("P", attrs))
    export.write_json(out / "orbit.json", {"case": m.case, **m.orbit.to_json(),
                                           "f_table": [bits(f) for f in m.f_table]})
    (out / "orbit.dot").write_text(m.orbit.to_dot("orbit"))
    filters = order_filters(p)
    (out / "filters.dot").write_text(export.family_dot(
        p, filters, export.inclusion_covers(filters), "filters",
        lambda a, b: export.colors_added(m.colored, a, b)))
    fd = spec.folding()
    if fd is not None:
        case = fold_case(fd, d.fundamental(spec.weight), m)
        (out / "folded_orbit.dot").write_text(case.orbit.graph.to_dot("folded", _primed))
        (out / "folded_filters.dot").write_text(export.family_dot(
            p, case.tilde_F, export.triangle_covers(case.jcolored, case.tilde_F),
            "folded_filters", lambda a, b: export.colors_added(case.jcolored, a, b) + "'"))
        (out / "folded_inclusion.dot").write_text(export.family_dot(
            p, case.tilde_F, export.inclusion_covers(case.tilde_F), "folded_inclusion"))
    print(f"{m.case}: poset {p.n}, orbit {len(m.orbit)} -> {out}")
    return 0


def cmd_verify(args) -> int:
    if args.all:
        cases = all_cases(args.level)
    elif args.type and args.rank and args.weight:
        cases = [CaseSpec(args.type, args.rank, args.weight, args.sigma)]
    else:
        raise UsageError("give TYPE RANK --weight i, or --all")
    for c in cases:
        c.datum()
        c.folding()
    if args.jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(run_case, cases))
    else:
        results = [run_case(c) for c in cases]
    ok = all(r["pass"] for r in results)
    _emit(export.dumps({"pass": ok, "results": results}), args.out, "report.json")
    for r in results:
        print(f"{'PASS' if r['pass'] else 'FAIL'} {r['case']}", file=sys.stderr)
    return 0 if ok else 1


def cmd_table(args) -> int:
    if args.theorem != "9.4":
        raise UsageError("only the type A table (--theorem 9.4) is available")
    if args.max_n < 1:
        raise UsageError("--max-n must be positive")
    rows = theorem_table(args.max_n)
    buf = io.StringIO()
    w = csv.DictWriter(buf, ["m", "n", "filters", "ss", "folded_orbit", "equal"],
                       lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _emit(buf.getvalue(), args.out, "table.csv")
    return 0 if all(r["equal"] for r in rows) else 1


def cmd_dump_filters(args) -> int:
    spec = CaseSpec(args.type, args.rank, args.weight, args.sigma)
    d = spec.datum()
    m = build_minuscule_poset(d, d.fundamental(spec.weight))
    p = m.poset
    obj = {"case": m.case, "all": [bits(f) for f in order_filters(p)],
           "labels": list(p.labels), "kappa": list(m.kappa)}
    fd = spec.folding()
    if fd is not None:
        case = fold_case(fd, d.fundamental(spec.weight), m)
        obj["folding"] = fd.name
        obj["tilde_F"] = [bits(f) for f in case.tilde_F]
        obj["j_kappa"] = list(case.jcolored.kappa)
    _emit(export.dumps(obj), args.out, "filters.json")
    return 0


def _add_case_args(sp, required: bool = True) -> None:
    sp.add_argument("type", nargs=None if required else "?", help="A, D or E")
    sp.add_argument("rank", type=int, nargs=None if required else "?")
    sp.add_argument("--weight", type=int, required=required, help="fundamental weight index")
    sp.add_argument("--sigma", choices=SIGMAS, default=None,
                    help="diagram automorphism (default: the standard one, if any)")


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dfold", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("build", help="write poset and orbit JSON + DOT")
    _add_case_args(b)
    b.add_argument("--out", default=".", help="output directory")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run the verifiers and print a JSON report")
    _add_case_args(v, required=False)
    v.add_argument("--all", action="store_true", help="every foldable case")
    v.add_argument("--level", choices=("fast", "slow"), default="fast")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", default=None, help="directory for report.json")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="CSV of the type A folded filter counts")
    t.add_argument("--theorem", default="9.4")
    t.add_argument("--max-n", type=int, default=8)
    t.add_argument("--out", default=None)
    t.set_defaults(func=cmd_table)

    f = sub.add_parser("dump-filters", help="JSON of all filters and the folded ones")
    _add_case_args(f)
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_dump_filters)
    return ap


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RangeError) as e:
        print(f"dfold: error: {e}", file=sys.stderr)
        return 2
    except (ValidationError, FoldingError) as e:
        print(f"dfold: check failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
