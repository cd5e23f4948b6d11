"""Signature products against the sqrt action, for window types on the catalog fields.

For every totally imaginary catalog field a few pure types in the window are
built as base changes from the CM subfield; each row of the table pairs
eps_n(g) * eps_n~(g) with the sign of g on sqrt(N(delta_{F/F1})).

Usage:  python scripts/reciprocity_tables.py [--out results/reciprocity.json]
"""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from heckeratio.chartypes import InfinityType, base_change, combinatorial_window
from heckeratio.numfield import embeddings, galois_closure, get_field, maximal_subfields
from heckeratio.verify import reciprocity_table

FIELDS = ["Q(i)", "Q(w)", "Q(sqrt-2)", "Q(zeta5)", "Q(sqrt2,i)", "Q(i,sqrt(4+i))", "Q(2^(1/3),w)"]
# (weight, first exponent per F1 place); the partner exponent is weight - first
SHAPES = [(-2, 3), (-2, -5), (0, 4), (2, -3)]


def window_types(name):
    F = get_field(name)
    sub = maximal_subfields(F, galois_closure(F))
    f1 = sub.f1.tower
    for w, a in SHAPES:
        ex = [0] * f1.degree
        for k, p in enumerate(embeddings(f1).places):
            first = a if k % 2 == 0 else w - a
            ex[p.indices[0]], ex[p.indices[1]] = first, w - first
        n = base_change(InfinityType(f1, tuple(ex)), sub)
        if combinatorial_window(n):
            yield n


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results/reciprocity.json"))
    args = ap.parse_args(argv)
    out = []
    for name in FIELDS:
        for n in window_types(name):
            table = reciprocity_table(n)
            minus = sum(r.product == -1 for r in table.rows)
            print(f"{name:16s} n={n.exponents}  radicand {table.radicand:3d}  rows {len(table.rows):2d}  "
                  f"products -1: {minus:2d}  columns agree: {table.passed}")
            out.append({"field": name, "type": list(n.exponents), **table.to_json()})
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(out, indent=2) + "\n")
    return 0 if all(t["passed"] for t in out) else 1


if __name__ == "__main__":
    raise SystemExit(main())
