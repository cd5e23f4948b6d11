"""How the proven truncation error compares with the observed one.

For the trivial character of Q(i) the exact value zeta(s) beta(s) is known, so
the true tail of the Dirichlet sum can be measured and set against the
divisor-count bound and the lattice-count bound at several X.

Usage:  python scripts/tail_bound_study.py [--s 2] [--max-exp 6]
"""
from __future__ import annotations

import argparse

import mpmath

from heckeratio.lseries import dirichlet_sum, tail_bound
from heckeratio.qi import HeckeCharacterSpec, coefficients, quad_field


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--max-exp", type=int, default=6)
    args = ap.parse_args(argv)
    s = args.s
    lat = quad_field("Q(i)").lattice_constants()
    with mpmath.workprec(128):
        exact = mpmath.zeta(s) * (mpmath.zeta(s, 0.25) - mpmath.zeta(s, 0.75)) / 4 ** s
    stream = coefficients(HeckeCharacterSpec(k=0), 10 ** args.max_exp)
    print(f"{'X':>10s} {'true tail':>12s} {'divisor bound':>14s} {'lattice bound':>14s} {'ratio':>7s}")
    for e in range(2, args.max_exp + 1):
        X = 10 ** e
        v = dirichlet_sum(stream, s, X=X).value.real
        true = exact - v
        bd = tail_bound(X, s, 2)
        bl = tail_bound(X, s, 2, lat)
        print(f"{X:10d} {mpmath.nstr(true, 5):>12s} {mpmath.nstr(bd, 5):>14s} {mpmath.nstr(bl, 5):>14s} "
              f"{float(bl / true):7.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
