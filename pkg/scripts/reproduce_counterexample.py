"""Ratio experiment for psi((alpha)) = alpha^8 over Q(i), d = 4+i, m = 7.

Runs three configurations and writes one JSON report per run:

* primary:  rigorous Dirichlet sums, q <= 10^4, tolerance 5e-8;
* fallback: quadrupled precision and X, q <= 10^6, tolerance 1/(4 q^2);
* afe:      approximate functional equation (numerical root number) with
            componentwise recognition over Q(i) at q <= 10^14, tolerance 1e-40.

Usage:  python scripts/reproduce_counterexample.py [--out results/] [--workers N]
"""
from __future__ import annotations

import argparse
import json
import time
import warnings
from pathlib import Path

import mpmath

from heckeratio.config import CounterexampleConfig, RunConfig, run_counterexample
from heckeratio.verify import recognize_gaussian


def _summary(name, rep, seconds):
    r = rep.r_chi
    print(f"[{name}] {seconds:7.1f}s  R_chi = {mpmath.nstr(r.ratio.real, 25)} + {mpmath.nstr(r.ratio.imag, 25)} i"
          f"  (error {mpmath.nstr(r.error_bound, 3)})  verdict {rep.verdict}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)

    base = CounterexampleConfig(run=RunConfig(workers=args.workers))
    runs = {"primary": base, "fallback": base.fallback(),
            "afe": CounterexampleConfig(route="afe", run=RunConfig(workers=args.workers))}
    reports = {}
    for name, cfg in runs.items():
        t0 = time.perf_counter()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            rep = run_counterexample(cfg)
        js = rep.to_json()
        js["config"] = cfg.to_json()
        js["warnings"] = sorted({str(w.message) for w in caught})
        reports[name] = rep
        _summary(name, rep, time.perf_counter() - t0)
        (args.out / f"counterexample_{name}.json").write_text(json.dumps(js, indent=2, default=str) + "\n")

    rep = reports["afe"]
    tol = mpmath.mpf(10) ** -40
    with mpmath.workprec(256):
        g = recognize_gaussian(rep.r_chi.ratio, 10 ** 14, tol)
        g17 = recognize_gaussian(mpmath.sqrt(17) * rep.r_chi.ratio, 10 ** 14, tol)
    gauss = {"R_chi": g.to_json(), "sqrt17_R_chi": g17.to_json(),
             "asymmetric": g.recognized and not g17.recognized}
    print(f"[gaussian] R_chi = {g.real.fraction} + ({g.imag.fraction}) i; sqrt(17) branch recognized: "
          f"{g17.recognized}")
    (args.out / "counterexample_gaussian.json").write_text(json.dumps(gauss, indent=2, default=str) + "\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
