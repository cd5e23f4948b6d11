"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run with pytest (the lines are repeated in the terminal summary) or directly:
``python tests/test_acceptance.py``.
"""
import os
import random
import sys
import time
import warnings

import mpmath

sys.path.insert(0, os.path.dirname(__file__))

from acceptance_log import record  # noqa: E402
from oracles import brute_gamma_regular, dedekind_zeta_qi, s3_embedding_values, S3  # noqa: E402

from heckeratio.chartypes import (InfinityType, base_change, combinatorial_window, critical_by_regularity,  # noqa: E402
                                  critical_set, is_base_change, purity_check, signature, signature_product,
                                  width)
from heckeratio.config import CounterexampleConfig, run_counterexample  # noqa: E402
from heckeratio.lseries import choose_X, dirichlet_sum, euler_product, gamma_C, gamma_R  # noqa: E402
from heckeratio.numfield import (SurdValue, abs_discriminant, abs_discriminant_tower, embeddings,  # noqa: E402
                                 galois_closure, get_field, maximal_subfields, rel_discriminant)
from heckeratio.qi import HeckeCharacterSpec, coefficients, quad_field  # noqa: E402
from heckeratio.verify import (VERDICT_REPRODUCED, cm_structure, counterexample_pipeline,  # noqa: E402
                               discriminant_identity_check, reciprocity_table, recognize_gaussian)

IMAGINARY = ["Q(i)", "Q(w)", "Q(zeta5)", "Q(sqrt2,i)", "Q(i,sqrt(4+i))", "Q(2^(1/3),w)"]
SEED = 20240607


def _sub(name):
    F = get_field(name)
    return maximal_subfields(F, galois_closure(F))


def _random_pure(rng, lo=-9, hi=9):
    name = rng.choice(IMAGINARY)
    sub = _sub(name)
    f1 = sub.f1.tower
    w = rng.randint(lo, hi)
    vals = [0] * f1.degree
    for p in embeddings(f1).places:
        a = rng.randint(lo, hi)
        vals[p.indices[0]], vals[p.indices[1]] = a, w - a
    return base_change(InfinityType(f1, tuple(vals)), sub)


def _oracle_critical(t, lo, hi):
    emb = t.emb
    pairs = [(t[p.indices[0]], t[p.indices[1]]) for p in emb.places if p.kind == "complex"]
    reals = [(t[p.indices[0]], e) for p, e in zip([p for p in emb.places if p.kind == "real"], t.real_parities())]
    dual = ([(-a, -b) for a, b in pairs], [(-n, e) for n, e in reals])
    return [m for m in range(lo, hi + 1)
            if brute_gamma_regular(pairs, reals, m) and brute_gamma_regular(*dual, 1 - m)]


def _finish(number, title, checks, started, limit, detail=""):
    elapsed = time.perf_counter() - started
    failed = [name for name, ok in checks if not ok]
    in_time = elapsed < limit
    ok = not failed and in_time
    parts = [f"{elapsed:.2f}s < {limit}s" if in_time else f"{elapsed:.2f}s exceeds {limit}s"]
    if failed:
        parts.append("failed: " + "; ".join(failed))
    if detail:
        parts.append(detail)
    record(number, ok, title, ", ".join(parts))
    assert ok, parts


# 1 ------------------------------------------------------------------------------------------------

def test_criterion_1_discriminants():
    t0 = time.perf_counter()
    Qi = get_field("Q(i)")
    F = get_field("Q(i,sqrt(4+i))")
    K = F.subtower(1)
    rel = rel_discriminant(F, 1)
    checks = [
        ("delta(Q(i)) = -4", abs_discriminant(Qi) == -4),
        ("delta(F/F1) = 4(4+i)", rel == K.parse_element("4*(4+i)")),
        ("tower formula = 2^8 * 17", abs_discriminant_tower(F, 1) == 2 ** 8 * 17),
        ("direct = tower", abs_discriminant(F) == abs_discriminant_tower(F, 1)),
    ]
    _finish(1, "discriminants", checks, t0, 1.0)


# 2 ------------------------------------------------------------------------------------------------

def test_criterion_2_purity():
    setup = time.perf_counter()
    F = get_field("Q(2^(1/3),w)")
    emb = embeddings(F)
    sub = _sub("Q(2^(1/3),w)")  # one-time closure and subfield construction, reported separately
    setup = time.perf_counter() - setup
    t0 = time.perf_counter()
    idx = {}
    for label, s in S3.items():
        a, w = s3_embedding_values(s)
        d = [abs(complex(g[0]) - a) + abs(complex(g[1]) - w) for g in emb.gen_values]
        idx[label] = min(range(6), key=d.__getitem__)

    def typ(values):
        ex = [0] * 6
        for label, v in values.items():
            ex[idx[label]] = v
        return InfinityType(F, tuple(ex))

    def n(a, w):
        return typ({"e": a, "(12)": w - a, "(23)": w - a, "(13)": w - a, "(123)": a, "(132)": a})

    def n_prime(a, b, c, w):
        return typ({"e": a, "(12)": b, "(23)": w - a, "(13)": c, "(123)": w - c, "(132)": w - b})

    res = purity_check(n(0, 4))
    grid_bad = [(a, b, c, w) for a in range(-2, 3) for b in range(-2, 3) for c in range(-2, 3) for w in range(-2, 3)
                if purity_check(n_prime(a, b, c, w)).pure != (w - a == b == c)]
    m = is_base_change(n(0, 4), sub)
    checks = [
        ("S3 labels are the six embeddings", sorted(idx.values()) == list(range(6))),
        ("n pure of weight w", res.pure and res.weight == 4),
        ("n' impure at (0,1,2,4)", not purity_check(n_prime(0, 1, 2, 4)).pure),
        (f"5^4 grid ({len(grid_bad)} discrepancies)", not grid_bad),
        ("n is the base change of (a, w-a)", m[sub.f1.restriction[idx["e"]]] == 0
         and m[sub.f1.restriction[idx["(12)"]]] == 4),
    ]
    _finish(2, "purity suite", checks, t0, 1.0, f"625 grid points, field setup {setup:.2f}s untimed")


# 3 ------------------------------------------------------------------------------------------------

def test_criterion_3_critical_sets():
    setup = time.perf_counter()
    rng = random.Random(SEED)
    types = [_random_pure(rng) for _ in range(200)]
    for name in ("Q(2^(1/3))", "Q(sqrt2)", "Q(i)"):
        embeddings(get_field(name))
    setup = time.perf_counter() - setup
    oracle = [_oracle_critical(t, -30, 30) for t in types]  # independent Gamma-pole oracle, not timed
    t0 = time.perf_counter()
    card_bad = reg_bad = 0
    for t, brute in zip(types, oracle):
        cs = critical_set(t)
        ell = width(t)
        if (ell == 0 and cs.kind != "empty") or (ell > 0 and len(cs) != ell):
            card_bad += 1
        expected = cs.members() if cs.kind == "interval" else []
        if critical_by_regularity(t, -30, 30) != expected or brute != expected:
            reg_bad += 1
    mixed = InfinityType(get_field("Q(2^(1/3))"), (2, 2, 2))
    real_mixed = InfinityType(get_field("Q(sqrt2)"), (3, 3), (0, 1))
    checks = [
        (f"cardinality l ({card_bad} bad)", card_bad == 0),
        (f"regularity agreement ({reg_bad} bad)", reg_bad == 0),
        ("mixed signature empty", critical_set(mixed).kind == "empty" and not critical_by_regularity(mixed, -30, 30)),
        ("real places, mixed parities empty", critical_set(real_mixed).kind == "empty"
         and not critical_by_regularity(real_mixed, -30, 30)),
        ("Q(i) (8,0) -> {-7..0}", critical_set(InfinityType(get_field("Q(i)"), (8, 0))).members() == list(range(-7, 1))),
    ]
    _finish(3, "critical sets", checks, t0, 1.0, f"200 random pure types, field setup {setup:.2f}s untimed")


# 4 ------------------------------------------------------------------------------------------------

def test_criterion_4_window():
    rng = random.Random(SEED + 1)
    types = [_random_pure(rng) for _ in range(500)]
    t0 = time.perf_counter()
    bad = 0
    inside = 0
    for n in types:
        win = combinatorial_window(n)
        crit = critical_set(-n)
        inside += win
        if win != (-1 in crit and 0 in crit):
            bad += 1
    checks = [(f"{bad} discrepancies", bad == 0), ("both outcomes occur", 0 < inside < 500)]
    _finish(4, "window equivalence", checks, t0, 1.0, f"500 types, {inside} in the window")


# 5 ------------------------------------------------------------------------------------------------

def test_criterion_5_signatures():
    t0 = time.perf_counter()
    sub = _sub("Q(i,sqrt(4+i))")
    n = base_change(InfinityType(sub.f1.tower, (3, -5)), sub)
    ctx = galois_closure(n.field)
    G = list(ctx.elements())
    cocycle = all(signature(n, ctx.compose(b, a), ctx) == signature(n.relabel(a, ctx), b, ctx) * signature(n, a, ctx)
                  for a in G for b in G)
    rng = random.Random(SEED + 2)
    orders = []
    for _ in range(10):
        o = list(range(len(n.emb.places)))
        rng.shuffle(o)
        orders.append(o)
    ordering = all(signature(n, g, ctx, place_order=o) == signature(n, g, ctx) for o in orders for g in G)
    cm_ok = True
    cm_count = 0
    for name, w, firsts in (("Q(i)", -2, [(3,)]), ("Q(i)", 2, [(-2,), (4,)]), ("Q(zeta5)", -2, [(3, 3), (-5, 3)]),
                            ("Q(zeta5)", -2, [(6, -4), (-8, 4)])):
        F = get_field(name)
        c = galois_closure(F)
        emb = embeddings(F)
        for first in firsts:
            ex = [0] * F.degree
            for p, a in zip(emb.places, first):
                ex[p.indices[0]], ex[p.indices[1]] = a, w - a
            t = InfinityType(F, tuple(ex))
            cm_count += 1
            cm_ok &= combinatorial_window(t) and all(signature_product(t, g, c) == 1 for g in c.elements())
    table = reciprocity_table(n)
    checks = [
        (f"closure order {len(G)} = 8", len(G) == 8),
        ("cocycle law for all 64 pairs", cocycle),
        ("ordering independence (10 reorderings)", ordering),
        (f"CM products trivial on Q(i), Q(zeta5) ({cm_count} types)", cm_ok),
        ("sign columns identical on all 8 elements", table.passed and len(table.rows) == 8),
        ("some product equals -1", table.has_minus_one),
    ]
    _finish(5, "signature properties", checks, t0, 10.0)


# 6 ------------------------------------------------------------------------------------------------

def test_criterion_6_identities():
    t0 = time.perf_counter()
    checks = []
    for name in ("Q(i)", "Q(w)", "Q(zeta5)"):
        chk = discriminant_identity_check(name)
        checks.append((f"CM lemma {name}", chk.lemma == "CM" and chk.passed))
    chk = discriminant_identity_check("Q(i,sqrt(4+i))")
    st = cm_structure("Q(i,sqrt(4+i))")
    checks += [
        ("totally imaginary lemma Q(i,sqrt(4+i))", chk.lemma == "totally-imaginary" and chk.passed),
        ("Delta_F = -1", st.delta == SurdValue.rational(-1)),
        ("N(delta_{F/F1}) = 16 * 17", chk.norm_rel_disc == 16 * 17),
    ]
    _finish(6, "discriminant identities", checks, t0, 1.0)


# 7 ------------------------------------------------------------------------------------------------

def test_criterion_7_lmachinery():
    t0 = time.perf_counter()
    lat = quad_field("Q(i)").lattice_constants()
    X = choose_X(0, 2, 5e-7, lattice=lat)
    z = dirichlet_sum(coefficients(HeckeCharacterSpec(k=0), X), 2)
    with mpmath.workprec(96):
        oracle = dedekind_zeta_qi(2)
    zeta_ok = z.error_bound <= 1e-6 and abs(z.value - oracle) <= z.error_bound \
        and abs(z.value - mpmath.mpf("1.5067030")) <= 1e-6
    psi = HeckeCharacterSpec(k=8)
    ep_ok = True
    for s in (9, 10):
        d = dirichlet_sum(coefficients(psi, 10 ** 5), s)
        e = euler_product(psi, s, 10 ** 5)
        ep_ok &= bool(abs(d.value - e.value) <= d.error_bound + e.error_bound)
    with mpmath.workprec(192):
        pts = [mpmath.mpf(k) / 3 + 1 for k in range(10)] + [mpmath.mpc(0.5 + k, 1.5 - k / 4) for k in range(10)]
        dup_ok = all(abs(gamma_C(s) - gamma_R(s) * gamma_R(s + 1)) <= mpmath.mpf(10) ** -40 * max(1, abs(gamma_C(s)))
                     for s in pts)
    checks = [
        (f"zeta_Q(i)(2) within 1e-6 (X={X}, bound {mpmath.nstr(z.error_bound, 3)})", zeta_ok),
        ("Euler vs Dirichlet at s=9,10", ep_ok),
        ("duplication at 20 points to 1e-40", dup_ok),
    ]
    _finish(7, "L-machinery cross-checks", checks, t0, 60.0)


# 8 ------------------------------------------------------------------------------------------------

def _asymmetric(rep):
    return rep.real_within_error and rep.recognition.recognized and not rep.recognition_sqrt.recognized


def test_criterion_8_counterexample():
    t0 = time.perf_counter()
    cfg = CounterexampleConfig()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        primary = run_counterexample(cfg)
        primary_ok = primary.verdict == VERDICT_REPRODUCED
        fallback = None
        if not primary_ok:
            fallback = run_counterexample(cfg.fallback())
    im = primary.r_chi.ratio.imag
    detail = (f"primary verdict {primary.verdict}: |Im R_chi| = {mpmath.nstr(abs(im), 6)} vs error "
              f"{mpmath.nstr(primary.r_chi.error_bound, 3)}, X={primary.params['X']}")
    checks = [("real within error", primary.real_within_error)]
    if fallback is None:
        checks.append(("asymmetric verdict at q <= 10^4", primary_ok))
    else:
        detail += (f"; fallback (q<=10^6, tol {fallback.params['tolerance']:.1e}, bits {fallback.params['bits']}, "
                   f"X={fallback.params['X']}) verdict {fallback.verdict}")
        checks.append(("fallback asymmetric verdict", _asymmetric(fallback)
                       and fallback.verdict == VERDICT_REPRODUCED))
    _finish(8, "counterexample reproduction", checks, t0, 600.0, detail)


def test_supplementary_counterexample_over_gaussian_rationals():
    """The same asymmetry with recognition over Q(i), where the values actually lie."""
    rep = counterexample_pipeline(route="afe")
    tol = mpmath.mpf(10) ** -40
    with mpmath.workprec(256):
        g = recognize_gaussian(rep.r_chi.ratio, 10 ** 14, tol)
        g17 = recognize_gaussian(mpmath.sqrt(17) * rep.r_chi.ratio, 10 ** 14, tol)
        dirichlet = counterexample_pipeline()
        agree = abs(rep.r_chi.ratio - dirichlet.r_chi.ratio) <= rep.r_chi.error_bound + dirichlet.r_chi.error_bound
    assert agree
    assert g.recognized and g.real.sound
    assert not g17.recognized
    assert g.imag.fraction != 0


# 9 ------------------------------------------------------------------------------------------------

def test_criterion_9_determinism():
    t0 = time.perf_counter()
    chi = HeckeCharacterSpec(k=8, quad_d=(4, 1))
    stream = coefficients(chi, 120000)
    checks = []
    for s in (7, 8, mpmath.mpc(7.5, 0.5)):
        outs = [dirichlet_sum(stream, s, workers=w, X=120000 if not isinstance(s, mpmath.mpc) else 30000)
                for w in (1, 4, 8)]
        same = all(o.value.real == outs[0].value.real and o.value.imag == outs[0].value.imag
                   and o.error_bound == outs[0].error_bound for o in outs)
        checks.append((f"bit-identical at s={s}", same))
    _finish(9, "determinism across 1, 4, 8 workers", checks, t0, 60.0)


if __name__ == "__main__":
    from acceptance_log import LINES

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    tests.sort(key=lambda f: int(f.__name__.split("_")[2]))
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
        except Exception as exc:  # report and continue with the remaining criteria
            record(int(fn.__name__.split("_")[2]), False, fn.__name__, f"{type(exc).__name__}: {exc}")
    print("\n".join(["", "summary:"] + LINES))
    sys.exit(0 if all(line.startswith("PASS") for line in LINES) else 1)
