"""Acceptance criteria, one test each.

Every criterion records a PASS/FAIL line that the conftest hook prints at the
end of the run.  ``python tests/test_acceptance.py`` runs them standalone.
"""
import math
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracles  # noqa: E402
from hconvex import harness  # noqa: E402
from hconvex import hclass as hc  # noqa: E402
from hconvex import opineq as op  # noqa: E402
from hconvex.matcore import eig_h, rand_hermitian, secant_coeffs  # noqa: E402
from hconvex.posmaps import EACH_UNITAL, MapFamily, identity_map, random_family  # noqa: E402
from hconvex.quadrature import integrate01  # noqa: E402

RESULTS = []
DIMS = (2, 3, 4, 6)
SQUARE_ID = ("f:square", "h:id")


def _run(number, title, limit_s, body):
    start = time.perf_counter()
    try:
        note = body() or ""
        elapsed = time.perf_counter() - start
        assert elapsed < limit_s, f"took {elapsed:.1f}s, limit {limit_s}s"
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        RESULTS.append((number, "FAIL", title, elapsed, str(exc)))
        raise
    RESULTS.append((number, "PASS", title, elapsed, note))


def format_results():
    return [f"criterion {n}: {status} ({t:.2f}s) {title}" + (f" [{note}]" if note else "")
            for n, status, title, t, note in sorted(RESULTS)]


# ---------------------------------------------------------------------------


def _secant_constants():
    for phi, want in ((lambda t: t, (1.0, 0.0)), (lambda t: 1.0, (0.0, 1.0)),
                      (lambda t: 1.0 / t, (-0.5, 1.5))):
        s = secant_coeffs(phi, 1.0, 2.0)
        assert abs(s.mu - want[0]) <= 1e-14 and abs(s.nu - want[1]) <= 1e-14, (s, want)
    m, M = 1.0, 2.0
    s = secant_coeffs(lambda t: 1.0 / t, m, M)
    assert abs(s.mu + 1 / (m * M)) <= 1e-14 and abs(s.nu - (m + M) / (m * M)) <= 1e-14


def _operator_jensen():
    cfg = harness.SuiteConfig(seed=0, trials=500, dims=DIMS, interval=(0.5, 2.0), tol_rel=1e-9,
                              suites=("operator",), catalog_filter=SQUARE_ID)
    checks = ["weighted_jensen", "dcj", "cor_weighted_dcj", "jensen_contraction"]
    rep = harness.run_suite(cfg, checks)
    for c in checks:
        for d in DIMS:
            n = sum(r["check"] == c and r["dim"] == d for r in rep.records)
            assert n == 500, (c, d, n)
    bad = [r for r in rep.records if r["verdict"] != "holds"]
    assert not bad, bad[:3]
    return f"{len(rep.records)} instances"


def _mercer_chain():
    m, M = 0.5, 2.0
    f, h = hc.get_f("f:square"), hc.get_h("h:id")
    count = 0
    for dim in DIMS:
        for seed in range(200):
            rng = np.random.default_rng([dim, seed])
            n = int(rng.integers(1, 4))
            fam = random_family(n, dim, dim, EACH_UNITAL, seed=int(rng.integers(1 << 62)),
                                kinds=("pinching", "conjugation"))
            As = [rand_hermitian(dim, m, M, seed=int(rng.integers(1 << 62))) for _ in range(n)]
            rep = op.check_mercer_operator(f, h, fam, As, rng.dirichlet(np.ones(n)), m, M, 1e-9)
            assert rep.gap1 >= -rep.tolerance_used and rep.gap2 >= -rep.tolerance_used, \
                (dim, seed, rep.gap1, rep.gap2)
            count += 1
    ident = MapFamily((identity_map(2),), EACH_UNITAL)
    rep = op.check_mercer_operator(f, h, ident, [np.diag([m, M])], [1.0], m, M)
    assert abs(rep.gap1) <= 1e-9 and abs(rep.gap2) <= 1e-9, (rep.gap1, rep.gap2)
    return f"{count} instances, endpoint gaps {rep.gap1:.1e}/{rep.gap2:.1e}"


def _complementary():
    sq, ident = hc.get_f("f:square"), hc.get_h("h:id")
    c = op.beta_compute(sq, sq, ident, 1.0, 0.0, 1.0)
    assert abs(c.beta - 0.25) <= 1e-7 and abs(c.t_star - 0.5) <= 1e-7, c
    grid_beta, _ = oracles.brute_beta(sq, sq, ident, 1.0, 0.0, 1.0, n=100_001)
    assert abs(c.beta - grid_beta) <= 1e-6
    for alpha, want in ((1.0, 1.5), (10.0, 1.0), (0.5, 2.0)):
        t0 = op.t0_compute(sq, ident, alpha, 1.0, 2.0)
        assert abs(t0 - want) <= 1e-8, (alpha, t0)
    cfg = harness.SuiteConfig(seed=0, trials=50, dims=DIMS, suites=("complementary",),
                              catalog_filter=SQUARE_ID)
    rep = harness.run_suite(cfg, ["complementary"])
    assert len(rep.records) == 200
    bad = [r for r in rep.records if r["verdict"] != "holds"]
    assert not bad, bad[:3]
    return "200 operator instances"


def _scalar_suite():
    notes = []
    for check in ("even_chain", "even_integral", "hh_norm", "mercer_lemma", "mercer_h"):
        spec = harness.CHECKS[check]
        dims = spec.dims(harness.SuiteConfig(dims=DIMS)) if spec.dims else DIMS
        pairs = [p for p in spec.pairs() if spec.certified(*harness._resolve(p))
                 or check == "hh_norm"]
        trials = math.ceil(1000 / (len(pairs) * len(dims)))
        cfg = harness.SuiteConfig(seed=0, trials=trials, dims=DIMS, suites=("scalar",))
        rep = harness.run_suite(cfg, [check])
        certified = [r for r in rep.records if r["certified"]]
        assert len(certified) >= 1000, (check, len(certified))
        bad = [r for r in certified if r["verdict"] != "holds"]
        assert not bad, (check, bad[:2])
        notes.append(f"{check}={len(certified)}")
    return ", ".join(notes)


def _falsifiability():
    cx = harness.search_counterexample("weighted_jensen", "f:cube", "h:id", budget=1000,
                                       dim=2, interval=(-2.0, 2.0))
    assert cx is not None and cx.evaluations <= 1000
    none = harness.search_counterexample("weighted_jensen", "f:square", "h:id", budget=1000,
                                         dim=2, interval=(-2.0, 2.0))
    assert none is None
    return f"cube witness after {cx.evaluations} evaluations"


def _structural_predicates():
    h = hc.get_h("h:shiftpow:0:0.5")
    for check in (hc.check_supermultiplicative, hc.check_submultiplicative):
        rep = check(h)
        assert rep.holds and abs(rep.worst_violation) <= 1e-12, rep
    assert hc.check_supermultiplicative(hc.get_h("h:shiftpow:1:0.5")).holds
    assert hc.check_superadditive(hc.get_h("h:sq")).holds
    rep = hc.check_superadditive(hc.get_h("h:pow:0.5"))
    assert not rep.holds and rep.witness
    x, y = rep.witness
    return f"sqrt witness ({x:.3g}, {y:.3g})"


def _numerics():
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(1000):
        dim = int(rng.integers(1, 33))
        a = np.asarray(rand_hermitian(dim, -5.0, 5.0, seed=int(rng.integers(1 << 62))))
        err = np.linalg.norm(eig_h(a).reconstruct() - a) / max(np.linalg.norm(a), 1e-300)
        worst = max(worst, err)
    assert worst <= 1e-9, worst
    for degree in range(7):
        for _ in range(20):
            coeffs = rng.uniform(-5, 5, degree + 1)
            g = lambda t, c=coeffs: sum(ck * t ** k for k, ck in enumerate(c))
            r = integrate01(g)
            assert abs(r.value - oracles.poly_integral01(coeffs)) <= 1e-12, (degree, coeffs)
    return f"worst relative reconstruction {worst:.1e}"


CRITERIA = [
    (1, "secant constants", 1, _secant_constants),
    (2, "operator Jensen suite", 60, _operator_jensen),
    (3, "Mercer operator chain", 60, _mercer_chain),
    (4, "complementary Jensen constants", 30, _complementary),
    (5, "scalar inequality suite", 30, _scalar_suite),
    (6, "falsifiability", 30, _falsifiability),
    (7, "structural predicates", 5, _structural_predicates),
    (8, "numerics", 30, _numerics),
]


def test_criterion_1_secant_constants():
    _run(*CRITERIA[0])


def test_criterion_2_operator_jensen_suite():
    _run(*CRITERIA[1])


def test_criterion_3_mercer_operator_chain():
    _run(*CRITERIA[2])


def test_criterion_4_complementary_constants():
    _run(*CRITERIA[3])


def test_criterion_5_scalar_suite():
    _run(*CRITERIA[4])


def test_criterion_6_falsifiability():
    _run(*CRITERIA[5])


def test_criterion_7_structural_predicates():
    _run(*CRITERIA[6])


def test_criterion_8_numerics():
    _run(*CRITERIA[7])


if __name__ == "__main__":
    failed = 0
    for crit in CRITERIA:
        try:
            _run(*crit)
        except AssertionError:
            failed += 1
    print("\n".join(format_results()))
    sys.exit(1 if failed else 0)
