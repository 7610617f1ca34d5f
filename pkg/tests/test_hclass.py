import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hconvex import hclass as hc
from hconvex import scalar_ineq as sc
from hconvex.errors import DomainError


def test_power_h_is_multiplicative():
    h = hc.get_h("h:shiftpow:0:0.5")  # x^(-1/2)
    for check in (hc.check_supermultiplicative, hc.check_submultiplicative):
        rep = check(h)
        assert rep.holds
        assert abs(rep.worst_violation) <= 1e-12


def test_shifted_power_supermultiplicative():
    rep = hc.check_supermultiplicative(hc.get_h("h:shiftpow:1:0.5"))
    assert rep.holds and rep.n_evaluated == 512 ** 2


def test_square_superadditive_sqrt_not():
    assert hc.check_superadditive(hc.get_h("h:sq")).holds
    rep = hc.check_superadditive(hc.get_h("h:pow:0.5"))
    assert not rep.holds
    x, y = rep.witness
    h = hc.get_h("h:pow:0.5")
    assert h(x + y) < h(x) + h(y)


def test_subadditive_sqrt():
    assert hc.check_subadditive(hc.get_h("h:pow:0.5")).holds


@pytest.mark.parametrize("name", hc.CATALOG_H)
def test_declared_structure_flags_hold(name):
    h = hc.get_h(name)
    checks = {hc.SUPERADDITIVE: hc.check_superadditive, hc.SUBADDITIVE: hc.check_subadditive,
              hc.SUPERMULTIPLICATIVE: hc.check_supermultiplicative,
              hc.SUBMULTIPLICATIVE: hc.check_submultiplicative}
    for flag, fn in checks.items():
        if flag in h.flags:
            assert fn(h).holds, (name, flag)


def test_identity_is_additive_and_multiplicative():
    h = hc.get_h("h:id")
    assert h.has(hc.ADDITIVE, hc.MULTIPLICATIVE, hc.OPERATOR_CONVEX)


def test_h_domain():
    h = hc.get_h("h:inv")
    assert not h.contains(0.0)
    with pytest.raises(DomainError):
        h(0.0)
    assert hc.get_h("h:id")(0.0) == 0.0


def test_h_must_be_nonnegative():
    with pytest.raises(ValueError):
        hc.HFunction("bad", lambda t: t - 0.5)
    with pytest.raises(ValueError):
        hc.HFunction("zero", lambda t: np.zeros_like(np.asarray(t, float)))


def test_wrong_derivative_rejected():
    with pytest.raises(ValueError):
        hc.ScalarFunction("sq", lambda t: t * t, derivative=lambda t: 3 * np.asarray(t))


def test_nonnegative_flag_is_checked():
    with pytest.raises(ValueError):
        hc.ScalarFunction("neg", lambda t: t, flags={hc.NONNEGATIVE})


def test_names_round_trip():
    for name in hc.CATALOG_H:
        assert hc.get_h(name).name == name
    for name in hc.CATALOG_F:
        assert hc.get_f(name).name == name
    assert hc.get_f("f:sqrt")(4.0) == 2.0


@pytest.mark.parametrize("name", ["h:nope", "h:pow:x", "f:abspow", "g:id"])
def test_unknown_names(name):
    getter = hc.get_h if name.startswith("h:") else hc.get_f
    with pytest.raises(KeyError):
        getter(name)


def test_catalog_listing():
    names = hc.catalog_names()
    assert "h:pow:0.5" in names["h"] and "f:square" in names["f"]
    assert "f:square|h:id|operator_h_convex" in names["pairs"]
    assert len(hc.builtin_catalog()) == len(names["h"]) + len(names["f"]) + len(names["pairs"])


def test_certification_requires_flag():
    with pytest.raises(ValueError):
        hc.CertifiedPair(hc.get_f("f:cube"), hc.get_h("h:id"), hc.OPERATOR_H_CONVEX, "no")


def test_operator_certification_implies_weaker_forms():
    assert hc.is_certified("f:square", "h:inv", hc.H_CONVEX_SCALAR)
    assert hc.is_certified("f:square", "h:inv", hc.OPERATOR_H_MID_CONVEX)
    assert not hc.is_certified("f:cube", "h:id", hc.H_CONVEX_SCALAR)


@pytest.mark.parametrize("pair", hc.certified_pairs(), ids=lambda p: "|".join(p.key))
def test_certified_pairs_are_scalar_h_convex(pair):
    assert hc.check_h_convex_scalar(pair.f, pair.h, samples=2000, seed=1).holds


def test_h_convexity_can_fail():
    rep = hc.check_h_convex_scalar(hc.get_f("f:sqrt"), hc.get_h("h:id"))
    assert not rep.holds and rep.worst_violation < 0


def test_window_clips_infinite_domains():
    assert hc.get_f("f:square").window() == (-4.0, 4.0)
    assert hc.get_f("f:pow:0.5").window() == (0.0, 4.0)
    assert hc.get_f("f:cube").window() == (-2.0, 2.0)


@settings(max_examples=40, deadline=None)
@given(t=st.floats(0.0, 1.0), seed=st.integers(0, 2**16),
       name=st.sampled_from(["f:square|h:id", "f:quartic|h:pow:0.5", "f:abspow:0.5|h:one",
                             "f:square|h:max_half"]))
def test_mixing_variables_preserves_h_convexity(t, seed, name):
    # f_t(x, y) = f(t x + (1 - t) y) on pairs (x, y), flattened to two coordinates
    fname, hname = name.split("|")
    f, h = hc.get_f(fname), hc.get_h(hname)
    f_t = lambda pts: f(t * pts[..., 0] + (1 - t) * pts[..., 1])
    rng = np.random.default_rng(seed)
    p, q = rng.uniform(-3, 3, 2), rng.uniform(-3, 3, 2)
    assert sc.check_char1(f_t, h, p, q, trials=100, seed=seed).holds


@pytest.mark.parametrize("s", [0.25, 0.5, 0.75, 1.0])
def test_power_h_structure(s):
    h = hc.power_h(s)
    rep = hc.check_supermultiplicative(h)
    assert rep.holds and abs(rep.worst_violation) <= 1e-12
    assert hc.check_superadditive(h).holds == (s == 1.0)


@pytest.mark.parametrize("name", ["h:pow:0.5", "h:pow:0.25"])
def test_refinement_keeps_violations(name):
    # linspace(.., 2k - 1) contains linspace(.., k), so the old witness stays sampled
    h = hc.get_h(name)
    for n in (256, 511, 1021):
        assert not hc.check_superadditive(h, grid_n=n, seed=4).holds


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 2**31))
def test_certified_pairs_hold_at_many_samples(seed):
    for pair in hc.certified_pairs():
        if pair.certification == hc.H_CONVEX_SCALAR:
            assert hc.check_h_convex_scalar(pair.f, pair.h, samples=10_000, seed=seed).holds
