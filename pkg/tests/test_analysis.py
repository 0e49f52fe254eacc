"""Growth analysis: integer and real maxima, Lambert W, asymptotic
sandwiches, weight bases and the inequality behind the weight method."""

import math

import pytest
from scipy.special import lambertw as scipy_lambertw

from zerogen import reference
from zerogen.analysis import (crucial_inequality_check, lambert_w,
                              lambert_w_bounds, lambert_w_series,
                              ln_factorial_bounds, phi_asymptotic_bounds,
                              phi_floor, phi_real, psi_max, varphi_int,
                              varphi_int_argmax, weight, weight_params,
                              x_crit, xi, zeta)

from oracles import brute_weight


# ---------------------------------------------------------------------------
# integer maxima

def test_varphi_int_anchors():
    ref = {r["n"]: r["varphi"] for r in reference.table1_reference()}
    for n, expect in ref.items():
        assert varphi_int(n) == expect, n


def test_varphi_int_small_and_monotone():
    assert varphi_int(0) == 0 and varphi_int(1) == 0
    vals = [varphi_int(n) for n in range(2, 40)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_varphi_int_argmax():
    with pytest.raises(ValueError):
        varphi_int_argmax(1)
    for n in range(2, 30):
        k = varphi_int_argmax(n)
        assert 1 <= k < n
        if k > 1:
            assert (k ** (n - k) - 1) // (k - 1) == varphi_int(n)
    # the maximizing base grows with n
    assert varphi_int_argmax(30) > varphi_int_argmax(6) > varphi_int_argmax(3)


# ---------------------------------------------------------------------------
# real maxima

def test_phi_real_boundary_cases():
    for n in (2, 3):
        ev = phi_real(n)
        assert ev.boundary and ev.value == n - 1
    assert phi_real(1).value == 0.0
    with pytest.raises(ValueError):
        phi_real(0)


def test_phi_real_interior_values_match_recorded_table():
    wt = reference.weight_table_reference()
    for n, printed in zip(wt["n"], wt["phi_n_lambda"]):
        if n == 3:
            continue  # recorded n=3 column is inconsistent, see below
        ev = phi_real(n)
        assert not ev.boundary
        assert abs(ev.value - printed) <= 0.01, n


def test_phi_real_stationarity():
    for n in (4, 6, 9, 15):
        ev = phi_real(n)
        f = lambda x: (x ** (n - x) - 1) / (x - 1)
        h = 1e-6 * ev.x
        assert f(ev.x) >= f(ev.x - h) and f(ev.x) >= f(ev.x + h)
        assert abs(ev.value - f(ev.x)) <= 1e-9 * ev.value


def test_phi_floor_anchors():
    ref = {r["n"]: r["one_plus_floor_phi"] for r in reference.table1_reference()}
    for n, expect in ref.items():
        assert 1 + phi_floor(n) == expect, n
    assert phi_floor(4) == 3 and phi_floor(8) == 121


def test_phi_floor_dominates_integer_maximum():
    for n in range(2, 25):
        assert phi_floor(n) >= varphi_int(n)


def test_phi_real_overflow_reports_log():
    ev = phi_real(400)
    assert ev.value is None
    assert ev.ln_value > 700


# ---------------------------------------------------------------------------
# Lambert W

def test_lambert_w_residual_on_log_grid():
    for k in range(0, 28):
        x = 10 ** (k / 3)
        w = lambert_w(x)
        assert abs(w * math.exp(w) - x) <= 1e-12 * max(x, 1.0), x


def test_lambert_w_against_scipy():
    for k in range(-3, 30):
        x = 10 ** (k / 3)
        expect = float(scipy_lambertw(x).real)
        assert abs(lambert_w(x) - expect) <= 1e-10 * max(1.0, expect), x


def test_lambert_w_rejects_nonpositive():
    for x in (0.0, -1.0):
        with pytest.raises(ValueError):
            lambert_w(x)


def test_lambert_w_series_converges_from_above_threshold():
    assert abs(lambert_w_series(1e4) - lambert_w(1e4)) <= 1e-5 * lambert_w(1e4)
    for x in (1e6, 1e9, 1e12):
        assert abs(lambert_w_series(x) - lambert_w(x)) <= 1e-6 * lambert_w(x)
    with pytest.raises(ValueError):
        lambert_w_series(2.0)


def test_lambert_w_bounds_bracket():
    for k in range(4, 40):
        x = 10 ** (k / 4)
        lo, hi = lambert_w_bounds(x)
        w = lambert_w(x)
        assert lo < w < hi, x
    with pytest.raises(ValueError):
        lambert_w_bounds(2.0)


# ---------------------------------------------------------------------------
# the peak of x^(n-x)

def test_psi_max_identities():
    for n in (2, 5, 10, 100, 1000):
        pm = psi_max(n)
        assert 1 < pm.x < n
        # closed form agrees with direct evaluation at the maximizer
        direct = (n - pm.x) * math.log(pm.x)
        assert abs(pm.ln_value - direct) <= 1e-9 * max(1.0, abs(direct))
        # stationarity of (n - x) ln x
        d = -math.log(pm.x) + (n - pm.x) / pm.x
        assert abs(d) <= 1e-8, n
        # grid points never beat the reported maximum
        for i in range(1, 200):
            x = 1 + (n - 1) * i / 200
            assert (n - x) * math.log(x) <= pm.ln_value + 1e-9


def test_psi_max_rejects_small_n():
    with pytest.raises(ValueError):
        psi_max(1)


# ---------------------------------------------------------------------------
# asymptotic sandwiches

@pytest.mark.parametrize("n", [51, 60, 100, 200, 500])
def test_phi_asymptotic_bounds_sandwich_real_supremum(n):
    iv = phi_asymptotic_bounds(n)
    assert not iv.small_n
    target = phi_real(n + 1).ln_value
    assert iv.lower < target < iv.upper, (n, iv.lower, target, iv.upper)
    # the integer maximum keeps the upper bound but may dip under the
    # lower one (the lattice need not come near the real maximizer)
    assert math.log(varphi_int(n + 1)) <= iv.upper
    assert iv.upper - iv.lower <= math.log(math.log(n * math.e)) / n + 1e-12


def test_phi_asymptotic_bounds_flags_small_n():
    assert phi_asymptotic_bounds(20).small_n
    assert not phi_asymptotic_bounds(51).small_n


def test_maximizer_bracket():
    for n in (51, 100, 500):
        iv = phi_asymptotic_bounds(n)
        assert iv.x_lo <= iv.x_hi
        ev = phi_real(n + 1)
        assert iv.x_lo <= ev.x


def test_ln_factorial_bounds():
    for n in list(range(1, 60)) + [100, 500]:
        lo, hi = ln_factorial_bounds(n)
        true = math.lgamma(n + 1)
        assert lo < true < hi, n
    with pytest.raises(ValueError):
        ln_factorial_bounds(0)


def test_ln_factorial_bounds_large_n():
    # at n = 2000 the upper slack 1/(360 n^3) is below double resolution,
    # so check the formula exactly and the float output up to one ulp
    from mpmath import mp
    n = 2000
    with mp.workdps(60):
        base = n * mp.log(n) - n + mp.mpf("0.5") * mp.log(2 * mp.pi * n)
        true = mp.log(mp.factorial(n))
        assert base + mp.mpf(1) / (12 * n + 1) < true < base + mp.mpf(1) / (12 * n)
    lo, hi = ln_factorial_bounds(n)
    f = math.lgamma(n + 1)
    u = math.ulp(f)
    assert lo - u <= f <= hi + u


# ---------------------------------------------------------------------------
# weights

def test_weight_small_cases():
    assert weight((1, 2, 3), 2.0) == 3 + 2 * 2 + 1 * 4
    assert weight((0, 0, 5), 3.0) == 5.0
    assert weight((), 2.0) == 0
    with pytest.raises(ValueError):
        weight((1, 2), 1.0)


def test_weight_matches_brute_minimum_over_orderings():
    import random
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 6)
        f = tuple(rng.randint(0, 9) for _ in range(n))
        lam = 1.0 + rng.random() * 3
        assert abs(weight(f, lam) - brute_weight(f, lam)) <= 1e-9


def test_weight_params_match_recorded_table():
    wt = reference.weight_table_reference()
    for i, n in enumerate(wt["n"]):
        if n == 3:
            continue
        p = weight_params(n)
        assert abs(p.lam - wt["lambda"][i]) <= 0.005, n
        assert abs(p.phi_value - wt["phi_n_lambda"][i]) <= 0.01, n


def test_geometric_sum_row_is_flagged_and_recomputed():
    # the recorded geometric-sum row cannot be reproduced from the
    # recorded bases; the discrepancy entry carries honest values
    wt = reference.weight_table_reference()
    entry = next(d for d in reference.known_discrepancies()
                 if d["id"] == "weight-table-geometric-sum-row")
    assert entry["printed"] == wt["geometric_sum"][1:]
    for n, printed in zip(wt["n"][1:], entry["printed"]):
        p = weight_params(n)
        assert abs(p.geo - entry["true_values"][str(n)]) <= 5e-6, n
        assert abs(p.geo - printed) > 1.0, n


def test_weight_params_n3_has_no_interior_base():
    p = weight_params(3)
    assert p.anomaly and p.c_lam is None
    assert p.phi_value == 2.0
    ids = {d["id"] for d in reference.known_discrepancies()}
    assert "weight-table-n3-column" in ids
    with pytest.raises(ValueError):
        weight_params(2)


def test_c_lambda_values_follow_the_defining_formula():
    # the recorded c_lambda row drifts from its own formula; the honest
    # values live in the discrepancy entry
    entry = next(d for d in reference.known_discrepancies()
                 if d["id"] == "weight-table-c-lambda-row")
    for n_str, val in entry["true_values"].items():
        p = weight_params(int(n_str))
        assert abs(p.c_lam - val) <= 5e-6, n_str


@pytest.mark.parametrize("n", range(4, 13))
def test_crucial_inequality(n):
    rep = crucial_inequality_check(n)
    assert rep.ok
    # at c = c_lambda the stationary point returns the weight base and
    # the envelope value returns the real maximum
    assert abs(rep.x_at_c - rep.lam) <= 1e-9 * rep.lam
    assert abs(rep.zeta_at_c - rep.phi_value) <= 1e-9 * rep.phi_value
    assert set(rep.margins) == set(range(2, n))
    assert all(v >= -1e-9 for v in rep.margins.values())


def test_crucial_inequality_rejects_n3():
    with pytest.raises(ValueError):
        crucial_inequality_check(3)


def test_xi_zeta_consistency():
    p = weight_params(6)
    c = 0.7 * p.c_lam
    xc = x_crit(c, 6, p.lam)
    # the stationary point is a local minimum of xi in x
    for h in (1e-4, 1e-3):
        assert xi(xc, c, 6, p.lam) <= xi(xc + h, c, 6, p.lam) + 1e-12
        assert xi(xc, c, 6, p.lam) <= xi(xc - h, c, 6, p.lam) + 1e-12
    assert abs(zeta(c, 6, p.lam) - xi(xc, c, 6, p.lam)) == 0.0
