import math

import pytest

import tauberlab as tl


def test_builtin_catalog():
    names = [name for name, _ in tl.list_builtins()]
    for required in ("example1", "corollary1-exp-kernel", "mercer-roundtrip"):
        assert required in names


def test_convolve_nstar():
    # (1 * q)(6) over the divisors of 6 with q(n) = 2^-(n+1)
    ones = {n: 1.0 for n in range(1, 7)}
    q = {n: 2.0 ** -(n + 1) for n in range(1, 7)}
    unit, coeffs = tl.convolve("nstar", 6, ones, q)
    assert unit == 0
    assert coeffs[6] == pytest.approx(57 / 128, abs=1e-15)


def test_convolve_is_commutative_with_units():
    a = {0: 1 + 2j, 3: -0.5}
    b = {1: 0.25, 2: 1j}
    assert tl.convolve("zplus", 10, a, b, 2.0, -1.0) == tl.convolve("zplus", 10, b, a, -1.0, 2.0)


def test_neumann_resolve_inverts():
    q = {1: 0.3, 2: -0.2}
    r = tl.neumann_resolve("zplus", 50, q, 1e-14)
    assert r["q_norm"] == pytest.approx(0.5)
    assert r["residual"] <= 1e-12
    with pytest.raises(tl.NeumannInapplicable):
        tl.neumann_resolve("zplus", 50, {1: 1.5})


def test_example1_small_horizon():
    r = tl.example1(horizon=1000, neumann_tol=1e-12, primes_up_to=31)
    f = r["f"]
    assert f[1] == 1.375
    assert f[839] >= 11 / 8
    assert r["verdict_f"] == "no-limit"
    assert r["identity_error"] <= 1e-9


def test_mercer_roundtrip_and_domain():
    x = [1 + (-1) ** n / math.sqrt(n) for n in range(1, 2001)]
    back = tl.mercer_invert(tl.mercer_mean(x, 0.5), 0.5)
    assert max(abs(a - b) for a, b in zip(x, back)) <= 1e-12
    with pytest.raises(tl.DomainError):
        tl.mercer_invert([1.0, 2.0], 1.5)


def test_norm_series():
    assert tl.prime_norm_partial_sum(100) == pytest.approx(1.802817, abs=1e-6)
    assert tl.semigroup_norm_partial_sum(16, "free", [2.0]) == 1.9375
    value, bounded, tail = tl.euler_product([2.0, 3.0], 40)
    assert value == pytest.approx(3.0, rel=1e-15)
    assert value - bounded <= tail


def test_halfline_convolution():
    h, extent = 0.01, 5.0
    xs = [i * h for i in range(int(round(extent / h)) + 1)]
    f = [math.exp(-x) for x in xs]
    conv = tl.truncated_convolution_1d(f, f, extent, h)
    assert max(abs(c - x * math.exp(-x)) for c, x in zip(conv, xs)) <= 2 * h
    value, _ = tl.laplace_halfline_1d(f, extent, h, 1.0, math.exp(-2 * extent) / 2)
    assert value == pytest.approx(0.5, abs=1e-3)


def test_run_builtin_and_text():
    r = tl.run_builtin("norm-series-finite")
    assert r["passed"] and r["exit_code"] == 0
    assert "norm_series.csv" in r["tables"]
    assert r["summary_text"].startswith("scenario=norm-series-finite\n")

    failing = tl.run_scenario_text(tl.builtin_text("mercer-roundtrip"), horizon=1000, tol=1e-30)
    assert not failing["passed"] and failing["exit_code"] == 1

    with pytest.raises(tl.DomainError):
        tl.run_scenario_text("experiment = mercer\n[mercer]\nalpha = 1.5\nsequence = constant\n")


def test_format_number():
    assert tl.format_number(0.1) == "0.10000000000000001"
    assert tl.format_number(-0.0) == "0"
