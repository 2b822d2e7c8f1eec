import threading

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from huberkit import numerics as nm
from huberkit.numerics import DomainError, QuadratureError

# mpmath's own special functions are the independent oracle throughout
def oracle(prec=160):
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


def rel(a, b):
    return abs(a - b) / abs(b)


# -- li0 / li2 ---------------------------------------------------------------

@pytest.mark.parametrize("x", ["1.0001", "1.5", "2", "6.85", "22.96", "100", "1e4", "1e10", "1e40", "1e300"])
def test_li0_matches_oracle(x):
    o = oracle()
    assert rel(nm.li0(x), o.li(o.mpf(x))) < 2.0 ** -120


def test_li0_printed_values():
    assert nm.fixed(nm.li0("6.85"), 2) == "4.68"
    assert nm.fixed(nm.li0("22.96"), 2) == "10.87"


def test_li0_frozen_oracle_values():
    # 6-decimal values of li0 at the first two modular norms (mpmath, 100 digits)
    assert nm.fixed(nm.li0((3 + nm.context().sqrt(5)) ** 2 / 4), 6) == "4.681668"
    assert nm.fixed(nm.li0((2 + nm.context().sqrt(3)) ** 2), 6) == "7.753594"


def test_li0_crossover_is_continuous():
    ctx = nm.context()
    y = nm._ei_crossover(ctx.prec)
    for yy in (y * (1 - 1e-9), y * (1 + 1e-9)):
        o = oracle()
        assert rel(nm.ei(yy), o.ei(yy)) < 2.0 ** -120


@pytest.mark.parametrize("prec", [64, 96, 192, 256])
def test_li0_other_precisions(prec):
    o = oracle(prec + 40)
    for x in ("3", "1e5", "1e30"):
        assert rel(nm.li0(x, prec), o.li(o.mpf(x))) < 2.0 ** (8 - prec)


def test_li0_domain():
    for bad in (1, 0.5, -3, float("nan"), float("inf")):
        with pytest.raises(DomainError):
            nm.li0(bad)


def test_li2():
    assert nm.li2(2) == 0
    o = oracle()
    assert rel(nm.li2(1000), o.li(1000) - o.li(2)) < 2.0 ** -118
    assert nm.fixed(nm.li0(2), 5) == "1.04516"
    with pytest.raises(DomainError):
        nm.li2(1.9)
    assert nm.fixed(nm.li2(100), 6) == "29.080978"
    ctx = nm.context()
    assert abs(nm.li2(ctx.e ** 2) - (nm.li0(ctx.e ** 2) - nm.li0(2))) < 1e-35
    r = nm.quad(lambda y: 1 / ctx.log(y), 2, 4, abs_tol=1e-30)
    assert abs(r.value - nm.li2(4)) < 1e-30


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1.001, max_value=1e12))
def test_li0_increasing(x):
    assert nm.li0(x * 1.001) > nm.li0(x)


# -- digamma -----------------------------------------------------------------

def test_digamma_abs_at_zero_is_euler_gamma():
    assert abs(nm.digamma_abs(0) - nm.context().euler) < 2.0 ** -124


@pytest.mark.parametrize("r", [1e-6, 0.3, 1, 5, 15.9, 16.1, 80, 1000, 1e4, 1e8])
def test_digamma_abs_matches_oracle(r):
    o = oracle()
    ref = abs(o.digamma(o.mpc(1, r)))
    assert abs(nm.digamma_abs(r) - ref) <= 2.0 ** (16 - 128) * max(1, ref)


def test_digamma_abs_frozen_value():
    # |psi(1 + i)| = |0.0946503... + 1.0766740...i|, mpmath at 50 digits
    assert nm.fixed(nm.digamma_abs(1), 10) == "1.0808263911"


def test_digamma_abs_even_and_finite_only():
    assert nm.digamma_abs(-3) == nm.digamma_abs(3)
    with pytest.raises(DomainError):
        nm.digamma_abs(float("inf"))


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0, max_value=1e4))
def test_digamma_bound_samples(r):
    assert nm.digamma_abs(r) <= 4 * r ** 0.25 + 4


# -- erf -----------------------------------------------------------------------

@pytest.mark.parametrize("x", [1e-8, 0.5, 1, 2.5, 5, 9.5, 10, 30, -1.5])
def test_erf_matches_oracle(x):
    o = oracle()
    assert abs(nm.erf(x) - o.erf(x)) < 2.0 ** -125


def test_erf_values():
    assert nm.fixed(nm.erf(1), 7) == "0.8427008"
    assert 1 - nm.erf(10) < 1e-38


def test_quad_spec_integrals():
    ctx = nm.context()
    r = nm.quad(lambda x: x * ctx.exp(-x * x), 0, ctx.inf, abs_tol=1e-20)
    assert abs(r.value - ctx.mpf(1) / 2) < 1e-20
    th = ctx.pi / 2
    f = lambda x: ctx.exp(-2 * x * th) if x >= 0 else ctx.exp(2 * x * (ctx.pi - th))
    r = nm.quad(f, -ctx.inf, ctx.inf, abs_tol=1e-25)
    assert abs(r.value - 2 / ctx.pi) < 1e-25


def test_erf_odd_and_limits():
    assert nm.erf(0) == 0
    assert nm.erf(-2) == -nm.erf(2)
    assert nm.erf(100) == 1 and nm.erf(-100) == -1


# -- quadrature ---------------------------------------------------------------

def test_quad_gaussian_whole_line():
    ctx = nm.context()
    r = nm.quad(lambda x: ctx.exp(-x * x), -ctx.inf, ctx.inf, abs_tol=1e-30)
    assert abs(r.value - ctx.sqrt(ctx.pi)) < 1e-30
    assert r.error_estimate <= 1e-30
    assert r.evaluations > 0


def test_quad_semi_infinite_and_reversed():
    ctx = nm.context()
    r = nm.quad(lambda x: ctx.exp(-x), 0, ctx.inf, abs_tol=1e-30)
    assert abs(r.value - 1) < 1e-30
    r2 = nm.quad(lambda x: ctx.exp(x), ctx.inf * -1, 0, abs_tol=1e-30)
    assert abs(r2.value - 1) < 1e-30
    r3 = nm.quad(lambda x: x * x, 1, 0, abs_tol=1e-30)
    assert abs(r3.value + ctx.mpf(1) / 3) < 1e-30


def test_quad_bump_normaliser():
    ctx = nm.context()
    r = nm.quad(lambda x: ctx.exp(1 / (x * x - 1)), -1, 1, abs_tol=1e-32)
    o = oracle()
    ref = o.quad(lambda x: o.exp(1 / (x * x - 1)), [-1, 0, 1])
    assert abs(r.value - ref) < 1e-30
    assert nm.fixed(r.value, 7) == "0.4439938"


def test_quad_kink_with_breakpoint():
    ctx = nm.context()
    r = nm.quad(lambda x: abs(x - ctx.mpf(1) / 3), 0, 1, abs_tol=1e-30, points=[ctx.mpf(1) / 3])
    assert abs(r.value - ctx.mpf(5) / 18) < 1e-30


def test_quad_reports_non_convergence():
    ctx = nm.context()
    with pytest.raises(QuadratureError):
        nm.quad(lambda x: ctx.sin(1 / x) / x, ctx.mpf(10) ** -6, 1, abs_tol=1e-30, max_intervals=50)


def test_quad_closed_form_parabolic_integral():
    ctx = nm.context()
    t = ctx.mpf("0.7")
    r = nm.quad(lambda x: ctx.exp(-t * x * x) * (4 * x ** (ctx.mpf(1) / 4) + 4), 0, ctx.inf,
                abs_tol=1e-28)
    exact = 2 * ctx.gamma(ctx.mpf(5) / 8) * t ** (-ctx.mpf(5) / 8) + 2 * ctx.sqrt(ctx.pi / t)
    assert abs(r.value - exact) < 1e-26


# -- hyperbolic distance --------------------------------------------------------

def test_hyp_dist_conventions():
    ctx = nm.context()
    assert abs(nm.hyp_dist(1j, 2j) - ctx.log(2)) < 1e-35
    # the factor-free convention: cosh d = 1 + |z - w|^2/(Im z Im w)
    assert abs(nm.hyp_dist(1j, 2j, "paper") - ctx.acosh(ctx.mpf(3) / 2)) < 1e-35
    assert nm.hyp_dist(0.3 + 1j, 0.3 + 1j) == 0
    # opposite corners of the compact piece 3/2 <= Im z <= 3 of the modular domain
    z, w = -0.5 + 1.5j, 0.5 + 3j
    assert abs(nm.hyp_dist(z, w, "paper") - ctx.acosh(1 + ctx.mpf(3.25) / 4.5)) < 1e-35
    assert abs(nm.hyp_dist(z, w) - ctx.acosh(1 + ctx.mpf(3.25) / 9)) < 1e-35
    assert nm.fixed(nm.hyp_dist(z, w, "paper"), 4) == "1.1392"
    assert nm.fixed(nm.hyp_dist(z, w), 4) == "0.8261"
    with pytest.raises(DomainError):
        nm.hyp_dist(1, 1j)
    with pytest.raises(ValueError):
        nm.hyp_dist(1j, 2j, "other")


points = st.tuples(st.floats(-5, 5), st.floats(0.05, 5)).map(lambda p: complex(*p))


@settings(max_examples=80, deadline=None)
@given(points, points, points, st.sampled_from(["standard", "paper"]))
def test_hyp_dist_is_a_metric(z, w, v, conv):
    d = lambda a, b: nm.hyp_dist(a, b, conv)
    assert abs(d(z, w) - d(w, z)) < 1e-30
    assert d(z, v) <= d(z, w) + d(w, v) + 1e-25


@settings(max_examples=30, deadline=None)
@given(points, points, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_hyp_dist_invariant_under_sl2z(z, w, a, b, c):
    # build a determinant-one integer matrix (a, b; c, d) when possible
    if a == 0 or (1 + b * c) % a:
        a, b, c = 1, b, 0
    d_ = (1 + b * c) // a
    ctx = nm.context()
    f = lambda q: (a * ctx.mpc(q) + b) / (c * ctx.mpc(q) + d_)
    assert abs(nm.hyp_dist(f(z), f(w)) - nm.hyp_dist(z, w)) < 1e-20 * max(1, nm.hyp_dist(z, w))


# -- contexts and formatting -------------------------------------------------

def test_context_is_thread_local():
    seen = {}

    def work(prec):
        ctx = nm.context(prec)
        seen[prec] = (id(ctx), nm.li0(10, prec))

    threads = [threading.Thread(target=work, args=(p,)) for p in (64, 128, 256)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len({v[0] for v in seen.values()}) == 3
    assert abs(seen[256][1] - seen[128][1]) < 2.0 ** -120


def test_context_rejects_low_precision():
    with pytest.raises(ValueError):
        nm.context(53)


@pytest.mark.parametrize("value,places,expected", [
    ("2.5", 0, "2"), ("3.5", 0, "4"), ("0.125", 2, "0.12"), ("0.375", 2, "0.38"),
    ("-1.005", 1, "-1.0"), ("6.8541019662496845446", 6, "6.854102"), ("12", 3, "12.000"),
])
def test_fixed_rounds_half_even_on_exact_binary_value(value, places, expected):
    assert nm.fixed(mpmath.mpf(value), places) == expected


def test_fixed_agrees_with_printf_on_doubles():
    import random
    rng = random.Random(7)
    for _ in range(500):
        x = rng.uniform(-1000, 1000)
        p = rng.randint(0, 8)
        assert nm.fixed(x, p) == "%.*f" % (p, x)
