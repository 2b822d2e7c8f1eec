"""Numerical checks of the inequalities behind the explicit constants.

Every check evaluates ``bound - quantity`` on a grid and reports the worst
margin.  This is sampling, not a proof: a passing report means no violation
was found on the grid at the stated tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..numerics import QuadratureError, context, digamma, erf, li0, quad

REL_TOL = 1e-9


@dataclass
class Check:
    name: str
    worst_margin: float
    worst_relative: float
    at: object = None

    @property
    def passed(self) -> bool:
        return self.worst_relative >= -REL_TOL


@dataclass
class LemmaReport:
    lemma_id: str
    claim: str
    grid: str
    worst_margin: float | None
    passed: bool | None
    worst_at: object = None
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    stage: str | None = None

    def summary(self) -> str:
        status = {True: "PASS", False: "FAIL", None: "REPORT"}[self.passed]
        margin = "n/a" if self.worst_margin is None else f"{float(self.worst_margin):.6g}"
        return f"[{status}] {self.lemma_id}: worst margin {margin}"


class _Tracker:
    """Running minimum of bound - quantity, absolute and relative."""

    def __init__(self, name):
        self.name = name
        self.abs = None
        self.rel = None
        self.at = None

    def add(self, bound, quantity, at=None):
        margin = bound - quantity
        scale = max(abs(bound), abs(quantity), 1e-300)
        rel = float(margin / scale)
        if self.abs is None or margin < self.abs:
            self.abs = margin
            self.at = at
        if self.rel is None or rel < self.rel:
            self.rel = rel

    def identity(self, value, exact, at=None):
        # an equality is checked as 0 <= tol - |diff|, reported as -|diff|
        diff = abs(value - exact)
        self.add(exact, exact + diff, at)

    def result(self) -> Check:
        return Check(self.name, float(self.abs), float(self.rel), self.at)


def _report(lemma_id, claim, grid, primary: Check, aux=(), notes=()):
    checks = [primary, *aux]
    return LemmaReport(lemma_id, claim, grid, primary.worst_margin,
                       all(c.passed for c in checks), primary.at, checks, list(notes))


def t_grid(n: int = 512, lo: float = 1e-4, hi: float = 5.0):
    return [float(v) for v in np.geomspace(lo, hi, n)]


def r_grid(n: int = 1024, lo: float = 1e-4, hi: float = 1e4):
    return [0.0] + [float(v) for v in np.geomspace(lo, hi, n - 1)]


# ---------------------------------------------------------------------------
# Karamata-type Tauberian step

def karamata_check(alpha, C, d_param, n_grid: int = 512, s_lo_ratio: float = 1e-6) -> LemmaReport:
    """If sum_i a_i e^{-s t_i} <= C/s on (0, d] then alpha(t) <= 3 C t for t >= 1/d.

    ``alpha`` is a non-decreasing step function given as sorted
    (t_i, jump_i) pairs with alpha(0) = 0.  The hypothesis is sampled on a
    log grid of s in [s_lo_ratio * d, d]; the conclusion is checked at
    t = 1/d and at every jump point t_i >= 1/d.
    """
    pts = [(float(t), float(j)) for t, j in alpha]
    if any(j < 0 for _, j in pts) or any(t < 0 for t, _ in pts):
        raise ValueError("jumps and jump points must be non-negative")
    if any(b[0] < a[0] for a, b in zip(pts, pts[1:])):
        raise ValueError("jump points must be sorted")
    if any(t == 0 and j > 0 for t, j in pts):
        raise ValueError("alpha(0) must be 0")
    C = float(C)
    d = float(d_param)
    if C <= 0 or d <= 0:
        raise ValueError("C and d must be positive")
    ts = np.array([t for t, _ in pts])
    js = np.array([j for _, j in pts])

    s = np.geomspace(s_lo_ratio * d, d, n_grid)
    f = (js[None, :] * np.exp(-np.outer(s, ts))).sum(axis=1) if len(pts) else np.zeros_like(s)
    hyp = _Tracker("hypothesis: sum a_i exp(-s t_i) <= C/s")
    i = int(np.argmin((C / s - f) / np.maximum(C / s, f)))
    hyp.add(C / s[i], f[i], float(s[i]))

    concl = _Tracker("conclusion: alpha(t) <= 3 C t")
    cum = np.cumsum(js) if len(pts) else np.array([])
    checkpoints = [1 / d] + [t for t in ts if t >= 1 / d]
    for t in checkpoints:
        a = float(cum[np.searchsorted(ts, t, side="right") - 1]) if len(pts) and t >= ts[0] else 0.0
        concl.add(3 * C * t, a, t)

    h, c = hyp.result(), concl.result()
    report = LemmaReport(
        "karamata",
        "sum a_i e^{-s t_i} <= C/s on (0, d]  implies  alpha(t) <= 3Ct for t >= 1/d",
        f"s: {n_grid} log-spaced points in [{s_lo_ratio:g} d, d]; t: 1/d and {len(checkpoints) - 1} jump points",
        c.worst_margin, h.passed and c.passed, c.at, [h, c])
    failed = [name for name, chk in (("hypothesis", h), ("conclusion", c)) if not chk.passed]
    report.stage = failed[0] if failed else None
    if failed:
        report.notes.append("failed: " + ", ".join(failed))
    return report


# ---------------------------------------------------------------------------
# the bump function phi(x) = sqrt(2 pi)/c0 exp(1/(x^2 - 1)) on (-1, 1)

def bump_c0(prec=None):
    ctx = context(prec)
    return quad(lambda x: ctx.exp(1 / (x * x - 1)), -1, 1, abs_tol=ctx.ldexp(1, -ctx.prec + 8),
                prec=ctx.prec).value


def phi_second_derivative(x, c0):
    """phi''(x) = phi(x) * 2 (3x^4 - 1) / (x^2 - 1)^4, vectorised over numpy arrays."""
    x = np.asarray(x, dtype=float)
    q = x * x - 1
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        val = np.sqrt(2 * np.pi) / c0 * np.exp(1 / q) * 2 * (3 * x**4 - 1) / q**4
    return np.where(np.abs(x) < 1, val, 0.0)


def _golden_max(f, a, b, iters=200):
    g = (np.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
        if b - a < 1e-15:
            break
    x = (a + b) / 2
    return x, f(x)


class BumpTransform:
    """phi-hat(z) = (1/c0) int_{-1}^{1} exp(1/(y^2 - 1)) e^{-i z y} dy.

    Gauss-Legendre in double precision; the integrand is smooth with all
    derivatives vanishing at +-1, so a few hundred nodes reach ~1e-15.
    """

    def __init__(self, c0, nodes: int = 800):
        self.c0 = float(c0)
        y, w = np.polynomial.legendre.leggauss(nodes)
        self.y = y
        self.w = w * np.exp(1 / (y * y - 1))

    def __call__(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return (np.exp(-1j * np.outer(z, self.y)) @ self.w) / self.c0


def bump_constants(prec=None, pp_grid: int = 4001, eps_grid: int = 25, sigma_grid: int = 31,
                   r_points: int = 1024, r_max: float = 200.0):
    """(c0, max |phi''|, C1 check report, C2 check report) for the bump function."""
    ctx = context(prec)
    c0 = bump_c0(ctx.prec)
    c0f = float(c0)

    xs = np.linspace(-1, 1, pp_grid)[1:-1]
    vals = np.abs(phi_second_derivative(xs, c0f))
    k = int(np.argmax(vals))
    lo, hi = xs[max(k - 1, 0)], xs[min(k + 1, len(xs) - 1)]
    _, pp_max = _golden_max(lambda x: float(np.abs(phi_second_derivative(x, c0f))), lo, hi)
    pp_max = max(pp_max, float(vals[k]))

    ft = BumpTransform(c0f)
    c1 = float(2 * ctx.e - 2)
    tr = _Tracker("|phi-hat(i eps sigma) - 1| <= (2e - 2) eps")
    eps = np.geomspace(1e-3, 1, eps_grid)
    sig = np.linspace(-0.5, 1, sigma_grid)
    for e in eps:
        v = np.abs(ft(1j * e * sig) - 1)
        j = int(np.argmax(v))
        tr.add(c1 * e, float(v[j]), (float(e), float(sig[j])))
    c1_report = _report(
        "bump-C1", "|phi-hat(i eps sigma) - 1| <= (2e - 2) eps",
        f"eps: {eps_grid} log-spaced in [1e-3, 1]; sigma: {sigma_grid} points in [-1/2, 1]",
        tr.result())

    C2 = 848 / np.sqrt(2 * np.pi) * np.exp(0.5)
    tr2 = _Tracker("|phi-hat(r + it)| <= C2 (1 + |r|)^-2, t = +-1/2")
    r = np.linspace(0, r_max, r_points)
    for t in (0.5, -0.5):
        v = np.abs(ft(r + 1j * t))
        bound = C2 * (1 + r) ** -2
        j = int(np.argmin((bound - v) / bound))
        tr2.add(float(bound[j]), float(v[j]), (float(r[j]), t))
    c2_report = _report(
        "bump-C2", "|phi-hat(r + it)| <= (848/sqrt(2 pi)) e^(1/2) (1 + |r|)^-2",
        f"r: {r_points} points in [0, {r_max:g}]; t in {{-1/2, 1/2}}", tr2.result(),
        notes=[f"C2 = {C2:.10g}"])
    return c0, pp_max, c1_report, c2_report


# ---------------------------------------------------------------------------
# the individual inequalities

def _guard(fn):
    def wrapper(*args, **kw):
        try:
            return fn(*args, **kw)
        except QuadratureError as exc:
            rid = fn.__name__.replace("check_", "")
            return LemmaReport(rid, "", "", None, False, notes=[f"quadrature failed: {exc}"])
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def parabolic_integral_closed_form(t, prec=None):
    """int_R e^{-t r^2} (4 |r|^{1/4} + 4) dr = 4 Gamma(5/8) t^{-5/8} + 4 sqrt(pi/t)."""
    ctx = context(prec)
    t = ctx.convert(t)
    return 4 * ctx.gamma(ctx.mpf(5) / 8) * t ** (-ctx.mpf(5) / 8) + 4 * ctx.sqrt(ctx.pi / t)


@_guard
def check_parabolic(ts, prec=64, tol=1e-14) -> LemmaReport:
    """(i) int e^{-tr^2}(4|r|^{1/4} + 4) dr <= 27/t and log 2/sqrt(4 pi t) <= 1/(2t)."""
    ctx = context(prec)
    main = _Tracker("int_R e^{-t r^2}(4|r|^{1/4}+4) dr <= 27/t")
    side = _Tracker("log 2 / sqrt(4 pi t) <= (1/2)/t")
    dual = _Tracker("quadrature agrees with 4 Gamma(5/8) t^(-5/8) + 4 sqrt(pi/t)")
    quarter = ctx.mpf(1) / 4
    for t in ts:
        tt = ctx.mpf(t)

        def g(r):
            return ctx.exp(-tt * r * r) * (4 * r ** quarter + 4)

        # even integrand: twice the half line; rescale so the bulk sits near 1
        scale = 1 / ctx.sqrt(tt)
        val = 2 * scale * quad(lambda u: g(u * scale), 0, ctx.inf, rel_tol=tol, prec=prec).value
        main.add(27 / tt, val, t)
        dual.identity(val, parabolic_integral_closed_form(tt, prec), t)
        side.add(1 / (2 * tt), ctx.log(2) / ctx.sqrt(4 * ctx.pi * tt), t)
    return _report("(i) parabolic term", "int_R e^{-tr^2}(4|r|^(1/4) + 4) dr <= 27/t on (0, 5]",
                   f"t: {len(ts)} log-spaced points in [{ts[0]:g}, {ts[-1]:g}]",
                   main.result(), [side.result(), dual.result()])


@_guard
def check_digamma(rs, prec=64) -> LemmaReport:
    """(ii) |psi(1 + ir)| <= 4|r|^{1/4} + 4, and |psi(1+ir) - log(1+ir)| <= Euler's gamma."""
    ctx = context(prec)
    main = _Tracker("|psi(1+ir)| <= 4|r|^(1/4) + 4")
    aux = _Tracker("|psi(1+ir) - log(1+ir)| <= 0.5772...")
    for r in rs:
        rr = ctx.mpf(r)
        z = ctx.mpc(1, rr)
        p = digamma(z, prec)
        main.add(4 * rr ** (ctx.mpf(1) / 4) + 4, abs(p), r)
        aux.add(ctx.euler, abs(p - ctx.log(z)), r)
    return _report("(ii) digamma bound", "|psi(1 + ir)| <= 4|r|^(1/4) + 4 for real r",
                   f"r: 0 and {len(rs) - 1} log-spaced points in [{rs[1]:g}, {rs[-1]:g}]",
                   main.result(), [aux.result()],
                   notes=["the intermediate bound uses Euler's constant 0.5772... (positive)"])


def elliptic_majorant(theta, prec=None):
    """int_R f_theta = 1/(2 theta) + 1/(2 (pi - theta))."""
    ctx = context(prec)
    theta = ctx.convert(theta)
    return 1 / (2 * theta) + 1 / (2 * (ctx.pi - theta))


@_guard
def check_elliptic(thetas=None, ts=None, prec=64, tol=1e-14) -> LemmaReport:
    """(iii) the majorant f_theta integrates to 1/(2 theta) + 1/(2(pi - theta))."""
    ctx = context(prec)
    if thetas is None:
        thetas = [ctx.pi * k / 6 for k in range(1, 6)]
    ts = ts if ts is not None else t_grid(16)
    ident = _Tracker("int_R f_theta = 1/(2 theta) + 1/(2(pi - theta))")
    dom = _Tracker("e^{-2r theta}/(1 + e^{-2 pi r}) e^{-t r^2} <= f_theta(r)")
    integ = _Tracker("int_R e^{-2r theta}/(1+e^{-2 pi r}) e^{-t r^2} dr <= int_R f_theta")
    for th in thetas:
        th = ctx.convert(th)
        right = quad(lambda r: ctx.exp(-2 * r * th), 0, ctx.inf, rel_tol=tol, prec=prec).value
        left = quad(lambda r: ctx.exp(2 * r * (ctx.pi - th)), -ctx.inf, 0, rel_tol=tol, prec=prec).value
        exact = elliptic_majorant(th, prec)
        ident.identity(right + left, exact, float(th))
        for r in np.concatenate([-np.geomspace(1e-3, 50, 60), [0.0], np.geomspace(1e-3, 50, 60)]):
            rr = ctx.mpf(float(r))
            maj = ctx.exp(-2 * rr * th) if rr >= 0 else ctx.exp(2 * rr * (ctx.pi - th))
            for t in (ts[0], ts[-1]):
                v = ctx.exp(-2 * rr * th) / (1 + ctx.exp(-2 * ctx.pi * rr)) * ctx.exp(-t * rr * rr)
                dom.add(maj, v, (float(th), float(r), t))
        for t in ts:
            tt = ctx.mpf(t)
            val = quad(lambda r: ctx.exp(-2 * r * th) / (1 + ctx.exp(-2 * ctx.pi * r)) * ctx.exp(-tt * r * r),
                       -ctx.inf, ctx.inf, rel_tol=tol, prec=prec).value
            integ.add(exact, val, (float(th), t))
    return _report("(iii) elliptic term",
                   "int_R f_theta(r) dr = 1/(2 theta) + 1/(2(pi - theta)) and the weighted "
                   "integral is bounded by it",
                   f"theta in {{pi/6, ..., 5pi/6}}; t: {len(ts)} log-spaced points",
                   ident.result(), [dom.result(), integ.result()])


@_guard
def check_identity_term(ts, prec=64, tol=1e-14) -> LemmaReport:
    """(iv) 2 int_0^inf r e^{-r^2 t} tanh(pi r) dr <= 1/t, with 2 int_0^inf r e^{-r^2 t} dr = 1/t."""
    ctx = context(prec)
    main = _Tracker("2 int_0^inf r e^{-r^2 t} tanh(pi r) dr <= 1/t")
    inner = _Tracker("2 int_0^inf r e^{-r^2 t} dr = 1/t")
    for k, t in enumerate(ts):
        tt = ctx.mpf(t)
        scale = 1 / ctx.sqrt(tt)
        val = 2 * scale * quad(lambda u: u * scale * ctx.exp(-u * u) * ctx.tanh(ctx.pi * u * scale),
                               0, ctx.inf, rel_tol=tol, prec=prec).value
        main.add(1 / tt, val, t)
        if k % 32 == 0 or k == len(ts) - 1:
            ex = 2 * scale * quad(lambda u: u * scale * ctx.exp(-u * u), 0, ctx.inf,
                                  rel_tol=tol, prec=prec).value
            inner.identity(ex, 1 / tt, t)
    return _report("(iv) identity term", "2 int_0^inf r e^{-r^2 t} tanh(pi r) dr <= 1/t",
                   f"t: {len(ts)} log-spaced points in [{ts[0]:g}, {ts[-1]:g}]",
                   main.result(), [inner.result()])


def hyperbolic_closed_form(t, prec=None):
    """(1/2t)(4 pi t)^{-1/2} int_1^inf log x e^{-(log x)^2/4t} dx, in closed form."""
    ctx = context(prec)
    t = ctx.convert(t)
    return ctx.exp(t) * (1 + erf(ctx.sqrt(t), ctx.prec)) / 2 + 1 / ctx.sqrt(4 * ctx.pi * t)


@_guard
def check_hyperbolic(ts, prec=64, tol=1e-14, identity_points: int = 12) -> LemmaReport:
    """(v) e^t + 1/sqrt(4 pi t) <= 745/t on (0, 5], and the steps leading to it."""
    ctx = context(prec)
    main = _Tracker("e^t + 1/sqrt(4 pi t) <= 745/t")
    step = _Tracker("(1/2)e^t erf(sqrt t) + (1/2)e^t + 1/sqrt(4 pi t) <= e^t + 1/sqrt(4 pi t)")
    ident = _Tracker("(1/2t)(4 pi t)^(-1/2) int_1^inf log x e^{-(log x)^2/4t} dx = closed form")
    ratio = _Tracker("log x / (x^(1/2) - x^(-1/2)) <= 1 for x > 1")
    for t in ts:
        tt = ctx.mpf(t)
        rhs = ctx.exp(tt) + 1 / ctx.sqrt(4 * ctx.pi * tt)
        main.add(745 / tt, rhs, t)
        step.add(rhs, hyperbolic_closed_form(tt, prec), t)
    pick = np.unique(np.linspace(0, len(ts) - 1, identity_points).astype(int))
    for k in pick:
        tt = ctx.mpf(ts[k])
        # x = e^v turns the x-integral into int_0^inf v e^{v - v^2/4t} dv
        total = quad(lambda v: v * ctx.exp(v - v * v / (4 * tt)), 0, ctx.inf,
                     rel_tol=tol, prec=prec).value
        lhs = total / (2 * tt) / ctx.sqrt(4 * ctx.pi * tt)
        ident.identity(lhs, hyperbolic_closed_form(tt, prec), ts[k])
    for x in np.geomspace(1 + 1e-6, 1e8, 400):
        xx = ctx.mpf(float(x))
        ratio.add(ctx.one, ctx.log(xx) / (ctx.sqrt(xx) - 1 / ctx.sqrt(xx)), float(x))
    return _report("(v) hyperbolic term", "e^t + 1/sqrt(4 pi t) <= 745/t on (0, 5]",
                   f"t: {len(ts)} log-spaced points in [{ts[0]:g}, {ts[-1]:g}]",
                   main.result(), [step.result(), ident.result(), ratio.result()])


def c21(c, prec=None):
    ctx = context(prec)
    c = ctx.convert(c)
    return abs(c - 2) / ctx.log(2) + abs(2 - ctx.sqrt(c)) * 2 / ctx.log(c)


@_guard
def check_intlog(cs=(1.5, 3.0, 6.85), s_points=11, x_points=8, x_max=1e4, prec=64, tol=1e-14) -> LemmaReport:
    """(vi) |int_c^x y^{s-1}/log y dy - li(x^s)| <= C21(c), li from 2."""
    ctx = context(prec)
    main = _Tracker("|int_c^x y^(s-1)/log y dy - li(x^s)| <= C21")
    const = _Tracker("the difference equals |int_{c^s}^2 dw/log w|")
    li0_2 = li0(2, prec)
    for c in cs:
        cc = ctx.mpf(c)
        bound = c21(cc, prec)
        for s in np.linspace(0.5, 1, s_points):
            ss = ctx.mpf(float(s))
            tail = li0(cc ** ss, prec) - li0_2
            for x in np.geomspace(c * 1.01, x_max, x_points):
                xx = ctx.mpf(float(x))
                # y = e^v: int_{log c}^{log x} e^{s v}/v dv
                val = quad(lambda v: ctx.exp(ss * v) / v, ctx.log(cc), ctx.log(xx),
                           rel_tol=tol, prec=prec).value
                li = li0(xx ** ss, prec) - li0_2
                diff = abs(val - li)
                main.add(bound, diff, (c, float(s), float(x)))
                const.identity(diff, abs(tail), (c, float(s), float(x)))
    return _report("(vi) integral vs li", "|int_c^x y^(s-1)/log y dy - li(x^s)| <= C21 for s in [1/2, 1]",
                   f"c in {list(cs)}; s: {s_points} points in [1/2, 1]; x: {x_points} log-spaced in [1.01c, {x_max:g}]",
                   main.result(), [const.result()],
                   notes=["li(y) = li0(y) - li0(2), the logarithmic integral from 2"])


def check_li_constant(n=512, x_max=1e6, prec=64) -> LemmaReport:
    """(vii) report only: the smallest K with li(x) <= K x/log x on [2, x_max]."""
    ctx = context(prec)
    c22 = 1 / (1 - 1 / ctx.log(2))
    kmax0, at0 = None, None
    kmax2, at2 = None, None
    li0_2 = li0(2, prec)
    for x in np.geomspace(2, x_max, n):
        xx = ctx.mpf(float(x))
        l0 = li0(xx, prec)
        k0 = l0 * ctx.log(xx) / xx
        k2 = (l0 - li0_2) * ctx.log(xx) / xx
        if kmax0 is None or k0 > kmax0:
            kmax0, at0 = k0, float(x)
        if kmax2 is None or k2 > kmax2:
            kmax2, at2 = k2, float(x)
    rep = LemmaReport(
        "(vii) li(x) <= C22 x/log x",
        "li(x) <= C22 x / log x with C22 = 1/(1 - 1/log 2)",
        f"x: {n} log-spaced points in [2, {x_max:g}]",
        None, None, at0)
    rep.notes += [
        f"C22 = {float(c22):.10f} < 0, so the inequality cannot hold for any x > 2; not certified",
        f"max of li0(x) log x / x on the grid: {float(kmax0):.10f} at x = {at0:.6g}",
        f"max of li(x) log x / x (li from 2) on the grid: {float(kmax2):.10f} at x = {at2:.6g}",
    ]
    rep.checks.append(Check("empirical constant, li0", float(kmax0), float(kmax0), at0))
    rep.checks.append(Check("empirical constant, li from 2", float(kmax2), float(kmax2), at2))
    return rep


def lemma_suite(n_t: int = 512, n_r: int = 1024, prec: int = 64) -> list[LemmaReport]:
    """Reports (i)-(vii).  Grids follow the documented defaults and can be
    shrunk for quick runs."""
    ts = t_grid(n_t)
    rs = r_grid(n_r)
    return [
        check_parabolic(ts, prec),
        check_digamma(rs, prec),
        check_elliptic(prec=prec),
        check_identity_term(ts, prec),
        check_hyperbolic(ts, prec),
        check_intlog(prec=prec),
        check_li_constant(prec=prec),
    ]


def certification_report(reports, bump=None) -> str:
    """Plain-text summary of a lemma run, one block per report."""
    lines = []
    if bump is not None:
        c0, pp, c1r, c2r = bump
        lines.append(f"bump: c0 = {float(c0):.12f}, max |phi''| = {pp:.6f} (claimed <= 106)")
        reports = [*reports, c1r, c2r]
    for r in reports:
        lines.append(r.summary())
        if r.claim:
            lines.append(f"    claim: {r.claim}")
        if r.grid:
            lines.append(f"    grid:  {r.grid}")
        if r.worst_at is not None:
            lines.append(f"    worst at: {r.worst_at}")
        for c in r.checks:
            lines.append(f"    - {c.name}: margin {c.worst_margin:.6g} "
                         f"(relative {c.worst_relative:.3g}){'' if c.passed else '  VIOLATED'}")
        for n in r.notes:
            lines.append(f"    note: {n}")
    return "\n".join(lines) + "\n"
