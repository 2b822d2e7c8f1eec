"""Extended-precision numerics shared by the rest of the package.

All routines work in an mpmath context bound to the calling thread, so two
threads asking for different precisions never step on each other (the global
``mpmath.mp`` context is not used anywhere in the package).

Functions return ``mpf``/``mpc`` values of that context.  Inputs may be ints,
floats, strings or mpmath numbers of any context.
"""

from __future__ import annotations

import heapq
import math
import os
import threading
from dataclasses import dataclass
from typing import Callable

import mpmath

DEFAULT_PREC = int(os.environ.get("HUBERKIT_PRECISION", "128"))
MIN_PREC = 64

_local = threading.local()


class DomainError(ValueError):
    """Argument outside the domain of a mathematical operation."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach its tolerance."""


def context(prec: int | None = None) -> mpmath.ctx_mp.MPContext:
    """Return this thread's mpmath context at ``prec`` bits (default 128)."""
    prec = DEFAULT_PREC if prec is None else int(prec)
    if prec < MIN_PREC:
        raise ValueError(f"precision must be at least {MIN_PREC} bits, got {prec}")
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(prec)
    if ctx is None:
        ctx = mpmath.MPContext()
        ctx.prec = prec
        cache[prec] = ctx
    return ctx


def _real(ctx, x, name="x"):
    v = ctx.convert(x)
    if isinstance(v, ctx.mpc):
        if v.imag != 0:
            raise DomainError(f"{name} must be real, got {x!r}")
        v = v.real
    if not ctx.isfinite(v):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return v


def fixed(x, places: int) -> str:
    """Format a binary float exactly rounded (half-even) to ``places`` decimals.

    Same result as C's ``%.{places}f`` on the exact binary value, without the
    detour through a double.
    """
    v = mpmath.mpmathify(x)
    if not mpmath.isfinite(v):
        raise ValueError(f"cannot format {x!r}")
    man, exp = v.man, v.exp
    if man == 0:
        q = 0
    else:
        num = abs(man) * 10**places
        if exp >= 0:
            q = num << exp
        else:
            den = 1 << -exp
            q, r = divmod(num, den)
            if 2 * r > den or (2 * r == den and q & 1):
                q += 1
    digits = str(q).rjust(places + 1, "0")
    sign = "-" if v < 0 else ""
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


# --------------------------------------------------------------------------
# exponential and logarithmic integrals

def _ei_series(ctx, y):
    # Ei(y) = gamma + ln y + sum y^k / (k k!); every term is positive for y > 0
    tol = ctx.ldexp(1, -ctx.prec - 8)
    term = ctx.one
    total = ctx.zero
    k = 0
    while True:
        k += 1
        term = term * y / k
        contrib = term / k
        total += contrib
        if contrib < tol * total:
            break
    return ctx.euler + ctx.log(y) + total


def _ei_asymptotic(ctx, y):
    # e^y / y * sum k! / y^k, truncated before the terms start growing
    tol = ctx.ldexp(1, -ctx.prec - 8)
    term = ctx.one
    total = ctx.one
    k = 0
    while True:
        k += 1
        nxt = term * k / y
        if nxt >= term:
            raise QuadratureError("asymptotic Ei series used below its range")
        term = nxt
        total += term
        if term < tol:
            break
    return ctx.exp(y) / y * total


def _ei_crossover(prec: int) -> float:
    # the optimal truncation of the asymptotic series leaves ~ sqrt(2 pi y) e^-y
    return max(40.0, (prec + 20) * math.log(2) + 5)


def ei(y, prec: int | None = None):
    """Exponential integral Ei(y) for real y > 0 (principal value)."""
    ctx = context(prec)
    with ctx.extraprec(24):
        y = _real(ctx, y, "y")
        if y <= 0:
            raise DomainError(f"ei is implemented for y > 0 only, got {y}")
        if y > _ei_crossover(ctx.prec):
            val = _ei_asymptotic(ctx, y)
        else:
            val = _ei_series(ctx, y)
    return +val


def li0(x, prec: int | None = None):
    """Offset-free logarithmic integral, PV of int_0^x dt/log t, for x > 1.

    Equals Ei(log x); this is what PARI's ``-eint1(log(1/x))`` returns.
    """
    ctx = context(prec)
    with ctx.extraprec(24):
        x = _real(ctx, x)
        if x <= 1:
            raise DomainError(f"li0 requires x > 1, got {x}")
        val = ei(ctx.log(x), ctx.prec)
    return +val


def li2(x, prec: int | None = None):
    """Logarithmic integral from 2: int_2^x dy/log y, for x >= 2."""
    ctx = context(prec)
    x = _real(ctx, x)
    if x < 2:
        raise DomainError(f"li2 requires x >= 2, got {x}")
    if x == 2:
        return ctx.zero
    with ctx.extraprec(24):
        val = li0(x, ctx.prec) - li0(2, ctx.prec)
    return +val


# --------------------------------------------------------------------------
# digamma

_N_BERNOULLI = 10


def _digamma_shift_radius(prec: int) -> float:
    # the first omitted Stirling term is |B_22| / (22 z^22)
    b22 = 854513 / 138
    need = (b22 / 22 * 2.0 ** (prec + 4)) ** (1 / 22)
    return max(16.0, need)


def digamma(z, prec: int | None = None):
    """psi(z) = Gamma'/Gamma(z) for complex z with Re z > 0."""
    ctx = context(prec)
    with ctx.extraprec(20):
        z = ctx.mpc(z)
        if not (ctx.isfinite(z.real) and ctx.isfinite(z.imag)):
            raise DomainError(f"digamma needs a finite argument, got {z}")
        if z.real <= 0:
            raise DomainError("digamma is only implemented for Re z > 0")
        radius = _digamma_shift_radius(ctx.prec)
        acc = ctx.zero
        while abs(z) < radius:
            acc -= 1 / z
            z += 1
        w = 1 / (z * z)
        series = ctx.zero
        power = w
        for k in range(1, _N_BERNOULLI + 1):
            series += ctx.bernoulli(2 * k) / (2 * k) * power
            power *= w
        val = acc + ctx.log(z) - 1 / (2 * z) - series
    return +val


def digamma_abs(r, prec: int | None = None):
    """|psi(1 + i r)| for real r (the function is even in r)."""
    ctx = context(prec)
    r = _real(ctx, r, "r")
    with ctx.extraprec(10):
        val = abs(digamma(ctx.mpc(1, r), ctx.prec))
    return +val


# --------------------------------------------------------------------------
# error function

def erf(x, prec: int | None = None):
    """Error function of a real argument."""
    ctx = context(prec)
    x = _real(ctx, x)
    if x == 0:
        return ctx.zero
    sign = -1 if x < 0 else 1
    ax = abs(x)
    # erfc(x) < exp(-x^2) / (x sqrt(pi)); below 2^-(prec+10) the answer is +-1
    if ax * ax > (ctx.prec + 10) * math.log(2) + 1:
        return ctx.mpf(sign)
    with ctx.extraprec(24):
        x2 = ax * ax
        tol = ctx.ldexp(1, -ctx.prec - 8)
        term = ax
        total = ax
        n = 0
        while True:
            n += 1
            term = term * 2 * x2 / (2 * n + 1)
            total += term
            if term < tol * total:
                break
        val = 2 / ctx.sqrt(ctx.pi) * ctx.exp(-x2) * total
    return sign * val


# --------------------------------------------------------------------------
# adaptive quadrature

@dataclass(frozen=True)
class QuadratureResult:
    value: object
    error_estimate: object
    evaluations: int


_GL_NODES = 15
_gl_cache: dict[tuple[int, int], tuple[list, list]] = {}
_gl_lock = threading.Lock()


def _legendre_nodes(n: int, prec: int):
    key = (n, prec)
    cached = _gl_cache.get(key)
    if cached is not None:
        return cached
    ctx = context(prec)
    nodes, weights = [], []
    with ctx.extraprec(30):
        for i in range(1, n + 1):
            x = ctx.cos(ctx.pi * (i - ctx.mpf(1) / 4) / (n + ctx.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = ctx.one, x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < ctx.ldexp(1, -ctx.prec + 4):
                    break
            p0, p1 = ctx.one, x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            nodes.append(+x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    out = ([ctx.mpf(v) for v in nodes], [ctx.mpf(v) for v in weights])
    with _gl_lock:
        _gl_cache[key] = out
    return out


def quad(
    f: Callable,
    a,
    b,
    abs_tol=None,
    rel_tol=None,
    prec: int | None = None,
    points=(),
    max_intervals: int = 5000,
) -> QuadratureResult:
    """Integrate ``f`` over [a, b], where either end may be infinite.

    Globally adaptive 15-point Gauss-Legendre panels.  A panel's error is
    estimated by comparing its value with the sum over its two halves; the
    worst panel is bisected until the summed estimate is at most
    ``max(abs_tol, rel_tol * |value|)``.  Infinite ends are mapped to [0, 1)
    with ``x = a + u / (1 - u)`` (resp. ``b - u / (1 - u)``); a doubly infinite
    range is split at 0.  Interior ``points`` (kinks, singular derivatives)
    become panel boundaries.

    ``f`` receives numbers of the working context ``context(prec)`` and should
    compute with that context's functions.  Raises :class:`QuadratureError`
    when ``max_intervals`` panels do not suffice.
    """
    ctx = context(prec)
    if abs_tol is None and rel_tol is None:
        rel_tol = ctx.ldexp(1, -ctx.prec // 2)
    abs_tol = ctx.zero if abs_tol is None else ctx.mpf(abs_tol)
    rel_tol = ctx.zero if rel_tol is None else ctx.mpf(rel_tol)
    if abs_tol <= 0 and rel_tol <= 0:
        raise ValueError("need a positive tolerance")

    a = ctx.convert(a)
    b = ctx.convert(b)
    if a == b:
        return QuadratureResult(ctx.zero, ctx.zero, 0)
    if a > b:
        res = quad(f, b, a, abs_tol, rel_tol, ctx.prec, points, max_intervals)
        return QuadratureResult(-res.value, res.error_estimate, res.evaluations)

    # pieces: (g, lo, hi) with finite lo < hi
    pieces = []
    if ctx.isinf(a) and ctx.isinf(b):
        split = ctx.zero
        pieces += _semi_infinite(ctx, f, split, -1)
        pieces += _semi_infinite(ctx, f, split, +1)
    elif ctx.isinf(b):
        pieces += _semi_infinite(ctx, f, a, +1)
    elif ctx.isinf(a):
        pieces += _semi_infinite(ctx, f, b, -1)
    else:
        cuts = sorted({a, b} | {ctx.convert(p) for p in points if a < p < b})
        for lo, hi in zip(cuts, cuts[1:]):
            step = (hi - lo) / 4
            for j in range(4):
                pieces.append((f, lo + j * step, lo + (j + 1) * step))

    nodes, weights = _legendre_nodes(_GL_NODES, ctx.prec)
    evals = 0

    def rule(g, lo, hi):
        nonlocal evals
        half = (hi - lo) / 2
        mid = (hi + lo) / 2
        s = ctx.zero
        for x, w in zip(nodes, weights):
            s += w * g(mid + half * x)
        evals += len(nodes)
        return s * half

    heap = []
    counter = 0
    total = ctx.zero
    total_err = ctx.zero
    panels = 0
    for g, lo, hi in pieces:
        whole = rule(g, lo, hi)
        m = (lo + hi) / 2
        left, right = rule(g, lo, m), rule(g, m, hi)
        refined = left + right
        err = abs(whole - refined)
        heapq.heappush(heap, (-err, counter, g, lo, hi, left, right, refined, err))
        counter += 1
        panels += 1
        total += refined
        total_err += err

    while total_err > max(abs_tol, rel_tol * abs(total)):
        if panels >= max_intervals:
            raise QuadratureError(
                f"no convergence after {panels} panels on [{a}, {b}]: "
                f"estimate {total} +- {total_err}"
            )
        _, _, g, lo, hi, left, right, refined, err = heapq.heappop(heap)
        total -= refined
        total_err -= err
        m = (lo + hi) / 2
        for sub_lo, sub_hi, sub_val in ((lo, m, left), (m, hi, right)):
            mm = (sub_lo + sub_hi) / 2
            l2, r2 = rule(g, sub_lo, mm), rule(g, mm, sub_hi)
            ref = l2 + r2
            e = abs(sub_val - ref)
            heapq.heappush(heap, (-e, counter, g, sub_lo, sub_hi, l2, r2, ref, e))
            counter += 1
            total += ref
            total_err += e
        panels += 1
        # guard against accumulated cancellation in the running sums
        if panels % 256 == 0:
            total = ctx.fsum(item[7] for item in heap)
            total_err = ctx.fsum(item[8] for item in heap)

    total = ctx.fsum(item[7] for item in heap)
    total_err = ctx.fsum(item[8] for item in heap)
    if not (ctx.isfinite(abs(total))):
        raise QuadratureError(f"non-finite integral on [{a}, {b}]")
    return QuadratureResult(total, total_err, evals)


def _semi_infinite(ctx, f, anchor, direction):
    def g(u):
        v = 1 - u
        return f(anchor + direction * u / v) / (v * v)

    edges = [ctx.zero, ctx.mpf(1) / 2, ctx.mpf(3) / 4, ctx.mpf(7) / 8,
             ctx.mpf(15) / 16, ctx.one]
    return [(g, lo, hi) for lo, hi in zip(edges, edges[1:])]


# --------------------------------------------------------------------------
# hyperbolic plane

def hyp_dist(z, w, convention: str = "standard", prec: int | None = None):
    """Hyperbolic distance between two points of the upper half-plane.

    ``convention="standard"`` uses cosh d = 1 + |z-w|^2 / (2 Im z Im w).
    ``convention="paper"`` drops the factor 2 (the variant used for the
    modular-group diameters); it is still a metric.
    """
    ctx = context(prec)
    z = ctx.mpc(z)
    w = ctx.mpc(w)
    if z.imag <= 0 or w.imag <= 0:
        raise DomainError("points must lie in the upper half-plane")
    if convention == "standard":
        denom = 2 * z.imag * w.imag
    elif convention == "paper":
        denom = z.imag * w.imag
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return ctx.acosh(1 + abs(z - w) ** 2 / denom)
