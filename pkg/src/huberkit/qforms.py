"""Indefinite binary quadratic forms, Pell units and the narrow class number.

A form ``QuadForm(a, b, c)`` stands for a x^2 + b x y + c y^2 with positive,
non-square discriminant d = b^2 - 4ac.  Everything here is exact integer
arithmetic; the only floating-point output is :func:`matrix_norm`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import NamedTuple

from .numerics import DomainError, context


def is_discriminant(d: int) -> bool:
    """True for d > 0, d = 0 or 1 mod 4, and d not a perfect square."""
    d = int(d)
    if d <= 0 or d % 4 not in (0, 1):
        return False
    s = isqrt(d)
    return s * s != d


def _check_disc(d: int) -> int:
    d = int(d)
    if not is_discriminant(d):
        raise DomainError(f"{d} is not a positive non-square discriminant")
    return d


class QuadForm(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def act(self, m: "Matrix2") -> "QuadForm":
        """The form (x, y) -> f(m11 x + m12 y, m21 x + m22 y)."""
        p, q, r, s = m
        a, b, c = self
        return QuadForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )


class Matrix2(NamedTuple):
    m11: int
    m12: int
    m21: int
    m22: int

    @property
    def trace(self) -> int:
        return self.m11 + self.m22

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        a, b, c, d = self
        e, f, g, h = other
        return Matrix2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __pow__(self, k: int) -> "Matrix2":
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix2(1, 0, 0, 1)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "Matrix2":
        if self.det != 1:
            raise DomainError("only determinant-one matrices are inverted")
        a, b, c, d = self
        return Matrix2(d, -b, -c, a)

    def mod(self, n: int) -> "Matrix2":
        return Matrix2(*(v % n for v in self))


# ---------------------------------------------------------------------------
# Pell equation t^2 - d u^2 = +-4

class PellSolution(NamedTuple):
    d: int
    t: int
    u: int


def _omega_convergents(d: int):
    """Yield (t, u) = (2p - b0 q, q) for the convergents p/q of (b0 + sqrt d)/2."""
    s = isqrt(d)
    b0 = d % 2
    P, Q = b0, 2
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    while True:
        if Q > 0:
            a = (P + s) // Q
        else:
            a = (P + s + 1) // Q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        yield 2 * h - b0 * k, k
        P = a * Q - P
        Q = (d - P * P) // Q


def _pell(d: int, bound):
    """Least solutions of t^2 - d u^2 = 4 and (if any) = -4 with t, u > 0.

    Returns ``(plus, minus)`` or ``None`` once eps = (t + u sqrt d)/2 of the
    +4 solution is certainly larger than ``bound``.
    """
    minus = None
    bound2 = None if bound is None else bound * bound
    for t, u in _omega_convergents(d):
        if u <= 0:
            continue
        n = t * t - d * u * u
        if n == -4 and minus is None:
            minus = (t, u)
        elif n == 4:
            return (t, u), minus
        # every later solution has eps > u sqrt d
        if bound2 is not None and d * u * u > bound2:
            return None


def pell4(d: int, eps_bound=None) -> PellSolution | None:
    """Smallest (t, u), t, u > 0, with t^2 - d u^2 = 4.

    With ``eps_bound`` set, returns ``None`` as soon as it is certain that
    (t + u sqrt d)/2 exceeds the bound, without finishing the expansion.
    """
    d = _check_disc(d)
    found = _pell(d, eps_bound)
    if found is None:
        return None
    (t, u), _ = found
    if eps_bound is not None:
        ctx = context()
        if (t + u * ctx.sqrt(d)) / 2 > eps_bound:
            return None
    return PellSolution(d, t, u)


@dataclass(frozen=True)
class FundamentalUnit:
    """eps_d = (t + u sqrt d)/2 for the least positive solution of norm +1.

    ``unit_norm`` records whether a unit of norm -1 exists (-1) or not (+1).
    """

    d: int
    t: int
    u: int
    unit_norm: int

    def eps(self, prec: int | None = None):
        ctx = context(prec)
        return (self.t + self.u * ctx.sqrt(self.d)) / 2

    def norm(self, prec: int | None = None):
        """eps_d^2, the norm of the primitive hyperbolic classes of disc d."""
        ctx = context(prec)
        with ctx.extraprec(10):
            e = self.eps(ctx.prec)
            val = e * e
        return +val


def fundamental_unit(d: int) -> FundamentalUnit:
    d = _check_disc(d)
    (t, u), minus = _pell(d, None)
    return FundamentalUnit(d, t, u, -1 if minus is not None else 1)


# ---------------------------------------------------------------------------
# reduction theory

def is_reduced(f: QuadForm) -> bool:
    """|sqrt d - 2|a|| < b < sqrt d, decided exactly."""
    a, b, c = f
    d = _check_disc(f.discriminant)
    if b <= 0 or b * b >= d:
        return False
    lo = 2 * abs(a) - b
    # sqrt d > 2|a| - b and sqrt d < 2|a| + b
    return (lo < 0 or lo * lo < d) and (2 * abs(a) + b) ** 2 > d


def rho(f: QuadForm) -> QuadForm:
    """One step of the reduction operator (a, b, c) -> (c, b', c').

    b' = -b mod 2|c| is taken in (sqrt d - 2|c|, sqrt d) if |c| < sqrt d and
    in (-|c|, |c|] otherwise.  The result is SL2(Z)-equivalent to ``f``.
    """
    a, b, c = f
    if c == 0:
        raise DomainError("rho is undefined for c = 0")
    d = _check_disc(f.discriminant)
    m = 2 * abs(c)
    if c * c < d:
        s = isqrt(d)
        b2 = s - (s + b) % m
    else:
        b2 = (-b) % m
        if b2 > abs(c):
            b2 -= m
    c2 = (b2 * b2 - d) // (4 * c)
    return QuadForm(c, b2, c2)


def _divisors(n: int):
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def reduced_forms(d: int) -> list[QuadForm]:
    """All primitive reduced forms of discriminant d, sorted."""
    d = _check_disc(d)
    s = isqrt(d)
    out = []
    for b in range(s, 0, -1):
        if (b - d) % 2:
            continue
        n = (d - b * b) // 4
        for a in _divisors(n):
            lo = 2 * a - b
            if not ((lo < 0 or lo * lo < d) and (2 * a + b) ** 2 > d):
                continue
            for sa in (a, -a):
                f = QuadForm(sa, b, -n // sa)
                if f.is_primitive:
                    out.append(f)
    out.sort()
    return out


def cycle(f: QuadForm) -> list[QuadForm]:
    """The rho-cycle through a reduced form, starting at ``f``."""
    if not is_reduced(f):
        raise DomainError(f"{f} is not reduced")
    out = [f]
    g = rho(f)
    while g != f:
        out.append(g)
        g = rho(g)
        if len(out) > 4 * f.discriminant:
            raise RuntimeError(f"rho did not cycle back to {f}")
    return out


def narrow_class_number(d: int) -> tuple[int, list[QuadForm]]:
    """h+(d) and the lexicographically least reduced form of every cycle.

    Each rho-cycle of reduced forms is one proper (SL2(Z)) equivalence class.
    """
    forms = reduced_forms(d)
    pending = set(forms)
    reps = []
    for f in forms:
        if f not in pending:
            continue
        cyc = cycle(f)
        for g in cyc:
            if g not in pending:
                raise RuntimeError(f"reduced form {g} reached twice (d = {d})")
            pending.discard(g)
        reps.append(min(cyc))
    reps.sort()
    return len(reps), reps


# ---------------------------------------------------------------------------
# forms to matrices

def form_to_matrix(f: QuadForm, p: PellSolution) -> Matrix2:
    """The automorph ((t - b u)/2, -c u; a u, (t + b u)/2) of f.

    It lies in SL2(Z), fixes the roots of f and has trace t.
    """
    a, b, c = f
    t, u = p.t, p.u
    if f.discriminant != p.d:
        raise DomainError("form and Pell solution have different discriminants")
    if (t - b * u) % 2:
        raise RuntimeError(f"parity failure for {f} and {p}")
    return Matrix2((t - b * u) // 2, -c * u, a * u, (t + b * u) // 2)


def matrix_norm(m: Matrix2, prec: int | None = None):
    """N(m) = lambda^2, lambda the eigenvalue of m with |lambda| > 1."""
    tr = abs(m.trace)
    if tr <= 2:
        raise DomainError(f"{m} is not hyperbolic (|trace| = {tr})")
    ctx = context(prec)
    with ctx.extraprec(10):
        lam = (tr + ctx.sqrt(tr * tr - 4)) / 2
        val = lam * lam
    return +val
