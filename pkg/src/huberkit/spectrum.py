"""Primitive length spectrum of PSL(2, Z) and of its principal congruence covers.

Primitive hyperbolic conjugacy classes of PSL(2, Z) with norm eps_d^2 are in
bijection with the narrow classes of primitive forms of discriminant d, so
the spectrum below x is assembled discriminant by discriminant.  Norms are
carried exactly through the integer trace of a representative matrix.
"""

from __future__ import annotations

import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterable

from .numerics import DomainError, context, fixed, li0
from .qforms import (
    Matrix2,
    form_to_matrix,
    is_discriminant,
    matrix_norm,
    narrow_class_number,
    pell4,
)


@dataclass(frozen=True)
class GeodesicClass:
    """A primitive hyperbolic class, or an aggregate of classes of equal norm.

    ``rep`` is an integer matrix of the class (for an aggregate, of one of
    its members) and ``discriminant`` that of the underlying form.
    ``exponent`` is 1 on the modular surface and the splitting order m on a
    congruence cover, where ``rep`` is already the m-th power.
    """

    norm: object
    discriminant: int
    rep: Matrix2
    multiplicity: int = 1
    exponent: int = 1

    @property
    def trace(self) -> int:
        return abs(self.rep.trace)

    def sort_key(self):
        return (self.trace, self.discriminant, self.rep)


@dataclass
class LengthSpectrum:
    """Classes with norm <= x_max, sorted by (norm, discriminant)."""

    entries: list
    x_max: object
    group: str = "PSL(2,Z)"
    prec: int | None = None

    def __post_init__(self):
        self.entries = sorted(self.entries, key=lambda e: e.sort_key())

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def count(self) -> int:
        """Number of classes, counted with multiplicity."""
        return sum(e.multiplicity for e in self.entries)

    def pi(self, x) -> int:
        """Classes of norm <= x, with multiplicity."""
        if x > self.x_max:
            raise DomainError(f"pi({x}) needs the spectrum beyond x_max = {self.x_max}")
        return sum(e.multiplicity for e in self.entries if e.norm <= x)

    def aggregates(self) -> list[tuple]:
        """(norm, multiplicity, discriminant) with classes of the same norm
        and discriminant merged, in spectrum order."""
        out = []
        for e in self.entries:
            key = (e.norm, e.discriminant)
            if out and out[-1][0] == key:
                _, norm, mult, d = out[-1]
                out[-1] = (key, norm, mult + e.multiplicity, d)
            else:
                out.append((key, e.norm, e.multiplicity, e.discriminant))
        return [(n, m, d) for _, n, m, d in out]

    def aggregated(self) -> "LengthSpectrum":
        merged = {}
        for e in self.entries:
            key = (e.norm, e.discriminant, e.exponent)
            if key in merged:
                old = merged[key]
                merged[key] = GeodesicClass(old.norm, old.discriminant, old.rep,
                                            old.multiplicity + e.multiplicity, old.exponent)
            else:
                merged[key] = e
        return LengthSpectrum(list(merged.values()), self.x_max, self.group, self.prec)


# ---------------------------------------------------------------------------
# modular surface

def _classes_in_range(lo: int, hi: int, x_max, prec):
    ctx = context(prec)
    x_max = ctx.convert(x_max)
    bound = ctx.sqrt(x_max)
    out = []
    for d in range(lo, hi):
        if not is_discriminant(d):
            continue
        p = pell4(d, eps_bound=bound)
        if p is None:
            continue
        _, reps = narrow_class_number(d)
        norm = None
        for f in reps:
            m = form_to_matrix(f, p)
            if norm is None:
                norm = matrix_norm(m, prec)
                if norm > x_max:
                    break
            out.append(GeodesicClass(norm, d, m))
    return out


def _worker(args):
    lo, hi, x_max, prec = args
    # only exact data crosses the process boundary
    return [(c.discriminant, tuple(c.rep)) for c in _classes_in_range(lo, hi, x_max, prec)]


def modular_spectrum(x_max, prec: int | None = None, workers: int = 1) -> LengthSpectrum:
    """All primitive hyperbolic classes of PSL(2, Z) with norm <= x_max.

    A discriminant d contributes h+(d) classes of norm eps_d^2.  Since
    eps_d = (t + u sqrt d)/2 > sqrt d, only d < x_max can contribute.
    ``workers > 1`` spreads disjoint d-ranges over processes; the result is
    identical to the serial one.
    """
    ctx = context(prec)
    x_max = ctx.convert(x_max)
    if not ctx.isfinite(x_max) or x_max <= 1:
        raise DomainError(f"x_max must be a finite number > 1, got {x_max}")
    d_hi = int(ctx.floor(x_max)) + 1
    if workers is None or workers <= 1 or d_hi < 2000:
        entries = _classes_in_range(5, d_hi, x_max, ctx.prec)
    else:
        edges = _balanced_edges(5, d_hi, 4 * workers)
        jobs = [(lo, hi, str(x_max), ctx.prec) for lo, hi in zip(edges, edges[1:])]
        entries = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(_worker, jobs):
                for d, rep in chunk:
                    rep = Matrix2(*rep)
                    entries.append(GeodesicClass(matrix_norm(rep, ctx.prec), d, rep))
    return LengthSpectrum(entries, x_max, "PSL(2,Z)", ctx.prec)


def _balanced_edges(lo, hi, parts):
    # reduced-form enumeration costs ~ d per discriminant, so split on d^2
    edges = [lo]
    for k in range(1, parts):
        edges.append(max(edges[-1] + 1, isqrt(int(lo * lo + (hi * hi - lo * lo) * k / parts))))
    edges.append(hi)
    return sorted(set(e for e in edges if lo <= e <= hi))


def default_workers() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# principal congruence subgroups

def _prime_factors(n: int):
    ps = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


@dataclass(frozen=True)
class QuotientGroup:
    """PSL(2, Z/NZ) = PSL(2, Z) / Gamma(N)."""

    level: int
    order: int = field(init=False)

    def __post_init__(self):
        n = self.level
        if n < 2:
            raise DomainError(f"level must be >= 2, got {n}")
        if n == 2:
            order = 6
        else:
            num, den = n**3, 1
            for p in _prime_factors(n):
                num *= p * p - 1
                den *= p * p
            order = num // den // 2
        object.__setattr__(self, "order", order)

    def is_identity(self, m: Matrix2) -> bool:
        n = self.level
        r = m.mod(n)
        return r == Matrix2(1, 0, 0, 1) or r == Matrix2(n - 1, 0, 0, n - 1)


def quotient_group(level: int) -> QuotientGroup:
    return QuotientGroup(int(level))


def element_order(m: Matrix2, level: int) -> int:
    """Order of the image of m in PSL(2, Z/level)."""
    g = quotient_group(level)
    if m.det % level != 1 % level:
        raise DomainError("matrix does not have determinant 1 mod level")
    base = m.mod(level)
    cur = base
    for k in range(1, g.order + 1):
        if g.is_identity(cur):
            return k
        cur = (cur @ base).mod(level)
    raise RuntimeError("element order exceeds the group order")


def split_spectrum(base: LengthSpectrum, level: int, x_max=None) -> LengthSpectrum:
    """Length spectrum of Gamma(level) from the per-cycle spectrum of PSL(2, Z).

    A primitive class {gamma} whose image in the quotient G has order m gives
    |G|/m primitive classes of Gamma(level), each of norm N(gamma)^m.
    """
    g = quotient_group(level)
    ctx = context(base.prec)
    x_max = base.x_max if x_max is None else ctx.convert(x_max)
    if x_max > base.x_max:
        raise DomainError(
            f"base spectrum only reaches {base.x_max}, cannot split up to {x_max}")
    out = []
    for e in base.entries:
        if e.multiplicity != 1 or e.exponent != 1:
            raise DomainError("split_spectrum needs the per-class modular spectrum")
        if e.norm > x_max:
            continue
        m = element_order(e.rep, level)
        rep = e.rep ** m
        norm = matrix_norm(rep, base.prec)
        if norm > x_max:
            continue
        out.append(GeodesicClass(norm, e.discriminant, rep, g.order // m, m))
    return LengthSpectrum(out, x_max, f"Gamma({level})", base.prec)


# ---------------------------------------------------------------------------
# export

def export_csv(spectrum: LengthSpectrum, destination, decimal_places: int = 6,
               header: bool = False, prec: int | None = None) -> None:
    """Write ``norm,multiplicity,discriminant,li0(norm)`` lines, one per
    (norm, discriminant) aggregate, with LF line endings.

    ``destination`` is a path or an open text stream.
    """
    prec = spectrum.prec if prec is None else prec
    buf = io.StringIO()
    if header:
        buf.write("norm,multiplicity,discriminant,li0\n")
    for norm, mult, d in spectrum.aggregates():
        buf.write(f"{fixed(norm, decimal_places)},{mult},{d},"
                  f"{fixed(li0(norm, prec), decimal_places)}\n")
    text = buf.getvalue()
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def spectrum_from_aggregates(rows: Iterable[tuple], x_max, prec: int | None = None) -> LengthSpectrum:
    """Build a synthetic spectrum from (norm, multiplicity) pairs.

    Handy for tests and for experiments with made-up spectra; the
    representative matrices are placeholders with the right trace.
    """
    ctx = context(prec)
    entries = []
    for i, row in enumerate(rows):
        norm, mult = row[0], row[1]
        d = row[2] if len(row) > 2 else 0
        n = ctx.convert(norm)
        if n <= 1:
            raise DomainError("norms must exceed 1")
        lam = ctx.sqrt(n)
        tr = int(ctx.nint(lam + 1 / lam))
        entries.append(_Synthetic(n, d, Matrix2(tr, 0, 0, 0), int(mult), 1, i))
    return LengthSpectrum(entries, ctx.convert(x_max), "synthetic", ctx.prec)


@dataclass(frozen=True)
class _Synthetic(GeodesicClass):
    order_hint: int = 0

    def sort_key(self):
        return (self.norm, self.discriminant, self.order_hint)
