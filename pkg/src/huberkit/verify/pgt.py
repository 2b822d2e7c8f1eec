"""Prime geodesic theorem tables, the empirical Huber constant and Chebyshev sums."""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Iterable

from ..numerics import DomainError, context, fixed, li0
from ..spectrum import LengthSpectrum


@dataclass(frozen=True)
class PgtRow:
    """One line of the prime geodesic table.

    ``li`` is sum_k li0(x^{s_k}), which is li0(x) for the modular group.
    ``pi_running`` is the running total of classes down the table, so rows
    sharing a norm show the count growing through the tie.
    """

    norm: object
    multiplicity: int
    discriminant: int
    li: object
    pi_running: int
    li_over_pi: object
    abs_err: object
    huber_scale: object
    ratio_huber: object
    sqrt_x: object
    ratio_sqrt: object

    def columns(self) -> tuple:
        return (self.norm, self.multiplicity, self.discriminant, self.li,
                self.pi_running, self.li_over_pi, self.abs_err, self.huber_scale,
                self.ratio_huber, self.sqrt_x, self.ratio_sqrt)


COLUMN_NAMES = (
    "x", "multiplicity", "discriminant", "li(x)", "pi(x)", "li(x)/pi(x)",
    "|li(x)-pi(x)|", "x^(3/4)/sqrt(log x)", "col7/col8", "sqrt(x)", "col7/col10",
)


def main_term(x, small_s=(1,), prec=None):
    """sum_k li0(x^{s_k})."""
    ctx = context(prec)
    x = ctx.convert(x)
    return ctx.fsum(li0(x ** ctx.convert(s), ctx.prec) for s in small_s)


def pgt_rows(aggregates: Iterable[tuple], small_s=(1,), prec=None) -> list[PgtRow]:
    """Rows for (norm, multiplicity, discriminant) triples in display order."""
    ctx = context(prec)
    rows = []
    running = 0
    for norm, mult, d in aggregates:
        x = ctx.convert(norm)
        running += mult
        li = main_term(x, small_s, ctx.prec)
        err = abs(li - running)
        scale = x ** (ctx.mpf(3) / 4) / ctx.sqrt(ctx.log(x))
        root = ctx.sqrt(x)
        rows.append(PgtRow(x, mult, d, li, running, li / running, err,
                           scale, err / scale, root, err / root))
    return rows


def pgt_table(s: LengthSpectrum, small_s=(1,), prec=None) -> list[PgtRow]:
    """The prime geodesic table of a spectrum, one row per (norm, d) aggregate."""
    if s.is_empty:
        raise DomainError("spectrum empty below smallest norm")
    return pgt_rows(s.aggregates(), small_s, prec if prec is not None else s.prec)


def pgt_csv(rows: list[PgtRow], decimal_places: int = 2, header: bool = True) -> str:
    buf = io.StringIO()
    if header:
        buf.write(",".join(COLUMN_NAMES) + "\n")
    for r in rows:
        cells = []
        for v in r.columns():
            cells.append(str(v) if isinstance(v, int) else fixed(v, decimal_places))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# empirical Huber constant

@dataclass(frozen=True)
class HuberEstimate:
    value: object
    x: object
    side: str  # "left", "right" or "grid"
    pi: int
    evaluations: int


def _jumps(s: LengthSpectrum):
    out = []
    total = 0
    for e in s.entries:
        total += e.multiplicity
        if out and out[-1][0] == e.norm:
            out[-1] = (e.norm, total)
        else:
            out.append((e.norm, total))
    return out


def empirical_huber(s: LengthSpectrum, small_s=(1,), grid_per_gap: int = 8,
                    mode: str = "sup", x_min=None, prec=None) -> HuberEstimate:
    """Largest observed |pi(x) - sum_k li0(x^{s_k})| * log(x) / x^{3/4}.

    ``mode="sup"`` evaluates both one-sided limits at every jump plus
    ``grid_per_gap`` log-spaced points inside each gap, up to x_max; this
    approximates the supremum over [x_min, x_max].  ``mode="norms"`` only
    evaluates at the norms themselves, with pi counting every class of norm
    <= x, which is what the prime geodesic table records.

    ``x_min`` defaults to the smallest norm.
    """
    if 1 not in small_s:
        raise DomainError("small_s must contain 1")
    if mode not in ("sup", "norms"):
        raise ValueError(f"unknown mode {mode!r}")
    if s.is_empty:
        raise DomainError("spectrum empty below smallest norm")
    ctx = context(prec if prec is not None else s.prec)
    jumps = _jumps(s)
    x_max = ctx.convert(s.x_max)
    x_lo = jumps[0][0] if x_min is None else ctx.convert(x_min)
    if x_lo <= 1:
        raise DomainError("x_min must exceed 1")
    three_q = ctx.mpf(3) / 4
    best = None
    count = 0

    def consider(x, pi, side):
        nonlocal best, count
        count += 1
        val = abs(pi - main_term(x, small_s, ctx.prec)) * ctx.log(x) / x ** three_q
        if best is None or val > best.value:
            best = HuberEstimate(val, x, side, pi, 0)

    def gap(lo, hi, pi, include_hi):
        if hi <= lo:
            return
        ratio = (hi / lo) ** (ctx.one / (grid_per_gap + 1))
        x = lo
        for _ in range(grid_per_gap):
            x = x * ratio
            consider(x, pi, "grid")
        if include_hi:
            consider(hi, pi, "grid")

    prev_pi = 0
    prev_x = x_lo
    if x_lo < jumps[0][0] and mode == "sup":
        consider(x_lo, 0, "grid")
    for x, pi in jumps:
        if x < x_lo:
            prev_pi, prev_x = pi, x_lo
            continue
        if mode == "sup":
            gap(prev_x, x, prev_pi, False)
            consider(x, prev_pi, "left")
        consider(x, pi, "right")
        prev_pi, prev_x = pi, x
    if mode == "sup":
        gap(prev_x, x_max, prev_pi, True)
    return HuberEstimate(best.value, best.x, best.side, best.pi, count)


# ---------------------------------------------------------------------------
# Chebyshev functions

CHEBYSHEV_KINDS = ("theta", "psi", "bigTheta_norm", "H")


def chebyshev(s: LengthSpectrum, T, kind: str = "theta", prec=None):
    """Chebyshev-type sums over closed geodesics of length <= T.

    theta          sum of l(gamma) over primitive classes with l <= T
    psi            sum of Lambda(gamma) = l(gamma_0) over all classes, powers
                   included, with l <= T
    H              like psi, with the extra weight (1 + N^-1)/(1 - N^-1)
    bigTheta_norm  the norm-variable version: sum of log N over primitive
                   classes with N <= T (so its argument is a norm, not a length)

    Lengths are l = log N.  The spectrum must be complete up to e^T (up to T
    for bigTheta_norm).
    """
    if kind not in CHEBYSHEV_KINDS:
        raise ValueError(f"kind must be one of {CHEBYSHEV_KINDS}")
    ctx = context(prec if prec is not None else s.prec)
    T = ctx.convert(T)
    if kind == "bigTheta_norm":
        if T > s.x_max:
            raise DomainError(f"spectrum is only complete up to norm {s.x_max}")
        L = ctx.log(T) if T > 0 else ctx.ninf
    else:
        L = T
        if L > ctx.log(s.x_max):
            raise DomainError(f"spectrum is only complete up to length log {s.x_max}")
    total = ctx.zero
    for e in s.entries:
        l0 = ctx.log(e.norm)
        if l0 > L:
            continue
        if kind in ("theta", "bigTheta_norm"):
            total += e.multiplicity * l0
            continue
        m = 1
        while m * l0 <= L:
            if kind == "psi":
                total += e.multiplicity * l0
            else:
                n = e.norm ** m
                total += e.multiplicity * l0 * (1 + 1 / n) / (1 - 1 / n)
            m += 1
    return total
