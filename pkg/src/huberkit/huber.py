"""Explicit constants in the prime geodesic theorem for cofinite Fuchsian groups.

Given the fundamental invariants of a group (area, cusps, elliptic classes,
small eigenvalues, ...), the two ledgers below evaluate, step by step, the
constant C in the spectral counting bound and the constant C_u bounding the
error term |pi(u) - sum_k li(u^{s_k})| <= C_u u^{3/4} / sqrt(log u).

``cocompact_ledger`` covers torsion-free cocompact groups, ``cofinite_ledger``
the general case with cusps and elliptic elements.
"""

from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .numerics import DomainError, context

INF = math.inf


@dataclass(frozen=True)
class EllipticClassData:
    """An elliptic class R with tr R = 2 cos(theta) and centralizer order m."""

    m: int
    theta: object

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise DomainError(f"centralizer order must be an integer >= 2, got {self.m}")
        if not 0 < self.theta < context().pi:
            raise DomainError(f"rotation angle must lie in (0, pi), got {self.theta}")


@dataclass(frozen=True)
class FundamentalInvariants:
    """Inputs for the constant ledgers.

    tau       number of cusps
    area      hyperbolic area of a fundamental domain
    Y         height of the cusp sectors
    diameters diameters of the (at most two) compact parts, cofinite case
    diameter_cocompact  diameter of the fundamental domain, cocompact case
    elliptic  one EllipticClassData per elliptic conjugacy class
    small_s   the s_k in [1/2, 1] with s_k(1 - s_k) = lambda_k <= 1/4; s_0 = 1
    s1        s of the least nonzero small eigenvalue, +inf if there is none
    N_sc, sigma_N  number and location bound of exceptional scattering poles
    c1        the scattering constant c_1
    c         lower cut-off, strictly below the smallest geodesic norm
    B_override  use this B instead of the diameter formula
    """

    tau: int = 0
    area: object = None
    Y: object = None
    diameters: tuple = ()
    diameter_cocompact: object = None
    elliptic: tuple = ()
    small_s: tuple = (1,)
    s1: object = None
    N_sc: int = 0
    sigma_N: object = 1
    c1: object = 1
    c: object = None
    B_override: object = None

    def __post_init__(self):
        object.__setattr__(self, "diameters", tuple(self.diameters))
        object.__setattr__(self, "elliptic", tuple(self.elliptic))
        object.__setattr__(self, "small_s", tuple(self.small_s))
        if self.s1 is None:
            rest = [s for s in self.small_s if s != 1]
            object.__setattr__(self, "s1", max(rest) if rest else INF)
        if self.tau < 0:
            raise DomainError("tau must be >= 0")
        if self.area is None or self.area <= 0:
            raise DomainError("area must be positive")
        if self.c is None or self.c <= 1:
            raise DomainError("c must exceed 1")
        if 1 not in self.small_s:
            raise DomainError("small_s must contain s_0 = 1")
        if any(not 0.5 <= s <= 1 for s in self.small_s):
            raise DomainError("every small_s entry must lie in [1/2, 1]")
        if self.N_sc < 0:
            raise DomainError("N_sc must be >= 0")
        if self.N_sc > 0 and not 0.5 < self.sigma_N <= 1:
            raise DomainError("sigma_N must lie in (1/2, 1] when N_sc > 0")

    @property
    def A(self) -> int:
        return len(self.small_s)

    def mu(self, prec=None):
        ctx = context(prec)
        return ctx.log(ctx.convert(self.c))


# ---------------------------------------------------------------------------
# the trivial counting constant B

def compute_B_cofinite(Y, diameters, prec=None):
    """B = 4 pi Y (Y + 1) sum_j e^{2 d_j}, so that pi(x) <= B x."""
    ctx = context(prec)
    diameters = list(diameters)
    if not diameters:
        raise DomainError("need at least one diameter")
    if len(diameters) > 2:
        raise DomainError("at most two compact pieces enter B")
    Y = ctx.convert(Y)
    if Y <= 0 or any(dj < 0 for dj in diameters):
        raise DomainError("Y must be positive and diameters non-negative")
    return 4 * ctx.pi * Y * (Y + 1) * ctx.fsum(ctx.exp(2 * ctx.convert(dj)) for dj in diameters)


def compute_B_cocompact(d, area, prec=None):
    """B = 2 pi e^d / area for a cocompact group of diameter d."""
    ctx = context(prec)
    d, area = ctx.convert(d), ctx.convert(area)
    if d < 0 or area <= 0:
        raise DomainError("need d >= 0 and area > 0")
    return 2 * ctx.pi * ctx.exp(d) / area


# ---------------------------------------------------------------------------
# ledger

# (slot, formula) in evaluation order; the formulas are what the report prints
FORMULAS = {
    "C1": "2*e - 2",
    "B": "",
    "C3": "8*tau",
    "C4": "5*sum_R 1/(2*m_R*sin(theta_R)) * (1/(2*theta_R) + 1/(2*(pi - theta_R)))",
    "C5": "8*tau + C4 + area/(4*pi) + 745*B",
    "C6": "C5 + (2*|log c1| + N_sc/(sigma_N - 1/2)^2) * sqrt(5)/sqrt(16*pi)",
    "C7": "(8/(4*pi)) * (2*|log c1| + N_sc/(sigma_N - 1/2)^2)",
    "C": "",
    "C10": "8480*sqrt(e/(2*pi))",
    "C12": "(A - 1)*(1 + 3*C1 + 2/(1 - s1)*(1 + C1)) + 2*C1 + 2",
    "C13": "41/6 * C * C10",
    "C14": "C10*296*tau/(3*pi) + C10*tau/2 + 2*tau*log(2)",
    "C15": "(56*C10/3) * |sum_R 1/(2*m_R*sin(theta_R))|",
    "C16": "",
    "C17": "4*A + 4*C16",
    "C18": "4*A + 5*C16",
    "C19": "C18 + (8*A + 4*C18)/(1 - 1/c)",
    "C20": "C19 + (8*A + 4*C18)/mu",
    "C21": "|c - 2|/log(2) + |2 - sqrt(c)|*2/log(c)",
    "C22": "1/(1 - 1/log(2))",
    "C_u": "C21*A + C20*c^(3/4)/log(c) + C20 + C20*C22 + (3/4)*C20*C21",
    "mu": "log(c)",
}

MODE_FORMULAS = {
    "cocompact": {
        "B": "2*pi*e^d/area",
        "C": "3*(area/(4*pi) + 745*B)",
        "C16": "C12 + C13 + (3/(2*pi))*area*C10",
    },
    "cofinite": {
        "B": "4*pi*Y*(Y + 1)*sum_j e^(2*d_j)",
        "C": "3*C6 + C7",
        "C16": "C12 + C13 + C14 + C15 + (3/(2*pi))*area*C10",
    },
}

COFINITE_ONLY = ("C3", "C4", "C5", "C6", "C7", "C14", "C15")
SLOTS = tuple(FORMULAS)


@dataclass
class ConstantLedger:
    mode: str
    values: dict = field(default_factory=dict)
    B_source: str = "computed"
    prec: int | None = None
    inputs: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    def __getattr__(self, key):
        values = self.__dict__.get("values", {})
        if key in values:
            return values[key]
        raise AttributeError(key)

    def slots(self):
        return [s for s in SLOTS if s in self.values]

    def formula(self, slot):
        if slot == "B" and self.B_source == "override":
            return "B_override"
        return MODE_FORMULAS[self.mode].get(slot) or FORMULAS[slot]


def _elliptic_sums(ctx, elliptic):
    plain = ctx.zero
    weighted = ctx.zero
    for r in elliptic:
        th = ctx.convert(r.theta)
        w = 1 / (2 * r.m * ctx.sin(th))
        plain += w
        weighted += w * (1 / (2 * th) + 1 / (2 * (ctx.pi - th)))
    return plain, weighted


def _common(ctx, inv):
    s1 = inv.s1
    A = inv.A
    if A > 1 and s1 != INF and s1 == 1:
        raise DomainError("s1 = 1 with more than one small eigenvalue divides by zero")
    if s1 == INF and A > 1:
        raise DomainError("s1 = +inf means there is no nonzero small eigenvalue, so A must be 1")
    return A


def huber_chain(C, inv: FundamentalInvariants, C14=0, C15=0, prec=None) -> dict:
    """C10 ... C_u from the spectral counting constant C.

    ``C14``/``C15`` are the cusp and elliptic corrections (zero for a
    cocompact torsion-free group).
    """
    ctx = context(prec)
    A = _common(ctx, inv)
    e = ctx.e
    c = ctx.convert(inv.c)
    v = {}
    v["C1"] = 2 * e - 2
    v["C10"] = 8480 * ctx.sqrt(e / (2 * ctx.pi))
    if A == 1:
        head = ctx.zero
    else:
        s1 = ctx.convert(inv.s1)
        head = (A - 1) * (1 + 3 * v["C1"] + 2 / (1 - s1) * (1 + v["C1"]))
    v["C12"] = head + 2 * v["C1"] + 2
    C = ctx.convert(C)
    v["C13"] = ctx.mpf(41) / 6 * C * v["C10"]
    area = ctx.convert(inv.area)
    v["C16"] = (v["C12"] + v["C13"] + ctx.convert(C14) + ctx.convert(C15)
                + 3 / (2 * ctx.pi) * area * v["C10"])
    v["C17"] = 4 * A + 4 * v["C16"]
    v["C18"] = 4 * A + 5 * v["C16"]
    mu = ctx.log(c)
    v["mu"] = mu
    v["C19"] = v["C18"] + (8 * A + 4 * v["C18"]) / (1 - 1 / c)
    v["C20"] = v["C19"] + (8 * A + 4 * v["C18"]) / mu
    v["C21"] = abs(c - 2) / ctx.log(2) + abs(2 - ctx.sqrt(c)) * 2 / mu
    v["C22"] = 1 / (1 - 1 / ctx.log(2))
    C20, C21 = v["C20"], v["C21"]
    v["C_u"] = (C21 * A + C20 * c ** (ctx.mpf(3) / 4) / mu + C20
                + C20 * v["C22"] + ctx.mpf(3) / 4 * C20 * C21)
    return v


def _inputs(inv):
    out = {}
    for f in fields(inv):
        out[f.name] = getattr(inv, f.name)
    out["A"] = inv.A
    return out


def cocompact_ledger(inv: FundamentalInvariants, prec=None) -> ConstantLedger:
    """Constant ledger of a cocompact torsion-free group."""
    ctx = context(prec)
    if inv.tau != 0 or inv.elliptic:
        raise DomainError("the cocompact ledger needs tau = 0 and no elliptic classes")
    if inv.B_override is not None:
        B, source = ctx.convert(inv.B_override), "override"
    else:
        if inv.diameter_cocompact is None:
            raise DomainError("the cocompact ledger needs diameter_cocompact (or B_override)")
        B, source = compute_B_cocompact(inv.diameter_cocompact, inv.area, ctx.prec), "computed"
    area = ctx.convert(inv.area)
    C = 3 * (area / (4 * ctx.pi) + 745 * B)
    v = {"B": B, "C": C}
    v.update(huber_chain(C, inv, prec=ctx.prec))
    return _finish("cocompact", v, source, ctx.prec, inv)


def cofinite_ledger(inv: FundamentalInvariants, prec=None) -> ConstantLedger:
    """Constant ledger of a general cofinite group (cusps and torsion allowed)."""
    ctx = context(prec)
    c1 = ctx.convert(inv.c1)
    if c1 <= 0:
        raise DomainError("c1 must be positive")
    if inv.B_override is not None:
        B, source = ctx.convert(inv.B_override), "override"
    elif inv.tau > 0:
        if inv.Y is None or not inv.diameters:
            raise DomainError("need Y and the diameters (or B_override) to compute B")
        B, source = compute_B_cofinite(inv.Y, inv.diameters[: min(2, inv.tau)], ctx.prec), "computed"
    elif inv.diameter_cocompact is not None:
        B, source = compute_B_cocompact(inv.diameter_cocompact, inv.area, ctx.prec), "computed"
    else:
        raise DomainError("no way to obtain B: give B_override or diameters")
    tau = inv.tau
    area = ctx.convert(inv.area)
    plain, weighted = _elliptic_sums(ctx, inv.elliptic)
    pole = 2 * abs(ctx.log(c1))
    if inv.N_sc:
        pole += inv.N_sc / (ctx.convert(inv.sigma_N) - ctx.mpf(1) / 2) ** 2
    v = {"B": B}
    v["C3"] = ctx.mpf(8 * tau)
    v["C4"] = 5 * weighted
    v["C5"] = 8 * tau + v["C4"] + area / (4 * ctx.pi) + 745 * B
    v["C6"] = v["C5"] + pole * ctx.sqrt(5) / ctx.sqrt(16 * ctx.pi)
    v["C7"] = 8 / (4 * ctx.pi) * pole
    v["C"] = 3 * v["C6"] + v["C7"]
    C10 = 8480 * ctx.sqrt(ctx.e / (2 * ctx.pi))
    v["C14"] = C10 * 296 * tau / (3 * ctx.pi) + C10 * tau / 2 + 2 * tau * ctx.log(2)
    v["C15"] = 56 * C10 / 3 * abs(plain)
    v.update(huber_chain(v["C"], inv, v["C14"], v["C15"], prec=ctx.prec))
    return _finish("cofinite", v, source, ctx.prec, inv)


def _finish(mode, v, source, prec, inv):
    ctx = context(prec)
    for k, x in v.items():
        if not ctx.isfinite(x):
            raise DomainError(f"slot {k} is not finite ({x})")
    ordered = {k: v[k] for k in SLOTS if k in v}
    return ConstantLedger(mode, ordered, source, prec, _inputs(inv))


def psl2z_preset() -> FundamentalInvariants:
    """Invariants of the modular group PSL(2, Z).

    One cusp, area pi/3, cusp height Y = 2, the elliptic classes of order 2
    (angle pi/2) and 3 (angle pi/3), no small eigenvalue besides 0, c1 = 1,
    one scattering pole at s = 1, and the cut-off c = 6.85 just below the
    smallest norm 6.854...  B is pinned to 753 (the diameter formula with
    d_1 ~ 1.15 gives 752.03).
    """
    ctx = context()
    return FundamentalInvariants(
        tau=1,
        area=ctx.pi / 3,
        Y=2,
        diameters=(ctx.mpf("1.15"),),
        elliptic=(EllipticClassData(2, ctx.pi / 2), EllipticClassData(3, ctx.pi / 3)),
        small_s=(1,),
        s1=INF,
        N_sc=1,
        sigma_N=1,
        c1=1,
        c=ctx.mpf("6.85"),
        B_override=753,
    )


# ---------------------------------------------------------------------------
# reports

def _sci(x, digits=20) -> str:
    ctx = context()
    x = ctx.convert(x)
    if x == 0:
        return "0.0"
    return ctx.nstr(x, digits, min_fixed=1, max_fixed=0, strip_zeros=False)


def _input_text(v):
    if isinstance(v, tuple):
        if v and isinstance(v[0], EllipticClassData):
            return "; ".join(f"m={r.m} theta={_sci(r.theta)}" for r in v)
        return ", ".join(_sci(x) for x in v) if v else ""
    if v is None:
        return "none"
    if v == INF:
        return "inf"
    if isinstance(v, int):
        return str(v)
    return _sci(v)


def ledger_report(ledger: ConstantLedger) -> str:
    """``key = value  # formula`` lines in evaluation order.

    Values carry 20 significant digits.  ``input.*`` lines list the
    invariants the ledger was computed from.
    """
    lines = [f"mode = {ledger.mode}", f"B_source = {ledger.B_source}"]
    for k, v in ledger.inputs.items():
        if k == "elliptic":
            for i, r in enumerate(v):
                lines.append(f"input.elliptic.{i} = {r.m}, {_sci(r.theta)}")
            continue
        lines.append(f"input.{k} = {_input_text(v)}")
    for slot in ledger.slots():
        lines.append(f"{slot} = {_sci(ledger[slot])}  # {ledger.formula(slot)}")
    if "C22" in ledger.values:
        lines.append("# C22 < 0, so li(x) <= C22 x/log x cannot hold; C22 enters C_u as defined")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict:
    """Read the ``key = value`` lines of a report back into a dict.

    Slot values become mpf numbers; ``input.*`` and header lines stay strings.
    """
    ctx = context()
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or "=" not in line:
            continue
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in SLOTS:
            out[key] = ctx.mpf(value)
        else:
            out[key] = value
    return out


# ---------------------------------------------------------------------------
# configuration files

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def _eval_number(text: str):
    """Evaluate a number such as ``1.15``, ``inf``, ``pi/3`` or ``sqrt(2)/2``."""
    ctx = context()
    names = {"pi": ctx.pi, "e": ctx.e, "inf": INF}
    funcs = {"sqrt": ctx.sqrt, "log": ctx.log, "exp": ctx.exp}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            if isinstance(node.value, float):
                return ctx.mpf(ast.get_source_segment(text, node) or repr(node.value))
            return node.value
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left, right = ev(node.left), ev(node.right)
            if isinstance(left, int) and isinstance(right, int) and isinstance(node.op, ast.Div):
                return ctx.mpf(left) / right
            return _BINOPS[type(node.op)](left, right)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            x = ev(node.operand)
            return -x if isinstance(node.op, ast.USub) else x
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in funcs and len(node.args) == 1):
            return funcs[node.func.id](ev(node.args[0]))
        raise ValueError(f"unsupported expression {text!r}")

    return ev(ast.parse(text.strip(), mode="eval"))


_LIST_KEYS = ("diameters", "small_s", "elliptic_m", "elliptic_theta")
_INT_KEYS = ("tau", "N_sc")


def parse_invariants(text: str) -> FundamentalInvariants:
    """Parse the flat ``key = value`` invariants format (see README)."""
    raw = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {n}: expected key = value")
        key, _, value = line.partition("=")
        raw[key.strip()] = value.strip()
    known = {f.name for f in fields(FundamentalInvariants)} | {"elliptic_m", "elliptic_theta", "A"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown keys: {', '.join(sorted(unknown))}")
    kw = {}
    for key, value in raw.items():
        if key in _LIST_KEYS:
            items = [_eval_number(p) for p in value.split(",") if p.strip()]
            kw[key] = items
        elif key in _INT_KEYS:
            kw[key] = int(value)
        elif key == "A":
            kw[key] = int(value)
        else:
            kw[key] = None if value.lower() == "none" else _eval_number(value)
    ms = kw.pop("elliptic_m", [])
    thetas = kw.pop("elliptic_theta", [])
    if len(ms) != len(thetas):
        raise ValueError("elliptic_m and elliptic_theta must have the same length")
    kw["elliptic"] = [EllipticClassData(int(m), th) for m, th in zip(ms, thetas)]
    A = kw.pop("A", None)
    inv = FundamentalInvariants(**kw)
    if A is not None and A != inv.A:
        raise DomainError(f"A = {A} does not match the {inv.A} entries of small_s")
    return inv


def load_invariants(path) -> FundamentalInvariants:
    return parse_invariants(Path(path).read_text())


def with_changes(inv: FundamentalInvariants, **changes) -> FundamentalInvariants:
    return replace(inv, **changes)
