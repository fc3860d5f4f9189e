"""Truncated J-function series, quantum periods, and the hypersurface
transformation.

Series convention: J(t) = e^(c1 log t) * sum_{d>=0} J_d t^d with J_0 = 1 and
J_d = 0 unless the Fano index divides d.  Coefficients J_d are ring vectors
over exact rationals (built-in families) or big-complex numbers (quotient
constructions).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .ring import (CohomologyRing, GradedVector, build_hypersurface_ambient_ring,
                   build_projective_ring, cup)
from .scalars import working_context


@dataclass(frozen=True)
class JSeries:
    ring: CohomologyRing
    D: int                      # truncation: coefficients d = 0..D
    fano_index: int
    coeffs: dict                # d -> GradedVector, only d with fano_index | d

    def __post_init__(self):
        unit = self.ring.unit()
        j0 = self.coeffs.get(0)
        if j0 is None or any(a != b for a, b in zip(j0.coeffs, unit.coeffs)):
            raise ValueError("J_0 must be the unit class")
        for d in self.coeffs:
            if d % self.fano_index:
                raise ValueError("support must lie in multiples of the Fano index")
            if d > self.D:
                raise ValueError("coefficient beyond truncation order")

    def coefficient(self, d: int) -> GradedVector:
        v = self.coeffs.get(d)
        return v if v is not None else self.ring.zero()

    def nonzero_degrees(self):
        return sorted(self.coeffs)


@dataclass(frozen=True)
class QuantumPeriod:
    fano_index: int
    D: int
    coeffs: dict                # d -> G_d (Fraction or big real)

    def coefficient(self, d: int):
        return self.coeffs.get(d, Fraction(0))

    def nonzero_degrees(self):
        return sorted(d for d, g in self.coeffs.items() if g)

    def to_csv(self) -> str:
        lines = ["d,G_d_exact,G_d_float"]
        for d in sorted(self.coeffs):
            g = self.coeffs[d]
            if isinstance(g, (int, Fraction)):
                exact = str(Fraction(g))
                approx = mpmath.nstr(mpmath.mpf(g.numerator) / g.denominator, 17) \
                    if isinstance(g, Fraction) else repr(g)
            else:
                exact = ""
                approx = mpmath.nstr(g, 17)
            lines.append(f"{d},{exact},{approx}")
        return "\n".join(lines) + "\n"


def j_projective(n: int, D: int) -> JSeries:
    """J-series of the projective space with n homogeneous coordinates.

    The degree-nd coefficient is prod_{k=1..d} (h+k)^(-n) truncated mod h^n,
    all exact rationals.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if D < n:
        raise ValueError("truncation below the first nonzero coefficient")
    R = build_projective_ring(n)
    coeffs = {0: R.unit()}
    cur = [Fraction(1)] + [Fraction(0)] * (n - 1)   # series in h, length n
    d = 1
    while n * d <= D:
        inv = _inverse_power_series_h_plus_k(d, n)
        cur = _mul_trunc(cur, inv, n)
        coeffs[n * d] = R.vector(tuple(cur))
        d += 1
    return JSeries(ring=R, D=D, fano_index=n, coeffs=coeffs)


def _inverse_power_series_h_plus_k(k: int, n: int):
    """(h+k)^(-n) as a length-n list of exact rationals."""
    out = []
    binom = Fraction(1)
    for j in range(n):
        out.append(binom * Fraction((-1) ** j, k ** (n + j)))
        binom = binom * (n + j) / (j + 1)
    return out


def _mul_trunc(a, b, n):
    out = [Fraction(0)] * n
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(n - i):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def quantum_period(J: JSeries) -> QuantumPeriod:
    """H^0-components of the series coefficients."""
    return QuantumPeriod(
        fano_index=J.fano_index, D=J.D,
        coeffs={d: v.h0() for d, v in J.coeffs.items() if v.h0()} | {0: J.coefficient(0).h0()})


def quantum_lefschetz(JX: JSeries, a: int, DY: int | None = None) -> dict:
    """J-series of a degree-a hypersurface inside the projective space of JX.

    Returns {"JY": JSeries on the ambient-restriction ring, "c0": Fraction,
    "T0": Fraction-or-power value}.  The e^(-c0 t) factor is folded into the
    series coefficients by a Cauchy product so the output obeys the standard
    series convention with index r-a.
    """
    R = JX.ring
    r = JX.fano_index
    n = R.complex_dimension            # ambient projective dimension
    if R.name != f"P{n}" or r != n + 1:
        raise ValueError("ambient series must come from j_projective")
    if not 0 < a < r:
        raise ValueError("need 0 < a < index of the ambient space")
    amb = build_hypersurface_ambient_ring(n, a)

    # mirror-map constant; cross-checked against a! <[pt], J_r> when r-a = 1
    if r - a == 1:
        c0 = Fraction(factorial(a))
        from_j = factorial(a) * JX.coefficient(r).h0()
        if from_j != c0:
            raise AssertionError("the two readings of the mirror constant disagree")
    else:
        c0 = Fraction(0)

    nmax = JX.D // r
    S = []
    for dd in range(nmax + 1):
        v = JX.coefficient(r * dd)
        restricted = amb.vector(v.coeffs[:n])
        tw = _factorial_twist(amb, a, dd)
        S.append(cup(tw, restricted))

    coeffs = {}
    if c0 == 0:
        for dd, v in enumerate(S):
            coeffs[(r - a) * dd] = v
        Dout = (r - a) * nmax
    else:
        # index 1: multiply by e^(-c0 t) and re-expand
        Dout = nmax
        for m in range(nmax + 1):
            acc = amb.zero()
            for dd in range(m + 1):
                acc = acc + Fraction((-c0) ** (m - dd), factorial(m - dd)) * S[dd]
            coeffs[m] = acc
    if DY is not None:
        Dout = min(Dout, DY)
        coeffs = {d: v for d, v in coeffs.items() if d <= Dout}
    JY = JSeries(ring=amb, D=Dout, fano_index=r - a, coeffs=coeffs)

    # (T0/(r-a))^(r-a) = a^a (T_X/r)^r with T_X = r here
    T0 = _t0_value(r, a)
    return {"JY": JY, "c0": c0, "T0": T0}


def _factorial_twist(amb: CohomologyRing, a: int, d: int) -> GradedVector:
    """prod_{m=1..a*d} (a h + m) in the ambient-restriction ring."""
    out = amb.unit()
    for m in range(1, a * d + 1):
        out = cup(out, amb.vector(tuple(
            Fraction(m) if p == 0 else (Fraction(a) if p == 1 else Fraction(0))
            for p in range(amb.rank))))
    return out


def _t0_value(r: int, a: int):
    """Solves (T0/(r-a))^(r-a) = a^a for the projective ambient (T_X = r)."""
    b = r - a
    root, rem = _integer_root(a ** a, b)
    if rem:
        ctx = working_context(60)
        return b * ctx.root(ctx.mpf(a) ** a, b)
    return Fraction(b * root)


def _integer_root(m: int, k: int):
    if k == 1:
        return m, 0
    lo, hi = 0, int(round(m ** (1.0 / k))) + 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= m:
            lo = mid
        else:
            hi = mid - 1
    return lo, m - lo ** k


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------

def evaluate_j(J: JSeries, t, log_branch=0, P: int = 50,
               half_turns: int = 0) -> dict:
    """Sum the series at the point t with log t = log|t| + i*log_branch.

    `half_turns` adds that integer multiple of pi*i to the log, computed at
    working precision (so rotations like e^(i pi) t stay exact to the last
    digit).  Returns {"value": GradedVector over mpc, "tail_estimate": mpf,
    "converged": bool, "work_digits": int}.  The tail estimate is twice the
    magnitude of the last included nonzero term; the converged flag reports
    whether term magnitudes were still decreasing at the truncation order.
    """
    degs = J.nonzero_degrees()
    # cheap scan for the peak term magnitude to size the working precision
    scan = working_context(15)
    ta = abs(scan.convert(t))
    peak = scan.mpf(0)
    for d in degs:
        v = J.coefficient(d)
        m = max((abs(scan.convert(c)) for c in v.coeffs if c), default=scan.mpf(0))
        mag = m * ta ** d
        if mag > peak:
            peak = mag
    head = int(scan.ceil(scan.log10(peak))) if peak > 0 else 0
    wdps = P + max(0, head) + 20
    ctx = working_context(wdps)

    tc = ctx.convert(t)
    branch = ctx.convert(log_branch) + half_turns * ctx.pi
    logt = ctx.log(abs(tc)) + ctx.mpc(0, 1) * branch
    tval = ctx.exp(logt)    # honors the chosen branch for non-integer uses
    R = J.ring
    acc = [ctx.mpc(0)] * R.rank
    last_two = []
    for d in degs:
        v = J.coefficient(d)
        td = tval ** d
        mag = ctx.mpf(0)
        for i, c in enumerate(v.coeffs):
            if c:
                x = ctx.convert(c) * td
                acc[i] = acc[i] + x
                if abs(x) > mag:
                    mag = abs(x)
        last_two.append(mag)
        if len(last_two) > 2:
            last_two.pop(0)
    converged = len(last_two) < 2 or last_two[-1] < last_two[-2]
    tail = 2 * last_two[-1] if last_two else ctx.mpf(0)

    # prefactor e^(c1 log t)
    vec = GradedVector(R, tuple(acc))
    term = vec
    for m in range(1, R.complex_dimension + 1):
        term = cup(term, R.c1)
        vec = vec + (logt ** m / factorial(m)) * term

    out = working_context(P)
    value = vec.map_coeffs(out.mpc)
    return {"value": value, "tail_estimate": out.mpf(tail), "converged": converged,
            "work_digits": wdps}


# --------------------------------------------------------------------------
# quintic hypergeometric check in Q[eps]/(eps^4)
# --------------------------------------------------------------------------

_EPS_N = 4


def _eps_mul(a, b):
    out = [Fraction(0)] * _EPS_N
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(_EPS_N - i):
            if b[j]:
                out[i + j] += ai * b[j]
    return tuple(out)


def _eps_linear(c, s):
    """c + s*eps as an eps-polynomial."""
    return (Fraction(c), Fraction(s), Fraction(0), Fraction(0))


def _eps_inv(a):
    """Inverse of a unit (a0 != 0) modulo eps^4."""
    a0 = a[0]
    if not a0:
        raise ZeroDivisionError("not a unit")
    u = tuple(x / a0 for x in a)     # 1 + n, n nilpotent
    n = (Fraction(0), -u[1], -u[2], -u[3])
    inv = (Fraction(1),) + (Fraction(0),) * 3
    term = (Fraction(1),) + (Fraction(0),) * 3
    for _ in range(1, _EPS_N):
        term = _eps_mul(term, n)
        inv = tuple(x + y for x, y in zip(inv, term))
    return tuple(x / a0 for x in inv)


def _eps_pow(a, k):
    out = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    for _ in range(k):
        out = _eps_mul(out, a)
    return out


def quintic_pf_annihilation(order: int) -> dict:
    """Exact check that the degree-4 logarithmic operator
    theta^4 - 5^5 t^5 (theta+1)(theta+2)(theta+3)(theta+4)
    kills the quintic hypergeometric series with coefficients
    A_n(eps) = prod_{j=1..5n} (j+5eps) / prod_{j=1..n} (j+eps)^5
    in Q[eps]/(eps^4), working coefficientwise in t^(5n+5eps).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    A_prev = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    residuals = []
    ok = True
    # n = 0 term: theta^4 acting alone gives (5 eps)^4 = 0 mod eps^4
    theta0 = _eps_pow(_eps_linear(0, 5), 4)
    residuals.append({"n": 0, "residual": theta0, "zero": all(x == 0 for x in theta0)})
    ok = ok and residuals[-1]["zero"]
    for nn in range(1, order + 1):
        ratio = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
        for j in range(5 * nn - 4, 5 * nn + 1):
            ratio = _eps_mul(ratio, _eps_linear(j, 5))
        ratio = _eps_mul(ratio, _eps_pow(_eps_inv(_eps_linear(nn, 1)), 5))
        A = _eps_mul(A_prev, ratio)
        lhs = _eps_mul(A, _eps_pow(_eps_linear(5 * nn, 5), 4))
        rhs = A_prev
        for j in range(1, 5):
            rhs = _eps_mul(rhs, _eps_linear(5 * nn - 5 + j, 5))
        rhs = tuple(Fraction(5 ** 5) * x for x in rhs)
        res = tuple(x - y for x, y in zip(lhs, rhs))
        is_zero = all(x == 0 for x in res)
        residuals.append({"n": nn, "residual": res, "zero": is_zero})
        ok = ok and is_zero
        A_prev = A
    return {"annihilated": ok, "order": order, "residuals": residuals}


def classical_quintic_coefficient(n: int) -> Fraction:
    """The eps-degree-0 shadow (5n)!/(n!)^5."""
    return Fraction(factorial(5 * n), factorial(n) ** 5)


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def jseries_to_json_dict(J: JSeries, space: str) -> dict:
    rows = []
    for d in J.nonzero_degrees():
        v = J.coefficient(d)
        rows.append({"d": d, "coeffs": [_scalar_str(c) for c in v.coeffs]})
    return {"space": space, "D": J.D, "r": J.fano_index, "coefficients": rows}


def _scalar_str(c) -> str:
    if isinstance(c, (int, Fraction)):
        return str(Fraction(c))
    return mpmath.nstr(c, 30)


def jseries_to_json(J: JSeries, space: str) -> str:
    return json.dumps(jseries_to_json_dict(J, space), sort_keys=True, indent=2)
