"""Laurent-polynomial mirrors: ray constructions, constant-term quantum
periods, conifold points by convex minimization in log coordinates, growth
diagnostics, and spectrum verdict reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd

from . import exactla
from .jfun import QuantumPeriod
from .laurent import LaurentPolynomial, PowerCache, ResourceBudgetExceeded
from .scalars import working_context


# --------------------------------------------------------------------------
# ray input
# --------------------------------------------------------------------------

def origin_in_interior(rays) -> bool:
    """Exact test that 0 lies in the interior of the convex hull of the rays.

    Equivalent to: the cone {u : <b_i, u> <= 0 for all i} is {0}.  The cone
    contains a line iff the ray matrix is rank deficient; otherwise it is
    pointed and nonzero iff some m-1 of the constraints cut out an extreme
    direction that the remaining constraints admit.
    """
    m = len(rays[0])
    mat = [tuple(Fraction(x) for x in r) for r in rays]
    if exactla.rank(mat) < m:
        return False
    for subset in combinations(range(len(mat)), m - 1):
        rows = [mat[i] for i in subset]
        if rows and exactla.rank(rows) < m - 1:
            continue
        null = exactla.nullspace(rows, ncols=m)
        if len(null) != 1:
            continue
        u = null[0]
        for direction in (u, tuple(-x for x in u)):
            if all(sum(a * b for a, b in zip(row, direction)) <= 0 for row in mat):
                return False
    return True


def toric_mirror_from_rays(rays) -> LaurentPolynomial:
    """f = x^{b_1} + ... + x^{b_m} for primitive rays spanning the origin."""
    if not rays:
        raise ValueError("no rays given")
    m = len(rays[0])
    clean = []
    for r in rays:
        t = tuple(int(x) for x in r)
        if len(t) != m:
            raise ValueError("rays of mixed dimension")
        if all(x == 0 for x in t):
            raise ValueError("zero ray")
        clean.append(t)
    if not origin_in_interior(clean):
        raise ValueError("origin not interior to the ray hull; "
                         "the mirror would be unbounded below")
    for t in clean:
        if gcd(*(abs(x) for x in t)) != 1:
            raise ValueError(f"ray {t} is not primitive")
    return LaurentPolynomial(m, {t: Fraction(1) for t in clean})


def projective_rays(n: int):
    """Fan rays of the projective space with n homogeneous coordinates."""
    if n < 2:
        raise ValueError("need n >= 2")
    m = n - 1
    rays = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    rays.append(tuple(-1 for _ in range(m)))
    return rays


# --------------------------------------------------------------------------
# constant-term quantum periods
# --------------------------------------------------------------------------

class PartialPeriodError(RuntimeError):
    """Resource abort; .partial holds the coefficients computed so far."""

    def __init__(self, partial: QuantumPeriod):
        super().__init__("constant-term budget exhausted")
        self.partial = partial


def constant_term_series(f: LaurentPolynomial, N: int,
                         budget: int = 6_000_000) -> QuantumPeriod:
    """G_d = Const(f^d)/d! for d = 0..N, exact."""
    cache = PowerCache(f, budget=budget)
    coeffs = {0: Fraction(1)}
    for d in range(1, N + 1):
        try:
            c = cache.constant_term(d)
        except ResourceBudgetExceeded:
            raise PartialPeriodError(_period_from(coeffs, d - 1)) from None
        if c:
            coeffs[d] = c / factorial(d)
    return _period_from(coeffs, N)


def _period_from(coeffs, D):
    support = [d for d in coeffs if d > 0]
    r = gcd(*support) if support else 1
    return QuantumPeriod(fano_index=max(r, 1), D=D, coeffs=dict(coeffs))


# --------------------------------------------------------------------------
# conifold point
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ConifoldResult:
    x_con: tuple
    T_con: object
    newton_iterations: int
    gradient_norm: object
    hessian_positive: bool


def conifold_point(f, tol=None, P: int = 50, start=None,
                   max_iter: int = 200) -> ConifoldResult:
    """Global minimum of f on the positive real orthant by Newton iteration
    in u = log x coordinates.

    f may be a LaurentPolynomial or a PrzyjalkowskiModel; for a model the
    separately-carried constant shift is subtracted from the reported value.
    """
    shift = Fraction(0)
    if isinstance(f, PrzyjalkowskiModel):
        shift = f.c0_shift
        f = f.f
    if not f.is_nonnegative():
        raise ValueError("conifold search needs positive coefficients")
    rays = list(f.terms)
    if not origin_in_interior(rays):
        raise ValueError("origin not interior to the Newton polytope; "
                         "no minimum on the positive orthant")
    ctx = working_context(P + 10)
    if tol is None:
        tol = ctx.mpf(10) ** (-P + 5)
    else:
        tol = ctx.convert(tol)
    m = f.nvars
    u = [ctx.mpf(0)] * m if start is None else [ctx.convert(x) for x in start]

    def value(uu):
        return ctx.fsum(ctx.convert(c) * ctx.exp(
            ctx.fsum(ctx.mpf(ei) * ui for ei, ui in zip(e, uu)))
            for e, c in f.terms.items())

    def grad_hess(uu):
        g = [ctx.mpf(0)] * m
        H = ctx.zeros(m, m)
        for e, c in f.terms.items():
            w = ctx.convert(c) * ctx.exp(
                ctx.fsum(ctx.mpf(ei) * ui for ei, ui in zip(e, uu)))
            for i in range(m):
                if e[i]:
                    g[i] += e[i] * w
                    for j in range(m):
                        if e[j]:
                            H[i, j] += e[i] * e[j] * w
        return g, H

    it = 0
    gnorm = ctx.mpf("inf")
    for it in range(1, max_iter + 1):
        g, H = grad_hess(u)
        gnorm = ctx.sqrt(ctx.fsum(x * x for x in g))
        if gnorm < tol:
            break
        step = ctx.lu_solve(H, ctx.matrix([-x for x in g]))
        f0 = value(u)
        lam = ctx.mpf(1)
        # full steps always work on a convex function except via rounding
        for _ in range(60):
            trial = [ui + lam * step[i] for i, ui in enumerate(u)]
            if value(trial) <= f0 or lam < ctx.mpf(10) ** (-40):
                u = trial
                break
            lam = lam / 2
    else:
        raise RuntimeError("Newton iteration cap exceeded")

    _, H = grad_hess(u)
    try:
        ctx.cholesky(H)
        posdef = True
    except ValueError:
        posdef = False
    out = working_context(P)
    return ConifoldResult(
        x_con=tuple(out.exp(out.convert(ui)) for ui in u),
        T_con=out.convert(value(u)) - out.convert(shift),
        newton_iterations=it,
        gradient_norm=out.convert(gnorm),
        hessian_positive=posdef)


# --------------------------------------------------------------------------
# hypersurface model
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PrzyjalkowskiModel:
    f: LaurentPolynomial
    c0_shift: Fraction
    ambient_dim: int         # hypersurface sits in the projective space of
    degree: int              # this dimension and has this degree

    @property
    def expected_T_con(self):
        """(n+1-d) d^{d/(n+1-d)} minus the shift; exact when the exponent is
        an integer."""
        n, d = self.ambient_dim, self.degree
        b = n + 1 - d
        if d % b == 0:
            return Fraction(b * d ** (d // b)) - self.c0_shift
        ctx = working_context(60)
        return b * ctx.root(ctx.mpf(d) ** d, b) - ctx.convert(self.c0_shift)


def przyjalkowski_model(n: int, d: int) -> PrzyjalkowskiModel:
    """Laurent mirror of a degree-d hypersurface in the projective space of
    dimension n, in (n-d) + (d-1) variables; the -delta_{d,n} d! constant is
    carried as metadata, not as a monomial.
    """
    if not 1 <= d <= n or n < 2:
        raise ValueError("need 2 <= n and 1 <= d <= n")
    nx = n - d
    ny = d - 1
    m = nx + ny
    terms = {}
    for i in range(nx):
        e = [0] * m
        e[i] = 1
        terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + 1
    # (y_1 + ... + y_{d-1} + 1)^d / (x_1...x_{nx} y_1...y_{ny})
    for comp in _compositions(d, ny + 1):
        coef = Fraction(factorial(d))
        for k in comp:
            coef /= factorial(k)
        e = [-1] * nx + [comp[j] - 1 for j in range(ny)]
        key = tuple(e)
        terms[key] = terms.get(key, Fraction(0)) + coef
    f = LaurentPolynomial(m, terms)
    shift = Fraction(factorial(d)) if d == n else Fraction(0)
    return PrzyjalkowskiModel(f=f, c0_shift=shift, ambient_dim=n, degree=d)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def model_period_series(model: PrzyjalkowskiModel, N: int) -> QuantumPeriod:
    """Quantum period of the model including the constant shift, so it is
    directly comparable with the geometric series."""
    g = model.f - model.c0_shift
    return constant_term_series(g, N)


# --------------------------------------------------------------------------
# growth diagnostics
# --------------------------------------------------------------------------

def fekete_limit(f: LaurentPolynomial, r: int, N: int, P: int = 50) -> dict:
    """alpha_n = log(Const(f^{rn}))/(rn) plus an exhaustive
    supermultiplicativity check Const(f^{r(a+b)}) >= Const(f^{ra}) Const(f^{rb}).
    """
    if r < 1 or N < 1:
        raise ValueError("need r >= 1 and N >= 1")
    if not all(c >= 0 for c in f.terms.values()):
        raise ValueError("growth diagnostics need nonnegative coefficients")
    cache = PowerCache(f)
    consts = {0: Fraction(1)}
    for n in range(1, N + 1):
        consts[n] = cache.constant_term(r * n)
    zeros = [n for n in range(1, N + 1) if consts[n] == 0]
    ctx = working_context(P)
    alpha = [ctx.log(ctx.convert(consts[n])) / (r * n) if consts[n] else None
             for n in range(1, N + 1)]
    failures = []
    for a in range(1, N):
        for b in range(a, N - a + 1):
            if consts[a + b] < consts[a] * consts[b]:
                failures.append((a, b))
    verdict = "hypothesis violated" if zeros else (
        "supermultiplicative" if not failures else "supermultiplicativity failed")
    return {"alpha": alpha,
            "constants": [consts[n] for n in range(N + 1)],
            "limit_estimate": alpha[-1],
            "supermultiplicative": not failures and not zeros,
            "failures": failures,
            "verdict": verdict}


# --------------------------------------------------------------------------
# spectrum verdicts
# --------------------------------------------------------------------------

def property_o_report(spectrum, r: int, P: int = 50) -> dict:
    """Checks on a multiset of eigenvalues: the spectral radius T is attained
    by T itself with multiplicity one, and every eigenvalue on the circle
    |u| = T is T times an r-th root of unity.
    """
    if not spectrum:
        raise ValueError("empty spectrum")
    if r < 1:
        raise ValueError("index must be positive")
    ctx = working_context(P)
    vals = [ctx.convert(u) for u in spectrum]
    tol = ctx.mpf(10) ** (-P + 15)
    T = max(abs(u) for u in vals)
    at_T = [u for u in vals if abs(u - T) < tol * max(1, T)]
    on_circle = [u for u in vals if abs(abs(u) - T) < tol * max(1, T)]
    prop1 = len(at_T) == 1
    prop2 = True
    for u in on_circle:
        z = u / T
        if abs(z ** r - 1) > tol:
            prop2 = False
    return {"T": T,
            "multiplicity_at_T": len(at_T),
            "circle_count": len(on_circle),
            "property1": prop1,
            "property2": prop2,
            "satisfied": prop1 and prop2,
            "tolerance": tol}
