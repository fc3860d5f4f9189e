"""Schubert calculus for Gr(r,n), its quantum-period series via the
abelian/non-abelian correspondence, the ladder mirror, and the wedge/Satake
machinery connecting both to products of projective spaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .jfun import JSeries, j_projective
from .laurent import LaurentPolynomial
from .mirror import constant_term_series, property_o_report
from .ring import CohomologyRing, GradedVector, KClass, cup, ring_exp
from .scalars import working_context


# --------------------------------------------------------------------------
# partitions and symmetric polynomials (exact, few variables)
# --------------------------------------------------------------------------

def box_partitions(r: int, n: int):
    """Partitions with at most r parts, each at most n-r, as length-r tuples,
    sorted by weight then lexicographically."""
    out = []
    def rec(prefix, maxpart):
        if len(prefix) == r:
            out.append(tuple(prefix))
            return
        for p in range(maxpart + 1):
            rec(prefix + [p], p)
    rec([], n - r)
    out.sort(key=lambda mu: (sum(mu), mu))
    return out


def partition_label(mu) -> str:
    trimmed = [str(p) for p in mu if p]
    return "s" + ".".join(trimmed) if trimmed else "s"


def _poly_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def _poly_mul(a, b, max_deg=None):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if max_deg is not None and sum(e) > max_deg:
                continue
            out[e] = out.get(e, Fraction(0)) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _h_poly(k: int, r: int):
    """Complete homogeneous symmetric polynomial of degree k."""
    if k < 0:
        return {}
    out = {}
    def rec(prefix, rest):
        if len(prefix) == r - 1:
            out[tuple(prefix + [rest])] = Fraction(1)
            return
        for v in range(rest + 1):
            rec(prefix + [v], rest - v)
    rec([], k)
    return out


def schur_polynomial(mu, r: int):
    """s_mu in r variables via the h-determinant."""
    mu = tuple(mu) + (0,) * (r - len(mu))
    total = {}
    for perm in itertools.permutations(range(r)):
        sign = _perm_sign(perm)
        prod = {(0,) * r: Fraction(1)}
        ok = True
        for i in range(r):
            k = mu[i] - i + perm[i]
            if k < 0:
                ok = False
                break
            if k:
                prod = _poly_mul(prod, _h_poly(k, r))
        if ok:
            total = _poly_add(total, {e: sign * c for e, c in prod.items()})
    return total


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def schur_expand(poly, r: int):
    """Writes a symmetric polynomial as a map partition -> coefficient by
    peeling lexicographically-leading monomials."""
    out = {}
    work = {e: c for e, c in poly.items() if c}
    guard = 0
    while work:
        guard += 1
        if guard > 100000:
            raise RuntimeError("Schur expansion did not terminate")
        lead = max(work)
        if any(lead[i] < lead[i + 1] for i in range(r - 1)):
            raise ValueError("input polynomial is not symmetric")
        c = work[lead]
        mu = tuple(lead)
        out[mu] = out.get(mu, Fraction(0)) + c
        work = _poly_add(work, {e: -c * v
                                for e, v in schur_polynomial(mu, r).items()})
    return {mu: c for mu, c in out.items() if c}


# --------------------------------------------------------------------------
# the Schubert ring
# --------------------------------------------------------------------------

def schubert_ring(r: int, n: int) -> CohomologyRing:
    """Cohomology of Gr(r,n) on the Schubert basis indexed by partitions in
    the r x (n-r) box; products are Schur expansions with out-of-box terms
    dropped (they lie in the defining ideal)."""
    if not 1 <= r <= n - 1:
        raise ValueError("need 1 <= r <= n-1")
    parts = box_partitions(r, n)
    index = {mu: i for i, mu in enumerate(parts)}
    dim = r * (n - r)
    spolys = {mu: schur_polynomial(mu, r) for mu in parts}

    cup_table = {}
    for i, mu in enumerate(parts):
        for j in range(i, len(parts)):
            nu = parts[j]
            if sum(mu) + sum(nu) > dim:
                continue
            prod = _poly_mul(spolys[mu], spolys[nu])
            expansion = schur_expand(prod, r)
            entries = tuple((index[lam], c)
                            for lam, c in sorted(expansion.items())
                            if lam[0] <= n - r)
            if entries:
                cup_table[(i, j)] = entries

    integral = tuple(Fraction(1) if mu == ((n - r),) * r else Fraction(0)
                     for mu in parts)
    c1 = tuple(Fraction(n) if mu == (1,) + (0,) * (r - 1) else Fraction(0)
               for mu in parts)
    chTF = _expand_in_basis(_ch_tangent_poly(r, n, dim), r, n, parts, index)
    return CohomologyRing(
        name=f"Gr({r},{n})",
        complex_dimension=dim,
        basis=tuple(partition_label(mu) for mu in parts),
        degrees=tuple(sum(mu) for mu in parts),
        cup_table=cup_table,
        integral=integral,
        c1_coeffs=c1,
        chTF_coeffs=chTF,
        fano_index=n)


def _exp_series_poly(var: int, r: int, scale: int, max_deg: int):
    """exp(scale * x_var) truncated at total degree max_deg."""
    out = {}
    for k in range(max_deg + 1):
        e = [0] * r
        e[var] = k
        out[tuple(e)] = Fraction(scale ** k, factorial(k))
    return out


def _ch_tangent_poly(r: int, n: int, max_deg: int):
    """ch(T) = ch(S^dual) (n - ch(S)) with Chern roots x_i of S^dual."""
    pos = {}
    neg = {}
    for i in range(r):
        pos = _poly_add(pos, _exp_series_poly(i, r, 1, max_deg))
        neg = _poly_add(neg, _exp_series_poly(i, r, -1, max_deg))
    rhs = _poly_add({(0,) * r: Fraction(n)},
                    {e: -c for e, c in neg.items()})
    return _poly_mul(pos, rhs, max_deg=max_deg)


def _expand_in_basis(poly, r, n, parts, index):
    coeffs = [Fraction(0)] * len(parts)
    for mu, c in schur_expand(poly, r).items():
        if mu[0] <= n - r:
            coeffs[index[mu]] = c
    return tuple(coeffs)


# --------------------------------------------------------------------------
# wedge classes and the Satake identification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AntiSymmetricElement:
    """Element of the r-fold wedge of the projective-space cohomology, in
    the basis of strictly decreasing exponent tuples."""
    r: int
    n: int
    coeffs: dict     # (k_1 > ... > k_r) -> coefficient

    def __post_init__(self):
        for K in self.coeffs:
            if len(K) != self.r:
                raise ValueError("tuple arity mismatch")
            if any(not 0 <= k <= self.n - 1 for k in K):
                raise ValueError("exponent out of range")
            if any(K[i] <= K[i + 1] for i in range(self.r - 1)):
                raise ValueError("keys must be strictly decreasing")


def antisymmetric_from_polynomial(poly, r: int, n: int,
                                  check_cancellation=True) -> AntiSymmetricElement:
    """Collapses an antisymmetric polynomial to wedge-basis coordinates.

    Each alternant contributes all r! of its monomials, hence the division;
    monomials with repeated exponents must cancel and are asserted to.
    """
    acc = {}
    residue = {}
    for e, c in poly.items():
        if len(set(e)) == r:
            K = tuple(sorted(e, reverse=True))
            sign = _sort_sign(e)
            acc[K] = acc.get(K, 0) + sign * c
        else:
            residue[e] = residue.get(e, 0) + c
    if check_cancellation:
        bad = {e: c for e, c in residue.items() if c}
        if bad:
            raise ArithmeticError(f"not antisymmetric: residue at {bad}")
    rfact = factorial(r)
    coeffs = {K: c / rfact for K, c in acc.items() if c}
    return AntiSymmetricElement(r=r, n=n, coeffs=coeffs)


def _sort_sign(e) -> int:
    order = sorted(range(len(e)), key=lambda i: -e[i])
    return _perm_sign(tuple(order))


def wedge_from_vectors(vectors, n: int) -> AntiSymmetricElement:
    """v_1 wedge ... wedge v_r for coefficient sequences over 0..n-1; the
    wedge coordinate at K is the minor det(v_i[k_j])."""
    r = len(vectors)
    coeffs = {}
    for K in itertools.combinations(range(n - 1, -1, -1), r):
        det = 0
        for perm in itertools.permutations(range(r)):
            term = _perm_sign(perm)
            for i in range(r):
                term = term * vectors[i][K[perm[i]]]
            det = det + term
        if det:
            coeffs[K] = det
    return AntiSymmetricElement(r=r, n=n, coeffs=coeffs)


def satake_map(a: AntiSymmetricElement, R: CohomologyRing) -> GradedVector:
    """(k_1,...,k_r) goes to the Schubert class of mu_i = k_i - (r - i)."""
    parts = box_partitions(a.r, a.n)
    index = {mu: i for i, mu in enumerate(parts)}
    if R.rank != len(parts):
        raise ValueError("ring does not match (r, n)")
    out = [0] * R.rank
    for K, c in a.coeffs.items():
        mu = tuple(K[i] - (a.r - 1 - i) for i in range(a.r))
        out[index[mu]] = out[index[mu]] + c
    return R.vector(tuple(out))


# --------------------------------------------------------------------------
# J-series via the abelian/non-abelian correspondence
# --------------------------------------------------------------------------

def bcfk_j_series(r: int, n: int, D: int, P: int = 50) -> JSeries:
    """J-series of Gr(r,n) from the product-of-projective-spaces series.

    The degree-nm coefficient is assembled exactly: for each ordered
    multidegree d with |d| = m the twisted product
    prod_{i<j}(x_i - x_j + d_i - d_j) * prod_i Jcoeff_{d_i}(x_i) is summed,
    the antisymmetric total is expanded in wedge coordinates and pushed
    through the Satake identification.  The phase bookkeeping (xi powers and
    the sigma_1 exponentials) is done in big-complex arithmetic and the
    imaginary parts are asserted small rather than assumed zero.
    """
    if D < 0:
        raise ValueError("negative truncation")
    R = schubert_ring(r, n)
    mmax = D // n
    JP = j_projective(n, n * mmax) if mmax > 0 else j_projective(n, n)
    glists = {d: JP.coefficient(n * d).coeffs for d in range(mmax + 1)}

    ctx = working_context(P + 10)
    tol = ctx.mpf(10) ** (-P + 12)
    # e^{-i pi (r-1) sigma_1} e^{+i pi (r-1) sigma_1}: algebraically the unit;
    # computed numerically as a deliberate phase-error tripwire
    sigma1 = Fraction(1, n) * R.c1
    phase = ctx.mpc(0, 1) * ctx.pi * (r - 1)
    E = cup(ring_exp(sigma1.map_coeffs(lambda c: -phase * ctx.convert(c))),
            ring_exp(sigma1.map_coeffs(lambda c: phase * ctx.convert(c))))

    out = working_context(P)
    coeffs = {0: R.unit()}
    for m in range(1, mmax + 1):
        poly = {}
        for d in _compositions_of(m, r):
            poly = _poly_add(poly, _twisted_term(d, glists, r, n))
        wedge = antisymmetric_from_polynomial(poly, r, n)
        vec = satake_map(wedge, R)
        zeta = ctx.expjpi((r - 1) * m)
        jm = zeta * cup(E, vec.map_coeffs(ctx.convert))
        worst = max((abs(ctx.im(c)) for c in jm.coeffs), default=ctx.mpf(0))
        if worst >= tol:
            raise ArithmeticError(
                f"imaginary residue {worst} at degree {n*m}: phase bug")
        coeffs[n * m] = jm.map_coeffs(lambda c: out.mpf(ctx.re(c)))
    return JSeries(ring=R, D=D, fano_index=n, coeffs=coeffs)


def _compositions_of(m, parts):
    if parts == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in _compositions_of(m - first, parts - 1):
            yield (first,) + rest


def _twisted_term(d, glists, r, n):
    poly = {}
    for exps in itertools.product(*(range(n) for _ in range(r))):
        c = Fraction(1)
        for i in range(r):
            c *= glists[d[i]][exps[i]]
            if not c:
                break
        if c:
            poly[exps] = c
    for i in range(r):
        for j in range(i + 1, r):
            poly = _mul_linear(poly, i, j, d[i] - d[j], n)
    return poly


def _mul_linear(poly, i, j, const, n):
    """Multiply by (x_i - x_j + const), truncating each exponent below n."""
    out = {}
    for e, c in poly.items():
        if const:
            k = tuple(e)
            out[k] = out.get(k, Fraction(0)) + const * c
        if e[i] + 1 < n:
            k = tuple(x + 1 if t == i else x for t, x in enumerate(e))
            out[k] = out.get(k, Fraction(0)) + c
        if e[j] + 1 < n:
            k = tuple(x + 1 if t == j else x for t, x in enumerate(e))
            out[k] = out.get(k, Fraction(0)) - c
    return {e: c for e, c in out.items() if c}


# --------------------------------------------------------------------------
# ladder mirror
# --------------------------------------------------------------------------

def ehx_mirror(r: int, n: int) -> LaurentPolynomial:
    """Ladder superpotential on the r x (n-r) grid:
    X_11 + sum of rightward and downward ratios + 1/X_{r,n-r}.

    Reduces to the projective-space mirror at r = 1 up to a unimodular
    monomial change of variables.
    """
    if not 1 <= r <= n - 1:
        raise ValueError("need 1 <= r <= n-1")
    cols = n - r
    m = r * cols
    def vid(i, j):
        return (i - 1) * cols + (j - 1)
    terms = {}
    def add(pairs):
        e = [0] * m
        for v, p in pairs:
            e[v] += p
        terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + 1
    add([(vid(1, 1), 1)])
    for i in range(1, r + 1):
        for j in range(1, cols):
            add([(vid(i, j + 1), 1), (vid(i, j), -1)])
    for i in range(1, r):
        for j in range(1, cols + 1):
            add([(vid(i + 1, j), 1), (vid(i, j), -1)])
    add([(vid(r, cols), -1)])
    return LaurentPolynomial(m, terms)


def ehx_constant_terms(r: int, n: int, N: int, budget: int = 6_000_000):
    """G_d = Const(W^d)/d!, exact."""
    return constant_term_series(ehx_mirror(r, n), N, budget=budget)


# --------------------------------------------------------------------------
# spectrum of first-Chern-class quantum multiplication
# --------------------------------------------------------------------------

def grassmann_spectrum(r: int, n: int, P: int = 50) -> dict:
    """All candidate eigenvalues xi*(v_{k_1}+...+v_{k_r}) with
    v_k = n e^{-2 pi i k/n}, the spectral radius, its maximizers, and the
    two-part eigenvalue verdict."""
    if not 1 <= r <= n - 1:
        raise ValueError("need 1 <= r <= n-1")
    ctx = working_context(P)
    xi = ctx.expjpi(ctx.mpf(r - 1) / n)
    vk = [n * ctx.expjpi(ctx.mpf(-2 * k) / n) for k in range(n)]
    tuples = [tuple(K) for K in
              itertools.combinations(range(n - 1, -1, -1), r)]
    eigenvalues = [xi * ctx.fsum(vk[k] for k in K) for K in tuples]
    T_formula = n * ctx.sin(ctx.pi * r / n) / ctx.sin(ctx.pi / n)
    T = max(abs(v) for v in eigenvalues)
    tol = ctx.mpf(10) ** (-P + 15)
    maximizers = [K for K, v in zip(tuples, eigenvalues)
                  if abs(abs(v) - T) < tol * T]
    consecutive = all(_is_consecutive_mod(K, n) for K in maximizers)
    report = property_o_report(eigenvalues, n, P=P)
    return {"tuples": tuples,
            "eigenvalues": eigenvalues,
            "T": T,
            "T_formula": T_formula,
            "maximizers": maximizers,
            "maximizers_consecutive": consecutive,
            "property_o": report}


def _is_consecutive_mod(K, n) -> bool:
    s = set(K)
    return any(all((j + t) % n in s for t in range(len(K))) for j in range(n))


# --------------------------------------------------------------------------
# Euler pairings and the bundle classes E_mu
# --------------------------------------------------------------------------

def chi_projective_line_bundles(l: int, k: int, n: int) -> Fraction:
    """Euler pairing of O(l), O(k) on the projective space with n
    coordinates: the degree-(n-1) binomial polynomial in k-l."""
    m = k - l
    num = Fraction(1)
    for j in range(1, n):
        num *= m + j
    return num / factorial(n - 1)


def euler_matrix_grassmann(mu, nu, r: int, n: int) -> Fraction:
    """det of the r x r matrix of projective-space Euler pairings at the
    shifted exponents l_i = mu_i + r - i, k_j = nu_j + r - j."""
    mu = tuple(mu) + (0,) * (r - len(mu))
    nu = tuple(nu) + (0,) * (r - len(nu))
    l = [mu[i] + r - 1 - i for i in range(r)]
    k = [nu[j] + r - 1 - j for j in range(r)]
    det = Fraction(0)
    for perm in itertools.permutations(range(r)):
        term = Fraction(_perm_sign(perm))
        for i in range(r):
            term *= chi_projective_line_bundles(l[i], k[perm[i]], n)
        det += term
    return det


def e_mu_class(R: CohomologyRing, mu, r: int, n: int,
               label: str | None = None) -> KClass:
    """K-class with Chern character the Schur polynomial of mu evaluated at
    the exponentials of the tautological Chern roots."""
    dim = r * (n - r)
    spoly = schur_polynomial(mu, r)
    total = {}
    for e, c in spoly.items():
        term = {(0,) * r: c}
        for i in range(r):
            if e[i]:
                term = _poly_mul(term, _exp_series_poly(i, r, e[i], dim),
                                 max_deg=dim)
        total = _poly_add(total, term)
    parts = box_partitions(r, n)
    index = {p: i for i, p in enumerate(parts)}
    ch = _expand_in_basis(total, r, n, parts, index)
    suffix = partition_label(mu)[1:]
    return KClass(ch=R.vector(ch), label=label or (f"E{suffix}" if suffix else "E"))
