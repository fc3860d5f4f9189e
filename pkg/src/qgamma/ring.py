"""Finite graded cohomology rings with exact structure constants.

A ring stores an ordered basis of pure-degree classes (degree p means the
class lives in H^{2p}), a cup-product table over exact rationals, the integral
of each basis class, the first Chern class, the Chern character of the tangent
bundle, and the Fano index.  Vectors over a ring carry either exact rational
or big-complex coefficients; all operations are pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

from .scalars import ConstantTable


class RingMismatch(ValueError):
    pass


def _fraction_from_string(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class CohomologyRing:
    name: str
    complex_dimension: int
    basis: tuple            # labels
    degrees: tuple          # degree p per basis element
    cup_table: dict         # (i, j) -> tuple of (k, Fraction), i <= j
    integral: tuple         # Fraction per basis element
    c1_coeffs: tuple        # Fraction per basis element, pure degree 1
    chTF_coeffs: tuple      # Fraction per basis element
    fano_index: int

    # -- basic accessors -------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.basis)

    def zero(self) -> "GradedVector":
        return GradedVector(self, (0,) * self.rank)

    def unit(self) -> "GradedVector":
        return self.basis_vector(0) if self.degrees[0] == 0 else self._unit_slow()

    def _unit_slow(self) -> "GradedVector":
        i = self.degrees.index(0)
        return self.basis_vector(i)

    def basis_vector(self, i: int) -> "GradedVector":
        co = [0] * self.rank
        co[i] = Fraction(1)
        return GradedVector(self, tuple(co))

    def vector(self, coeffs) -> "GradedVector":
        if len(coeffs) != self.rank:
            raise ValueError("coefficient count does not match basis")
        return GradedVector(self, tuple(coeffs))

    @property
    def c1(self) -> "GradedVector":
        return GradedVector(self, self.c1_coeffs)

    @property
    def chTF(self) -> "GradedVector":
        return GradedVector(self, self.chTF_coeffs)

    def point_class(self) -> "HomologyVector":
        """[pt]: the homology class dual to the unit; extracts H^0-components."""
        co = [0] * self.rank
        co[self.degrees.index(0)] = Fraction(1)
        return HomologyVector(self, tuple(co))

    # -- products ---------------------------------------------------------

    def cup_basis(self, i: int, j: int):
        key = (i, j) if i <= j else (j, i)
        return self.cup_table.get(key, ())

    def integrate(self, v: "GradedVector"):
        total = 0
        for c, w in zip(v.coeffs, self.integral):
            if c and w:
                total = total + c * w
        return total

    def poincare_pairing(self, a: "GradedVector", b: "GradedVector"):
        return self.integrate(cup(a, b))

    def c1_matrix(self):
        """Matrix of cup-by-c1: column j holds c1 cup basis_j in basis coords."""
        cols = []
        for j in range(self.rank):
            col = [Fraction(0)] * self.rank
            for i, ci in enumerate(self.c1_coeffs):
                if not ci:
                    continue
                for k, s in self.cup_basis(i, j):
                    col[k] += ci * s
            cols.append(col)
        return cols


@dataclass(frozen=True)
class GradedVector:
    ring: CohomologyRing
    coeffs: tuple

    def __add__(self, other: "GradedVector") -> "GradedVector":
        _same_ring(self, other)
        return GradedVector(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        _same_ring(self, other)
        return GradedVector(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, scalar) -> "GradedVector":
        return GradedVector(self.ring, tuple(scalar * c for c in self.coeffs))

    def __neg__(self) -> "GradedVector":
        return GradedVector(self.ring, tuple(-c for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def degree_part(self, p: int) -> "GradedVector":
        return GradedVector(self.ring, tuple(
            c if d == p else 0 for c, d in zip(self.coeffs, self.ring.degrees)))

    def component(self, p: int):
        """Coefficients of the degree-p part (list aligned with basis)."""
        return [c if d == p else 0 for c, d in zip(self.coeffs, self.ring.degrees)]

    def h0(self):
        """The H^0-component (coefficient of the unit class)."""
        i = self.ring.degrees.index(0)
        return self.coeffs[i]

    def scale_by_degree(self, factors) -> "GradedVector":
        """Multiply the degree-p part by factors[p]."""
        return GradedVector(self.ring, tuple(
            factors[d] * c for c, d in zip(self.coeffs, self.ring.degrees)))

    def map_coeffs(self, fn) -> "GradedVector":
        return GradedVector(self.ring, tuple(fn(c) for c in self.coeffs))


@dataclass(frozen=True)
class HomologyVector:
    """Dual-basis coefficients; pairs degreewise with cohomology vectors."""
    ring: CohomologyRing
    coeffs: tuple

    def pair(self, v: GradedVector):
        _same_ring(self, v)
        total = 0
        for a, b in zip(self.coeffs, v.coeffs):
            if a and b:
                total = total + a * b
        return total

    def __rmul__(self, scalar) -> "HomologyVector":
        return HomologyVector(self.ring, tuple(scalar * c for c in self.coeffs))

    def __add__(self, other: "HomologyVector") -> "HomologyVector":
        _same_ring(self, other)
        return HomologyVector(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))


@dataclass(frozen=True)
class KClass:
    """K-theory class presented by its Chern character (exact rationals)."""
    ch: GradedVector
    label: str = ""

    def __post_init__(self):
        r = self.ch.h0()
        if Fraction(r).denominator != 1:
            raise ValueError("virtual rank must be an integer")

    @property
    def ring(self) -> CohomologyRing:
        return self.ch.ring

    def dual(self) -> "KClass":
        flipped = self.ch.scale_by_degree([(-1) ** p for p in range(max(self.ch.ring.degrees) + 1)])
        return KClass(flipped, label=f"{self.label}^v" if self.label else "")


def _same_ring(a, b):
    if a.ring is not b.ring:
        raise RingMismatch("vectors live on different rings")


def cup(a: GradedVector, b: GradedVector) -> GradedVector:
    _same_ring(a, b)
    R = a.ring
    out = [0] * R.rank
    for i, ca in enumerate(a.coeffs):
        if not ca:
            continue
        for j, cb in enumerate(b.coeffs):
            if not cb:
                continue
            for k, s in R.cup_basis(i, j):
                out[k] = out[k] + ca * cb * s
    return GradedVector(R, tuple(out))


def cup_power(v: GradedVector, m: int) -> GradedVector:
    out = v.ring.unit()
    for _ in range(m):
        out = cup(out, v)
    return out


def ring_exp(v: GradedVector) -> GradedVector:
    """exp of a nilpotent vector of positive degrees (finite sum).

    Exact inputs stay exact; Fraction scalars convert cleanly against mpf/mpc.
    """
    R = v.ring
    top = max(R.degrees)
    acc = R.unit()
    term = R.unit()
    for m in range(1, top + 1):
        term = cup(term, v)
        if term.is_zero():
            break
        acc = acc + Fraction(1, factorial(m)) * term
    return acc


# --------------------------------------------------------------------------
# ring builders
# --------------------------------------------------------------------------

def build_projective_ring(n: int) -> CohomologyRing:
    """Cohomology of the projective space with n homogeneous coordinates.

    Basis 1, h, ..., h^(n-1) with h the hyperplane class; the tangent Chern
    character n*e^h - 1 comes from the standard rank-reduction sequence.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    dim = n - 1
    basis = tuple(f"h^{p}" if p else "1" for p in range(n))
    degrees = tuple(range(n))
    cup_table = {}
    for i in range(n):
        for j in range(i, n):
            if i + j < n:
                cup_table[(i, j)] = ((i + j, Fraction(1)),)
    integral = tuple(Fraction(1) if p == dim else Fraction(0) for p in range(n))
    c1 = tuple(Fraction(n) if p == 1 else Fraction(0) for p in range(n))
    # n*e^h - 1, truncated at h^(n-1)
    chTF = tuple(Fraction(n, factorial(p)) - (1 if p == 0 else 0) for p in range(n))
    return CohomologyRing(
        name=f"P{dim}", complex_dimension=dim, basis=basis, degrees=degrees,
        cup_table=cup_table, integral=integral, c1_coeffs=c1, chTF_coeffs=chTF,
        fano_index=n)


def tensor_ring(R1: CohomologyRing, R2: CohomologyRing) -> CohomologyRing:
    """Product space: basis pairs, degrees add, structure constants multiply."""
    n1, n2 = R1.rank, R2.rank

    def idx(i, j):
        return i * n2 + j

    basis = []
    degrees = []
    for i in range(n1):
        for j in range(n2):
            l1, l2 = R1.basis[i], R2.basis[j]
            basis.append(l1 if l2 == "1" else (l2 if l1 == "1" else f"{l1}|{l2}"))
            degrees.append(R1.degrees[i] + R2.degrees[j])
    cup_table = {}
    for i1 in range(n1):
        for j1 in range(i1, n1):
            t1 = R1.cup_basis(i1, j1)
            for i2 in range(n2):
                for j2 in range(n2):
                    a, b = idx(i1, i2), idx(j1, j2)
                    if a > b:
                        continue
                    # guard the i1 == j1 diagonal from double counting
                    if i1 == j1 and idx(j1, j2) < idx(i1, i2):
                        continue
                    t2 = R2.cup_basis(i2, j2)
                    if not t1 or not t2:
                        continue
                    entries = tuple((idx(k1, k2), s1 * s2)
                                    for k1, s1 in t1 for k2, s2 in t2)
                    if entries:
                        cup_table[(a, b)] = entries
    integral = tuple(R1.integral[i] * R2.integral[j]
                     for i in range(n1) for j in range(n2))
    c1 = [Fraction(0)] * (n1 * n2)
    chtf = [Fraction(0)] * (n1 * n2)
    u1 = R1.degrees.index(0)
    u2 = R2.degrees.index(0)
    for i in range(n1):
        c1[idx(i, u2)] += R1.c1_coeffs[i]
        chtf[idx(i, u2)] += R1.chTF_coeffs[i]
    for j in range(n2):
        c1[idx(u1, j)] += R2.c1_coeffs[j]
        chtf[idx(u1, j)] += R2.chTF_coeffs[j]
    return CohomologyRing(
        name=f"{R1.name}x{R2.name}",
        complex_dimension=R1.complex_dimension + R2.complex_dimension,
        basis=tuple(basis), degrees=tuple(degrees), cup_table=cup_table,
        integral=integral, c1_coeffs=tuple(c1), chTF_coeffs=tuple(chtf),
        fano_index=gcd(R1.fano_index, R2.fano_index))


def build_hypersurface_ambient_ring(n: int, a: int) -> CohomologyRing:
    """Ambient part of a smooth degree-a hypersurface Y in the projective
    space of dimension n: the image of restriction, spanned by hyperplane
    powers 1, h, ..., h^(n-1), with int_Y h^(n-1) = a.
    """
    if not 1 <= a <= n:
        raise ValueError("need 1 <= a <= n for a Fano hypersurface")
    if n < 2:
        raise ValueError("dimension-0 hypersurface has no ring here")
    dim = n - 1
    basis = tuple(f"h^{p}" if p else "1" for p in range(n))
    degrees = tuple(range(n))
    cup_table = {}
    for i in range(n):
        for j in range(i, n):
            if i + j < n:
                cup_table[(i, j)] = ((i + j, Fraction(1)),)
    integral = tuple(Fraction(a) if p == dim else Fraction(0) for p in range(n))
    r = n + 1 - a
    c1 = tuple(Fraction(r) if p == 1 else Fraction(0) for p in range(n))
    # restriction of the ambient tangent character minus the normal line bundle
    chTF = tuple(Fraction(n + 1, factorial(p)) - (1 if p == 0 else 0)
                 - Fraction(a ** p, factorial(p)) for p in range(n))
    return CohomologyRing(
        name=f"Y({n},{a})", complex_dimension=dim, basis=basis, degrees=degrees,
        cup_table=cup_table, integral=integral, c1_coeffs=c1, chTF_coeffs=chTF,
        fano_index=r)


def point_ring() -> CohomologyRing:
    return build_projective_ring(1)


# --------------------------------------------------------------------------
# Gamma class, modified Chern character, pairing, HRR
# --------------------------------------------------------------------------

def gamma_exponent_coeffs(C: ConstantTable, top: int, dual: bool = False):
    """Coefficients g_k with log Gamma-class = sum_k g_k * (k! ch_k)-free form.

    Returns the per-degree multipliers applied to ch_k(TF).  From
    log Gamma(1+x) = -euler_gamma*x + sum_{k>=2} (-1)^k zeta(k) x^k / k and
    ch_k = (power sum)/k!, the degree-k multiplier is (-1)^k (k-1)! zeta(k);
    the dual class (all Chern roots negated) flips by (-1)^k per degree.
    """
    ctx = C.ctx
    out = {1: -C.gamma if not dual else C.gamma}
    for k in range(2, top + 1):
        g = (-1) ** k * factorial(k - 1) * C.require_zeta(k)
        if dual:
            g = (-1) ** k * g
        out[k] = ctx.mpf(g)
    return out


def gamma_class(R: CohomologyRing, C: ConstantTable, dual: bool = False) -> GradedVector:
    """Multiplicative Gamma class of the tangent bundle, as a basis vector.

    Computed as exp(-euler_gamma*c1 + sum_{k>=2} (-1)^(k-1)(k-1)! zeta(k) ch_k(TF)).
    `dual=True` builds the class with all Chern roots negated.
    """
    top = R.complex_dimension
    if top == 0:
        return R.unit().map_coeffs(C.ctx.convert)
    if C.K_max < top:
        raise ValueError("constant table does not cover zeta up to the dimension")
    mult = gamma_exponent_coeffs(C, top, dual=dual)
    expo = R.zero()
    for k in range(1, top + 1):
        part = R.chTF.degree_part(k)
        if part.is_zero():
            continue
        expo = expo + mult[k] * part
    # exp of the nilpotent exponent
    acc = R.unit().map_coeffs(C.ctx.convert)
    term = R.unit()
    for m in range(1, top + 1):
        term = cup(term, expo)
        acc = acc + (C.ctx.mpf(1) / factorial(m)) * term
    return acc


def modified_chern(E: KClass, C: ConstantTable) -> GradedVector:
    """Chern character rescaled degreewise by (2 pi i)^p."""
    ctx = C.ctx
    top = max(E.ring.degrees)
    two_pi_i = ctx.mpc(0, 2 * C.pi)
    factors = [two_pi_i ** p for p in range(top + 1)]
    return E.ch.scale_by_degree(factors)


def euler_pairing_vector(a: GradedVector, C: ConstantTable) -> GradedVector:
    """(2 pi)^(-dim) * e^(pi i c1) cup e^(pi i mu) a, the left slot of [.,.)."""
    R = a.ring
    ctx = C.ctx
    n = R.complex_dimension
    half = Fraction(n, 2)
    # e^(pi i mu): degree p scales by e^(pi i (p - n/2))
    mu_factors = [ctx.expjpi(ctx.convert(Fraction(p) - half)) for p in range(max(R.degrees) + 1)]
    twisted = a.scale_by_degree(mu_factors)
    # e^(pi i c1) as an exact-nilpotent exponential with complex scalars
    acc = twisted
    term = twisted
    pii = ctx.mpc(0, C.pi)
    for m in range(1, n + 1):
        term = cup(term, R.c1)
        acc = acc + (pii ** m / factorial(m)) * term
    return ((1 / (2 * C.pi)) ** n) * acc


def pair_bracket(a: GradedVector, b: GradedVector, C: ConstantTable):
    """Non-symmetric pairing [a, b): (2 pi)^(-dim) int (e^(pi i c1) e^(pi i mu) a) cup b."""
    _same_ring(a, b)
    left = euler_pairing_vector(a, C)
    val = a.ring.integrate(cup(left, b))
    return C.ctx.mpc(val)


def todd_class(R: CohomologyRing) -> GradedVector:
    """Todd class from the stored tangent Chern character, exactly.

    Uses log td = sum_m c_m p_m with p_m the Chern-root power sums
    (p_m = m! ch_m) and c_m the series coefficients of log(x/(1-e^(-x))).
    """
    top = R.complex_dimension
    # series x/(1-e^(-x)) = sum b_m x^m, exact
    denom = [Fraction((-1) ** m, factorial(m + 1)) for m in range(top + 1)]  # (1-e^(-x))/x
    b = [Fraction(0)] * (top + 1)
    b[0] = Fraction(1)
    for m in range(1, top + 1):
        s = Fraction(0)
        for j in range(1, m + 1):
            s += denom[j] * b[m - j]
        b[m] = -s
    # c = log(series b)
    c = [Fraction(0)] * (top + 1)
    for m in range(1, top + 1):
        s = b[m]
        for j in range(1, m):
            s -= Fraction(j, m) * c[j] * b[m - j]
        c[m] = s
    expo = R.zero()
    for m in range(1, top + 1):
        pm = factorial(m) * R.chTF.degree_part(m)
        if not pm.is_zero():
            expo = expo + c[m] * pm
    acc = R.unit()
    term = R.unit()
    for m in range(1, top + 1):
        term = cup(term, expo)
        acc = acc + Fraction(1, factorial(m)) * term
    return acc


def hrr_record(E1: KClass, E2: KClass, C: ConstantTable):
    """Euler pairing both ways: Todd route (exact) and Gamma route (numeric)."""
    _same_ring(E1.ch, E2.ch)
    R = E1.ring
    td = todd_class(R)
    chi_todd = R.integrate(cup(cup(E1.dual().ch, E2.ch), td))
    g = gamma_class(R, C)
    v1 = cup(g, modified_chern(E1, C))
    v2 = cup(g, modified_chern(E2, C))
    chi_gamma = pair_bracket(v1, v2, C)
    return {"chi_todd": chi_todd, "chi_gamma": chi_gamma}


def line_bundle(R: CohomologyRing, k: int, label: str = "") -> KClass:
    """O(k) on a ring with a single hyperplane generator in degree 1."""
    h = R.basis_vector(R.degrees.index(1))
    return KClass(ring_exp(k * h), label=label or f"O({k})")


# --------------------------------------------------------------------------
# JSON serialization
# --------------------------------------------------------------------------

def ring_to_json_dict(R: CohomologyRing) -> dict:
    rk = R.rank
    cup_rows = []
    for i in range(rk):
        row = []
        for j in range(rk):
            out = [Fraction(0)] * rk
            for k, s in R.cup_basis(i, j):
                out[k] += s
            row.append([str(x) for x in out])
        cup_rows.append(row)
    return {
        "name": R.name,
        "dimension": R.complex_dimension,
        "basis": [{"label": l, "degree": d} for l, d in zip(R.basis, R.degrees)],
        "cup_table": cup_rows,
        "integral": [str(x) for x in R.integral],
        "c1": [str(x) for x in R.c1_coeffs],
        "chTF": [str(x) for x in R.chTF_coeffs],
        "index": R.fano_index,
    }


def ring_from_json_dict(doc: dict) -> CohomologyRing:
    basis = tuple(b["label"] for b in doc["basis"])
    degrees = tuple(int(b["degree"]) for b in doc["basis"])
    rk = len(basis)
    cup_table = {}
    for i in range(rk):
        for j in range(i, rk):
            entries = tuple((k, _fraction_from_string(s))
                            for k, s in enumerate(doc["cup_table"][i][j])
                            if _fraction_from_string(s) != 0)
            if entries:
                cup_table[(i, j)] = entries
    return CohomologyRing(
        name=doc["name"], complex_dimension=int(doc["dimension"]), basis=basis,
        degrees=degrees, cup_table=cup_table,
        integral=tuple(_fraction_from_string(s) for s in doc["integral"]),
        c1_coeffs=tuple(_fraction_from_string(s) for s in doc["c1"]),
        chTF_coeffs=tuple(_fraction_from_string(s) for s in doc["chTF"]),
        fano_index=int(doc["index"]))


def ring_to_json(R: CohomologyRing) -> str:
    return json.dumps(ring_to_json_dict(R), sort_keys=True, indent=2)


def ring_from_json(text: str) -> CohomologyRing:
    return ring_from_json_dict(json.loads(text))
