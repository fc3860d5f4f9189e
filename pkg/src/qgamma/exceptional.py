"""Gram matrices and mutations for collections of asymptotic classes, and
the phase window that assigns line bundles on projective space.

A MarkedBasis keeps every class as an exact integer combination of the
initial numeric classes.  Mutation coefficients come from the pairing and
are snapped to the nearest integer (the residual is policed), so mutation
orbits act on integer rows and invert exactly; the numeric classes are
rebuilt from the rows, never accumulated in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import GradedVector, KClass, cup, gamma_class, line_bundle, \
    modified_chern, pair_bracket
from .scalars import ConstantTable, make_constants, working_context


_TABLES = {}


def _constants(P: int) -> ConstantTable:
    if P not in _TABLES:
        _TABLES[P] = make_constants(P=P)
    return _TABLES[P]


@dataclass(frozen=True)
class MarkedBasis:
    base: tuple     # fixed numeric classes spanning the lattice
    rows: tuple     # integer rows: class_i = sum_j rows[i][j] * base[j]
    marks: tuple    # eigenvalue attached to each class
    labels: tuple
    precision: int = 50

    def __post_init__(self):
        if not (len(self.rows) == len(self.marks) == len(self.labels)):
            raise ValueError("rows, marks and labels must align")
        for row in self.rows:
            if len(row) != len(self.base):
                raise ValueError("row width does not match the base")
            if any(x != int(x) for x in row):
                raise ValueError("coordinates must be integers")

    def __len__(self):
        return len(self.rows)

    def classes(self):
        """Numeric classes rebuilt from the integer rows, fixed order."""
        out = []
        for row in self.rows:
            acc = self.base[0].ring.zero()
            for x, b in zip(row, self.base):
                if x:
                    acc = acc + x * b
            out.append(acc)
        return out


def beilinson_collection(n: int):
    """Chern characters of the twisting sheaves O(k), k = 0..n-1."""
    if n < 2:
        raise ValueError("need n >= 2")
    from .ring import build_projective_ring
    R = build_projective_ring(n)
    return [line_bundle(R, k, label=f"O({k})") for k in range(n)]


def eigenvalue_marks(n: int, P: int = 50):
    """First-Chern-class eigenvalues n*e^(-2 pi i k/n), k = 0..n-1."""
    ctx = working_context(P)
    return tuple(n * ctx.expjpi(Fraction(-2 * k, n)) for k in range(n))


def marked_beilinson_basis(n: int, P: int = 50) -> MarkedBasis:
    """MarkedBasis of the Gamma-weighted twisting sheaves on P^(n-1)."""
    C = _constants(P)
    gam = None
    base = []
    labels = []
    for E in beilinson_collection(n):
        if gam is None:
            gam = gamma_class(E.ring, C)
        base.append(cup(gam, modified_chern(E, C)))
        labels.append(E.label)
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return MarkedBasis(base=tuple(base), rows=ident,
                       marks=eigenvalue_marks(n, P), labels=tuple(labels),
                       precision=P)


def _numeric_classes(obj, C):
    if isinstance(obj, MarkedBasis):
        return obj.classes()
    classes = []
    gam = None
    for x in obj:
        if isinstance(x, KClass):
            if gam is None:
                gam = gamma_class(x.ring, C)
            classes.append(cup(gam, modified_chern(x, C)))
        elif isinstance(x, GradedVector):
            classes.append(x)
        else:
            raise TypeError("expected MarkedBasis, K-classes, or ring vectors")
    return classes


def gram_matrix(basis, C: ConstantTable | None = None, P: int = 50) -> dict:
    """Pairing matrix [A_i, A_j) with integer snapping.

    Accepts a MarkedBasis, a list of K-classes (weighted by the Gamma class
    automatically), or raw numeric classes.  Entries within 10^(-P+10) of an
    integer are reported in "integers"; the worst distance is in
    "max_residual" (entries further away leave a None in that slot).
    """
    if isinstance(basis, MarkedBasis):
        P = basis.precision
    if C is None:
        C = _constants(P)
    classes = _numeric_classes(basis, C)
    ctx = C.ctx
    snap = ctx.mpf(10) ** (-P + 10)
    entries, integers = [], []
    max_res = ctx.mpf(0)
    for a in classes:
        row_e, row_i = [], []
        for b in classes:
            v = pair_bracket(a, b, C)
            nearest = ctx.nint(v.real)
            res = abs(v - nearest)
            max_res = max(max_res, res)
            row_e.append(v)
            row_i.append(int(nearest) if res < snap else None)
        entries.append(row_e)
        integers.append(row_i)
    return {"entries": entries, "integers": integers, "max_residual": max_res}


def _pair_snapped(basis: MarkedBasis, a: GradedVector, b: GradedVector):
    C = _constants(basis.precision)
    v = pair_bracket(a, b, C)
    nearest = C.ctx.nint(v.real)
    if abs(v - nearest) > C.ctx.mpf(10) ** (-basis.precision + 10):
        raise ArithmeticError(f"pairing {v} too far from an integer to mutate")
    return int(nearest)


def _mutate(basis: MarkedBasis, i: int, right: bool) -> MarkedBasis:
    if not 1 <= i < len(basis):
        raise IndexError("position out of range")
    a, b = i - 1, i
    cls = basis.classes()
    rows = list(basis.rows)
    marks = list(basis.marks)
    labels = list(basis.labels)
    if right:
        # (X, Y) -> (Y, X - [X, Y) Y)
        c = _pair_snapped(basis, cls[a], cls[b])
        new_row = tuple(x - c * y for x, y in zip(rows[a], rows[b]))
        rows[a], rows[b] = rows[b], new_row
    else:
        # (U, V) -> (V - [U, V) U, V's slot gets U)
        c = _pair_snapped(basis, cls[a], cls[b])
        new_row = tuple(y - c * x for x, y in zip(rows[a], rows[b]))
        rows[a], rows[b] = new_row, rows[a]
    marks[a], marks[b] = marks[b], marks[a]
    labels[a], labels[b] = labels[b], labels[a]
    return MarkedBasis(base=basis.base, rows=tuple(rows), marks=tuple(marks),
                       labels=tuple(labels), precision=basis.precision)


def right_mutation(basis: MarkedBasis, i: int) -> MarkedBasis:
    """Replace the pair at positions (i, i+1), 1-based, by
    (A_{i+1}, A_i - [A_i, A_{i+1}) A_{i+1}); marks and labels swap."""
    return _mutate(basis, i, right=True)


def left_mutation(basis: MarkedBasis, i: int) -> MarkedBasis:
    """Inverse of right_mutation at the same position: the pair (U, V)
    becomes (V - [U, V) U, U)."""
    return _mutate(basis, i, right=False)


def unitriangular_order(integers):
    """Permutation putting an integer Gram matrix in unitriangular form.

    Returns indices pi with G[pi[a]][pi[b]] = 0 for a > b and diagonal 1,
    or None if no such reordering exists.  Greedy peeling: the last element
    must pair to zero against every other remaining one.
    """
    m = len(integers)
    if any(integers[i][i] != 1 for i in range(m)):
        return None
    remaining = list(range(m))
    order = []
    while remaining:
        pick = None
        for j in remaining:
            if all(integers[j][l] == 0 for l in remaining if l != j):
                pick = j
                break
        if pick is None:
            return None
        order.append(pick)
        remaining.remove(pick)
    return list(reversed(order))


def phase_assignment(n: int, phi, P: int = 50) -> dict:
    """Admissibility of the phase and the line-bundle window on P^(n-1).

    A phase is admissible when no two eigenvalue marks have the same
    imaginary part after rotation by e^(-i phi); each pair's rotated
    difference is reported.  When admissible, every integer k with
    |2 pi k/n + phi| < pi/2 + pi/n is listed with its twisting sheaf.
    """
    ctx = working_context(P)
    phiv = ctx.convert(phi)
    marks = eigenvalue_marks(n, P)
    rot = ctx.exp(ctx.mpc(0, -1) * phiv)
    pairs = []
    admissible = True
    thresh = ctx.mpf(10) ** (-P + 15)
    for i in range(n):
        for j in range(i + 1, n):
            im = ((marks[i] - marks[j]) * rot).imag
            ok = abs(im) > thresh
            admissible = admissible and ok
            pairs.append({"i": i, "j": j, "imag_part": im, "nonzero": ok})
    window = ctx.pi / 2 + ctx.pi / n
    assigned = None
    if admissible:
        assigned = []
        lo = (-phiv - window) * n / (2 * ctx.pi)
        hi = (-phiv + window) * n / (2 * ctx.pi)
        k = int(ctx.floor(lo))
        while k <= int(ctx.ceil(hi)):
            val = abs(2 * ctx.pi * k / n + phiv)
            if val < window:
                assigned.append({"k": k, "value": val, "bundle": f"O({k})"})
            k += 1
    return {"n": n, "phi": phiv, "admissible": admissible, "pairs": pairs,
            "window": window, "assigned": assigned}
