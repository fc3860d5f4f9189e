import itertools
import math
from fractions import Fraction

import mpmath
import pytest

from qgamma.grassmann import (box_partitions, bcfk_j_series, e_mu_class,
                              ehx_constant_terms, ehx_mirror,
                              euler_matrix_grassmann, grassmann_spectrum,
                              partition_label, satake_map, schubert_ring,
                              schur_expand, schur_polynomial,
                              wedge_from_vectors)
from qgamma.jfun import quantum_period
from qgamma.mirror import constant_term_series, projective_rays, \
    toric_mirror_from_rays
from qgamma.ring import (build_projective_ring, cup, gamma_class, line_bundle,
                         modified_chern, pair_bracket, ring_exp)
from qgamma.scalars import make_constants

import oracles


def test_box_partitions():
    parts = box_partitions(2, 4)
    assert parts == [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]
    assert len(box_partitions(2, 5)) == math.comb(5, 2)
    assert len(box_partitions(3, 7)) == math.comb(7, 3)
    assert partition_label((2, 1)) == "s2.1"
    assert partition_label((0, 0)) == "s"


def test_schur_ring_products_are_lr_coefficients():
    for r, n in ((2, 4), (2, 5)):
        R = schubert_ring(r, n)
        parts = box_partitions(r, n)
        index = {mu: i for i, mu in enumerate(parts)}
        for mu in parts:
            for nu in parts:
                prod = cup(R.basis_vector(index[mu]),
                           R.basis_vector(index[nu]))
                for lam in parts:
                    want = oracles.littlewood_richardson(mu, nu, lam)
                    assert prod.coeffs[index[lam]] == want, (mu, nu, lam)


def test_schur_expand_matches_oracle_without_box():
    r = 2
    mu, nu = (2, 1), (2, 0)
    prod = {}
    for e1, c1 in schur_polynomial(mu, r).items():
        for e2, c2 in schur_polynomial(nu, r).items():
            key = tuple(a + b for a, b in zip(e1, e2))
            prod[key] = prod.get(key, Fraction(0)) + c1 * c2
    expansion = schur_expand(prod, r)
    # two-row targets of weight 5: every coefficient, including the zeros
    assert expansion == {(4, 1): 1, (3, 2): 1}
    for lam in [(5, 0), (4, 1), (3, 2)]:
        assert expansion.get(lam, 0) == \
            oracles.littlewood_richardson(mu, nu, lam), lam


def test_schur_expand_rejects_asymmetric():
    with pytest.raises(ValueError):
        schur_expand({(2, 0): Fraction(1)}, 2)


def test_satake_map_examples():
    R = schubert_ring(2, 4)
    unit_wedge = wedge_from_vectors([[0, 1, 0, 0], [1, 0, 0, 0]], 4)
    assert satake_map(unit_wedge, R).coeffs == (1, 0, 0, 0, 0, 0)
    point_wedge = wedge_from_vectors([[0, 0, 0, 1], [0, 0, 1, 0]], 4)
    v = satake_map(point_wedge, R)
    # (3,2) shifts to the box partition (2,2): the point class
    parts = box_partitions(2, 4)
    assert v.coeffs[parts.index((2, 2))] == 1
    assert sum(1 for c in v.coeffs if c) == 1


def test_schubert_ring_degrees_and_pairing():
    R = schubert_ring(2, 4)
    assert R.complex_dimension == 4
    assert R.fano_index == 4
    parts = box_partitions(2, 4)
    assert R.degrees == tuple(sum(mu) for mu in parts)
    # Poincare duality on the box: s_mu pairs with the complement
    i1 = parts.index((1, 0))
    i2 = parts.index((2, 1))
    assert R.poincare_pairing(R.basis_vector(i1), R.basis_vector(i2)) == 1


def test_bcfk_matches_ladder_mirror():
    J = bcfk_j_series(2, 4, 12)
    G = quantum_period(J)
    E = ehx_constant_terms(2, 4, 12)
    tol = mpmath.mpf(10) ** -38
    for d in (4, 8, 12):
        ge = E.coefficient(d)
        assert abs(G.coefficient(d) - mpmath.mpf(ge.numerator) / ge.denominator) \
            < tol, d
    assert E.coefficient(4) == Fraction(2)
    assert E.coefficient(8) == Fraction(3, 8)
    assert E.coefficient(12) == Fraction(5, 324)


def test_bcfk_matches_ladder_mirror_gr25():
    G = quantum_period(bcfk_j_series(2, 5, 10))
    E = ehx_constant_terms(2, 5, 10)
    tol = mpmath.mpf(10) ** -38
    assert E.coefficient(5) == Fraction(3)
    assert E.coefficient(10) == Fraction(19, 32)
    for d in (5, 10):
        ge = E.coefficient(d)
        assert abs(G.coefficient(d) - mpmath.mpf(ge.numerator) / ge.denominator) \
            < tol, d


def test_ehx_mirror_rank_one_is_projective():
    # one-row ladder = projective mirror after a unimodular substitution:
    # same constant-term series
    W = ehx_mirror(1, 4)
    f = toric_mirror_from_rays(projective_rays(4))
    A = constant_term_series(W, 12)
    B = constant_term_series(f, 12)
    for d in range(13):
        assert A.coefficient(d) == B.coefficient(d), d


def test_ehx_mirror_shape():
    W = ehx_mirror(2, 4)
    assert W.support_size() == 6
    assert all(c == 1 for c in W.terms.values())
    with pytest.raises(ValueError):
        ehx_mirror(4, 4)


def test_euler_matrix_examples():
    assert euler_matrix_grassmann((), (), 2, 4) == 1
    assert euler_matrix_grassmann((), (1, 0), 2, 4) == 4
    # dual-route determinant: chi(O(l), O(k)) entries for ((1,0) vs (1,0))
    assert euler_matrix_grassmann((1, 0), (1, 0), 2, 4) == 1
    # l = (1,0), k = (3,2): C(5,3)^2 - C(4,3) C(6,3) = 100 - 80
    assert euler_matrix_grassmann((0,), (2, 2), 2, 4) == 20


def test_emu_euler_gram_matches_determinant_formula():
    C = make_constants(P=50)
    R = schubert_ring(2, 4)
    parts = box_partitions(2, 4)
    g = gamma_class(R, C)
    classes = [cup(g, modified_chern(e_mu_class(R, mu, 2, 4), C))
               for mu in parts]
    tol = C.ctx.mpf(10) ** -38
    for i, mu in enumerate(parts):
        for j, nu in enumerate(parts):
            chi = euler_matrix_grassmann(mu, nu, 2, 4)
            got = pair_bracket(classes[i], classes[j], C)
            assert abs(got - C.ctx.convert(chi)) < tol, (mu, nu)


def _phi_factory(r, n, C):
    """The twisted Satake comparison map on wedges of gamma-line classes."""
    ctx = C.ctx
    RP = build_projective_ring(n)
    gP = gamma_class(RP, C)
    RG = schubert_ring(r, n)
    base = {l: cup(gP, modified_chern(line_bundle(RP, l), C))
            for l in range(n)}
    eps = (2 * C.pi * ctx.mpc(0, 1)) ** (-math.comb(r, 2))
    sigma1 = Fraction(1, n) * RG.c1
    phase = ctx.mpc(0, 1) * C.pi * (r - 1)
    twist = ring_exp(sigma1.map_coeffs(lambda c: -phase * ctx.convert(c)))

    def phi(I):
        A = wedge_from_vectors([base[l].coeffs for l in I], n)
        return eps * cup(twist, satake_map(A, RG).map_coeffs(ctx.convert))
    return phi, base, RG


def test_twisted_satake_preserves_pairing():
    # Gram of the mapped wedges equals the determinant of the ambient
    # line-bundle pairings; fixes the scalar normalization of the map.
    C = make_constants(P=50)
    r, n = 2, 4
    phi, base, RG = _phi_factory(r, n, C)
    subsets = list(itertools.combinations(range(n - 1, -1, -1), r))
    tol = C.ctx.mpf(10) ** -38
    for I in subsets:
        for J in subsets:
            lhs = pair_bracket(phi(I), phi(J), C)
            det = (pair_bracket(base[I[0]], base[J[0]], C)
                   * pair_bracket(base[I[1]], base[J[1]], C)
                   - pair_bracket(base[I[0]], base[J[1]], C)
                   * pair_bracket(base[I[1]], base[J[0]], C))
            assert abs(lhs - det) < tol, (I, J)


def test_gamma_line_wedges_square_to_bundle_classes():
    # gamma times the modified Chern character of E_mu equals the mapped
    # wedge at the shifted exponents
    C = make_constants(P=50)
    r, n = 2, 4
    phi, base, RG = _phi_factory(r, n, C)
    g = gamma_class(RG, C)
    tol = C.ctx.mpf(10) ** -38
    for mu in box_partitions(r, n):
        lhs = cup(g, modified_chern(e_mu_class(RG, mu, r, n), C))
        exps = tuple(sorted((mu[i] + r - 1 - i for i in range(r)),
                            reverse=True))
        rhs = phi(exps)
        assert max(abs(a - b) for a, b in zip(lhs.coeffs, rhs.coeffs)) \
            < tol, mu


def test_spectrum_gr25():
    sp = grassmann_spectrum(2, 5, P=50)
    want = 5 * mpmath.sin(2 * mpmath.pi / 5) / mpmath.sin(mpmath.pi / 5)
    assert abs(sp["T"] - want) < mpmath.mpf(10) ** -45
    assert abs(sp["T"] - sp["T_formula"]) < mpmath.mpf(10) ** -45
    assert len(sp["maximizers"]) == 5
    assert sp["maximizers_consecutive"]
    assert sp["property_o"]["satisfied"]


def test_spectrum_gr24():
    sp = grassmann_spectrum(2, 4, P=50)
    assert abs(sp["T"] - 4 * mpmath.sqrt(2)) < mpmath.mpf(10) ** -45
    assert len(sp["maximizers"]) == 4
    assert sp["maximizers_consecutive"]
    assert sp["property_o"]["satisfied"]


def test_spectrum_rotation_invariance():
    sp = grassmann_spectrum(2, 5, P=50)
    vals = sp["eigenvalues"]
    rot = mpmath.expjpi(mpmath.mpf(2) / 5)
    rotated = [v * rot for v in vals]
    tol = mpmath.mpf(10) ** -40
    used = [False] * len(vals)
    for w in rotated:
        hit = min((abs(w - v), i) for i, v in enumerate(vals)
                  if not used[i])
        assert hit[0] < tol
        used[hit[1]] = True
