import pytest
from hypothesis import given
from strategies import multipartitions

from gmacdonald.coeff import ONE, ZERO, Coeff, ResonanceError, q, q3, sym, t
from gmacdonald.gmp import (GmpBasis, alpha_coeff, b_weighted, build_gmp, fourier_diagonal_value,
                            gmp_compare, gmp_order, kernel_PiZ_plethystic, two_var_gmp,
                            two_var_specialize, weight_homogeneity_check, whittaker)
from gmacdonald.operators import WeightVector, rep_x_mode
from gmacdonald.partitions import MultiPartition, Partition, b_coeff, calPsi, g_lambda, nekrasov_tilde
from gmacdonald.symfunc import SymFunc, exp_series

def mp(*comps):
    return MultiPartition([list(c) for c in comps])


@pytest.fixture(scope="module")
def B2():
    return build_gmp(2, WeightVector.from_Q(), 3)


def test_degree_one_vectors(B2):
    Q = sym("Q")
    x1, y1 = SymFunc.p(1, 1, 2, 1), SymFunc.p(1, 2, 2, 1)
    assert B2.element(mp([1], [])).with_degree(1) == x1
    assert B2.element(mp([], [1])).with_degree(1) == y1 + x1.scale((1 - t() / q()) / (1 - Q))
    assert B2.A[mp([], [1])][mp([1], [])] == (1 - q3()) / (1 - Q)


def test_degree_zero_basis():
    B = build_gmp(2, None, 0)
    assert B.labels() == (mp([], []),)
    assert B.element(mp([], [])) == SymFunc.one(2, 0)


def test_order():
    assert gmp_compare(mp([], [1]), mp([1], [])) == -1
    assert gmp_order(mp([], [1]), mp([1], [])) == "less"
    a, b, c = mp([], [], [2]), mp([], [2], []), mp([2], [], [])
    assert gmp_compare(a, b) == -1 and gmp_compare(b, c) == -1


def test_first_pieri_step(B2):
    Q = sym("Q")
    f = SymFunc.p(1, 1, 2, 1) + SymFunc.p(1, 2, 2, 1)
    coords = B2.expand(f)
    assert coords[mp([1], [])] == calPsi(Partition([]), Q)
    assert coords[mp([], [1])] == ONE


def test_kernel_first_order():
    K = kernel_PiZ_plethystic(2, 1).homogeneous(2)
    x, y, a, b = (SymFunc.p(1, al, 4, 2) for al in (1, 2, 3, 4))
    exp = (x * b + y * a + (x * a).scale(1 - t() / q())).scale((1 - t()) / (1 - q()))
    assert K == exp


def test_weighted_b_first_value():
    Q = sym("Q")
    lhs = b_weighted(Partition([1]), Partition([]), Q)
    rhs = b_coeff(Partition([1])) * nekrasov_tilde(Partition([1]), Partition([]), Q) \
        / nekrasov_tilde(Partition([]), Partition([1]), Q.inv())
    assert lhs == rhs


def test_whittaker_normalization():
    u = WeightVector.symbolic(1)
    for lam in ([], [1], [2, 1]):
        W = whittaker(MultiPartition([lam]), u, 3)
        assert W.constant_term() == u[0] ** Partition(lam).size


def test_whittaker_vacuum_level_two():
    v = WeightVector.symbolic(2, "v")
    D = 3
    terms = {}
    for k in range(1, D + 1):
        pref = Coeff(-1) / (k * (1 - q() ** k))
        for al in (1, 2):
            s = v[al - 1] ** k + sum(((1 - q3() ** k) * v[b - 1] ** k for b in range(al + 1, 3)), ZERO)
            idx = [(), ()]
            idx[al - 1] = (k,)
            terms[tuple(idx)] = pref * s
    exp = exp_series(SymFunc(2, D, terms))
    assert whittaker(mp([], []), v, D) == exp


def test_two_variable_closed_forms():
    Q, Qq, T = sym("Q"), q(), t()
    for m in range(4):
        st = two_var_gmp(m, 1, Q)[1]
        assert st.monomials() == {(m, 1): ONE, (m + 1, 0): (1 - T / Qq) / (1 - Q * Qq ** m)}
        st = two_var_gmp(m, 2, Q)[2]
        exp = {
            (m, 2): ONE,
            (m + 1, 1): (1 - T) * (1 - T / Qq) * (1 + Qq) / ((1 - Qq * T) * (1 - Qq ** (m - 1) * Q)),
            (m + 2, 0): (1 - T / Qq) * (1 - T - T * Qq + T ** 2 / Qq + T * Qq ** m * (1 - Qq ** -2) * Q)
            / ((1 - Qq * T) * (1 - Qq ** m * Q) * (1 - Qq ** (m - 1) * Q)),
        }
        assert st.monomials() == exp


def test_two_variable_specialization(B2):
    for m, n in ((1, 1), (2, 1), (1, 2)):
        sp = two_var_specialize(B2, m, n)
        assert sp.monomials() == two_var_gmp(m, n)[n].monomials()


def test_alpha_table():
    # the (1 - q^{-k}) factor kills k = 0; the off-diagonal entries are Q-free
    assert alpha_coeff(2, 0) == ZERO
    for k in (1, 2):
        assert not alpha_coeff(2, k).is_zero()


def test_fourier_diagonal_example():
    u = WeightVector.symbolic(1)
    lam = MultiPartition([[1]])
    g = g_lambda(Partition([1]))
    assert fourier_diagonal_value(lam, u) == t().inv() * u[0] ** 2 * g ** 2 / b_coeff(Partition([1]))


def test_resonant_weights():
    with pytest.raises(ResonanceError):
        build_gmp(2, [ONE, ONE], 1)


def test_json_round_trip(B2):
    back = GmpBasis.from_json(B2.to_json())
    for lam in B2.labels():
        assert back.element(lam) == B2.element(lam)


def test_level_one_is_macdonald():
    from gmacdonald.symfunc import macdonald_P
    B = build_gmp(1, None, 4)
    for lam in B.labels():
        assert B.element(lam) == macdonald_P(lam[0], 4)


def test_weight_homogeneity():
    assert weight_homogeneity_check(2, 2).passed


@given(multipartitions(2, 3))
def test_eigenvectors(lam):
    u = WeightVector.symbolic(2)
    B = build_gmp(2, u, 3)
    P = B.element(lam)
    assert rep_x_mode(+1, 0, 2, u)(P) == P.scale(B.eig_plus(lam))
    assert rep_x_mode(-1, 0, 2, u)(P) == P.scale(B.eig_minus(lam))


@given(multipartitions(2, 3))
def test_triangularity(lam):
    B = build_gmp(2, None, 3)
    for mu in B.A[lam]:
        assert gmp_compare(mu, lam) >= 0
        assert gmp_order(mu, lam) in ("equal", "greater", "incomparable-resolved")
    assert B.A[lam][lam] == ONE


@given(multipartitions(3, 2))
def test_rank_three_eigenvectors(lam):
    u = WeightVector.symbolic(3)
    B = build_gmp(3, u, 2)
    P = B.element(lam)
    assert rep_x_mode(+1, 0, 3, u)(P) == P.scale(B.eig_plus(lam))
