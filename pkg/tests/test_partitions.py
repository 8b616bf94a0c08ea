from hypothesis import given
from strategies import partitions

from gmacdonald.coeff import ONE, ZERO, Coeff, q, q1, q2, q3, sym, t
from gmacdonald.partitions import (Box, Partition, addable_boxes, b_coeff, calG_log_coeff, calPsi,
                                   calPsi_boxes, calY, calY_boxes, content, eval_P_at_sp_empty,
                                   g_lambda, multipartitions_of, nekrasov, nekrasov_contents,
                                   nekrasov_tilde, partitions_of, pieri_psi, pieri_psi_star,
                                   pieri_r, pieri_r_star, pk_sp, pk_xi, removable_boxes)


def test_addable_and_removable():
    lam = Partition([2, 1])
    assert {(b.i, b.j) for b in addable_boxes(lam)} == {(1, 3), (2, 2), (3, 1)}
    assert {(b.i, b.j) for b in removable_boxes(lam)} == {(1, 2), (2, 1)}
    big = Partition([4, 4, 2, 1])
    assert len(addable_boxes(big)) == len(removable_boxes(big)) + 1


def test_counts():
    assert [len(partitions_of(n)) for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    # number of bipartitions of n: 1, 2, 5, 10, 20
    assert [len(multipartitions_of(n, 2)) for n in range(5)] == [1, 2, 5, 10, 20]


def test_contents_and_g():
    assert content(Box(3, 2)) == t() ** -2 * q()
    assert g_lambda(Partition([2, 1])) == q() / t()
    prod = ONE
    for b in Partition([2, 1]).boxes():
        prod = prod * content(b)
    assert prod == g_lambda(Partition([2, 1]))


def test_alphabets():
    assert pk_xi(Partition([1]), 1) == 1 - (1 - t().inv()) * (1 - q())
    assert pk_xi(Partition([4]), 1) == t().inv() + (1 - t().inv()) * q() ** 4
    assert pk_sp(Partition([1]), 1) == t().inv() * (q() - 1) + t().inv() / (1 - t().inv())
    lam = Partition([2, 1])
    for k in (1, 2):
        assert pk_xi(lam, k) == pk_sp(lam, k) / pk_sp(Partition([]), k)


def test_Y_and_Psi():
    z = sym("z")
    assert calPsi(Partition([]), z) == (1 - q3() / z) / (1 - 1 / z)
    assert calY(Partition([1]), z) == (1 - q1() / z) * (1 - q2() / z) / (1 - 1 / (q3() * z))


def test_vertical_matrix_elements():
    assert pieri_r_star(Partition([1]), Box(1, 1)) == q3() * (1 - q1()) * (1 - q2())
    assert pieri_r(Partition([]), Box(1, 1)) == ONE


def test_nekrasov_values():
    z = sym("z")
    assert nekrasov(Partition([1]), Partition([]), z) == 1 - z / q3()
    assert nekrasov(Partition([]), Partition([1]), z) == 1 - z
    assert not nekrasov(Partition([2]), Partition([1]), ONE).is_zero()
    assert nekrasov(Partition([1]), Partition([2]), ONE).is_zero()


def test_b_values():
    assert b_coeff(Partition([1])) == (1 - t()) / (1 - q())
    assert b_coeff(Partition([2])) == (1 - q() * t()) * (1 - t()) / ((1 - q() ** 2) * (1 - q()))
    lam = Partition([2, 1])
    for b in addable_boxes(lam):
        big = lam.add_box(b)
        assert b_coeff(big) / b_coeff(lam) == (1 - t()) / (1 - q()) * pieri_psi(lam, b) / pieri_psi_star(big, b)


def test_spherical_values():
    assert eval_P_at_sp_empty(Partition([1])) == q1() / (1 - q1())
    assert eval_P_at_sp_empty(Partition([1, 1])) == q1() ** 3 / ((1 - q1()) * (1 - q1() ** 2))


def test_psi_values():
    # p1 P_[1] = P_[2] + (1-q)(1+t)/(1-qt) P_[1,1]
    assert pieri_psi(Partition([1]), Box(1, 2)) == ONE
    assert pieri_psi(Partition([1]), Box(2, 1)) == (1 - q()) * (1 + t()) / (1 - q() * t())


@given(partitions(4))
def test_transpose_is_an_involution(lam):
    assert lam.T.T == lam
    assert lam.T.size == lam.size


@given(partitions(4), partitions(4))
def test_nekrasov_forms_agree(lam, mu):
    z = sym("z")
    assert nekrasov(lam, mu, z) == nekrasov_contents(lam, mu, z)
    assert nekrasov_tilde(lam, mu, z) == nekrasov_tilde(mu, lam, q3() / z)


@given(partitions(4), partitions(4))
def test_nekrasov_vanishing(lam, mu):
    if not lam.contains(mu):
        assert nekrasov(lam, mu, ONE) == ZERO
    if not mu.contains(lam):
        assert nekrasov(lam, mu, q3()) == ZERO


@given(partitions(4))
def test_Y_product_forms(lam):
    z = sym("z")
    assert calY(lam, z) == calY_boxes(lam, z)
    assert calPsi(lam, z) == calPsi_boxes(lam, z)


@given(partitions(4))
def test_psi_relation(lam):
    for b in addable_boxes(lam):
        big = lam.add_box(b)
        lhs = b_coeff(big) / b_coeff(lam)
        assert lhs == (1 - t()) / (1 - q()) * pieri_psi(lam, b) / pieri_psi_star(big, b)


def test_calG_shift_relation():
    # G(z)/G(q1 z) = (z; q2)_inf, compared through log coefficients
    for k in (1, 2, 3):
        lhs = calG_log_coeff(k) * (1 - q1() ** k)
        assert lhs == Coeff(-1) / (k * (1 - q2() ** k))
