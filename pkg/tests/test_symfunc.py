from hypothesis import given
from strategies import partitions

from gmacdonald.coeff import ONE, Coeff, q, t
from gmacdonald.gmp import outer
from gmacdonald.partitions import Partition, b_coeff, eval_P_at_sp_empty, partitions_of
from gmacdonald.symfunc import (SymFunc, VirtualAlphabet, coproduct, hall_qt_inner, kernel_Pi,
                                m_to_p, macdonald_P, p_to_m, plethystic_eval, skew_P)

p1 = SymFunc.p(1, degree=2)
p2 = SymFunc.p(2, degree=2)


def test_monomial_basis():
    assert m_to_p([1, 1], 2) == (p1 * p1 - p2).scale(Coeff(1) / 2)
    assert m_to_p([2], 2) == p2


def test_qt_inner_product():
    P1 = SymFunc.p(1, degree=1)
    assert hall_qt_inner(P1, P1) == (1 - q()) / (1 - t())
    assert hall_qt_inner(macdonald_P([1], 1), macdonald_P([1], 1)) == b_coeff(Partition([1])).inv()


def test_P2_gram_schmidt_value():
    A = (1 + q()) * (1 - t()) / (1 - q() * t())
    assert macdonald_P([2], 2) == m_to_p([2], 2) + m_to_p([1, 1], 2).scale(A)
    assert macdonald_P([1, 1], 2) == m_to_p([1, 1], 2)


def test_e1_pieri():
    lhs = p1 * macdonald_P([1], 2)
    psi = (1 - q()) * (1 + t()) / (1 - q() * t())
    assert lhs == macdonald_P([2], 2) + macdonald_P([1, 1], 2).scale(psi)


def test_kernel_low_degrees():
    # total degree counts both alphabets, so bidegree (d, d) sits in degree 2d
    K = kernel_Pi(4)
    x1, y1 = SymFunc.p(1, 1, 2, 4), SymFunc.p(1, 2, 2, 4)
    assert K.homogeneous(2) == (x1 * y1).scale((1 - t()) / (1 - q()))
    acc = SymFunc.zero(2, 4)
    for lam in partitions_of(2):
        P = macdonald_P(lam, 4)
        acc = acc + outer(P, P, 4).scale(b_coeff(lam))
    assert K.homogeneous(4) == acc.homogeneous(4)


def test_spherical_evaluation():
    eps = VirtualAlphabet.sp([])
    assert plethystic_eval(SymFunc.p(1, degree=1), eps) == t().inv() / (1 - t().inv())
    for lam in ([1], [2], [1, 1], [2, 1]):
        assert plethystic_eval(macdonald_P(lam), eps) == eval_P_at_sp_empty(Partition(lam))


def test_skew_at_a_letter():
    z = VirtualAlphabet.letter(Coeff.symbol("z"))
    # P_[2](x + z) at x = 0 picks P_[2](z) = z^2
    assert plethystic_eval(skew_P([2], []), z) == Coeff.symbol("z") ** 2
    # two letters: P_[2](x, z) = x^2 + z^2 + A x z, so P_[2]/[1](z) = A z
    A = (1 + q()) * (1 - t()) / (1 - q() * t())
    assert plethystic_eval(skew_P([2], [1]), z) == A * Coeff.symbol("z")


@given(partitions(4), partitions(4))
def test_orthogonality(lam, mu):
    if lam.size != mu.size:
        return
    val = hall_qt_inner(macdonald_P(lam), macdonald_P(mu))
    assert val == (b_coeff(lam).inv() if lam == mu else Coeff(0))


@given(partitions(4))
def test_unitriangular_in_monomials(lam):
    coeffs = p_to_m(macdonald_P(lam), lam.size)
    assert coeffs[lam] == ONE
    for mu, c in coeffs.items():
        if not c.is_zero():
            assert all(sum(mu[:i]) <= sum(lam[:i]) for i in range(1, len(mu) + 1))


@given(partitions(3))
def test_coproduct_and_skew(lam):
    D = lam.size
    acc = SymFunc.zero(2, D)
    for d in range(D + 1):
        for mu in partitions_of(d):
            if lam.contains(mu):
                acc = acc + outer(macdonald_P(mu, D), skew_P(lam, mu, D), D)
    assert coproduct(macdonald_P(lam)) == acc
