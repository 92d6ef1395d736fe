from fractions import Fraction

import pytest

from core.errors import SizeCapExceeded
from core.symmetric import (
    Partition,
    adams_coeffs,
    adams_coeffs_oracle,
    character,
    check_orthogonality,
    jacobi_trudi_schur,
    kappa,
    partitions_of,
    powersum_to_schur,
    schur_in_powersums,
    t_symbols,
    z_rho,
)

P = Partition


def test_partition_parsing():
    assert P.parse("2,1") == P((2, 1))
    assert P.parse("1,2") == P((2, 1))
    assert P.parse("") == P(())
    with pytest.raises(ValueError):
        P((1, 2))
    with pytest.raises(ValueError):
        P((2, 0))


def test_conjugate():
    assert P((3, 1)).conjugate() == P((2, 1, 1))
    assert P(()).conjugate() == P(())


def test_partitions_of():
    assert [p.parts for p in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(list(partitions_of(6))) == 11
    assert [p.parts for p in partitions_of(6, 2)] == [(2, 2, 2), (2, 2, 1, 1), (2, 1, 1, 1, 1), (1,) * 6]
    assert [p.parts for p in partitions_of(0)] == [()]
    assert list(partitions_of(3, 0)) == []


def test_kappa():
    assert kappa(P((1,))) == 0
    assert kappa(P((2,))) == 2
    assert kappa(P((1, 1))) == -2
    for mu in partitions_of(5):
        assert kappa(mu) + kappa(mu.conjugate()) == 0


def test_z_rho():
    assert z_rho(P((1, 1, 1))) == 6
    assert z_rho(P((2, 1))) == 2
    assert z_rho(P((3,))) == 3


def test_characters_of_s3():
    assert character(P((2, 1)), P((1, 1, 1))) == 2
    assert character(P((2, 1)), P((2, 1))) == 0
    assert character(P((2, 1)), P((3,))) == -1
    assert character(P((1, 1, 1)), P((2, 1))) == -1


def test_schur_in_powersums():
    assert schur_in_powersums(P((1,))) == {P((1,)): 1}
    assert schur_in_powersums(P((2,))) == {P((2,)): Fraction(1, 2), P((1, 1)): Fraction(1, 2)}
    assert schur_in_powersums(P((1, 1))) == {P((2,)): Fraction(-1, 2), P((1, 1)): Fraction(1, 2)}


def test_powersum_round_trip():
    for lam in partitions_of(4):
        assert powersum_to_schur(schur_in_powersums(lam)) == {lam: 1}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_orthogonality(n):
    assert check_orthogonality(n) == []


def test_adams_identity_at_m_one():
    for lam in partitions_of(4):
        assert adams_coeffs(lam, 1) == {lam: 1}


def test_adams_of_single_box():
    assert adams_coeffs(P((1,)), 2) == {P((2,)): 1, P((1, 1)): -1}


def test_adams_size_cap():
    with pytest.raises(SizeCapExceeded):
        adams_coeffs(P((3,)), 3, size_cap=8)


def test_jacobi_trudi_two_rows():
    t1, t2 = t_symbols(2)
    # s_(2) = h_2 = t2 + t1^2/2
    assert jacobi_trudi_schur(P((2,))) == t2 + t1 ** 2 / 2
    assert jacobi_trudi_schur(P((1, 1))) == -t2 + t1 ** 2 / 2


@pytest.mark.parametrize("lam", ["1", "2", "1,1"])
@pytest.mark.parametrize("m", [1, 2])
def test_adams_matches_jacobi_trudi(lam, m):
    p = P.parse(lam)
    assert adams_coeffs(p, m) == adams_coeffs_oracle(p, m)


def test_oracle_single_box_m2():
    assert adams_coeffs_oracle(P((1,)), 2) == {P((2,)): 1, P((1, 1)): -1}
