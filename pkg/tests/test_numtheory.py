from math import comb, gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powergraph import numtheory as nt

import oracles


@pytest.mark.parametrize("n, want", [(1, 1), (9, 6), (7, 6), (12, 4), (97, 96), (100, 40)])
def test_euler_phi_values(n, want):
    assert nt.euler_phi(n) == want


def test_euler_phi_matches_gcd_count():
    for n in range(1, 400):
        assert nt.euler_phi(n) == oracles.phi(n)


@pytest.mark.parametrize("bad", [0, -3])
def test_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        nt.euler_phi(bad)
    with pytest.raises(ValueError):
        nt.divisors(bad)


def test_rejects_non_integers():
    with pytest.raises(TypeError):
        nt.euler_phi(2.0)
    with pytest.raises(TypeError):
        nt.divisors(True)


def test_divisors():
    assert nt.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert nt.divisors(1) == [1]
    assert nt.divisors(49) == [1, 7, 49]


def test_gauss_divisor_sum_identity():
    for n in range(1, 10_001):
        assert sum(nt.euler_phi(d) for d in nt.divisors(n)) == n


def test_phi_multiplicative_on_coprime_pairs():
    for a in range(1, 1001, 7):
        for b in range(1, 1001, 11):
            if gcd(a, b) == 1:
                assert nt.euler_phi(a * b) == nt.euler_phi(a) * nt.euler_phi(b)


def test_factorize_and_prime_helpers():
    assert nt.factorize(360) == {2: 3, 3: 2, 5: 1}
    assert nt.factorize(1) == {}
    assert nt.prime_divisors(84) == [2, 3, 7]
    assert [p for p in range(30) if nt.is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert nt.is_prime_power(27) and nt.is_prime_power(2) and not nt.is_prime_power(1)
    assert not nt.is_prime_power(12)
    assert nt.lcm(4, 6, 10) == 60


def test_crt_two_moduli():
    assert nt.crt_solve([(2, 3), (3, 5)]) == (8, 15)


def test_crt_single():
    assert nt.crt_solve([(0, 7)]) == (0, 7)


def test_crt_three_moduli_by_scan():
    system = [(1, 4), (2, 9), (3, 25)]
    x, m = nt.crt_solve(nt.CongruenceSystem(system))
    solutions, modulus = oracles.crt_scan(system)
    assert (m, [x]) == (modulus, solutions)


def test_crt_rejects_shared_factor_with_witness():
    with pytest.raises(nt.NonCoprimeModuli) as info:
        nt.crt_solve([(1, 6), (2, 9)])
    assert info.value.gcd == 3
    assert info.value.moduli == (6, 9)


def test_crt_rejects_empty():
    with pytest.raises(ValueError):
        nt.CongruenceSystem([])


@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(1, 40)), min_size=1, max_size=4))
def test_crt_unique_in_range(system):
    moduli = [m for _, m in system]
    coprime = all(gcd(a, b) == 1 for i, a in enumerate(moduli) for b in moduli[i + 1:])
    if not coprime:
        with pytest.raises(nt.NonCoprimeModuli):
            nt.crt_solve(system)
        return
    x, m = nt.crt_solve(system)
    if m <= 10_000:
        solutions, modulus = oracles.crt_scan(system)
        assert (m, [x]) == (modulus, solutions)
    assert 0 <= x < m
    assert all((x - r) % mi == 0 for r, mi in system)


@pytest.mark.parametrize("p, n, value", [(2, 3, 42), (3, 2, 56), (2, 1, 0)])
def test_phi_identity_examples(p, n, value):
    assert nt.phi_identity_sides(p, n) == (value, value)


def test_phi_identity_direct_evaluation():
    # lhs written out term by term with the independent totient
    for p, n in [(5, 2), (7, 3), (13, 2)]:
        lhs = sum(oracles.phi(p**i) * (2 * p**i - oracles.phi(p**i) - 3) for i in range(1, n + 1))
        assert nt.phi_identity_sides(p, n) == (lhs, 2 * comb(p**n - 1, 2))


def test_phi_identity_rejects_composite():
    with pytest.raises(ValueError):
        nt.phi_identity_sides(4, 2)


def test_phi_identity_large_exponent_is_exact():
    lhs, rhs = nt.phi_identity_sides(2, 200)
    assert lhs == rhs == (2**200 - 1) * (2**200 - 2)
