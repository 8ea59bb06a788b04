import cmath
from math import gcd, sqrt

import pytest

from sopfr import (
    character_group,
    euler_phi,
    gauss_sum,
    mobius,
    phase_from_gauss_sums,
    ramanujan_sum,
    unit_group,
    unit_roots,
)
from sopfr.checks import check_orthogonality, check_phase_identity


def pow_order(a: int, q: int) -> int:
    k, x = 1, a % q
    while x != 1:
        x = x * a % q
        k += 1
    return k


def ramanujan_direct(q: int, h: int) -> complex:
    """O(q) direct exponential-sum oracle."""
    return sum(
        cmath.exp(2j * cmath.pi * l * h / q) for l in range(1, q + 1) if gcd(l, q) == 1
    )


def is_primitive(chi) -> bool:
    """Brute-force conductor test: chi is induced mod d iff it is trivial on
    every unit congruent to 1 mod d."""
    q = chi.q
    for d in range(1, q):
        if q % d != 0:
            continue
        if all(
            chi.turn(n) == 0
            for n in range(1, q + 1)
            if n % d == 1 and gcd(n, q) == 1
        ):
            return False
    return True


def test_unit_group_examples():
    g3 = unit_group(3)
    assert g3.generators == (2,) and g3.orders == (2,)
    g8 = unit_group(8)
    assert sorted(zip(g8.generators, g8.orders)) == [(5, 2), (7, 2)]
    g9 = unit_group(9)
    assert g9.generators == (2,)
    assert g9.orders == (pow_order(2, 9),) == (6,)


def test_unit_group_covers_all_units():
    for q in (3, 4, 8, 9, 12, 16, 24, 45, 60):
        g = unit_group(q)
        units = {n for n in range(1, q) if gcd(n, q) == 1}
        assert set(g.dlog) == units
        for a, exps in g.dlog.items():
            prod = 1
            for gen, e in zip(g.generators, exps):
                prod = prod * pow(gen, e, q) % q
            assert prod == a


def test_unit_group_errors():
    with pytest.raises(ValueError):
        unit_group(1)


def test_character_group_examples():
    assert len(character_group(3)) == 2
    assert sorted(c.order for c in character_group(5)) == [1, 2, 4, 4]
    assert len(character_group(9)) == 6 == euler_phi(9)
    with pytest.raises(ValueError):
        character_group(2)


def test_character_group_closed_under_conjugation():
    for q in (5, 8, 9, 12, 15, 24):
        grp = character_group(q)
        index_set = {c.index for c in grp}
        for c in grp:
            assert c.conjugate().index in index_set
            assert c.conjugate().conjugate().index == c.index  # involution


def test_character_multiplicativity_and_support():
    for q in (9, 12):
        for chi in character_group(q):
            for n in range(q):
                assert (chi(n) == 0) == (gcd(n, q) > 1)
            for m in (2, 5, 7, 11):
                for n in (3, 4, 13):
                    lhs = chi(m * n)
                    rhs = chi(m) * chi(n)
                    assert abs(lhs - rhs) < 1e-14


def test_gauss_sum_quadratic_mod3():
    chi = character_group(3).nonprincipal()[0]
    # direct 2-term summation oracle
    oracle = cmath.exp(2j * cmath.pi / 3) - cmath.exp(4j * cmath.pi / 3)
    assert abs(gauss_sum(chi) - oracle) < 1e-14
    assert abs(gauss_sum(chi) - 1j * sqrt(3)) < 1e-14


def test_gauss_sum_principal_is_mobius():
    for q in (3, 4, 5, 9, 12, 30):
        tau0 = gauss_sum(character_group(q).principal)
        assert abs(tau0 - ramanujan_direct(q, 1)) < 1e-11
        assert abs(tau0 - mobius(q)) < 1e-11


def test_gauss_sum_modulus_primitive():
    # prime moduli: every non-principal character is primitive
    for q in (3, 5, 7, 11, 13, 59):
        for chi in character_group(q).nonprincipal():
            assert abs(abs(gauss_sum(chi)) - sqrt(q)) < 1e-11


def test_gauss_sum_pairing_primitive_composite():
    # tau(chi) tau(conj chi) = chi(-1) q for primitive chi, composite q too
    for q in (5, 8, 9, 12, 15, 16, 21, 40, 60):
        for chi in character_group(q).nonprincipal():
            if not is_primitive(chi):
                continue
            lhs = gauss_sum(chi) * gauss_sum(chi.conjugate())
            assert abs(lhs - chi.parity * q) < 1e-10, (q, chi.index)


def test_ramanujan_sum_examples():
    assert ramanujan_sum(3, 1) == -1 == mobius(3)
    assert ramanujan_sum(4, 1) == 0 == mobius(4)
    assert abs(ramanujan_sum(12, 8) - ramanujan_direct(12, 8)) < 1e-10
    for q in (2, 6, 9, 12, 18, 35):
        for h in range(q):
            assert abs(ramanujan_sum(q, h) - ramanujan_direct(q, h)) < 1e-9, (q, h)


def test_phase_reconstruction_examples():
    assert abs(phase_from_gauss_sums(1, 3) - complex(-0.5, sqrt(3) / 2)) < 1e-13
    assert abs(phase_from_gauss_sums(2, 5) - cmath.exp(4j * cmath.pi / 5)) < 1e-13
    assert mobius(60) == 0
    assert abs(phase_from_gauss_sums(7, 60) - cmath.exp(2j * cmath.pi * 7 / 60)) < 1e-12
    with pytest.raises(ValueError):
        phase_from_gauss_sums(3, 60)


def test_phase_reconstruction_all_q_up_to_60():
    result = check_phase_identity(60)
    assert result.passed, result.line()


def test_orthogonality_all_q_up_to_60():
    result = check_orthogonality(60)
    assert result.passed, result.line()


def test_mobius_euler_phi_values():
    assert (mobius(3), euler_phi(3)) == (-1, 2)
    assert (mobius(9), euler_phi(9)) == (0, 6)
    assert (mobius(30), euler_phi(30)) == (-1, 8)
    assert mobius(1) == 1 and euler_phi(1) == 1


def test_unit_roots_conjugate_symmetry():
    for q in (3, 4, 9, 12, 17):
        roots = unit_roots(q)
        for r in range(q):
            assert roots[(-r) % q] == roots[r].conjugate()  # exact, by construction
            assert abs(roots[r] - cmath.exp(2j * cmath.pi * r / q)) < 5e-15
