"""Truncated idealization rings: series, reduction, stability, lengths."""

import random
from fractions import Fraction

import pytest

from stablerings.errors import (
    BadPrecision,
    BadRank,
    EmptyInput,
    NotRegular,
    PrecisionTooLow,
    RingMismatch,
    UnsupportedField,
)
from stablerings.idealization import (
    get_domain,
    hilbert_length,
    ideal_from_generators,
    ideal_power,
    ideal_product,
    is_stable_ideal,
    make_ring,
    random_regular_ideal,
    reduce_rows,
    square_zero_prime_check,
    stability_sweep,
)
from stablerings.idealization import _random_element


R1 = make_ring("F2", 1, 16)
R2 = make_ring("F2", 2, 16)
RQ = make_ring("Q", 3, 8)


def test_series_basic_arithmetic():
    s = R1.series([1, 1])
    assert s.valuation() == 0
    assert (s * s).coeffs[:3] == (1, 0, 1)
    t = R1.series([0, 1])
    assert t.valuation() == 1
    assert (t * t).valuation() == 2
    assert R1.series([]).is_zero()
    assert R1.series([]).valuation() == R1.prec


def test_series_valuation_additivity():
    rng = random.Random(11)
    for _ in range(50):
        a = _random_element(RQ, rng, regular=False).v
        b = _random_element(RQ, rng, regular=False).v
        if a.valuation() + b.valuation() < RQ.prec:
            assert (a * b).valuation() == a.valuation() + b.valuation()


def test_unit_inverse():
    for ring in (R1, RQ, make_ring("F3", 1, 12), make_ring("F5", 1, 12)):
        u = ring.series([1] + [1] * (ring.prec - 1))
        prod = u * u.unit_inverse()
        assert prod == ring.series([1])
    with pytest.raises(ValueError):
        R1.series([0, 1]).unit_inverse()


def test_rational_coefficients_are_exact():
    a = RQ.series([Fraction(1, 3), Fraction(2, 7)])
    b = a * a
    assert b.coeffs[0] == Fraction(1, 9)
    assert b.coeffs[1] == Fraction(4, 21)


def test_make_ring_guards():
    with pytest.raises(BadRank):
        make_ring("F2", 0, 16)
    with pytest.raises(BadPrecision):
        make_ring("F2", 1, 3)
    with pytest.raises(UnsupportedField):
        make_ring("F7", 1, 16)
    make_ring("Q", 3, 8)  # valid


def test_multiplication_law_examples():
    t = R1.t_power(1)
    e1 = R1.basis_ell(1)
    p = t * e1
    assert p.v.is_zero() and p.ell[0] == R1.series([0, 1])

    # P squares to zero elementwise
    x = R1.element([], [[1, 1, 0, 1]])
    y = R1.element([], [[0, 1]])
    assert (x * y).is_zero()

    a = R2.element([1, 1], [[1], []])
    b = R2.element([1], [[], [1]])
    c = a * b
    assert c.v == R2.series([1, 1])
    assert c.ell[0] == R2.series([1])
    assert c.ell[1] == R2.series([1, 1])


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        R1.one() * R2.one()
    with pytest.raises(RingMismatch):
        ideal_from_generators(R1, [R2.one()])


def test_regularity_flags():
    assert R1.t_power(1).is_regular()
    assert not R1.basis_ell(1).is_regular()
    assert R1.t_power(9).precision_warning()
    assert not R1.t_power(2).precision_warning()


def test_ideal_reduction_examples():
    # principal (t, 0): module rows (t,0) and (0,t), both pivots at valuation 1
    I = ideal_from_generators(R1, [R1.t_power(1)])
    assert [v for _, v in I.pivots] == [1, 1]

    unit = ideal_from_generators(R1, [R1.one()])
    assert [v for _, v in unit.pivots] == [0, 0]

    J = ideal_from_generators(R1, [R1.basis_ell(1)])
    assert len(J.basis) == 1 and not J.is_regular()

    with pytest.raises(EmptyInput):
        ideal_from_generators(R1, [])


def test_pivot_valuations_nondecreasing():
    rng = random.Random(5)
    for _ in range(60):
        gens = [_random_element(R2, rng, regular=False) for _ in range(3)]
        if all(g.is_zero() for g in gens):
            continue
        I = ideal_from_generators(R2, gens)
        vals = [v for _, v in I.pivots]
        assert vals == sorted(vals)
        cols = [c for c, _ in I.pivots]
        assert len(cols) == len(set(cols))


def test_membership_of_generators_and_idempotence():
    rng = random.Random(3)
    for _ in range(60):
        gens = [_random_element(R2, rng, regular=False) for _ in range(2)]
        if all(g.is_zero() for g in gens):
            continue
        I = ideal_from_generators(R2, gens)
        for g in gens:
            assert I.contains(g)
            assert I.contains(g * R2.t_power(1))
        basis, pivots = reduce_rows(R2, I.basis)
        assert basis == I.basis and pivots == I.pivots


def test_reduction_canonical_across_generating_sets():
    rng = random.Random(9)
    unit = R2.element([1, 0, 1])
    for _ in range(40):
        gens = [_random_element(R2, rng, regular=True) for _ in range(2)]
        I = ideal_from_generators(R2, gens)
        J = ideal_from_generators(R2, [unit * gens[1], gens[0], gens[0] + gens[1]])
        assert I == J
        assert I.basis == J.basis


def test_product_commutative_associative():
    rng = random.Random(17)
    for _ in range(15):
        A = ideal_from_generators(R2, [_random_element(R2, rng, True)])
        B = ideal_from_generators(
            R2, [_random_element(R2, rng, True), _random_element(R2, rng, False)]
        )
        C = ideal_from_generators(R2, [_random_element(R2, rng, True)])
        assert ideal_product(A, B) == ideal_product(B, A)
        assert ideal_product(ideal_product(A, B), C) == ideal_product(A, ideal_product(B, C))


def test_stability_examples():
    I = ideal_from_generators(R1, [R1.t_power(1), R1.basis_ell(1)])
    v = is_stable_ideal(I)
    assert v.stable is True
    assert v.witness.v.valuation() == 1
    assert v.margin == 8

    unit = ideal_from_generators(R1, [R1.one()])
    v = is_stable_ideal(unit)
    assert v.stable is True and v.witness.v.valuation() == 0

    with pytest.raises(NotRegular):
        is_stable_ideal(ideal_from_generators(R1, [R1.basis_ell(1)]))


def test_stability_verdict_payload():
    I = ideal_from_generators(R1, [R1.t_power(1)])
    payload = is_stable_ideal(I).to_payload()
    assert payload == {"stable": True, "witness_valuation": 1, "margin": 8}


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_stability_small_sweeps(rank):
    ring = make_ring("F2", rank, 16)
    res = stability_sweep(ring, 30, seed=7)
    assert res["trials"] == 30
    assert res["not_stable"] == 0
    assert res["inconclusive_rate"] < 0.05
    assert len(res["per_trial"]) == 30


def test_sweep_is_seed_deterministic():
    ring = make_ring("F3", 2, 16)
    assert stability_sweep(ring, 12, seed=5) == stability_sweep(ring, 12, seed=5)


def test_stability_sweeps_other_coefficient_fields():
    for field in ("F3", "F5", "Q"):
        ring = make_ring(field, 2, 16)
        res = stability_sweep(ring, 40, seed=11)
        assert res["not_stable"] == 0, (field, res)
        assert res["inconclusive_rate"] < 0.05, (field, res)


@pytest.mark.parametrize(
    "rank, n, expected", [(1, 1, 1), (2, 3, 7), (3, 2, 5)]
)
def test_hilbert_length_examples(rank, n, expected):
    ring = make_ring("F2", rank, 16)
    assert hilbert_length(ring, n) == expected


def test_hilbert_length_formula_all_fields():
    for field in ("F2", "F3", "F5", "Q"):
        ring = make_ring(field, 2, 12)
        for n in range(1, 7):
            assert hilbert_length(ring, n) == 3 * n - 2


def test_hilbert_length_guard():
    with pytest.raises(PrecisionTooLow):
        hilbert_length(R1, 9)
    with pytest.raises(PrecisionTooLow):
        hilbert_length(make_ring("F2", 1, 4), 3)


def test_square_zero_prime_check():
    for ring in (R1, R2, RQ, make_ring("F5", 2, 8)):
        assert square_zero_prime_check(ring) == {
            "p_squared_zero": True,
            "quotient_is_dvr": True,
        }


def test_maximal_ideal_power_structure():
    # M^n = t^n V + t^(n-1) L: pivot valuations n, then n-1 repeated
    for rank in (1, 2):
        ring = make_ring("F2", rank, 16)
        for n in (1, 2, 3):
            P = ideal_power(ring.maximal_ideal(), n)
            vals = sorted(v for _, v in P.pivots)
            assert vals == sorted([n] + [n - 1] * rank)


def test_random_regular_ideal_is_regular():
    rng = random.Random(23)
    for _ in range(30):
        I = random_regular_ideal(R2, rng)
        assert I.is_regular()


def test_get_domain_guard():
    with pytest.raises(UnsupportedField):
        get_domain("F11")
