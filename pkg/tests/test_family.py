import math

import pytest
from hypothesis import given

from posetlab.errors import ElementOutOfRange, InvalidParam, OddN, ParseError
from posetlab.family import (
    SetFamily,
    elements_of,
    f23_construction,
    f23_formula_size,
    full_layer,
    layer_profile,
    lubell_tail_family,
    mask_of,
    middle_layers,
    parse_family,
    serialize_family,
    sigma,
)
from strategies import families


def test_mask_round_trip():
    assert mask_of([1, 3]) == 0b101
    assert elements_of(0b101) == [1, 3]
    assert elements_of(0) == []


def test_canonical_member_order():
    fam = SetFamily(3, (0b111, 0b001, 0b010, 0b011, 0b001))
    assert fam.members == (0b001, 0b010, 0b011, 0b111)


def test_mask_out_of_range():
    with pytest.raises(ElementOutOfRange):
        SetFamily(2, (0b100,))
    with pytest.raises(InvalidParam):
        SetFamily(0, ())
    with pytest.raises(InvalidParam):
        SetFamily(25, ())


def test_sigma_values():
    assert sigma(4, 2) == 10
    assert sigma(5, 2) == 20
    assert sigma(6, 2) == 35
    with pytest.raises(InvalidParam):
        sigma(4, 0)
    with pytest.raises(InvalidParam):
        sigma(4, 6)


def test_sigma_all_layers_is_power_of_two():
    for n in range(1, 13):
        assert sigma(n, n + 1) == 2 ** n


def test_middle_layers_size_matches_sigma():
    for n in range(1, 13):
        for h in range(1, n + 2):
            assert len(middle_layers(n, h)) == sigma(n, h)


def test_middle_layers_examples():
    assert layer_profile(middle_layers(4, 2)) == [0, 0, 6, 4, 0]
    assert layer_profile(middle_layers(5, 1)) == [0, 0, 0, 10, 0, 0]
    assert len(middle_layers(6, 2)) == 35


def test_layer_profile_singleton():
    assert layer_profile(SetFamily(3, (0,))) == [1, 0, 0, 0]


def test_f23_enumerated_sizes():
    f6 = f23_construction(6)
    assert len(f6) == 22
    assert layer_profile(f6) == [0, 0, 0, 16, 6, 0, 0]
    assert len(f6) > math.comb(6, 3)
    f8 = f23_construction(8)
    assert len(f8) == 75 > math.comb(8, 4)


def test_f23_membership_conditions():
    n = 8
    pins = mask_of([n - 1, n])
    for m in f23_construction(n):
        pc = bin(m).count("1")
        if pc == n // 2 + 1:
            assert m & pins == pins
        else:
            assert pc == n // 2 and bin(m & pins).count("1") <= 1


def test_f23_size_via_independent_binomial_count():
    # sets of size n/2+1 containing both pins: C(n-2, n/2-1); sets of size
    # n/2 missing at least one pin: C(n, n/2) - C(n-2, n/2-2)
    for n in range(4, 13, 2):
        expected = (
            math.comb(n - 2, n // 2 - 1)
            + math.comb(n, n // 2)
            - math.comb(n - 2, n // 2 - 2)
        )
        assert len(f23_construction(n)) == expected


def test_f23_formula_disagrees_with_enumeration():
    # the closed form undercounts; reports flag this instead of choosing
    assert f23_formula_size(6) == 17 != len(f23_construction(6))
    assert f23_formula_size(8) != len(f23_construction(8))


def test_f23_odd_n_rejected():
    with pytest.raises(OddN):
        f23_construction(5)


def test_lubell_tail_family():
    fam = lubell_tail_family(8, 3)
    assert len(fam) == 18
    assert [k for k, c in enumerate(layer_profile(fam)) if c] == [0, 1, 7, 8]
    assert len(lubell_tail_family(6, 3)) == 14
    with pytest.raises(InvalidParam):
        lubell_tail_family(5, 3)
    with pytest.raises(InvalidParam):
        lubell_tail_family(8, 2)


def test_full_layer():
    assert full_layer(4, 0) == [0]
    assert len(full_layer(5, 2)) == 10


def test_parse_family_basic():
    fam = parse_family("n=3\n1,2\n3\n")
    assert fam.n == 3
    assert fam.members == (0b100, 0b011)
    empty = parse_family("n=4\n-\n")
    assert empty.members == (0,)


def test_parse_family_errors():
    with pytest.raises(ParseError):
        parse_family("m=3\n1\n")
    with pytest.raises(ElementOutOfRange) as err:
        parse_family("n=3\n4\n")
    assert err.value.lineno == 2
    with pytest.raises(ParseError):
        parse_family("n=3\n2,1\n")
    with pytest.raises(ParseError):
        parse_family("n=3\n1,,2\n")
    with pytest.raises(ParseError):
        parse_family("")


def test_serialize_canonical():
    fam = SetFamily(3, (0b111, 0, 0b011))
    assert serialize_family(fam) == "n=3\n-\n1,2\n1,2,3\n"


@given(families(max_n=6))
def test_parse_serialize_round_trip(fam):
    assert parse_family(serialize_family(fam)) == fam
