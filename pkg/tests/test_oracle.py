import random
from fractions import Fraction

import pytest

from paftd import (
    AF,
    PAF,
    CapacityError,
    count_acc,
    count_ext,
    enumerate_subframeworks,
    extensions,
    p_acc_oracle,
    p_ext_oracle,
    parse_paf,
    subframework_probability,
)

from conftest import FIXTURES, random_paf, random_subset


@pytest.fixture(scope="module")
def cycle5():
    return parse_paf((FIXTURES / "cycle5.paf").read_text()).paf


def test_scenario_probabilities_sum_to_one():
    rnd = random.Random(3)
    for _ in range(20):
        paf = random_paf(rnd, max_args=5)
        total = sum(p for _, p in enumerate_subframeworks(paf))
        assert total == 1


def test_enumeration_agrees_with_subframework_probability():
    rnd = random.Random(4)
    paf = random_paf(rnd, max_args=5)
    for sub, p in enumerate_subframeworks(paf):
        assert subframework_probability(paf, sub) == p


def test_cycle5_has_24_subframeworks(cycle5):
    assert sum(1 for _ in enumerate_subframeworks(cycle5)) == 24


def test_p_ext_matches_direct_summation():
    rnd = random.Random(9)
    for _ in range(15):
        paf = random_paf(rnd, max_args=4, max_uncertain=7)
        S = random_subset(rnd, paf)
        for sigma in ("adm", "com", "stb", "grd"):
            expected = Fraction(0)
            for sub, p in enumerate_subframeworks(paf):
                if S in extensions(sub.to_af(), sigma):
                    expected += p
            assert p_ext_oracle(paf, sigma, S) == expected


def test_p_acc_matches_direct_summation():
    rnd = random.Random(10)
    for _ in range(10):
        paf = random_paf(rnd, max_args=4, max_uncertain=7)
        a = paf.af.arguments[0]
        for sigma in ("adm", "com", "stb", "grd"):
            expected = Fraction(0)
            for sub, p in enumerate_subframeworks(paf):
                if any(a in ext for ext in extensions(sub.to_af(), sigma)):
                    expected += p
            assert p_acc_oracle(paf, sigma, a) == expected


def test_acceptance_dominates_extension_probability():
    rnd = random.Random(12)
    for _ in range(10):
        paf = random_paf(rnd, max_args=5)
        S = random_subset(rnd, paf)
        if not S:
            continue
        a = next(iter(S))
        for sigma in ("adm", "com", "stb"):
            assert p_acc_oracle(paf, sigma, a) >= p_ext_oracle(paf, sigma, S)


def test_counting_on_certain_instance():
    af = AF(["a", "b"], [("a", "b")])
    paf = PAF.certain(af)
    assert count_ext(paf, "com", {"a"}) == 1
    assert count_ext(paf, "com", {"b"}) == 0
    assert count_acc(paf, "stb", "a") == 1


def test_capacity_cap():
    names = [f"x{i}" for i in range(31)]
    paf = PAF(AF(names), {a: Fraction(1, 2) for a in names}, {})
    with pytest.raises(CapacityError):
        p_ext_oracle(paf, "com", set())
    small = PAF(AF(names[:5]), {a: Fraction(1, 2) for a in names[:5]}, {})
    with pytest.raises(CapacityError):
        p_ext_oracle(small, "adm", set(), cap=4)
    assert p_ext_oracle(small, "adm", set(), cap=5) == 1


def test_cycle5_oracle_values(cycle5):
    S = {"a", "c", "e"}
    assert p_ext_oracle(cycle5, "com", S) == Fraction(18, 25)
    assert p_ext_oracle(cycle5, "stb", S) == Fraction(18, 25)
    assert p_acc_oracle(cycle5, "com", "e") == Fraction(4923, 5000)
    assert p_acc_oracle(cycle5, "grd", "e") == Fraction(1, 2)
