import random

import numpy as np
import pytest

from paftd import (
    AF,
    InputError,
    NiceTreeDecomposition,
    TreeDecomposition,
    decompose,
    elimination_order,
    make_nice,
    parse_paf,
    parse_td,
)

from conftest import FIXTURES, random_paf


def chain_af(n=5):
    names = [f"x{i}" for i in range(n)]
    return AF(names, [(names[i], names[i + 1]) for i in range(n - 1)])


def test_decompose_validates_on_random_graphs():
    rnd = random.Random(31)
    for _ in range(40):
        af = random_paf(rnd).af
        for heuristic in ("min-fill", "min-degree"):
            td = decompose(af, heuristic=heuristic)
            assert td.validate(af) == []
            nice = make_nice(td)
            assert nice.validate(af) == []
            assert nice.width() == td.width()


def test_chain_has_width_one():
    af = chain_af()
    assert decompose(af).width() == 1
    assert decompose(af, heuristic="min-degree").width() == 1


def test_given_order_requires_permutation():
    af = chain_af(3)
    with pytest.raises(InputError):
        elimination_order(af, "given-order")
    with pytest.raises(InputError):
        elimination_order(af, "given-order", order=["x0", "x1"])
    order = ["x2", "x0", "x1"]
    assert elimination_order(af, "given-order", order=order) == order
    assert decompose(af, order=order).validate(af) == []


def test_tie_break_is_deterministic_without_rng():
    af = chain_af(6)
    orders = {tuple(elimination_order(af, "min-degree")) for _ in range(5)}
    assert len(orders) == 1


def test_rng_tie_break_still_validates():
    rnd = random.Random(32)
    af = random_paf(rnd).af
    for seed in range(5):
        td = decompose(af, rng=np.random.default_rng(seed))
        assert td.validate(af) == []


def test_self_attacks_do_not_affect_the_graph():
    af = AF(["a", "b"], [("a", "a"), ("a", "b")])
    td = decompose(af)
    assert td.validate(af) == []
    assert td.width() == 1


def test_empty_af():
    af = AF([])
    td = decompose(af)
    assert td.validate(af) == []
    nice = make_nice(td)
    assert nice.validate(af) == []


def test_serialize_round_trip():
    af = chain_af()
    td = decompose(af)
    back = parse_td(td.serialize())
    assert isinstance(back, TreeDecomposition)
    assert back.bags == td.bags
    assert back.validate(af) == []
    nice = make_nice(td)
    nice_back = parse_td(nice.serialize())
    assert isinstance(nice_back, NiceTreeDecomposition)
    assert nice_back.validate(af) == []
    assert nice_back.serialize() == nice.serialize()


def test_validator_reports_violations():
    af = chain_af(3)
    # x1 missing from every bag, and the (x1,x2) edge uncovered
    td = TreeDecomposition({0: frozenset({"x0"}), 1: frozenset({"x2"})}, {0: (1,), 1: ()}, 0)
    violations = td.validate(af)
    assert any("x1" in v for v in violations)


def test_validator_catches_disconnected_occurrences():
    af = chain_af(3)
    td = TreeDecomposition(
        {
            0: frozenset({"x0", "x1"}),
            1: frozenset({"x1", "x2"}),
            2: frozenset({"x0"}),
        },
        {0: (1,), 1: (2,), 2: ()},
        0,
    )
    assert any("not connected" in v for v in td.validate(af))


def test_cycle5_td_shape_is_accepted():
    doc = parse_paf((FIXTURES / "cycle5.paf").read_text())
    td = parse_td((FIXTURES / "cycle5.td").read_text())
    assert isinstance(td, NiceTreeDecomposition)
    assert td.validate(doc.paf.af) == []
    assert td.width() == 2
    assert td.node_count() == 16


def test_parse_td_rejects_multiple_roots():
    with pytest.raises(InputError):
        parse_td("bag 0 a\nbag 1 a\n")
