import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leftorth.errors import (
    DuplicateId,
    EmptyConfiguration,
    MismatchedConfiguration,
    NotSimpleConfiguration,
    SelfLoop,
    UnknownIdInIncidence,
    ZeroDivisor,
)
from leftorth.lattice import (
    Divisor,
    arithmetic_genus,
    build_configuration,
    canonical_class_view,
    canonical_pairing,
    genus_closed_form,
    magic_formula_holds,
    pairing,
)
from leftorth.models import standard_chain

from conftest import any_configurations, brute_genus, simple_trees


def single(r, g=0):
    return build_configuration([{"id": "E", "self_intersection": r, "genus": g}])


class TestBuild:
    def test_single_component(self):
        c = single(-1)
        assert c.ids == ("E",)
        assert c.gram == ((-1,),)

    def test_a2_gram(self):
        c = build_configuration([("E1", -2), ("E2", -2)], [("E1", "E2")])
        assert c.gram == ((-2, 1), (1, -2))

    def test_self_loop(self):
        with pytest.raises(SelfLoop):
            build_configuration([("E1", -2)], [("E1", "E1")])

    def test_duplicate_id(self):
        with pytest.raises(DuplicateId):
            build_configuration([("E1", -2), ("E1", 0)])

    def test_unknown_id(self):
        with pytest.raises(UnknownIdInIncidence):
            build_configuration([("E1", -2)], [("E1", "E9")])

    def test_empty(self):
        with pytest.raises(EmptyConfiguration):
            build_configuration([])

    def test_multi_incidence_counts(self):
        c = build_configuration([("A", 0), ("B", 0)], [("A", "B"), ("B", "A")])
        assert c.incidence_count("A", "B") == 2
        assert not c.is_simple

    def test_natural_id_order(self):
        c = build_configuration([("E10", 0), ("E2", 0), ("E1", 0)])
        assert c.ids == ("E1", "E2", "E10")


class TestPairing:
    def test_a2_self_pairing(self):
        c, d = standard_chain([-2, -2])
        assert pairing(c, d, d) == -2

    def test_zero(self):
        c, d = standard_chain([-2, 1, 3])
        assert pairing(c, c.zero(), d) == 0

    def test_chain_example(self):
        c, d = standard_chain([0, -3, -2, -3, 0])
        sub = c.divisor(E2=1, E3=1, E4=1)
        assert pairing(c, d, sub) == -2

    def test_mismatched(self):
        c1, d1 = standard_chain([-2])
        c2, _ = standard_chain([-1])
        with pytest.raises(MismatchedConfiguration):
            pairing(c2, d1, d1)

    @given(any_configurations(), st.randoms(use_true_random=False))
    def test_symmetric_bilinear(self, cd, rnd):
        c, d1 = cd
        n = len(c)
        d2 = Divisor(c, [rnd.randint(0, 3) for _ in range(n)])
        d3 = Divisor(c, [rnd.randint(0, 3) for _ in range(n)])
        assert pairing(c, d1, d2) == pairing(c, d2, d1)
        assert pairing(c, d1 + d2, d3) == pairing(c, d1, d3) + pairing(c, d2, d3)


class TestCanonical:
    @pytest.mark.parametrize(
        "r,g,k,expected", [(-1, 0, 1, -1), (1, 0, 2, -6), (0, 1, 1, 0)]
    )
    def test_values(self, r, g, k, expected):
        c = single(r, g)
        assert canonical_pairing(c, c.prime("E", k)) == expected

    def test_view(self):
        c = build_configuration([("A", -3), ("B", 2, 1)])
        view = canonical_class_view(c)
        assert view["A"] == 1
        assert view["B"] == -2


class TestGenus:
    def test_chain_example(self):
        c, d = standard_chain([0, -3, -2, -3, 0])
        assert arithmetic_genus(c, d) == 0

    @pytest.mark.parametrize("r,k,expected", [(1, 2, 0), (0, 2, -1)])
    def test_multiple_line(self, r, k, expected):
        c = single(r)
        d = c.prime("E", k)
        assert arithmetic_genus(c, d) == expected
        assert genus_closed_form(c, d) == expected

    def test_zero_divisor(self):
        c = single(0)
        with pytest.raises(ZeroDivisor):
            arithmetic_genus(c, c.zero())

    def test_a3_reduced_closed_form(self):
        c, d = standard_chain([-2, -2, -2])
        assert genus_closed_form(c, d) == 0

    def test_two_positive_lines(self):
        # 1 + (0 - 1) + (0 - 1) + 1; the edge term enters with a plus sign
        c = build_configuration([("E1", 1), ("E2", 1)], [("E1", "E2")])
        d = c.reduced_divisor()
        assert arithmetic_genus(c, d) == 0
        assert genus_closed_form(c, d) == 0

    def test_closed_form_refuses(self):
        c = build_configuration([("A", 0), ("B", 0)], [("A", "B"), ("A", "B")])
        with pytest.raises(NotSimpleConfiguration):
            genus_closed_form(c, c.reduced_divisor())
        c = single(0, 1)
        with pytest.raises(NotSimpleConfiguration):
            genus_closed_form(c, c.prime("E"))

    @given(any_configurations())
    def test_parity_and_oracle(self, cd):
        c, d = cd
        twice = pairing(c, d, d) + canonical_pairing(c, d)
        assert twice % 2 == 0
        assert arithmetic_genus(c, d) == brute_genus(c, d.multiplicities)

    @settings(max_examples=300)
    @given(simple_trees(max_n=8, k_max=4))
    def test_formula_equivalence(self, cd):
        c, d = cd
        assert genus_closed_form(c, d) == arithmetic_genus(c, d)

    def test_multi_incidence_riemann_roch(self):
        c = build_configuration([("A", 0), ("B", 0)], [("A", "B"), ("A", "B")])
        assert arithmetic_genus(c, c.reduced_divisor()) == 1


class TestMagicFormula:
    def test_two_positive(self):
        c = build_configuration([("E1", 1), ("E2", 1)], [("E1", "E2")])
        assert magic_formula_holds(c, c.reduced_divisor())

    def test_double_zero_line(self):
        c = single(0)
        assert not magic_formula_holds(c, c.prime("E", 2))

    def test_minus_one_line(self):
        c = single(-1)
        assert magic_formula_holds(c, c.prime("E"))

    @given(simple_trees(max_n=6, k_max=4))
    def test_iff_genus_zero(self, cd):
        c, d = cd
        assert magic_formula_holds(c, d) == (arithmetic_genus(c, d) == 0)


def test_relabeling_invariance():
    rnd = random.Random(7)
    for _ in range(50):
        n = rnd.randint(1, 6)
        ids = [f"E{i + 1}" for i in range(n)]
        comps = [(c, rnd.randint(-4, 4)) for c in ids]
        inc = [(ids[i], ids[rnd.randrange(i)]) for i in range(1, n)]
        c = build_configuration(comps, inc)
        d = Divisor(c, [rnd.randint(1, 3) for _ in range(n)])
        perm = ids[:]
        rnd.shuffle(perm)
        mapping = {a: f"X{b}" for a, b in zip(ids, perm)}
        c2 = c.relabel(mapping)
        d2 = d.relabel(mapping, c2)
        assert arithmetic_genus(c2, d2) == arithmetic_genus(c, d)
        assert pairing(c2, d2, d2) == pairing(c, d, d)
        assert canonical_pairing(c2, d2) == canonical_pairing(c, d)


def test_divisor_mapping_behaviour():
    c, d = standard_chain([-2, -2])
    assert dict(d) == {"E1": 1, "E2": 1}
    assert c.prime("E1") <= d
    assert not d <= c.prime("E1")
    assert (d - c.prime("E1")) == c.prime("E2")
    assert 2 * d == c.divisor(E1=2, E2=2)
    assert d.support == ("E1", "E2") and d.degree == 2
