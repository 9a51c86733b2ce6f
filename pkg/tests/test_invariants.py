"""Frozen invariant values, oracle agreement, and structural properties."""

from fractions import Fraction

import pytest

from finitype.diagram import FormalSum, mirror, parse_pd, switch_crossing
from finitype.exact_math import LaurentPoly
from finitype.invariants import (
    InvariantError,
    SkeinDepthError,
    c2,
    conway,
    evaluate_on_sum,
    get_invariant,
    invariant_names,
    j3,
    jones,
    kauffman_bracket,
    linking_matrix,
)
from finitype.oracles import conway_alt, jones_recursive
from finitype.tables import bundled_table


def q(**terms):
    return LaurentPoly(
        "q",
        {
            (-int(k[2:]) if k.startswith("em") else int(k[1:])): Fraction(v)
            for k, v in terms.items()
        },
    )


def z(**terms):
    return LaurentPoly(
        "z",
        {
            (-int(k[2:]) if k.startswith("em") else int(k[1:])): Fraction(v)
            for k, v in terms.items()
        },
    )


T = bundled_table()

JONES_VALUES = {
    "0_1": q(e0=1),
    "3_1": q(em4=-1, em3=1, em1=1),
    "3_1m": q(e4=-1, e3=1, e1=1),
    "4_1": q(em2=1, em1=-1, e0=1, e1=-1, e2=1),
    "5_1": q(em7=-1, em6=1, em5=-1, em4=1, em2=1),
    "5_1m": q(e7=-1, e6=1, e5=-1, e4=1, e2=1),
    "6_1": q(em4=1, em3=-1, em2=1, em1=-2, e0=2, e1=-1, e2=1),
    "7_1": q(em10=-1, em9=1, em8=-1, em7=1, em6=-1, em5=1, em3=1),
    "7_1m": q(e10=-1, e9=1, e8=-1, e7=1, e6=-1, e5=1, e3=1),
    "8_3": q(em4=1, em3=-1, em2=2, em1=-3, e0=3, e1=-3, e2=2, e3=-1, e4=1),
}

CONWAY_VALUES = {
    "0_1": z(e0=1),
    "unlink2": LaurentPoly.zero("z"),
    "3_1": z(e0=1, e2=1),
    "3_1m": z(e0=1, e2=1),
    "4_1": z(e0=1, e2=-1),
    "5_1": z(e0=1, e2=3, e4=1),
    "6_1": z(e0=1, e2=-2),
    "7_1": z(e0=1, e2=6, e4=5, e6=1),
    "8_3": z(e0=1, e2=-4),
    "hopf": z(e1=1),
    "hopf_m": z(e1=-1),
    "solomon": z(e1=-2, e3=-1),
    "chain3": z(e2=1),
}

C2_VALUES = {
    "0_1": 0,
    "3_1": 1,
    "3_1m": 1,
    "4_1": -1,
    "5_1": 3,
    "6_1": -2,
    "7_1": 6,
    "8_3": -4,
}

J3_VALUES = {
    "0_1": 0,
    "3_1": 6,
    "3_1m": -6,
    "4_1": 0,
    "5_1": 30,
    "7_1": 84,
}


class TestKauffmanBracket:
    def test_trefoil_bracket_and_state_count(self):
        br, states = kauffman_bracket(T["3_1"])
        assert br == LaurentPoly("A", {-5: -1, 3: -1, 7: 1})
        assert states == 8

    def test_state_count_is_two_to_the_crossings(self):
        for name in ("0_1", "4_1", "6_1", "hopf", "chain3"):
            d = T[name]
            assert kauffman_bracket(d)[1] == 2**d.n_crossings

    def test_unknot_bracket(self):
        assert kauffman_bracket(T["0_1"])[0] == LaurentPoly.constant("A", 1)


class TestJones:
    @pytest.mark.parametrize("name", sorted(JONES_VALUES))
    def test_frozen_values(self, name):
        assert jones(T[name]) == JONES_VALUES[name]

    def test_oracle_agreement_on_all_knots(self):
        for name, d in T.items():
            if d.n_components % 2 == 1:
                assert jones(d) == jones_recursive(d), name

    def test_mirror_inverts_the_variable(self):
        for name in ("3_1", "4_1", "5_1", "6_1", "8_3"):
            assert jones(mirror(T[name])) == jones(T[name]).substitute_inverse()

    def test_even_component_links_rejected(self):
        for name in ("hopf", "hopf_m", "solomon", "unlink2"):
            with pytest.raises(InvariantError):
                jones(T[name])

    def test_odd_component_links_allowed(self):
        val = jones(T["chain3"])
        assert not val.is_zero()
        assert val == jones_recursive(T["chain3"])

    def test_reduced_codes_of_the_same_knot(self):
        for a, b in (("3_1", "3_1k"), ("3_1", "3_1b"), ("4_1", "4_1k"),
                     ("6_1", "6_1k"), ("0_1", "0_1k")):
            assert jones(T[a]) == jones(T[b]), (a, b)


class TestConway:
    @pytest.mark.parametrize("name", sorted(CONWAY_VALUES))
    def test_frozen_values(self, name):
        assert conway(T[name]) == CONWAY_VALUES[name]

    def test_oracle_agreement_table_wide(self):
        for name, d in T.items():
            assert conway(d) == conway_alt(d), name

    def test_mirror_invariance_on_knots(self):
        # knot Conway polynomials are even in z, and mirroring flips z
        for name in ("3_1", "4_1", "5_1", "6_1", "7_1", "8_3"):
            assert conway(mirror(T[name])) == conway(T[name])

    def test_mirror_negates_odd_link_polynomials(self):
        assert conway(T["hopf_m"]) == conway(T["hopf"]).scale(-1)

    def test_reduced_codes_of_the_same_knot(self):
        for a, b in (("3_1", "3_1k"), ("3_1", "3_1b"), ("4_1", "4_1k"),
                     ("6_1", "6_1k"), ("0_1", "0_1k")):
            assert conway(T[a]) == conway(T[b]), (a, b)

    def test_split_links_vanish(self):
        assert conway(T["unlink2"]).is_zero()
        assert conway(parse_pd("components=3 arcs=0")).is_zero()

    def test_depth_limit(self):
        with pytest.raises(SkeinDepthError):
            conway(T["8_3"], max_depth=2)


class TestDerivedScalars:
    @pytest.mark.parametrize("name", sorted(C2_VALUES))
    def test_c2_frozen(self, name):
        assert c2(T[name]) == Fraction(C2_VALUES[name])

    @pytest.mark.parametrize("name", sorted(J3_VALUES))
    def test_j3_frozen(self, name):
        assert j3(T[name]) == Fraction(J3_VALUES[name])

    def test_c2_is_the_z2_coefficient(self):
        for name in ("3_1", "4_1", "5_1", "6_1", "7_1", "8_3"):
            assert c2(T[name]) == conway(T[name]).coefficient(2)

    def test_j3_negates_under_mirror(self):
        for name in ("3_1", "5_1", "7_1"):
            assert j3(mirror(T[name])) == -j3(T[name])

    def test_c2_mirror_invariant(self):
        for name in ("3_1", "4_1", "5_1"):
            assert c2(mirror(T[name])) == c2(T[name])


class TestLinkingMatrix:
    def test_hopf(self):
        assert linking_matrix(T["hopf"]) == [[0, 1], [1, 0]]
        assert linking_matrix(T["hopf_m"]) == [[0, -1], [-1, 0]]

    def test_solomon(self):
        assert linking_matrix(T["solomon"]) == [[0, -2], [-2, 0]]

    def test_chain(self):
        assert linking_matrix(T["chain3"]) == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]

    def test_unlink(self):
        assert linking_matrix(T["unlink2"]) == [[0, 0], [0, 0]]

    def test_single_component_rejected(self):
        with pytest.raises(InvariantError):
            linking_matrix(T["3_1"])

    def test_switch_changes_linking_by_one(self):
        d = T["hopf"]
        s = switch_crossing(d, 0)
        assert linking_matrix(s) == [[0, 0], [0, 0]]


class TestRegistry:
    def test_names(self):
        assert invariant_names() == ["c2", "conway", "j3", "jones"]

    def test_unknown_name(self):
        with pytest.raises(InvariantError):
            get_invariant("alexander")

    def test_zero_elements_match_value_types(self):
        for name in invariant_names():
            inv = get_invariant(name)
            val = inv(T["3_1"])
            assert type(inv.zero) is type(val)

    def test_evaluate_on_sum_is_linear(self):
        inv = get_invariant("conway")
        s = FormalSum([(T["3_1"], Fraction(2)), (T["4_1"], Fraction(-1))])
        expect = conway(T["3_1"]).scale(2) - conway(T["4_1"])
        assert evaluate_on_sum(inv, s) == expect
        assert evaluate_on_sum(inv, FormalSum.zero()) == inv.zero

    def test_evaluate_on_sum_rational_invariant(self):
        inv = get_invariant("c2")
        s = FormalSum([(T["3_1"], Fraction(1, 2)), (T["4_1"], Fraction(3))])
        assert evaluate_on_sum(inv, s) == Fraction(1, 2) * 1 + 3 * (-1)
