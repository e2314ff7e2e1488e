"""Ring backends: arithmetic, parsing, units, descriptors.

Graded multiplication is cross-checked against the dict-based oracle in
oracles.py; expected constants below were frozen from that oracle.
"""

import json

import pytest
from hypothesis import given, settings, strategies as st

from oracles import MonomialQuotientOracle, annihilator as naive_ann
from totref.errors import ParseError, TotrefError, UnknownVariable
from totref.rings import (FiniteLocalRing, GradedMonomialRing, annihilator,
                          enumerate_carrier, graded_basis, ideal_membership,
                          is_unit, ring_from_descriptor)

ORACLE = MonomialQuotientOracle(5, 3, [(1, 1, 0)])


def _as_dict(e):
    return {exp: c for exp, c in e.terms}


def _from_dict(ring, data):
    acc = ring.zero()
    for exp, c in data.items():
        acc = acc + ring.monomial_element(exp, c)
    return acc


# -- finite backend ---------------------------------------------------------

def test_z9_carrier_and_units(z9):
    elems = list(enumerate_carrier(z9))
    assert len(elems) == 9 == z9.carrier_size()
    units = [e for e in elems if z9.is_unit(e)]
    assert len(units) == 6
    assert not z9.is_unit(z9.parse("3"))


def test_z9_parse_format_round_trip(z9):
    for text in ["0", "1", "3", "8", "2+2", "3*3"]:
        e = z9.parse(text)
        assert z9.parse(z9.format(e)) == e
    assert z9.format(z9.parse("3*3")) == "0"
    assert z9.format(z9.parse("-1")) == "8"


def test_z9_annihilators_match_naive_enumeration(z9):
    for x in range(1, 9):
        expected = set(naive_ann(9, x))
        gens = annihilator(z9, z9.from_int(x))
        got = set()
        for e in enumerate_carrier(z9):
            inside, _ = ideal_membership(z9, e, gens.generators)
            if inside:
                got.add(int(z9.format(e)))
        assert got == expected, f"x={x}"


def test_finite_ring_rejects_nonsense():
    with pytest.raises(TotrefError):
        FiniteLocalRing(6, 2)
    z9 = FiniteLocalRing(3, 2)
    with pytest.raises(ParseError):
        z9.parse("3 +")
    with pytest.raises(UnknownVariable):
        z9.parse("w")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_z9_ring_axioms(a, b, c):
    ring = FiniteLocalRing(3, 2)
    ea, eb, ec = ring.from_int(a), ring.from_int(b), ring.from_int(c)
    assert (ea + eb) * ec == ea * ec + eb * ec
    assert ea * (eb * ec) == (ea * eb) * ec
    assert ea + (-ea) == ring.zero()


def test_finite_extension_ring_basics():
    # Z/4[t]/(t^2): 16 elements, t a zero divisor, 1+t a unit
    ring = FiniteLocalRing(2, 2, ext_var="t", ext_reduction=(0, 0))
    assert ring.carrier_size() == 16
    t = ring.parse("t")
    assert (t * t).is_zero
    assert ring.is_unit(ring.parse("1+t"))
    assert not ring.is_unit(t)


# -- graded backend ---------------------------------------------------------

def test_f5_defining_relation(f5):
    x, y = f5.parse("x"), f5.parse("y")
    assert (x * y).is_zero
    assert not (x * f5.parse("z")).is_zero


def test_f5_basis_dimensions_match_oracle(f5):
    # frozen from the monomial-counting oracle: dim A_d = 2d + 1
    expected = [1, 3, 5, 7, 9, 11, 13, 15, 17]
    assert [len(graded_basis(f5, d)) for d in range(9)] == expected
    assert [ORACLE.ring_dimension(d) for d in range(9)] == expected


def test_f5_parse_format_round_trip(f5):
    for text in ["0", "1", "z", "x^2", "2*z^3+x", "x+y+z", "-z",
                 "(x+z)*(y+z)", "z*(z+1)"]:
        e = f5.parse(text)
        assert f5.parse(f5.format(e)) == e
    assert f5.format(f5.parse("x*y")) == "0"
    assert f5.format(f5.parse("x * y + z")) == "z"


def test_f5_format_is_deg_lex_descending(f5):
    e = f5.parse("1+z+x^2+3*z^2")
    assert f5.format(e) == "x^2 + 3*z^2 + z + 1"
    assert f5.format(f5.parse("z+x")) == "x + z"


def test_f5_units_have_nonzero_constant_term(f5):
    # the backend models the local ring at (x, y, z)
    assert is_unit(f5, f5.parse("2"))
    assert is_unit(f5, f5.parse("1+z"))
    assert not is_unit(f5, f5.parse("z"))
    assert not is_unit(f5, f5.zero())


def test_f5_degrees(f5):
    assert f5.parse("z^3").degree() == 3
    assert f5.parse("x+y").degree() == 1
    assert f5.parse("1+z").is_homogeneous() is False
    assert f5.zero().is_homogeneous() is True


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                          st.integers(0, 2), st.integers(0, 4)),
                max_size=4),
       st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                          st.integers(0, 2), st.integers(0, 4)),
                max_size=4))
def test_f5_products_match_oracle(terms1, terms2):
    ring = GradedMonomialRing(5, ("x", "y", "z"), ((1, 1, 0),))
    d1 = {}
    for i, j, k, c in terms1:
        d1[(i, j, k)] = (d1.get((i, j, k), 0) + c) % 5
    d2 = {}
    for i, j, k, c in terms2:
        d2[(i, j, k)] = (d2.get((i, j, k), 0) + c) % 5
    d1 = {e: c for e, c in d1.items() if c and ORACLE.allowed(e)}
    d2 = {e: c for e, c in d2.items() if c and ORACLE.allowed(e)}
    e1, e2 = _from_dict(ring, d1), _from_dict(ring, d2)
    assert _as_dict(e1 * e2) == ORACLE.mul(d1, d2)
    assert _as_dict(e1 + e2) == ORACLE.add(d1, d2)


def test_graded_annihilator_of_x_is_y(f5):
    gens = annihilator(f5, f5.parse("x"), 8)
    assert [f5.format(g) for g in gens.generators] == ["y"]


# -- descriptors ------------------------------------------------------------

def test_descriptor_round_trips(z9, z8, f5):
    for ring in (z9, z8, f5):
        clone = ring_from_descriptor(json.loads(json.dumps(
            ring.descriptor())))
        assert clone.key == ring.key


def test_descriptor_rejects_bad_input():
    with pytest.raises(TotrefError):
        ring_from_descriptor({"kind": "mystery"})
    with pytest.raises(TotrefError):
        ring_from_descriptor({"kind": "graded", "p": 5, "vars": []})
