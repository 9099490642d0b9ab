import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gamma4.diagram import checkerboard, parse_pd
from gamma4.goeritz import NEGATIVE, POSITIVE, GoeritzForm, definiteness, goeritz, pregoeritz
from gamma4.obstruct import (
    InvalidRecord,
    InvariantRecord,
    LinkingForm,
    NonCyclic,
    OddSignature,
    WrongDefiniteness,
    arf_matches_determinant,
    congruence_class,
    congruence_lower_bound,
    donaldson_obstruction,
    linking_form,
    moebius_obstruction,
)
from helpers import forms_of, negative_form, table
from oracles import exact_inverse


def record(name):
    return table()[name].record


def form_from(gram):
    g = np.array(gram)
    return GoeritzForm(g, 0, definiteness(g))


@pytest.mark.parametrize("sigma,arf,cls", [(0, 1, 4), (-2, 1, 2), (0, 0, 0), (-6, 0, 2), (2, 1, 6)])
def test_congruence_class(sigma, arf, cls):
    assert congruence_class(sigma, arf) == cls


@given(st.integers(-20, 20).map(lambda k: 2 * k), st.integers(0, 1))
def test_congruence_class_periodic(sigma, arf):
    assert congruence_class(sigma, arf) == congruence_class(sigma % 8, arf)


def test_odd_signature_rejected():
    with pytest.raises(OddSignature):
        congruence_class(1, 0)


def test_lower_bound_only_for_class_four():
    assert congruence_lower_bound(InvariantRecord("x", 0, 1, 3)) == 2
    assert congruence_lower_bound(InvariantRecord("x", 0, 0, 9, slice=True)) is None
    assert congruence_class(record("10_2").signature, record("10_2").arf) == 2


@pytest.mark.parametrize("kw", [
    dict(signature=1, arf=0, determinant=1),
    dict(signature=0, arf=0, determinant=4),
    dict(signature=2, arf=0, determinant=9, slice=True),
    dict(signature=0, arf=0, determinant=15, slice=True),
    dict(signature=0, arf=1, determinant=9),
])
def test_record_validation(kw):
    with pytest.raises(InvalidRecord):
        InvariantRecord("bad", **kw)


def test_arf_determinant_rule():
    assert arf_matches_determinant(0, 17) and arf_matches_determinant(1, 3)
    assert not arf_matches_determinant(1, 7)


def test_mirrored_record_flips_signature():
    r = record("10_9").mirror()
    assert r.name == "-10_9" and r.signature == -record("10_9").signature
    assert congruence_class(r.signature, r.arf) == 2


def test_donaldson_fires_on_mirror_of_10_9():
    out = donaldson_obstruction(record("10_9").mirror(), [negative_form("-10_9")])
    assert out.bound == 2
    assert [ell for ell, _ in out.sweeps[0].attempts] == [39]


def test_donaldson_fires_on_10_33_with_both_forms():
    fs = forms_of("10_33")
    out = donaldson_obstruction(record("10_33"), fs)
    assert out.bound == 2 and len(out.sweeps) == 2


def test_donaldson_silent_on_10_4():
    out = donaldson_obstruction(record("10_4").mirror(), [negative_form("-10_4")])
    assert out.bound is None
    ell, res = out.sweeps[0].attempts[-1]
    assert res.embeddable and res.witness is not None


def test_donaldson_checks_definiteness():
    pos = next(f for f in forms_of("10_2") if f.definiteness == POSITIVE)
    with pytest.raises(WrongDefiniteness):
        donaldson_obstruction(record("10_2"), [pos])
    with pytest.raises(WrongDefiniteness):
        donaldson_obstruction(record("10_1"), [negative_form("10_1")])


def test_donaldson_independent_of_deleted_region():
    for name in ("10_2", "10_7", "10_46"):
        c = next(c for c in checkerboard(parse_pd(table()[name].pd_code))
                 if goeritz(pregoeritz(c)).definiteness == NEGATIVE)
        pg = pregoeritz(c)
        bounds = {donaldson_obstruction(record(name), [goeritz(pg, k)]).bound for k in range(pg.n)}
        assert len(bounds) == 1, name


def test_linking_form_of_minus_three():
    lf = linking_form([[-3]])
    assert lf.n == 3 and LinkingForm.make(3, 2).equivalent(lf)


@pytest.mark.parametrize("name,n,q", [("10_136", 15, 8), ("10_159", 39, 19)])
def test_linking_form_of_census_knots(name, n, q):
    lf = linking_form(forms_of(name)[0])
    assert lf.n == n and lf.equivalent(LinkingForm.make(n, q))


def test_linking_form_value_matches_rational_inverse():
    g = np.array([[-3, 1, 0], [1, -3, 1], [0, 1, -5]])
    lf = linking_form(g)
    inv = exact_inverse(g)
    # some cokernel element of order n has self-linking -x^T G^{-1} x equal to q/n up to orbit
    vals = set()
    for x in np.ndindex(5, 5, 5):
        v = -sum(x[i] * inv[i][j] * x[j] for i in range(3) for j in range(3))
        if v.denominator == lf.n:
            vals.add(v.numerator * (lf.n // v.denominator) % lf.n)
    assert any(LinkingForm.make(lf.n, q).q == lf.q for q in vals)


def test_non_cyclic_cokernel():
    with pytest.raises(NonCyclic):
        linking_form([[-3, 0], [0, -3]])


@pytest.mark.parametrize("n,q,bound", [(15, 8, 2), (3, 1, None), (51, 20, 2), (35, 12, 2), (39, 19, 2)])
def test_moebius_examples(n, q, bound):
    out = moebius_obstruction(LinkingForm.make(n, q))
    assert out.applicable and out.bound == bound


def test_moebius_precondition():
    out = moebius_obstruction(LinkingForm.make(9, 2))
    assert not out.applicable and out.bound is None


@given(st.sampled_from([15, 21, 35, 39, 51, 55, 87]), st.integers(1, 200), st.integers(1, 200))
def test_moebius_orbit_invariance(n, q, u):
    if math.gcd(q, n) != 1 or math.gcd(u, n) != 1:
        return
    a = moebius_obstruction(LinkingForm.make(n, q)).bound
    b = moebius_obstruction(LinkingForm.make(n, u * u * q)).bound
    assert a == b
