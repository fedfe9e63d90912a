from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import QQ_I

from discrete_dirac import (
    BLADES,
    METRIC,
    ConstantForm,
    DiscreteForm,
    DomainError,
    Window,
    blade_mul,
    clifford_mul,
    constant_mul,
    projector,
    unit_form,
)
from discrete_dirac.clifford import TABLE, metric
from discrete_dirac.plane_wave import MINUS_BLADES, PLUS_BLADES

from conftest import BLADE_MATRICES, random_complex_form


def test_metric():
    assert METRIC == (1, -1, -1, -1)
    assert all(metric(mu, nu) == 0 for mu, nu in product(range(4), repeat=2) if mu != nu)


@pytest.mark.parametrize("a, b, sign, c", [
    ("e0", "e0", 1, "x"),
    ("e1", "e2", 1, "e12"),
    ("e01", "e02", -1, "e12"),
    ("e01", "e", 1, "e23"),
    ("e2", "e1", -1, "e12"),
    ("e1", "e1", -1, "x"),
    ("e0123", "e0123", -1, "x"),
])
def test_blade_mul_examples(a, b, sign, c):
    res = blade_mul(a, b)
    assert (res.sign, res.blade.name) == (sign, c)


def test_table_matches_gamma_matrices():
    # independent oracle: the Dirac matrices represent the algebra faithfully
    for i, j in product(range(16), repeat=2):
        res = blade_mul(i, j)
        expected = res.sign * BLADE_MATRICES[res.blade.index]
        assert np.allclose(BLADE_MATRICES[i] @ BLADE_MATRICES[j], expected, atol=0)


def test_result_blade_is_symmetric_difference():
    for a, b in product(BLADES, repeat=2):
        assert blade_mul(a, b).blade.mask == a.mask ^ b.mask


def test_associativity_exhaustive():
    for a, b, c in product(range(16), repeat=3):
        ab = blade_mul(a, b)
        bc = blade_mul(b, c)
        left = blade_mul(ab.blade, c)
        right = blade_mul(a, bc.blade)
        assert ab.sign * left.sign == bc.sign * right.sign
        assert left.blade == right.blade


def test_anticommutation_exact():
    x = unit_form("x", exact=True)
    for mu, nu in product(range(4), repeat=2):
        a, b = unit_form(f"e{mu}", exact=True), unit_form(f"e{nu}", exact=True)
        assert constant_mul(a, b) + constant_mul(b, a) == x * (2 * metric(mu, nu))


def test_unit_is_two_sided_identity():
    x = unit_form("x")
    for i in range(16):
        c = ConstantForm(np.eye(16, dtype=np.int64)[i])
        assert constant_mul(x, c) == c == constant_mul(c, x)


def test_unit_forms():
    assert constant_mul(unit_form("e1"), unit_form("e2")) == unit_form("e12")
    assert constant_mul(unit_form("e0"), unit_form("e0")) == unit_form("x")
    assert unit_form("e").support() == {"e0123"}
    with pytest.raises(DomainError):
        unit_form("e21")
    with pytest.raises(DomainError):
        unit_form("e11")
    with pytest.raises(DomainError):
        unit_form("e012")


def test_unit_x_on_discrete_forms(rng):
    f = random_complex_form(rng, 2)
    x = unit_form("x")
    assert x * f == f == f * x
    assert clifford_mul(x.lift(f.window), f) == f


def test_different_sites_multiply_to_zero():
    a = np.zeros((16, 2, 2, 2, 2), dtype=np.int64)
    b = np.zeros_like(a)
    a[1, 0, 0, 0, 0] = 1
    b[1, 1, 0, 0, 0] = 1
    assert clifford_mul(DiscreteForm(a), DiscreteForm(b)).is_zero()


def test_bilinear_site_product():
    # (2 x^k + e0^k) e0^k = 2 e0^k + x^k
    k = (1, 0, 1, 0)
    f = np.zeros((16, 2, 2, 2, 2), dtype=np.int64)
    g = np.zeros_like(f)
    f[(0,) + k] = 2
    f[(1,) + k] = 1
    g[(1,) + k] = 1
    out = clifford_mul(DiscreteForm(f), DiscreteForm(g))
    expected = np.zeros_like(f)
    expected[(1,) + k] = 2
    expected[(0,) + k] = 1
    assert out == DiscreteForm(expected)


def test_window_mismatch():
    with pytest.raises(DomainError):
        clifford_mul(DiscreteForm.zeros(2), DiscreteForm.zeros(3))


def test_lift_consistency():
    w = Window.cube(2)
    for a, b in product(range(16), repeat=2):
        ca = ConstantForm(np.eye(16, dtype=np.int64)[a])
        cb = ConstantForm(np.eye(16, dtype=np.int64)[b])
        assert clifford_mul(ca.lift(w), cb.lift(w)) == constant_mul(ca, cb).lift(w)


gauss = st.builds(lambda a, b: QQ_I(a, b), st.integers(-5, 5), st.integers(-5, 5))
exact_constants = st.lists(gauss, min_size=16, max_size=16).map(lambda v: ConstantForm(np.array(v, dtype=object)))


@given(exact_constants, exact_constants, exact_constants)
@settings(max_examples=30, deadline=None)
def test_constant_mul_associative_exact(a, b, c):
    assert constant_mul(constant_mul(a, b), c) == constant_mul(a, constant_mul(b, c))


@given(exact_constants, exact_constants, exact_constants)
@settings(max_examples=30, deadline=None)
def test_constant_mul_distributes(a, b, c):
    assert constant_mul(a, b + c) == constant_mul(a, b) + constant_mul(a, c)


class TestProjectors:
    def test_exact_coefficients(self):
        p = projector("+12")
        assert p.is_exact
        assert p["x"] == QQ_I(QQ_I.dom(1, 2), 0)
        assert p["e12"] == QQ_I(0, QQ_I.dom(1, 2))

    @pytest.mark.parametrize("kind", ["+0", "-0", "+12", "-12"])
    def test_idempotent(self, kind):
        p = projector(kind)
        assert constant_mul(p, p) == p

    def test_complementary(self):
        x, zero = unit_form("x", exact=True), ConstantForm.zero(exact=True)
        for s in ("0", "12"):
            assert projector("+" + s) + projector("-" + s) == x
            assert constant_mul(projector("+" + s), projector("-" + s)) == zero

    @pytest.mark.parametrize("s0, s12", list(product("+-", repeat=2)))
    def test_commute(self, s0, s12):
        a, b = projector(s0 + "0"), projector(s12 + "12")
        assert constant_mul(a, b) == constant_mul(b, a)

    @pytest.mark.parametrize("s", ["+", "-"])
    def test_absorption(self, s):
        sign = 1 if s == "+" else -1
        e0 = unit_form("e0", exact=True)
        e12 = unit_form("e12", exact=True)
        p0, p12 = projector(s + "0"), projector(s + "12")
        assert constant_mul(e0, p0) == constant_mul(p0, e0)
        assert constant_mul(e12, p12) == constant_mul(p12, e12)
        assert p0 == constant_mul(p0, e0) * sign
        assert p12 == constant_mul(p12, e12) * QQ_I(0, sign)

    def test_complex_variant_matches(self):
        assert projector("+12", exact=False).allclose(projector("+12").to_complex(), atol=0)

    def test_unknown(self):
        with pytest.raises(DomainError):
            projector("+3")


@pytest.mark.parametrize("mu", [1, 2, 3])
def test_e0mu_exchanges_blade_classes(mu):
    e0 = unit_form("e0", exact=True)
    g = unit_form(f"e0{mu}", exact=True)
    for src, dst, sign in ((MINUS_BLADES, PLUS_BLADES, 1), (PLUS_BLADES, MINUS_BLADES, -1)):
        for b in src:
            out = constant_mul(g, unit_form(b, exact=True))
            assert out.support() <= set(dst)
            assert constant_mul(e0, out) == constant_mul(out, e0) * sign


def test_e01_times_minus_blades():
    a01, a02, a03, a4 = (QQ_I(n, 0) for n in (2, 3, 5, 7))
    a_minus = ConstantForm.from_dict({"e01": a01, "e02": a02, "e03": a03, "e": a4}, exact=True)
    out = constant_mul(unit_form("e01", exact=True), a_minus)
    assert out == ConstantForm.from_dict({"x": a01, "e12": -a02, "e13": -a03, "e23": a4}, exact=True)


def test_flipped_table_breaks_anticommutation():
    bad = TABLE.with_flipped_sign("e1", "e2")
    a, b = unit_form("e1", exact=True), unit_form("e2", exact=True)
    assert constant_mul(a, b, bad) + constant_mul(b, a, bad) != ConstantForm.zero(exact=True)
