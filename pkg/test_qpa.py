import pytest

from instances import base_of
from instances import build_lambda
from instances import build_trivial
from instances import build_zsigma
from instances import parse_class
from qpa import BracketUndefined
from qpa import check_degreewise_qpm
from qpa import check_homology_laws
from qpa import check_module_laws
from qpa import check_qpa_axioms
from qpa import check_toda_laws
from qpa import Coset
from qpa import h0_ring
from qpa import H0Class
from qpa import h1_bimodule
from qpa import IllDefinedProduct
from qpa import k_invariant_bimodule_check
from qpa import massey_oracle
from qpa import massey_product
from qpa import module_massey
from qpa import property_H_check


@pytest.fixture(scope="module")
def lam():
    return build_lambda(0)


@pytest.fixture(scope="module")
def zsigma():
    return build_zsigma().base


class TestStructure(object):
    def test_products(self, lam):
        x = lam.carrier(1, "0").generator("x")
        assert str(lam.mul(x, x)) == "y"
        assert str(lam.mul(x, lam.mul(x, x))) == "z"
        assert str(lam.mul(lam.unit, x)) == "x"

    def test_products_past_truncation_vanish(self, lam):
        z = lam.carrier(3, "0").generator("z")
        x = lam.carrier(1, "0").generator("x")
        assert lam.mul(z, x).is_zero()

    def test_level_one_products(self, lam):
        x = lam.carrier(1, "0").generator("x")
        v = lam.carrier(2, "1").generator("v")
        assert str(lam.mul(x, v)) == "p+q"
        assert str(lam.mul(v, x)) == "p"

    def test_no_product_of_two_level_one_elements(self, lam):
        v = lam.carrier(2, "1").generator("v")
        with pytest.raises(IllDefinedProduct):
            lam.mul(v, v)

    def test_degrees_outside_truncation_are_zero(self, lam):
        assert lam.module(7).c0.rank == 0

    def test_unit_ee(self, zsigma):
        assert str(zsigma.unit_ee()) == "h"

    def test_classes(self, lam):
        assert [str(c) for c in lam.classes(1, 1)] == ["0@1", "x@1", "-x@1"]
        assert [c.is_zero() for c in lam.classes(2, 2)] == [True]

    def test_ill_defined_product(self):
        assert build_lambda(3).base.ill_defined_product() is None


class TestAxioms(object):
    def test_zsigma(self, zsigma):
        report = check_qpa_axioms(zsigma)
        assert report.passed, report.failures()
        assert "A1" in report.law_ids()

    def test_zsigma_over_the_full_window(self, zsigma):
        report = check_qpa_axioms(zsigma, 50)
        assert report.passed, report.failures()
        assert report.law_ids() == ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "L1", "L2", "L3"]
        assert report.law("A1").tuples_checked > 101 * 101

    @pytest.mark.parametrize("modulus", (0, 3))
    def test_lambda(self, modulus):
        B = base_of(build_lambda(modulus))
        assert check_qpa_axioms(B).passed
        assert check_degreewise_qpm(B).passed

    def test_degreewise_suite_name(self, lam):
        assert check_degreewise_qpm(lam).suite == "qpm"

    def test_law_selection(self, lam):
        assert check_qpa_axioms(lam, laws="L*").law_ids() == ["L1", "L2", "L3"]


class TestHomology(object):
    def test_laws(self, lam):
        assert check_homology_laws(lam).passed

    def test_h0_ring(self, lam):
        R = h0_ring(lam)
        assert R.invariants == {0: (0,), 1: (0,), 2: (), 3: ()}
        one, = R.basis(0)
        assert R.mul(one, one) == one
        x, = R.basis(1)
        assert R.mul(x, x).is_zero()

    def test_h1_bimodule(self, lam):
        M = h1_bimodule(lam)
        assert M.invariants == {0: (), 1: (), 2: (), 3: (0,)}
        assert M.basis(2) == []

    def test_h1_of_zsigma(self, zsigma):
        M = h1_bimodule(zsigma)
        eta, = M.basis(0)
        two = H0Class(zsigma, zsigma.unit * 2)
        assert M.left(two, eta).is_zero()
        assert M.right(eta, H0Class(zsigma, zsigma.unit)) == eta

    def test_k_invariant(self, zsigma, lam):
        assert k_invariant_bimodule_check(zsigma).passed
        assert k_invariant_bimodule_check(lam).passed

    def test_property_H(self, zsigma, lam):
        assert property_H_check(zsigma) == {0: False}
        assert property_H_check(lam) == {0: True, 1: True, 2: True, 3: True}
        assert property_H_check(build_trivial()) == {0: True}


class TestBracket(object):
    def test_xxx_is_q(self, lam):
        x = parse_class(lam, "x")
        m = massey_product(lam, x, x, x)
        assert m.degree == 3
        assert str(m.representative) == "q"
        assert [str(e) for e in m.elements()] == ["q"]
        assert str(m) == "{q}"

    def test_record(self, lam):
        x = parse_class(lam, "x")
        record = massey_product(lam, x, x, x).record()
        assert record.representative == "q"
        assert record.indeterminacy == []
        assert record.coset == ["q"]
        assert record.lifts["ab"] == "v"

    def test_oracle_agrees(self, lam):
        x = parse_class(lam, "x")
        assert [str(e) for e in massey_oracle(lam, x, x, x)] == ["q"]

    def test_oracle_ignores_representatives(self, lam):
        assert [str(e) for e in massey_oracle(lam, parse_class(lam, "-x"), parse_class(lam, "x"), parse_class(lam, "x"))] == ["-q"]

    def test_undefined(self, lam):
        with pytest.raises(BracketUndefined) as e:
            massey_product(lam, parse_class(lam, "x"), parse_class(lam, "1"), parse_class(lam, "x"))
        assert "x·1 ≠ 0" in str(e.value)
        assert "not a boundary" in str(e.value)

    def test_unit_entry(self, zsigma):
        one = H0Class(zsigma, zsigma.unit)
        zero = H0Class(zsigma, zsigma.unit * 0)
        m = massey_product(zsigma, one, zero, one)
        assert m.contains(zsigma.carrier(0, "1").zero())
        assert [str(e) for e in m.elements()] == ["0", "eta"]

    def test_module_bracket(self, lam):
        M = lam.as_module()
        x = parse_class(lam, "x")
        assert [str(e) for e in module_massey(M, H0Class(M, x.rep), x, x).elements()] == ["q"]


class TestCoset(object):
    def test_arithmetic(self, zsigma):
        eta = zsigma.carrier(0, "1").generator("eta")
        c = Coset.zero(eta.carrier)
        assert c.contains(eta.carrier.zero())
        assert not c.contains(eta)
        shifted = Coset(eta, c.subgroup)
        assert (shifted + shifted).equals(c)
        assert shifted.intersects(-shifted)
        assert str(shifted) == "{eta}"


class TestTodaLaws(object):
    def test_lambda(self, lam):
        report = check_toda_laws(lam)
        assert report.passed, report.failures()
        assert report.law_ids() == ["T1", "T2", "T3", "T4", "T5", "T6"]
        assert report.law("T1").tuples_checked > 0

    def test_t6_needs_two_torsion(self, lam):
        law = check_toda_laws(lam, laws="T6").law("T6")
        assert law.status == "vacuous"
        assert law.note

    def test_zsigma(self, zsigma):
        assert check_toda_laws(zsigma).passed

    def test_lambda_mod_three(self):
        assert check_toda_laws(base_of(build_lambda(3))).passed

    def test_module(self, lam):
        report = check_module_laws(lam.as_module())
        assert report.suite == "module"
        assert report.passed, report.failures()
        assert {"MP1", "MP2", "MP3", "MT1", "MT5"} <= set(report.law_ids())
