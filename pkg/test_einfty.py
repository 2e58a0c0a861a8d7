import pytest

from einfty import check_comm_toda_laws
from einfty import check_einfty_axioms
from einfty import EinftyQPA
from einfty import lor2_check
from einfty import OddDegree
from einfty import power_operation_set
from einfty import sq1
from einfty import sq1_omega
from einfty import sq1_representative_check
from einfty import square_result
from instances import build_lambda
from instances import build_zsigma
from instances import parse_class
from qpa import H0Class
from trackgroup import block_shuffle
from trackgroup import Perm
from trackgroup import track_group
from trackgroup import TrackElem


@pytest.fixture(scope="module")
def zsigma():
    return build_zsigma()


def n(E, k):
    return H0Class(E.base, E.base.unit * k)


class TestActions(object):
    def test_permutations_act_by_sign(self):
        E = build_lambda(3)
        y = E.base.carrier(2, "0").generator("y")
        assert E.act(y, block_shuffle(1, 1)) == -y

    def test_tracks_act_through_eta(self, zsigma):
        one = zsigma.base.unit
        assert zsigma.act(one, track_group(0).omega()) == zsigma.base.eta(one)
        assert zsigma.act(one, track_group(0).identity()).is_zero()

    def test_sections_act_as_zero(self, zsigma):
        one = zsigma.base.unit
        assert zsigma.act(one, TrackElem(0, Perm.identity(0))).is_zero()
        assert zsigma.act(one * 3, track_group(0).omega()) == zsigma.base.eta(one * 3)

    def test_tracks_act_as_zero_without_an_ee_level(self):
        E = build_lambda(3)
        y = E.base.carrier(2, "0").generator("y")
        for t in track_group(2).elements():
            assert E.act(y, t).is_zero()

    def test_th_is_minus_h(self, zsigma):
        x = zsigma.base.unit * 3
        assert str(zsigma.TH(x)) == "-3h"

    def test_cupone_shape(self):
        B = build_lambda(0)
        with pytest.raises(ValueError):
            EinftyQPA(B, cupone={(1, 1): [[[2]], [[2]]]})


class TestSquares(object):
    @pytest.mark.parametrize("k,value", ((0, "0"), (1, "0"), (2, "eta"), (3, "eta"), (4, "0"), (-1, "eta")))
    def test_tauhat(self, zsigma, k, value):
        assert str(sq1(zsigma, n(zsigma, k))) == value

    @pytest.mark.parametrize("k,value", ((0, "0"), (1, "eta"), (2, "eta"), (3, "0"), (4, "0")))
    def test_omega(self, zsigma, k, value):
        assert str(sq1_omega(zsigma, n(zsigma, k))) == value

    def test_result(self, zsigma):
        result = square_result(zsigma, n(zsigma, 2))
        assert result.dict(by_alias=True) == {"degree": 0, "class": "2", "value": "eta", "lift": "tauhat"}

    def test_odd_degree(self):
        E = build_lambda(3)
        with pytest.raises(OddDegree):
            sq1(E, parse_class(E.base, "x"))

    def test_unknown_lift(self, zsigma):
        with pytest.raises(ValueError):
            sq1(zsigma, n(zsigma, 1), "sigma")

    def test_power_operation_set(self, zsigma):
        assert [str(e) for e in power_operation_set(zsigma, n(zsigma, 1))] == ["0", "eta"]
        assert [str(e) for e in power_operation_set(zsigma, n(zsigma, 2))] == ["eta"]


class TestEinftyAxioms(object):
    def test_lambda_mod_three(self):
        report = check_einfty_axioms(build_lambda(3))
        assert report.suite == "einfty"
        assert report.passed, report.failures()
        assert {"EQ1", "LC1", "C1C", "O6", "S6", "GR5"} <= set(report.law_ids())

    def test_zsigma(self, zsigma):
        assert check_einfty_axioms(zsigma).passed

    def test_hexagon_fails_over_the_integers(self):
        E = build_lambda(0, einfty=True)
        report = check_einfty_axioms(E, laws="O6")
        law = report.law("O6")
        assert law.status == "fail"
        assert "x" in law.witness.inputs.values()


class TestSquareLaws(object):
    def test_lor2(self, zsigma):
        report = lor2_check(zsigma)
        assert report.suite == "square"
        assert report.passed, report.failures()
        assert report.law_ids() == ["LOR2", "SQREP"]

    def test_representatives(self):
        report = sq1_representative_check(build_lambda(3))
        assert report.law_ids() == ["SQREP"]
        assert report.passed


class TestCommToda(object):
    def test_tauhat_on_zsigma(self, zsigma):
        report = check_comm_toda_laws(zsigma, square_bound=25)
        assert report.suite == "comm-toda"
        assert report.passed, report.failures()
        assert report.law("T11").tuples_checked == 51 * 51

    def test_omega_on_zsigma(self, zsigma):
        report = check_comm_toda_laws(zsigma, lift="omega")
        assert report.suite == "comm-toda.omega"
        assert report.law("MAS1.omega").status == "fail"
        assert report.law("T12.omega").status == "fail"
        assert report.law("MAS2.omega").passed

    def test_lambda_mod_three(self):
        report = check_comm_toda_laws(build_lambda(3))
        assert report.passed, report.failures()
        assert report.law_ids()[:4] == ["T7", "T8", "T9", "T10"]

    def test_law_selection(self, zsigma):
        assert check_comm_toda_laws(zsigma, laws="MAS*").law_ids() == ["MAS1", "MAS2", "MAS3", "MAS4"]
