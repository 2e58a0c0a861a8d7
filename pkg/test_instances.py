from pathlib import Path

import jsonschema
import pytest
import simplejson as json
from pydantic import ValidationError

from einfty import EinftyQPA
from groups import UnsupportedCarrier
from instances import _load_instance
from instances import BigInt
from instances import build_from_crossed_module
from instances import build_instance
from instances import build_lambda
from instances import builtin
from instances import BUILTINS
from instances import CrossedModuleError
from instances import CrossedModuleSpec
from instances import instance_to_dict
from instances import InstanceParseError
from instances import InstanceValidationError
from instances import lambda_crossed_spec
from instances import load_instance
from instances import parse_element
from instances import parse_instance
from instances import random_finite_crossed_module
from instances import resolve_instance
from instances import serialize_instance
from qpa import GradedQPA

INSTANCES = Path(__file__).parent / "data" / "instances"


def peiffer_violation():
    """d(s) = 1 but s . 1 = 2s, so ds . s differs from s . ds."""
    return {
        "name": "peiffer",
        "truncation": 0,
        "unit": [1],
        "degrees": [
            {"n": 0, "B0": {"orders": [0], "names": ["1"]}, "B1": {"orders": [0], "names": ["s"]}, "boundary": [[1]]}
        ],
        "products": [
            {"kind": "00", "n": 0, "m": 0, "table": [[[1]]]},
            {"kind": "01", "n": 0, "m": 0, "table": [[[1]]]},
            {"kind": "10", "n": 0, "m": 0, "table": [[[2]]]},
        ],
    }


class TestLoad(object):
    def test_lambda(self):
        B = load_instance(INSTANCES / "lambda-z.json")
        assert isinstance(B, GradedQPA)
        assert B.name == "lambda-z"
        assert B.truncation == 3

    def test_zsigma_is_einfty(self):
        E = load_instance(INSTANCES / "zsigma.json")
        assert isinstance(E, EinftyQPA)
        assert E.cupone == {}

    def test_empty(self):
        B = load_instance(INSTANCES / "empty.json")
        assert B.truncation == 0
        assert B.unit.is_zero()

    def test_syntax_error_has_position(self):
        with pytest.raises(InstanceParseError) as e:
            load_instance(INSTANCES / "bad-syntax.json")
        assert "bad-syntax.json:4:" in str(e.value)

    def test_ill_defined_h(self):
        with pytest.raises(InstanceValidationError) as e:
            load_instance(INSTANCES / "broken-h-z4.json")
        assert "generator g of order 4" in str(e.value)

    def test_broken_file_parses_without_laws(self):
        B = _load_instance(INSTANCES / "broken-h-z4.json", run_laws=False)
        assert B.module(0).c0.orders == (4,)

    def test_missing_file(self):
        with pytest.raises(InstanceParseError):
            load_instance(INSTANCES / "missing.json")

    @pytest.mark.parametrize(
        "patch,where",
        (
            ({"truncation": -1}, "truncation"),
            ({"name": ""}, "name"),
            ({"extra": 1}, "<root>"),
            ({"products": [{"kind": "11", "n": 0, "m": 0, "table": []}]}, "products/0/kind"),
        ),
    )
    def test_schema(self, patch, where):
        obj = {"name": "x", "truncation": 0, "degrees": [], "products": []}
        obj.update(patch)
        with pytest.raises(InstanceParseError) as e:
            parse_instance(json.dumps(obj), "x.json")
        assert "x.json: at %s:" % where in str(e.value)

    def test_resolve(self):
        assert resolve_instance("builtin:lambda-z").name == "lambda-z"
        assert resolve_instance(str(INSTANCES / "lambda-z.json")).name == "lambda-z"
        with pytest.raises(InstanceParseError):
            resolve_instance("builtin:nope")


class TestBuild(object):
    def test_negative_truncation(self):
        spec = parse_instance(serialize_instance(builtin("trivial")))
        spec.truncation = -1
        with pytest.raises(InstanceValidationError):
            build_instance(spec)

    def test_product_shape(self):
        obj = json.loads(serialize_instance(builtin("trivial")))
        obj["products"][0]["table"] = [[[1, 1]]]
        with pytest.raises(InstanceValidationError) as e:
            build_instance(parse_instance(json.dumps(obj)))
        assert "product 00 (0, 0)" in str(e.value)

    def test_duplicate_degree(self):
        obj = json.loads(serialize_instance(builtin("trivial")))
        obj["degrees"].append(obj["degrees"][0])
        with pytest.raises(InstanceValidationError):
            build_instance(parse_instance(json.dumps(obj)))

    @pytest.mark.parametrize("modulus", (-1, 1))
    def test_bad_modulus(self, modulus):
        with pytest.raises(UnsupportedCarrier):
            build_lambda(modulus)

    @pytest.mark.parametrize("name", sorted(BUILTINS))
    def test_builtins(self, name):
        assert builtin(name).name == name.replace("-crossed", "")


class TestCrossedModules(object):
    def test_lambda_from_crossed_module(self):
        assert instance_to_dict(build_from_crossed_module(lambda_crossed_spec(0))) == instance_to_dict(build_lambda(0))

    def test_peiffer_violation(self):
        with pytest.raises(CrossedModuleError) as e:
            build_from_crossed_module(peiffer_violation())
        assert e.value.law_id == "A3"
        assert e.value.witness is not None

    def test_no_ee_products(self):
        spec = lambda_crossed_spec(0)
        spec["products"].append({"kind": "ee", "n": 0, "m": 0, "table": []})
        with pytest.raises(ValidationError):
            CrossedModuleSpec.parse_obj(spec)

    def test_truncated_polynomial(self):
        B = builtin("truncated-poly")
        u = B.carrier(1, "0").generator("u")
        assert str(B.mul(u, u)) == "u2"
        assert B.mul(u, B.mul(u, u)).is_zero()


class TestRandom(object):
    def test_deterministic(self):
        first = random_finite_crossed_module(5)
        assert first.name == "random-5"
        assert serialize_instance(first) == serialize_instance(random_finite_crossed_module(5))

    @pytest.mark.parametrize("seed", (0, 1, 2))
    def test_coefficients(self, seed):
        B = random_finite_crossed_module(seed)
        orders = {o for M in B.modules for o in M.c0.orders + M.c1.orders}
        assert orders <= {2, 3}
        assert B.module(0).c0.orders in ((2,), (3,))


class TestSerialize(object):
    @pytest.mark.parametrize("name", ("zsigma", "lambda-z", "lambda-z3"))
    def test_round_trip(self, name):
        instance = builtin(name)
        text = serialize_instance(instance)
        assert instance_to_dict(build_instance(parse_instance(text))) == instance_to_dict(instance)

    def test_sorted_and_indented(self):
        text = serialize_instance(builtin("trivial"))
        assert text.startswith('{\n  "degrees"')

    def test_big_integers(self):
        obj = json.loads(serialize_instance(builtin("trivial")))
        obj["unit"] = ["123456789012345678901234567890"]
        spec = parse_instance(json.dumps(obj))
        assert spec.unit == [123456789012345678901234567890]
        assert json.dumps({"v": spec.unit[0]}, bigint_as_string=True) == '{"v": "123456789012345678901234567890"}'


class TestBigInt(object):
    @pytest.mark.parametrize("value,expected", ((3, 3), ("-12", -12), ("9" * 30, int("9" * 30))))
    def test_accepts(self, value, expected):
        assert BigInt.validate(value) == expected

    @pytest.mark.parametrize("value", (True, "1.5", "x", None))
    def test_rejects(self, value):
        with pytest.raises(TypeError):
            BigInt.validate(value)


class TestParseElement(object):
    @pytest.mark.parametrize("expr,text,degree", (("x", "x", 1), ("2x", "2x", 1), ("3", "3", 0), ("-y", "-y", 2)))
    def test_parse(self, expr, text, degree):
        B = build_lambda(0)
        x = parse_element(B, expr)
        assert (str(x), x.carrier.degree) == (text, degree)

    def test_level_one(self):
        B = build_lambda(0)
        assert str(parse_element(B, "p-q", level="1")) == "p-q"

    @pytest.mark.parametrize("expr", ("w", "x+y", "x+1", "2 x y"))
    def test_errors(self, expr):
        with pytest.raises(InstanceParseError):
            parse_element(build_lambda(0), expr)


class TestValidInstances:
    def setup_method(self):
        with open("schemas/qpa-instance-schema.json", "r") as f:
            self.schema = json.load(f)

    def is_valid(self, text):
        try:
            jsonschema.validate(instance=json.loads(text), schema=self.schema)
            return True
        except jsonschema.exceptions.ValidationError as e:
            print("EXCEPTION", str(e))
            return False

    @pytest.mark.parametrize("name", sorted(BUILTINS))
    def test_builtins(self, name):
        assert self.is_valid(serialize_instance(builtin(name)))

    def test_random(self):
        assert self.is_valid(serialize_instance(random_finite_crossed_module(3)))

    def test_sample_files(self):
        for name in ("zsigma", "lambda-z", "empty", "broken-h-z4"):
            assert self.is_valid((INSTANCES / ("%s.json" % name)).read_text())
