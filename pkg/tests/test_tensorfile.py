import json
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given

from doubleforms.biform import BiForm
from doubleforms.chern_weil import Density, PiMultiple, thorpe_report
from doubleforms.curvature import BundleCurvature, CurvatureTensor, constant_curvature, random_curvature
from doubleforms.tensorfile import (
    TensorFileError,
    decimal,
    density_json,
    load_tensor_file,
    save_tensor_file,
    tensor_from_json,
    tensor_to_json,
    thorpe_report_json,
)

from conftest import biforms


def entry(I, J, value):
    return {"I": list(I), "J": list(J), "value": value}


def doc(entries, kind="biform", bidegree=(2, 2), dims=(4, 4)):
    return {"kind": kind, "bidegree": list(bidegree), "dims": list(dims), "entries": entries}


def test_loader_canonicalizes_and_folds_signs():
    tf = tensor_from_json(doc([entry((2, 1), (1, 2), "3/2"), entry((3, 4), (4, 3), 2)]))
    assert tf.form.as_dict() == {((1, 2), (1, 2)): Fraction(-3, 2), ((3, 4), (3, 4)): -2}


@pytest.mark.parametrize(
    "bad",
    [
        [],
        {"kind": "biform"},
        doc([], kind="matrix"),
        doc([entry((1, 2), (1, 2), 1), entry((2, 1), (1, 2), 1)]),
        doc([entry((1, 5), (1, 2), 1)]),
        doc([entry((1, 2), (1, 2), "x")]),
        doc([entry((1, 2), (1, 2), 1.5)]),
        doc([entry((1, 2), (1, 2), "1/0")]),
        doc([{"I": [1, 2], "value": "1"}]),
        doc([entry((1,), (1, 2), 1)]),
        doc([], bidegree=("a", 2)),
    ],
)
def test_loader_rejects_malformed(bad):
    with pytest.raises(TensorFileError):
        tensor_from_json(bad)


@given(biforms())
def test_round_trip_is_canonical(T):
    data = tensor_to_json(T)
    assert all(isinstance(e["value"], str) for e in data["entries"])
    assert tensor_from_json(json.loads(json.dumps(data))).form == T
    assert tensor_to_json(tensor_from_json(data).form) == data


def test_save_load_files(tmp_path):
    T = constant_curvature(4, Fraction(2, 3)).form
    path = tmp_path / "s4.json"
    save_tensor_file(T, path, kind="curvature")
    tf = load_tensor_file(path)
    assert tf.kind == "curvature" and tf.form == T
    R = tf.curvature()
    assert isinstance(R, CurvatureTensor) and R.k == 1


def test_load_errors(tmp_path):
    with pytest.raises(TensorFileError):
        load_tensor_file(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(TensorFileError):
        load_tensor_file(bad)


def test_curvature_view_errors():
    tf = tensor_from_json(doc([], bidegree=(1, 1)))
    with pytest.raises(TensorFileError):
        tf.curvature()
    tf = tensor_from_json(doc([], dims=(6, 6)))
    with pytest.raises(TensorFileError):
        tf.curvature()
    tf = tensor_from_json(doc([], dims=(4, 6)))
    assert isinstance(tf.curvature(), BundleCurvature)
    with pytest.raises(TensorFileError):
        tensor_from_json(doc([], dims=(4, 1))).curvature()


@pytest.mark.parametrize("x, exp", [(Fraction(3, 4), -2), (Fraction(-1, 7), 0), (Fraction(2), 3)])
def test_decimal_has_fifteen_significant_digits(x, exp):
    text = decimal(x, exp)
    mantissa = text.lstrip("-").split("e")[0].replace(".", "").lstrip("0")
    assert len(mantissa) == 15
    with mpmath.workdps(50):
        exact = mpmath.mpf(x.numerator) / x.denominator * mpmath.pi**exp
        assert abs(mpmath.mpf(text) - exact) <= abs(exact) * mpmath.mpf(10) ** -14


def test_density_json_for_round_sphere():
    d = density_json(Density(Fraction(3), 2))
    assert d["coefficient"] == "3" and d["pi_power"] == 2
    assert float(d["decimal"]) == pytest.approx(3 / (4 * mpmath.pi**2), rel=1e-14)


def test_report_json_with_volume():
    rep = thorpe_report(constant_curvature(4, 1))
    out = thorpe_report_json(rep, PiMultiple.parse("8/3*pi^2"))
    assert out["integrated"]["euler"]["rational"] == "2"
    assert out["integrated"]["euler"]["pi_exponent"] == 0
    assert out["integrated"]["pontryagin"]["rational"] == "0"
    assert all(v["equal"] for v in out["identities"].values())
    json.dumps(out)


def test_report_json_random_echoes_identities():
    rep = thorpe_report(random_curvature(3, 4, 4, 1, want_pair_symmetry=True))
    out = thorpe_report_json(rep)
    for ident in out["identities"].values():
        assert ident["equal"] and ident["lhs"] == ident["rhs"]
    assert "integrated" not in out
