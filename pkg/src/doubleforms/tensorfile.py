"""JSON tensor files and report rendering.

A tensor file looks like::

    {"kind": "curvature", "bidegree": [2, 2], "dims": [4, 4],
     "entries": [{"I": [1, 2], "J": [1, 2], "value": "1"}, ...]}

Entries may be non-canonical; loading sorts index lists, folds the signs and
rejects inconsistent duplicates.  Rationals are always strings.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

import mpmath

from .biform import BiForm
from .chern_weil import Density, PiMultiple, ThorpeReport
from .curvature import BundleCurvature, CurvatureTensor

__all__ = [
    "TensorFileError",
    "TensorFile",
    "load_tensor_file",
    "save_tensor_file",
    "tensor_to_json",
    "tensor_from_json",
    "exact",
    "decimal",
    "density_json",
    "pi_multiple_json",
    "thorpe_report_json",
]

KINDS = ("biform", "curvature")
SIG_DIGITS = 15


class TensorFileError(ValueError):
    """Malformed or inconsistent tensor file."""


@dataclass(frozen=True)
class TensorFile:
    kind: str
    form: BiForm

    def curvature(self, k: Optional[int] = None) -> BundleCurvature:
        if self.form.bidegree != (2, 2):
            raise TensorFileError(f"curvature must have bidegree (2, 2), got {self.form.bidegree}")
        nv, l = self.form.dims
        if k is None:
            if nv % 4:
                raise TensorFileError(f"base dimension {nv} is not a multiple of 4")
            k = nv // 4
        try:
            if nv == l:
                return CurvatureTensor(self.form, k)
            return BundleCurvature(self.form, k)
        except ValueError as exc:
            raise TensorFileError(str(exc)) from exc


def exact(x: Fraction) -> str:
    return str(Fraction(x))


def _parse_rational(raw: Any) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise TensorFileError(f"value {raw!r} must be a rational string or integer")
    try:
        return Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise TensorFileError(f"bad rational {raw!r}") from exc


def tensor_from_json(data: Any) -> TensorFile:
    if not isinstance(data, dict):
        raise TensorFileError("tensor file must be a JSON object")
    missing = {"kind", "bidegree", "dims", "entries"} - set(data)
    if missing:
        raise TensorFileError(f"missing fields: {sorted(missing)}")
    kind = data["kind"]
    if kind not in KINDS:
        raise TensorFileError(f"kind must be one of {KINDS}, got {kind!r}")
    try:
        r, s = (int(x) for x in data["bidegree"])
        nv, nw = (int(x) for x in data["dims"])
    except (TypeError, ValueError) as exc:
        raise TensorFileError("bidegree and dims must be pairs of integers") from exc
    items = []
    for entry in data["entries"]:
        if not isinstance(entry, dict) or not {"I", "J", "value"} <= set(entry):
            raise TensorFileError(f"entry {entry!r} needs I, J and value")
        items.append((entry["I"], entry["J"], _parse_rational(entry["value"])))
    try:
        form = BiForm.from_raw((r, s), (nv, nw), items)
    except (ValueError, TypeError) as exc:
        raise TensorFileError(str(exc)) from exc
    return TensorFile(kind, form)


def tensor_to_json(form: BiForm, kind: str = "biform") -> dict:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    return {
        "kind": kind,
        "bidegree": list(form.bidegree),
        "dims": list(form.dims),
        "entries": [
            {"I": list(I), "J": list(J), "value": exact(v)} for (I, J), v in sorted(form.items())
        ],
    }


def load_tensor_file(path: Union[str, Path]) -> TensorFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise TensorFileError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TensorFileError(f"{path}: invalid JSON ({exc})") from exc
    return tensor_from_json(data)


def save_tensor_file(form: BiForm, path: Union[str, Path], kind: str = "biform") -> None:
    Path(path).write_text(json.dumps(tensor_to_json(form, kind), indent=1) + "\n")


def decimal(x: Fraction, pi_exponent: int = 0) -> str:
    """``x * pi**pi_exponent`` rendered to 15 significant digits."""
    with mpmath.workdps(40):
        value = mpmath.mpf(x.numerator) / x.denominator * mpmath.pi**pi_exponent
        return mpmath.nstr(value, SIG_DIGITS, strip_zeros=False)


def density_json(d: Density) -> dict:
    # value = coefficient / (2 pi)^pi_power = (coefficient / 2^pi_power) * pi^-pi_power
    return {
        "coefficient": exact(d.coefficient),
        "pi_power": d.pi_power,
        "meaning": f"coefficient * (2*pi)^-{d.pi_power}",
        "decimal": decimal(d.coefficient / 2**d.pi_power, -d.pi_power),
    }


def pi_multiple_json(x: PiMultiple) -> dict:
    return {
        "rational": exact(x.rational),
        "pi_exponent": x.pi_exponent,
        "decimal": decimal(x.rational, x.pi_exponent),
    }


def thorpe_report_json(report: ThorpeReport, volume: Optional[PiMultiple] = None) -> dict:
    norms = {
        key: {"exact": exact(v), "decimal": decimal(v)} for key, v in sorted(report.norms.items())
    }
    scale = Fraction(2, math.factorial(report.k) ** 2)
    n = report.norms
    plus_rhs = scale * (n["++"] - n["-+"])
    minus_rhs = scale * (n["--"] - n["+-"])
    out = {
        "k": report.k,
        "binom_2k_k": report.binom,
        "norms_sq": norms,
        "euler": density_json(report.euler),
        "pontryagin": density_json(report.pontryagin),
        "combo_plus": density_json(report.combo_plus),
        "combo_minus": density_json(report.combo_minus),
        "vanish_minus_plus": report.vanish_minus_plus,
        "vanish_plus_minus": report.vanish_plus_minus,
        "ineq_plus_holds": report.ineq_plus_holds,
        "ineq_minus_holds": report.ineq_minus_holds,
        "ineq_abs_holds": report.ineq_abs_holds,
        "theorem_consistent": {
            "plus": report.plus_consistent,
            "minus": report.minus_consistent,
            "abs": report.abs_consistent,
        },
    }
    out["identities"] = {
        "binom*e + p_k = 2/(k!)^2 (|++|^2 - |-+|^2)": {
            "lhs": exact(report.combo_plus.coefficient),
            "rhs": exact(plus_rhs),
            "equal": report.combo_plus.coefficient == plus_rhs,
        },
        "binom*e - p_k = 2/(k!)^2 (|--|^2 - |+-|^2)": {
            "lhs": exact(report.combo_minus.coefficient),
            "rhs": exact(minus_rhs),
            "equal": report.combo_minus.coefficient == minus_rhs,
        },
    }
    if volume is not None:
        out["volume"] = pi_multiple_json(volume)
        out["integrated"] = {
            name: pi_multiple_json(getattr(report, name).integrate(volume))
            for name in ("euler", "pontryagin", "combo_plus", "combo_minus")
        }
    return out
