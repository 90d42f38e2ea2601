"""
Forms validating job configurations.

A job configuration is one JSON object:

    {"command": "height", "field": "Q",
     "systems": {"f": ["0", "1/2", "1"], "F": {"f1": [[2, 0, "1"]], "f2": [[0, 2, "1"]]}},
     "pairs": [{"system": "f", "point": "1/16", "label": "a"}],
     "params": {"place": "inf", "exponents": [1, -1]},
     "output": "report.json"}

Univariate systems are ascending coefficient lists; plane endomorphisms are
{"f1", "f2"} term lists. Every exact scalar is parsed losslessly and unknown
keys are rejected.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

from django import forms

from algebra.exceptions import DynamicsError
from algebra.fields import FieldElement, FieldSpec
from algebra.places import Place
from bottcher.systems import PolynomialSystem
from plane.endomorphisms import PlaneEndomorphism

COMMANDS = [
    "bottcher",
    "green",
    "height",
    "classify",
    "equiv",
    "semiconjugacy",
    "geomdata",
    "transcend-bottcher",
    "height-algebraic",
    "height-relations",
    "plane-analyze",
    "plane-germs",
    "plane-census",
    "plane-homogeneity",
    "diagnostics",
]

CONFIG_KEYS = {"command", "field", "systems", "pairs", "params", "output"}
PAIR_KEYS = {"system", "point", "label"}

# Parameter name -> expected Python type.
PARAMETERS = {
    "order": int,
    "root_choice": int,
    "place": str,
    "exponents": list,
    "precision_bits": int,
    "iter_budget": int,
    "bidegree": int,
    "orbit_len": int,
    "nmax": int,
    "jet_order": int,
    "e_max": int,
    "iterate_bound": int,
    "height_screen": bool,
    "weak": bool,
    "assume_ns": bool,
}


@dataclass(frozen=True)
class PairSpec:
    system: str
    point: Any
    label: str = ""


@dataclass
class JobConfig:
    """
    A validated job.

    Attributes:
        command (str): One of COMMANDS.
        field (FieldSpec): The coefficient field.
        systems (dict): Name -> PolynomialSystem.
        planes (dict): Name -> PlaneEndomorphism.
        pairs (list[PairSpec]): Pairs by system name.
        params (dict): Command parameters and budgets.
        output (str): Report path; empty for standard output.
    """

    command: str
    field: FieldSpec
    systems: Dict[str, PolynomialSystem] = field(default_factory=dict)
    planes: Dict[str, PlaneEndomorphism] = field(default_factory=dict)
    pairs: List[PairSpec] = field(default_factory=list)
    params: Dict[str, Any] = field(default_factory=dict)
    output: str = ""

    @property
    def place(self):
        text = self.params.get("place")
        return Place.parse(text, self.field) if text else None

    def canonical(self):
        """
        The configuration as canonical JSON-ready data.
        """
        systems = {name: system.serialize() for name, system in self.systems.items()}
        systems.update({name: {"f1": f.f1.serialize(), "f2": f.f2.serialize()} for name, f in self.planes.items()})
        data = {
            "command": self.command,
            "field": str(self.field),
            "systems": dict(sorted(systems.items())),
            "pairs": [{"system": p.system, "point": str(p.point), "label": p.label} for p in self.pairs],
            "params": dict(sorted(self.params.items())),
        }
        if self.output:
            data["output"] = self.output
        return data


def reject_floats(value, where):
    """
    Floats are not exact scalars; write "1/2" or "0.5" as a string instead.
    """
    if isinstance(value, float):
        raise forms.ValidationError(f"{where}: {value!r} is a float; give exact scalars as strings or integers")
    if isinstance(value, (list, tuple)):
        for entry in value:
            reject_floats(entry, where)
    elif isinstance(value, dict):
        for entry in value.values():
            reject_floats(entry, where)


class FieldSpecField(forms.CharField):
    """
    "Q" or "Q(sqrt(D))".
    """

    def to_python(self, value):
        value = super().to_python(value) or "Q"
        try:
            return FieldSpec.parse(value)
        except DynamicsError as exc:
            raise forms.ValidationError(exc.message, code="field") from exc


class JobConfigForm(forms.Form):
    command = forms.ChoiceField(choices=[(c, c) for c in COMMANDS])
    field = FieldSpecField(required=False)
    systems = forms.JSONField(required=False)
    pairs = forms.JSONField(required=False)
    params = forms.JSONField(required=False)
    output = forms.CharField(required=False)

    def clean_systems(self):
        raw = self.cleaned_data.get("systems") or {}
        if not isinstance(raw, dict):
            raise forms.ValidationError("systems must be an object of named systems")
        K = self.cleaned_data.get("field") or FieldSpec.parse("Q")
        systems, planes = {}, {}
        for name, spec in raw.items():
            reject_floats(spec, f"system {name!r}")
            try:
                if isinstance(spec, list):
                    systems[name] = PolynomialSystem.from_coefficients(spec, K, name)
                elif isinstance(spec, dict) and set(spec) == {"f1", "f2"}:
                    planes[name] = PlaneEndomorphism.from_terms(spec["f1"], spec["f2"], K, name)
                else:
                    raise forms.ValidationError(f"system {name!r} is neither a coefficient list nor {{f1, f2}}")
            except DynamicsError as exc:
                raise forms.ValidationError(f"system {name!r}: {exc.message}") from exc
        return systems, planes

    def clean_pairs(self):
        raw = self.cleaned_data.get("pairs") or []
        if not isinstance(raw, list):
            raise forms.ValidationError("pairs must be a list")
        K = self.cleaned_data.get("field") or FieldSpec.parse("Q")
        pairs = []
        for index, spec in enumerate(raw):
            if not isinstance(spec, dict) or not {"system", "point"} <= set(spec) <= PAIR_KEYS:
                raise forms.ValidationError(f"pair {index} needs exactly system, point and an optional label")
            reject_floats(spec["point"], f"pair {index}")
            try:
                point = FieldElement.parse(str(spec["point"]), K)
            except DynamicsError as exc:
                raise forms.ValidationError(f"pair {index}: {exc.message}") from exc
            pairs.append(PairSpec(str(spec["system"]), point, str(spec.get("label", ""))))
        return pairs

    def clean_params(self):
        params = self.cleaned_data.get("params") or {}
        if not isinstance(params, dict):
            raise forms.ValidationError("params must be an object")
        for key, value in params.items():
            expected = PARAMETERS.get(key)
            if expected is None:
                raise forms.ValidationError(f"unknown parameter {key!r}")
            if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
                raise forms.ValidationError(f"parameter {key!r} must be of type {expected.__name__}")
        exponents = params.get("exponents")
        if exponents is not None and not all(isinstance(n, int) and not isinstance(n, bool) for n in exponents):
            raise forms.ValidationError("exponents must be integers")
        return params

    def clean(self):
        cleaned_data = super().clean()
        unknown = set(self.data) - CONFIG_KEYS
        if unknown:
            raise forms.ValidationError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
        systems, _ = cleaned_data.get("systems") or ({}, {})
        for pair in cleaned_data.get("pairs") or []:
            if pair.system not in systems:
                raise forms.ValidationError(f"pair refers to unknown system {pair.system!r}")
        params = cleaned_data.get("params") or {}
        K = cleaned_data.get("field")
        if params.get("place") and K is not None:
            try:
                Place.parse(params["place"], K)
            except DynamicsError as exc:
                raise forms.ValidationError(exc.message) from exc
        return cleaned_data

    def job(self):
        """
        The JobConfig of a valid form.
        """
        data = self.cleaned_data
        systems, planes = data["systems"]
        return JobConfig(
            data["command"],
            data.get("field") or FieldSpec.parse("Q"),
            systems,
            planes,
            data["pairs"],
            data["params"],
            data.get("output") or "",
        )
