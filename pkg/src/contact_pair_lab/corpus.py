"""Built-in scenarios and the JSON scenario file format.

A scenario stores everything as expression text in the scalar-algebra
grammar: forms in coordinate components, the endomorphism, metric and
submanifold spans in frame components.  Construction of the exact
geometric objects is deferred to the accessor methods.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .frames import (EndoField, FramePresentation, MetricField, PForm,
                     VectorField, one_form)
from .scalars import ParseError, ScalarExpr, parse_expr
from .submanifolds import Subframe, build_subframe

CORPUS_NAMES = ("darboux", "heis6", "heis6-leaf3", "heis6-n4",
                "darboux-J-noninvariant")


class ScenarioError(Exception):
    """Schema violation; the message is path-addressed."""


@dataclass
class Scenario:
    name: str
    coordinates: List[str]
    frame: List[List[str]]
    base_point: Dict[str, str]
    alpha1: List[str]
    alpha2: List[str]
    pair_type: Tuple[int, int]
    phi: List[List[str]]
    metric: List[List[str]]
    submanifolds: Dict[str, List[List[str]]] = field(default_factory=dict)
    expectations: Dict[str, str] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def presentation(self) -> FramePresentation:
        if "presentation" not in self._cache:
            base = {name: Fraction(text)
                    for name, text in self.base_point.items()}
            self._cache["presentation"] = FramePresentation(
                self.coordinates, self.frame, base)
        return self._cache["presentation"]

    def _coordinate_form(self, components: Sequence[str]) -> PForm:
        pres = self.presentation()
        comps = []
        for a in range(pres.dim):
            acc = pres.zero
            for i in range(pres.dim):
                acc = acc + pres.scalar(components[i]) \
                    * pres.scalar(self.frame[i][a])
            comps.append(acc)
        return one_form(pres, comps)

    def forms(self) -> Tuple[PForm, PForm]:
        if "forms" not in self._cache:
            self._cache["forms"] = (self._coordinate_form(self.alpha1),
                                    self._coordinate_form(self.alpha2))
        return self._cache["forms"]

    def phi_endo(self) -> EndoField:
        if "phi" not in self._cache:
            pres = self.presentation()
            self._cache["phi"] = EndoField(
                pres, [[pres.scalar(entry) for entry in row]
                       for row in self.phi])
        return self._cache["phi"]

    def metric_field(self) -> MetricField:
        if "metric" not in self._cache:
            self._cache["metric"] = MetricField(self.presentation(),
                                                self.metric)
        return self._cache["metric"]

    def subframe(self, name: str) -> Subframe:
        key = ("sub", name)
        if key not in self._cache:
            pres = self.presentation()
            fields = [VectorField(pres, tuple(pres.scalar(c) for c in vec))
                      for vec in self.submanifolds[name]]
            self._cache[key] = build_subframe(pres, fields,
                                              self.metric_field(), name)
        return self._cache[key]

    def canonical_equal(self, other: "Scenario") -> bool:
        """Equality up to canonical form of every expression."""
        if (self.name, self.pair_type, self.coordinates,
                sorted(self.submanifolds), self.expectations) != \
                (other.name, other.pair_type, other.coordinates,
                 sorted(other.submanifolds), other.expectations):
            return False
        pres = self.presentation()

        def canon(text):
            return parse_expr(str(text), tuple(self.coordinates))

        for mine, theirs in ((self.frame, other.frame),
                             (self.phi, other.phi),
                             (self.metric, other.metric)):
            if any(canon(a) != canon(b) for ra, rb in zip(mine, theirs)
                   for a, b in zip(ra, rb)):
                return False
        for mine, theirs in ((self.alpha1, other.alpha1),
                             (self.alpha2, other.alpha2)):
            if any(canon(a) != canon(b) for a, b in zip(mine, theirs)):
                return False
        if {k: Fraction(v) for k, v in self.base_point.items()} != \
                {k: Fraction(v) for k, v in other.base_point.items()}:
            return False
        for name in self.submanifolds:
            for va, vb in zip(self.submanifolds[name],
                              other.submanifolds[name]):
                if any(canon(a) != canon(b) for a, b in zip(va, vb)):
                    return False
        del pres
        return True


# -- built-in scenarios ----------------------------------------------------

def _zeros(n: int) -> List[str]:
    return ["0"] * n


def _darboux_data(h: int, k: int) -> dict:
    if h + k < 1 or h < 0 or k < 0 or h > 2 or k > 2:
        raise ScenarioError(f"type ({h},{k}) out of the supported range")
    coords = ([f"x{i}" for i in range(1, h + 1)]
              + [f"y{i}" for i in range(1, h + 1)] + ["z"]
              + [f"xp{j}" for j in range(1, k + 1)]
              + [f"yp{j}" for j in range(1, k + 1)] + ["zp"])
    n = 2 * h + 2 * k + 2
    index = {name: i for i, name in enumerate(coords)}
    frame = [_zeros(n) for _ in range(n)]

    # first factor: columns 0..h-1 are d/dy_i, columns h..2h-1 are
    # d/dx_i + y_i d/dz, column 2h is the Reeb field 2 d/dz
    for i in range(1, h + 1):
        frame[index[f"y{i}"]][i - 1] = "1"
        frame[index[f"x{i}"]][h + i - 1] = "1"
        frame[index["z"]][h + i - 1] = f"y{i}"
    frame[index["z"]][2 * h] = "2"
    factor_offset = 2 * h + 1
    for j in range(1, k + 1):
        frame[index[f"yp{j}"]][factor_offset + j - 1] = "1"
        col = factor_offset + k + j - 1
        frame[index[f"xp{j}"]][col] = "1"
        frame[index["zp"]][col] = f"yp{j}"
    frame[index["zp"]][factor_offset + 2 * k] = "2"

    alpha1 = _zeros(n)
    alpha1[index["z"]] = "1/2"
    for i in range(1, h + 1):
        alpha1[index[f"x{i}"]] = f"-y{i}/2"
    alpha2 = _zeros(n)
    alpha2[index["zp"]] = "1/2"
    for j in range(1, k + 1):
        alpha2[index[f"xp{j}"]] = f"-yp{j}/2"

    phi = [_zeros(n) for _ in range(n)]
    for i in range(h):
        phi[h + i][i] = "1"
        phi[i][h + i] = "-1"
    for j in range(k):
        phi[factor_offset + k + j][factor_offset + j] = "1"
        phi[factor_offset + j][factor_offset + k + j] = "-1"

    metric = [_zeros(n) for _ in range(n)]
    for a in range(n):
        if a == 2 * h or a == n - 1:
            metric[a][a] = "1"
        else:
            metric[a][a] = "1/4"
    return {"coordinates": coords, "frame": frame,
            "base_point": {c: "0" for c in coords},
            "alpha1": alpha1, "alpha2": alpha2, "pair_type": (h, k),
            "phi": phi, "metric": metric}


def _heis6_data() -> dict:
    coords = ["x", "y", "z", "u", "v", "w"]
    frame = [
        ["1", "0", "0", "0", "0", "0"],
        ["0", "1", "0", "0", "0", "0"],
        ["y", "0", "1", "0", "0", "0"],
        ["0", "0", "0", "1", "0", "0"],
        ["0", "0", "0", "0", "1", "0"],
        ["0", "0", "0", "v", "0", "1"],
    ]
    alpha1 = ["-y", "0", "1", "0", "0", "0"]
    alpha2 = ["0", "0", "0", "-v", "0", "1"]
    phi = [_zeros(6) for _ in range(6)]
    phi[0][1] = "1"   # second horizontal of the first factor -> first
    phi[1][0] = "-1"
    phi[3][4] = "1"
    phi[4][3] = "-1"
    metric = [_zeros(6) for _ in range(6)]
    for a, value in enumerate(("1/2", "1/2", "1", "1/2", "1/2", "1")):
        metric[a][a] = value
    return {"coordinates": coords, "frame": frame,
            "base_point": {c: "0" for c in coords},
            "alpha1": alpha1, "alpha2": alpha2, "pair_type": (1, 1),
            "phi": phi, "metric": metric}


_HEIS6_SUBFRAMES = {
    "factor": [["1", "0", "0", "0", "0", "0"],
               ["0", "1", "0", "0", "0", "0"],
               ["0", "0", "1", "0", "0", "0"]],
    "heis6-leaf3": [["0", "0", "1", "0", "0", "1"],
                    ["1", "0", "0", "1", "0", "0"],
                    ["0", "1", "0", "0", "1", "0"]],
    "heis6-n4": [["0", "0", "1", "0", "0", "0"],
                 ["0", "0", "0", "0", "0", "1"],
                 ["1", "0", "0", "1", "0", "0"],
                 ["0", "1", "0", "0", "1", "0"]],
}

_INDUCED_PAIR_ID = "induced-pair-is-a-contact-pair"


def _heis6_expectations(subs: Sequence[str]) -> Dict[str, str]:
    out = {}
    for name in subs:
        # a leaf of one foliation or a diagonal leaf is phi-invariant but
        # not invariant under the rotated structures
        if name in ("factor", "heis6-leaf3"):
            for endo in ("J", "T", "rho"):
                out[f"submanifold.{name}.invariant-{endo}"] = "fail"
        out[f"submanifold.{name}.{_INDUCED_PAIR_ID}"] = "fail"
    return out


def corpus_build(name: str, params: Optional[Tuple[int, int]] = None
                 ) -> Scenario:
    if name == "darboux":
        h, k = params if params is not None else (1, 1)
        data = _darboux_data(h, k)
        return Scenario(name="darboux", **data)
    if params is not None:
        raise ScenarioError(f"scenario {name} takes no parameters")
    if name == "heis6":
        data = _heis6_data()
        subs = dict(_HEIS6_SUBFRAMES)
        return Scenario(name="heis6", submanifolds=subs,
                        expectations=_heis6_expectations(subs), **data)
    if name in ("heis6-leaf3", "heis6-n4"):
        data = _heis6_data()
        subs = {name: _HEIS6_SUBFRAMES[name]}
        return Scenario(name=name, submanifolds=subs,
                        expectations=_heis6_expectations(subs), **data)
    if name == "darboux-J-noninvariant":
        data = _darboux_data(1, 0)
        data["base_point"]["x1"] = "1"
        # span {Y1, J Y1} with Y1 built from the first horizontal pair
        sub = {"darboux-J-noninvariant": [["1", "0", "x1/2", "0"],
                                          ["0", "1", "0", "x1/2"]]}
        expectations = {
            "submanifold.darboux-J-noninvariant.invariant-phi": "fail",
            "submanifold.darboux-J-noninvariant.invariant-T": "fail",
            "submanifold.darboux-J-noninvariant.invariant-rho": "fail",
            "submanifold.darboux-J-noninvariant.minimal": "fail",
            "submanifold.darboux-J-noninvariant."
            + _INDUCED_PAIR_ID: "fail",
        }
        return Scenario(name=name, submanifolds=sub,
                        expectations=expectations, **data)
    raise ScenarioError(f"unknown scenario name {name!r}; "
                        f"choose from {', '.join(CORPUS_NAMES)}")


# -- JSON serialization ----------------------------------------------------

_SCHEMA_KEYS = ("coordinates", "frame", "base_point", "alpha1", "alpha2",
                "type", "phi", "metric", "submanifolds", "expectations")


def _require(condition: bool, path: str, message: str) -> None:
    if not condition:
        raise ScenarioError(f"{path}: {message}")


def _check_matrix(value, path: str, rows: int, cols: int) -> None:
    _require(isinstance(value, list) and len(value) == rows, path,
             f"expected {rows} rows")
    for i, row in enumerate(value):
        _require(isinstance(row, list) and len(row) == cols,
                 f"{path}[{i}]", f"expected {cols} entries")
        for j, entry in enumerate(row):
            _require(isinstance(entry, str), f"{path}[{i}][{j}]",
                     "expected an expression string")


def scenario_to_dict(scenario: Scenario) -> dict:
    return {
        "coordinates": list(scenario.coordinates),
        "frame": [list(row) for row in scenario.frame],
        "base_point": dict(scenario.base_point),
        "alpha1": list(scenario.alpha1),
        "alpha2": list(scenario.alpha2),
        "type": list(scenario.pair_type),
        "phi": [list(row) for row in scenario.phi],
        "metric": [list(row) for row in scenario.metric],
        "submanifolds": {name: [list(vec) for vec in vectors]
                         for name, vectors in scenario.submanifolds.items()},
        "expectations": dict(scenario.expectations),
    }


def scenario_from_dict(data: dict, name: str = "scenario") -> Scenario:
    _require(isinstance(data, dict), "$", "expected a JSON object")
    for key in _SCHEMA_KEYS[:8]:
        _require(key in data, key, "missing required field")
    coords = data["coordinates"]
    _require(isinstance(coords, list) and coords
             and all(isinstance(c, str) for c in coords),
             "coordinates", "expected a nonempty list of names")
    _require(len(set(coords)) == len(coords), "coordinates",
             "duplicate names")
    n = len(coords)
    _check_matrix(data["frame"], "frame", n, n)
    base = data["base_point"]
    _require(isinstance(base, dict) and set(base) == set(coords),
             "base_point", "expected one rational per coordinate")
    for key, value in base.items():
        try:
            Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            raise ScenarioError(f"base_point.{key}: not a rational")
    for field_name in ("alpha1", "alpha2"):
        comps = data[field_name]
        _require(isinstance(comps, list) and len(comps) == n
                 and all(isinstance(c, str) for c in comps),
                 field_name, f"expected {n} expression strings")
    pair_type = data["type"]
    _require(isinstance(pair_type, list) and len(pair_type) == 2
             and all(isinstance(x, int) for x in pair_type),
             "type", "expected [h, k]")
    h, k = pair_type
    _require(2 * h + 2 * k + 2 == n, "type",
             f"type ({h},{k}) does not match dimension {n}")
    _check_matrix(data["phi"], "phi", n, n)
    _check_matrix(data["metric"], "metric", n, n)
    subs = data.get("submanifolds", {})
    _require(isinstance(subs, dict), "submanifolds", "expected an object")
    for sub_name, vectors in subs.items():
        path = f"submanifolds.{sub_name}"
        _require(isinstance(vectors, list) and vectors, path,
                 "expected a nonempty list of vectors")
        for i, vec in enumerate(vectors):
            _require(isinstance(vec, list) and len(vec) == n,
                     f"{path}[{i}]", f"expected {n} frame components")
            for j, entry in enumerate(vec):
                _require(isinstance(entry, str), f"{path}[{i}][{j}]",
                         "expected an expression string")
    expectations = data.get("expectations", {})
    _require(isinstance(expectations, dict), "expectations",
             "expected an object")
    for key, value in expectations.items():
        _require(value in ("pass", "fail", "warn"),
                 f"expectations.{key}",
                 "verdict must be pass, fail or warn")

    scenario = Scenario(
        name=name, coordinates=list(coords),
        frame=[list(row) for row in data["frame"]],
        base_point={key: str(value) for key, value in base.items()},
        alpha1=list(data["alpha1"]), alpha2=list(data["alpha2"]),
        pair_type=(h, k), phi=[list(row) for row in data["phi"]],
        metric=[list(row) for row in data["metric"]],
        submanifolds={sub_name: [list(vec) for vec in vectors]
                      for sub_name, vectors in subs.items()},
        expectations={key: str(value)
                      for key, value in expectations.items()})
    # parse every expression eagerly so errors carry their location
    variables = tuple(coords)
    for path, texts in (("frame", data["frame"]), ("phi", data["phi"]),
                        ("metric", data["metric"])):
        for i, row in enumerate(texts):
            for j, text in enumerate(row):
                try:
                    parse_expr(text, variables)
                except ParseError as exc:
                    raise ScenarioError(f"{path}[{i}][{j}]: {exc}")
    for path in ("alpha1", "alpha2"):
        for i, text in enumerate(data[path]):
            try:
                parse_expr(text, variables)
            except ParseError as exc:
                raise ScenarioError(f"{path}[{i}]: {exc}")
    for sub_name, vectors in subs.items():
        for i, vec in enumerate(vectors):
            for j, text in enumerate(vec):
                try:
                    parse_expr(text, variables)
                except ParseError as exc:
                    raise ScenarioError(
                        f"submanifolds.{sub_name}[{i}][{j}]: {exc}")
    return scenario


def save_scenario(scenario: Scenario, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(scenario_to_dict(scenario), handle, indent=2,
                  sort_keys=True)
        handle.write("\n")


def load_scenario(path: str, name: Optional[str] = None) -> Scenario:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"$: invalid JSON ({exc})")
    import os
    default = os.path.splitext(os.path.basename(path))[0]
    return scenario_from_dict(data, name or default)
