"""Declarative job files: one JSON document describes a computation.

A job bundles the character ring, the resolution graph, the chosen
components, the strata, and optionally the component-orbit bookkeeping
data, a curve section (branches plus removed strict-transform points),
an extraction plan, the brute-force oracle setup, and frozen expected
factorizations for regression checks.  Everything is cross-validated at
load time with messages naming the offending section.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .charring import CharacterRing
from .oracle import MonomialModel
from .powerseries import Series, SubstitutionPlan, factor_power
from .resolution import ResolutionGraph
from .strata import (
    Branch,
    CharDerivation,
    OrbitDecl,
    RemovedPointOrbit,
    Stratum,
    StratumModel,
)


class JobError(ValueError):
    pass


def _require(mapping, key, where, types=None):
    if key not in mapping:
        raise JobError(f"{where}: missing required field {key!r}")
    value = mapping[key]
    if types is not None and not isinstance(value, types):
        raise JobError(f"{where}.{key}: unexpected type {type(value).__name__}")
    return value


def _int_list(value, where):
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise JobError(f"{where}: expected a list of integers, got {value!r}")
    return tuple(value)


@dataclass(frozen=True)
class ExpectedFactor:
    """(1 - coefficient * u^character * t^exponent) ** power."""

    exponent: tuple
    power: int
    character: tuple | None = None
    coefficient: int = 1


@dataclass(frozen=True)
class ExtractSpec:
    compute_degree: int
    plan: SubstitutionPlan


@dataclass(frozen=True)
class CurveSpec:
    branches: tuple
    removed_points: tuple


@dataclass(frozen=True)
class Job:
    name: str
    model: StratumModel
    orbits: tuple | None = None
    curve: CurveSpec | None = None
    extract: ExtractSpec | None = None
    oracle: MonomialModel | None = None
    expected: dict = field(default_factory=dict)

    def expected_series(self, kind: str, degree: int) -> Series:
        """Expand the frozen factor list ``kind`` through ``degree``."""
        if kind not in self.expected:
            raise JobError(f"job {self.name!r} has no expected {kind!r} series")
        factors = self.expected[kind]
        if kind == "extract":
            if self.extract is None:
                raise JobError(f"job {self.name!r}: expected extract without a plan")
            num_vars = self.extract.plan.num_outputs
            ring = None
        elif kind == "curve":
            if self.curve is None:
                raise JobError(f"job {self.name!r}: expected curve series without a curve")
            num_vars = len(self.curve.branches)
            ring = self.model.ring
        else:
            num_vars = len(self.model.chosen)
            ring = self.model.ring
        result = Series.one(num_vars, degree, ring)
        for f in factors:
            if ring is None:
                coeff = f.coefficient
            else:
                coeff = ring.monomial(f.character or (0,) * ring.num_generators,
                                      f.coefficient)
            result = result * factor_power(
                coeff, f.exponent, f.power, num_vars=num_vars, bound=degree, ring=ring
            )
        return result


def _parse_strata(items, ring):
    strata = []
    for i, raw in enumerate(items):
        where = f"strata[{i}]"
        carrier = tuple(_require(raw, "carrier", where, list))
        chi = _require(raw, "chi", where, int)
        label = raw.get("label")
        degree = raw.get("degree")
        if degree is not None and degree != len(carrier):
            raise JobError(
                f"{where}: declared degree {degree} but the carrier has "
                f"{len(carrier)} entries"
            )
        char_exponents = None
        derivation = None
        spec = raw.get("character")
        if spec is not None:
            if "exponents" in spec:
                char_exponents = _int_list(spec["exponents"], f"{where}.character")
            if "from_point" in spec:
                fp = spec["from_point"]
                derivation = CharDerivation(
                    _int_list(_require(fp, "exponents", f"{where}.character.from_point")
                              , f"{where}.character.from_point"),
                    _require(fp, "orbit_size", f"{where}.character.from_point", int),
                )
            if char_exponents is None and derivation is None:
                raise JobError(f"{where}.character: needs exponents or from_point")
        strata.append(
            Stratum(carrier, chi, char_exponents=char_exponents,
                    derivation=derivation, label=label)
        )
    return tuple(strata)


def _parse_plan(items, num_vars):
    entries = [None] * num_vars
    seen = set()
    for i, raw in enumerate(items):
        where = f"extract.plan[{i}]"
        var = _require(raw, "variable", where, int)
        if not 1 <= var <= num_vars:
            raise JobError(f"{where}: variable {var} out of range 1..{num_vars}")
        if var in seen:
            raise JobError(f"{where}: variable {var} mapped twice")
        seen.add(var)
        if raw.get("drop"):
            continue
        out = _require(raw, "output", where, int)
        den = raw.get("denominator", 1)
        if not isinstance(den, int):
            raise JobError(f"{where}: denominator must be an integer")
        entries[var - 1] = (out - 1, den)
    if seen != set(range(1, num_vars + 1)):
        missing = sorted(set(range(1, num_vars + 1)) - seen)
        raise JobError(f"extract.plan: variables {missing} not mapped")
    try:
        return SubstitutionPlan(tuple(entries))
    except ValueError as e:
        raise JobError(f"extract.plan: {e}") from e


def _parse_expected_factors(items, where, ring_q):
    factors = []
    for i, raw in enumerate(items):
        here = f"{where}[{i}]"
        exponent = _int_list(_require(raw, "exponent", here), here)
        power = _require(raw, "power", here, int)
        character = None
        if "character" in raw:
            character = _int_list(raw["character"], here)
            if ring_q is not None and len(character) != ring_q:
                raise JobError(
                    f"{here}: character {character} does not match the "
                    f"{ring_q} ring generators"
                )
        coefficient = raw.get("coefficient", 1)
        if not isinstance(coefficient, int):
            raise JobError(f"{here}: coefficient must be an integer")
        factors.append(ExpectedFactor(exponent, power, character, coefficient))
    return tuple(factors)


def parse_job(data: dict, name: str = "job") -> Job:
    if not isinstance(data, dict):
        raise JobError("job document must be a JSON object")
    name = data.get("name", name)

    ring_raw = _require(data, "ring", "job", dict)
    orders = _int_list(_require(ring_raw, "orders", "ring"), "ring.orders")
    try:
        ring = CharacterRing(orders)
    except ValueError as e:
        raise JobError(f"ring: {e}") from e

    graph_raw = _require(data, "graph", "job", dict)
    comps = []
    for i, c in enumerate(_require(graph_raw, "components", "graph", list)):
        comps.append(
            (_require(c, "id", f"graph.components[{i}]"),
             _require(c, "self_intersection", f"graph.components[{i}]", int))
        )
    edges = tuple(tuple(e) for e in _require(graph_raw, "edges", "graph", list))
    e0 = _require(graph_raw, "first_blown_up", "graph")
    try:
        graph = ResolutionGraph(tuple(comps), edges, e0)
    except ValueError as e:
        raise JobError(f"graph: {e}") from e

    chosen = tuple(_require(data, "chosen", "job", list))
    strata = _parse_strata(_require(data, "strata", "job", list), ring)
    try:
        model = StratumModel(graph, ring, chosen, strata)
    except ValueError as e:
        raise JobError(f"model: {e}") from e

    orbits = None
    if "orbits" in data:
        orbits = []
        for i, raw in enumerate(data["orbits"]):
            where = f"orbits[{i}]"
            components = tuple(_require(raw, "components", where, list))
            removed = _int_list(_require(raw, "removed", where), where)
            try:
                orbits.append(OrbitDecl(components, removed))
            except ValueError as e:
                raise JobError(f"{where}: {e}") from e
        orbits = tuple(orbits)

    curve = None
    if "curve" in data:
        raw = data["curve"]
        branches = []
        for i, b in enumerate(_require(raw, "branches", "curve", list)):
            attach = _require(b, "attach", f"curve.branches[{i}]")
            if attach not in set(graph.ids):
                raise JobError(
                    f"curve.branches[{i}]: attach component {attach!r} unknown"
                )
            branches.append(Branch(attach, b.get("label")))
        removed = []
        for i, r in enumerate(raw.get("removed_points", [])):
            where = f"curve.removed_points[{i}]"
            removed.append(
                RemovedPointOrbit(
                    _require(r, "stratum", where),
                    _require(r, "count", where, int),
                    r.get("degree"),
                )
            )
        curve = CurveSpec(tuple(branches), tuple(removed))

    extract = None
    if "extract" in data:
        raw = data["extract"]
        plan = _parse_plan(_require(raw, "plan", "extract", list), len(chosen))
        compute_degree = _require(raw, "compute_degree", "extract", int)
        if compute_degree < 0:
            raise JobError("extract.compute_degree must be >= 0")
        extract = ExtractSpec(compute_degree, plan)

    oracle = None
    if "oracle" in data:
        raw = data["oracle"]
        axes = raw.get("curve_axes")
        if axes is not None:
            if curve is None:
                raise JobError("oracle.curve_axes given but the job has no curve")
            if len(axes) != len(curve.branches):
                raise JobError(
                    f"oracle.curve_axes lists {len(axes)} axes for "
                    f"{len(curve.branches)} branches"
                )
        weights = _int_list(_require(raw, "weights", "oracle"), "oracle.weights")
        if len(weights) != 2:
            raise JobError("oracle.weights must be a pair")
        try:
            oracle = MonomialModel(
                _require(raw, "order", "oracle", int),
                weights,
                sigma_x=raw.get("sigma_x"),
                sigma_y=raw.get("sigma_y"),
                curve_axes=tuple(axes) if axes is not None else None,
            )
        except ValueError as e:
            raise JobError(f"oracle: {e}") from e
        if tuple(oracle.ring().orders) != ring.orders:
            raise JobError(
                f"oracle order {oracle.order} does not give ring orders {ring.orders}"
            )

    expected = {}
    if "expected" in data:
        for kind, raw in data["expected"].items():
            if kind not in ("divisorial", "curve", "extract"):
                raise JobError(f"expected.{kind}: unknown series kind")
            q = ring.num_generators if kind != "extract" else None
            expected[kind] = _parse_expected_factors(raw, f"expected.{kind}", q)
            if kind == "extract":
                for f in expected[kind]:
                    if f.character is not None:
                        raise JobError(
                            "expected.extract factors are integer series factors"
                        )
    if "extract" in expected and extract is None:
        raise JobError("expected.extract needs an extract section")
    if "curve" in expected and curve is None:
        raise JobError("expected.curve needs a curve section")
    arity = {
        "divisorial": len(chosen),
        "curve": len(curve.branches) if curve is not None else None,
        "extract": extract.plan.num_outputs if extract is not None else None,
    }
    for kind, factors in expected.items():
        for i, f in enumerate(factors):
            if len(f.exponent) != arity[kind]:
                raise JobError(
                    f"expected.{kind}[{i}]: exponent {f.exponent} has "
                    f"{len(f.exponent)} entries, needs {arity[kind]}"
                )

    return Job(name=name, model=model, orbits=orbits, curve=curve,
               extract=extract, oracle=oracle, expected=expected)


def load_job(path) -> Job:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise JobError(f"cannot read job file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise JobError(f"job file {path} is not valid JSON: {e}") from e
    import os

    default = os.path.splitext(os.path.basename(str(path)))[0]
    return parse_job(data, name=default)
