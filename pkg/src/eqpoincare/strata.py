"""Strata of the exceptional divisor under a finite group action.

The smooth part of the exceptional divisor (points on exactly one
component, excluding intersections with the strict transform where
relevant) is partitioned into group-invariant strata.  Each stratum is
recorded by its quotient: the carrier multiset lists, with multiplicity,
the components met by the preimage points of one quotient point, so the
covering degree equals the carrier size; ``chi`` is the Euler
characteristic of the quotient stratum.  A stratum that contributes to
the equivariant series also carries the character by which the group
scales a curvelet transversal to it, either given directly as an
exponent tuple or derived from the character at the first blown-up
component via the multiplicity matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .charring import CharacterRing
from .resolution import MultiplicityMatrix, ResolutionGraph


class StrataError(ValueError):
    pass


@dataclass(frozen=True)
class CharDerivation:
    """Character data at a reference point over the first blown-up component.

    ``p0_char_exponents`` is the character scaling a curvelet at one
    point p0 of the first exceptional component, ``p0_orbit_size`` the
    size of the orbit of p0.
    """

    p0_char_exponents: tuple
    p0_orbit_size: int


@dataclass(frozen=True)
class Stratum:
    carrier: tuple
    chi: int
    char_exponents: tuple | None = None
    derivation: CharDerivation | None = None
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        if not self.carrier:
            raise StrataError(f"stratum {self.label or ''!r} has an empty carrier")
        if self.char_exponents is not None:
            object.__setattr__(self, "char_exponents", tuple(self.char_exponents))

    @property
    def degree(self) -> int:
        """Covering degree of the stratum over its quotient."""
        return len(self.carrier)


@dataclass(frozen=True)
class StratumModel:
    graph: ResolutionGraph
    ring: CharacterRing
    chosen: tuple
    strata: tuple

    def __post_init__(self):
        object.__setattr__(self, "chosen", tuple(self.chosen))
        object.__setattr__(self, "strata", tuple(self.strata))
        known = set(self.graph.ids)
        if not self.chosen:
            raise StrataError("at least one chosen component is required")
        for c in self.chosen:
            if c not in known:
                raise StrataError(f"chosen component {c!r} is not in the graph")
        q = self.ring.num_generators
        for st in self.strata:
            where = f"stratum {st.label!r}" if st.label else f"stratum {st.carrier}"
            for c in st.carrier:
                if c not in known:
                    raise StrataError(f"{where}: carrier component {c!r} unknown")
            if st.char_exponents is not None and len(st.char_exponents) != q:
                raise StrataError(
                    f"{where}: character exponents {st.char_exponents} do not "
                    f"match the {q} ring generators"
                )
            if st.derivation is not None:
                d = st.derivation
                if len(d.p0_char_exponents) != q:
                    raise StrataError(
                        f"{where}: derivation exponents {d.p0_char_exponents} "
                        f"do not match the {q} ring generators"
                    )
                if d.p0_orbit_size < 1:
                    raise StrataError(f"{where}: orbit size must be positive")

    def multiplicities(self) -> MultiplicityMatrix:
        return _multiplicity_matrix(self.graph)


@lru_cache(maxsize=None)
def _multiplicity_matrix(graph: ResolutionGraph) -> MultiplicityMatrix:
    return graph.multiplicity_matrix()


def stratum_multiplicities(model: StratumModel, stratum: Stratum, targets) -> tuple:
    """Multi-index weight of a curvelet at the stratum: sum over carrier
    entries of the multiplicity matrix row, evaluated at each target."""
    m = model.multiplicities()
    return tuple(
        sum(m.entry(c, t) for c in stratum.carrier) for t in targets
    )


def derive_stratum_character(model: StratumModel, stratum: Stratum) -> tuple:
    """Character of the stratum from the reference-point data.

    The curvelet character at a point over component c is the reference
    character raised to M[c, first_blown_up] * (degree / orbit size of
    the reference point).  Every carrier entry must give the same
    answer; a mismatch means the declared data is inconsistent.
    """
    d = stratum.derivation
    where = f"stratum {stratum.label!r}" if stratum.label else f"stratum {stratum.carrier}"
    if d is None:
        raise StrataError(f"{where}: no character derivation data")
    if stratum.degree % d.p0_orbit_size != 0:
        raise StrataError(
            f"{where}: degree {stratum.degree} is not a multiple of the "
            f"reference orbit size {d.p0_orbit_size}"
        )
    scale = stratum.degree // d.p0_orbit_size
    m = model.multiplicities()
    e0 = model.graph.first_blown_up
    ring = model.ring
    results = {}
    for c in set(stratum.carrier):
        k = m.entry(c, e0) * scale
        results[c] = ring.reduce(tuple(e * k for e in d.p0_char_exponents))
    distinct = set(results.values())
    if len(distinct) > 1:
        raise StrataError(
            f"{where}: carrier entries disagree on the derived character: {results}"
        )
    return distinct.pop()


def resolve_character(model: StratumModel, stratum: Stratum) -> tuple:
    """The stratum character, cross-checking direct and derived data."""
    ring = model.ring
    direct = stratum.char_exponents
    if direct is not None:
        direct = ring.reduce(direct)
    if stratum.derivation is not None:
        derived = derive_stratum_character(model, stratum)
        if direct is not None and direct != derived:
            where = (f"stratum {stratum.label!r}" if stratum.label
                     else f"stratum {stratum.carrier}")
            raise StrataError(
                f"{where}: declared character {direct} but derivation gives {derived}"
            )
        return derived
    if direct is not None:
        return direct
    if ring.num_generators == 0:
        return ()
    where = (f"stratum {stratum.label!r}" if stratum.label
             else f"stratum {stratum.carrier}")
    raise StrataError(f"{where}: no character given and nothing to derive it from")


@dataclass(frozen=True)
class OrbitDecl:
    """One orbit of components with, per component, the number of points
    removed from it in the stratified space (intersections with other
    components, plus strict-transform points in the curve case)."""

    components: tuple
    removed: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "removed", tuple(self.removed))
        if len(self.components) != len(self.removed):
            raise StrataError("orbit: removed counts do not align with components")


@dataclass
class OrbitCheck:
    components: tuple
    euler_sum: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.euler_sum == self.expected


@dataclass
class StrataReport:
    checks: list
    findings: list

    @property
    def ok(self) -> bool:
        return not self.findings and all(c.ok for c in self.checks)


def validate_strata(model: StratumModel, orbits) -> StrataReport:
    """Bookkeeping check: within each component orbit the chi-weighted
    covering degrees of its strata must add up to the Euler
    characteristic of the orbit's punctured components, sum of
    (2 - removed points) over the orbit.  Report-valued; never raises
    for a mere mismatch."""
    orbits = list(orbits)
    findings: list[str] = []
    orbit_of = {}
    for i, orbit in enumerate(orbits):
        for c in orbit.components:
            if c not in set(model.graph.ids):
                findings.append(f"orbit {i}: unknown component {c!r}")
            elif c in orbit_of:
                findings.append(f"component {c!r} appears in two orbits")
            else:
                orbit_of[c] = i
    sums = [0] * len(orbits)
    for st in model.strata:
        support = set(st.carrier)
        touched = {orbit_of[c] for c in support if c in orbit_of}
        unassigned = [c for c in support if c not in orbit_of]
        where = f"stratum {st.label!r}" if st.label else f"stratum {st.carrier}"
        if unassigned:
            findings.append(f"{where}: carrier components {unassigned} in no orbit")
            continue
        if len(touched) != 1:
            findings.append(f"{where}: carrier spans several component orbits")
            continue
        sums[touched.pop()] += st.chi * st.degree
    checks = []
    for i, orbit in enumerate(orbits):
        expected = sum(2 - r for r in orbit.removed)
        checks.append(OrbitCheck(orbit.components, sums[i], expected))
    return StrataReport(checks, findings)


@dataclass(frozen=True)
class Branch:
    """One branch of the curve: the component its strict transform meets."""

    attach: object
    label: str | None = None


@dataclass(frozen=True)
class RemovedPointOrbit:
    """An orbit of strict-transform points to delete from a stratum.

    ``stratum`` names the stratum by label or by position; ``count`` is
    the number of quotient points removed; ``degree``, when given, must
    equal the stratum's covering degree (the points of one orbit lie
    over the same carrier pattern as the stratum itself).
    """

    stratum: object
    count: int
    degree: int | None = None


def _find_stratum(strata, ref):
    if isinstance(ref, str):
        hits = [s for s in strata if s.label == ref]
        if len(hits) != 1:
            raise StrataError(f"removed points: {len(hits)} strata labelled {ref!r}")
        return strata.index(hits[0])
    if isinstance(ref, int) and 0 <= ref < len(strata):
        return ref
    raise StrataError(f"removed points: no stratum {ref!r}")


def curve_strata(model: StratumModel, removed_orbits):
    """Strata of the divisor with the strict-transform points deleted.

    Returns the adjusted strata (chi reduced by the removed quotient
    points; carriers and characters unchanged) together with the number
    of deleted preimage points per component, which feeds the curve-case
    bookkeeping validation.
    """
    strata = list(model.strata)
    removed_per_component: dict = {}
    for ro in removed_orbits:
        idx = _find_stratum(strata, ro.stratum)
        st = strata[idx]
        if ro.degree is not None and ro.degree != st.degree:
            raise StrataError(
                f"removed orbit on stratum {ro.stratum!r}: degree {ro.degree} "
                f"does not match the stratum covering degree {st.degree}"
            )
        if ro.count < 0:
            raise StrataError("removed orbit count must be >= 0")
        strata[idx] = Stratum(
            carrier=st.carrier,
            chi=st.chi - ro.count,
            char_exponents=st.char_exponents,
            derivation=st.derivation,
            label=st.label,
        )
        for c in set(st.carrier):
            removed_per_component[c] = (
                removed_per_component.get(c, 0) + ro.count * st.carrier.count(c)
            )
    return tuple(strata), removed_per_component
