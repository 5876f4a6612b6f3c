"""Lookup tables N, Omega and Fp extracted from a representation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import RegularityError, TableConflictError
from ..spec_model import validate_spec
from ..errors import SpecValidationError
from .cells import FacetSpecification, neighbor_facets
from .representation import (
    RegularityReport,
    Representation,
    check_pre_regularity,
    check_regularity,
    enumerate_facets,
    find_pre_representation,
    find_representation,
)

NONE = -1


@dataclass(frozen=True)
class CurveTables:
    """Dense neighbor tables; ``-1`` stands for "no result".

    Index order: ``N[j][s][f]``, ``Fp[j][s][f]``, ``Omega[j][s][s2][f]``.
    """

    name: str
    dim: int
    b: int
    state_count: int
    facet_count: int
    N: tuple
    Omega: tuple
    Fp: tuple
    child_state: tuple
    parent_state: Optional[tuple]
    palindrome: bool
    facet_spec: FacetSpecification
    state_names: tuple
    root_state: int = 0
    witnesses: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def facet_names(self) -> list:
        return self.facet_spec.facet_names()

    def facets_of(self, s: int) -> int:
        return self.facet_spec.counts[s]

    def state_index(self, name) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.state_count:
                raise ValueError(f"state {name} outside 0..{self.state_count - 1}")
            return name
        token = str(name)
        if token in self.state_names:
            return self.state_names.index(token)
        if token.lstrip("-").isdigit():
            return self.state_index(int(token))
        raise ValueError(f"unknown state {token!r}; expected one of {list(self.state_names)}")


def _parent_facet(parent_cell, child_cell, f):
    """Facet of the parent whose plane contains facet f of the child, or -1."""
    verts = child_cell.facets[f][0]
    for f2, (_, normal, offset) in enumerate(parent_cell.facets):
        if all(sum(a * q for a, q in zip(normal, p)) == offset for p in verts):
            return f2
    return NONE


def compute_tables(spec, rep: Representation, facets: FacetSpecification, strict: bool = True) -> CurveTables:
    """Read N, Fp and Omega off the children of representants and pairs.

    With ``strict`` a disagreement between two witnesses for the same Omega
    entry raises TableConflictError; otherwise the first witness wins.
    """
    b, n, F = spec.branching, spec.state_count, facets.facet_count
    N = [[[NONE] * F for _ in range(n)] for _ in range(b)]
    Fp = [[[NONE] * F for _ in range(n)] for _ in range(b)]
    Omega = [[[[NONE] * F for _ in range(n)] for _ in range(n)] for _ in range(b)]
    witnesses = {}

    for s, u in enumerate(rep.pre):
        parent = rep.cell(u)
        kids = rep.kids(u)
        cells = [rep.cell(x) for x in kids]
        for j, cx in enumerate(cells):
            for j2, cy in enumerate(cells):
                if j2 == j:
                    continue
                hit = neighbor_facets(cx, cy)
                if hit:
                    N[j][s][hit[0]] = j2
                    witnesses["N", j, s, hit[0]] = (u.level, u.position)
            for f in range(facets.counts[kids[j].state]):
                if N[j][s][f] == NONE:
                    Fp[j][s][f] = _parent_facet(parent, cx, f)

    for (s, s2, fp), (v, w) in rep.pairs.items():
        kids_w = rep.kids(w)
        for j, x in enumerate(rep.kids(v)):
            cx = rep.cell(x)
            for j2, y in enumerate(kids_w):
                hit = neighbor_facets(cx, rep.cell(y))
                if not hit:
                    continue
                f = hit[0]
                old = Omega[j][s][s2][f]
                if old == NONE:
                    Omega[j][s][s2][f] = j2
                    witnesses["Omega", j, s, s2, f] = ((v.level, v.position), (w.level, w.position))
                elif old != j2 and strict:
                    raise TableConflictError(
                        f"Omega({j}, {spec.state_name(s)}, {spec.state_name(s2)}, "
                        f"{facets.facet_name(f)}) is {old} for one witness pair and {j2} for "
                        f"({v.level},{v.position})-({w.level},{w.position})"
                    )

    def freeze(x):
        return tuple(freeze(y) for y in x) if isinstance(x, list) else x

    tables = CurveTables(
        name=spec.name,
        dim=spec.dim,
        b=b,
        state_count=n,
        facet_count=F,
        N=freeze(N),
        Omega=freeze(Omega),
        Fp=freeze(Fp),
        child_state=tuple(tuple(r) for r in spec.child_state),
        parent_state=spec.parent_state,
        palindrome=False,
        facet_spec=facets,
        state_names=tuple(spec.state_name(s) for s in range(n)),
        root_state=spec.root_state,
        witnesses=witnesses,
    )
    return _with_palindrome(tables)


def check_palindrome(tables: CurveTables) -> bool:
    """True iff every defined Omega(j, ...) equals b - 1 - j."""
    last = tables.b - 1
    for j, block in enumerate(tables.Omega):
        for row in block:
            for entries in row:
                if any(v != NONE and v != last - j for v in entries):
                    return False
    return True


def _with_palindrome(tables):
    object.__setattr__(tables, "palindrome", check_palindrome(tables))
    return tables


@dataclass
class CompiledCurve:
    spec: object
    facets: Optional[FacetSpecification]
    representation: Optional[Representation]
    report: RegularityReport
    tables: Optional[CurveTables]

    @property
    def ok(self) -> bool:
        return self.report.ok and self.tables is not None


def verify_spec(spec) -> CompiledCurve:
    """Run every check and build tables whenever that is possible at all.

    Never raises on irregular curves; the report says what failed.
    """
    validation = validate_spec(spec)
    if not validation.ok:
        raise SpecValidationError(f"invalid specification:\n{validation}", validation)
    pre = find_pre_representation(spec)
    report = check_pre_regularity(spec, pre)
    if "P2'" in report.clauses():
        return CompiledCurve(spec, None, None, report, None)
    facets = enumerate_facets(spec, pre)
    rep = find_representation(spec, pre, facets)
    report = report.extend(check_regularity(spec, rep, facets))
    tables = compute_tables(spec, rep, facets, strict=False)
    return CompiledCurve(spec, facets, rep, report, tables)


_COMPILED = {}


def compile_spec(spec, strict: bool = True) -> CurveTables:
    """Validate, check regularity and compile tables.

    Results are cached per specification object.  With ``strict`` any
    failed clause raises RegularityError carrying the report.
    """
    key = (id(spec), strict)
    hit = _COMPILED.get(key)
    if hit is not None and hit[0] is spec:
        return hit[1]
    result = verify_spec(spec)
    if strict and not result.report.ok:
        raise RegularityError(
            f"{spec.name or 'curve'} is not regular:\n{result.report}", result.report
        )
    if result.tables is None:
        raise RegularityError(f"{spec.name or 'curve'}: no tables could be built", result.report)
    _COMPILED[key] = (spec, result.tables)
    return result.tables
