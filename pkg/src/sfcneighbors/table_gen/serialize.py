"""Canonical text form of CurveTables.

One header line per scalar, then each table as ``<name> <dims...>``
followed by its entries in row-major order, one innermost row per line.
Missing entries are written as -1.
"""

from __future__ import annotations

import io
from itertools import product

from .cells import FacetSpecification
from .tables import CurveTables

MAGIC = "sfc-tables 1"


def _table(out, name, data, dims):
    out.write(f"{name} {' '.join(map(str, dims))}\n")
    if len(dims) == 1:
        out.write(" ".join(map(str, data)) + "\n")
        return
    for idx in product(*(range(d) for d in dims[:-1])):
        row = data
        for i in idx:
            row = row[i]
        out.write(" ".join(map(str, row)) + "\n")


def dumps_tables(t: CurveTables) -> str:
    out = io.StringIO()
    out.write(MAGIC + "\n")
    out.write(f"name {t.name or '-'}\n")
    out.write(f"dimension {t.dim}\n")
    out.write(f"branching {t.b}\n")
    out.write(f"states {t.state_count}\n")
    out.write(f"facets {t.facet_count}\n")
    out.write(f"root_state {t.root_state}\n")
    out.write(f"palindrome {'true' if t.palindrome else 'false'}\n")
    out.write(f"state_names {' '.join(t.state_names)}\n")
    out.write(f"facet_convention {t.facet_spec.convention}\n")
    out.write(f"facet_names {' '.join(t.facet_names)}\n")
    out.write(f"facet_counts {' '.join(map(str, t.facet_spec.counts))}\n")
    for s, sets in enumerate(t.facet_spec.index_sets):
        cells = ";".join(",".join(map(str, sorted(J))) for J in sets)
        verts = ";".join(",".join(map(str, v)) for v in t.facet_spec.vertex_indices[s])
        out.write(f"facet_sets {s} {cells} | {verts}\n")
    n, b, F = t.state_count, t.b, t.facet_count
    _table(out, "child_state", t.child_state, (n, b))
    if t.parent_state is None:
        out.write("parent_state none\n")
    else:
        _table(out, "parent_state", t.parent_state, (n, b))
    _table(out, "N", t.N, (b, n, F))
    _table(out, "Fp", t.Fp, (b, n, F))
    _table(out, "Omega", t.Omega, (b, n, n, F))
    return out.getvalue()


def _read_table(lines, pos, dims):
    count = 1
    for d in dims[:-1]:
        count *= d
    flat = []
    for k in range(count):
        row = [int(x) for x in lines[pos + k].split()]
        if len(row) != dims[-1]:
            raise ValueError(f"line {pos + k + 1}: expected {dims[-1]} entries")
        flat.append(tuple(row))
    pos += count

    def build(level, start):
        if level == len(dims) - 1:
            return flat[start], start + 1
        items = []
        for _ in range(dims[level]):
            item, start = build(level + 1, start)
            items.append(item)
        return tuple(items), start

    value, _ = build(0, 0)
    return value, pos


def loads_tables(text: str) -> CurveTables:
    lines = text.splitlines()
    if not lines or lines[0] != MAGIC:
        raise ValueError("not a tables document")
    head, pos = {}, 1
    sets, verts = [], []
    while pos < len(lines) and lines[pos].split(" ", 1)[0] not in ("child_state",):
        key, _, rest = lines[pos].partition(" ")
        if key == "facet_sets":
            _, _, body = rest.partition(" ")
            cell_part, _, vert_part = body.partition(" | ")
            sets.append(tuple(frozenset(int(i) for i in c.split(",")) for c in cell_part.split(";")))
            verts.append(tuple(tuple(int(i) for i in v.split(",")) for v in vert_part.split(";")))
        else:
            head[key] = rest
        pos += 1
    n, b, F = int(head["states"]), int(head["branching"]), int(head["facets"])
    tables = {}
    while pos < len(lines):
        parts = lines[pos].split()
        name = parts[0]
        if parts[1:] == ["none"]:
            tables[name] = None
            pos += 1
            continue
        dims = tuple(int(x) for x in parts[1:])
        tables[name], pos = _read_table(lines, pos + 1, dims)
    facet_spec = FacetSpecification(tuple(sets), tuple(verts), head["facet_convention"], int(head["dimension"]))
    return CurveTables(
        name="" if head["name"] == "-" else head["name"],
        dim=int(head["dimension"]),
        b=b,
        state_count=n,
        facet_count=F,
        N=tables["N"],
        Omega=tables["Omega"],
        Fp=tables["Fp"],
        child_state=tables["child_state"],
        parent_state=tables.get("parent_state"),
        palindrome=head["palindrome"] == "true",
        facet_spec=facet_spec,
        state_names=tuple(head["state_names"].split()),
        root_state=int(head["root_state"]),
    )
