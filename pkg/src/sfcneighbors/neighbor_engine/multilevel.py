"""Tables that cover K levels per lookup, built by simulating the single-level algorithm."""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from typing import Optional

from ..errors import ContractError, ResourceError, UnsupportedTreeError
from ..table_gen.serialize import _table
from ..table_gen.tables import NONE, CurveTables
from ..tree_core import AlgebraicNode, HistoryNode, digits
from .core import _check_facet, _check_node, _child_of, _parent_of

DEFAULT_MAX_ENTRIES = 50_000_000


def _max_entries() -> int:
    raw = os.environ.get("SFC_MAX_TABLE_ENTRIES")
    return int(raw) if raw else DEFAULT_MAX_ENTRIES


@dataclass(frozen=True)
class MultiLevelTables:
    """Widened tables over block indices ``0 .. b**K - 1``.

    ``N``, ``Fp`` and ``Omega`` are keyed by the state of the block's top
    ancestor; ``Sc[s][J]`` is the state reached from it and ``Sp[s][J]``
    inverts that, keyed by the deep state (None when not invertible).
    """

    base: CurveTables
    K: int
    width: int
    N: tuple
    Fp: tuple
    Omega: tuple
    Sc: tuple
    Sp: Optional[tuple]


def _descend(base, records, s):
    """Replay Omega over ``records`` (deepest last) from neighbor state s."""
    J = 0
    for jv, sp, f in records:
        jw = base.Omega[jv][sp][s][f]
        if jw == NONE:
            return NONE
        J = J * base.b + jw
        s = base.child_state[s][jw]
    return J


def build_multilevel(tables: CurveTables, K: int) -> MultiLevelTables:
    if not isinstance(K, int) or K < 1:
        raise ContractError("K must be a positive integer")
    b, n, F = tables.b, tables.state_count, tables.facet_count
    width = b**K
    entries = width * n * (n + 2) * F
    if entries > _max_entries():
        raise ResourceError(
            f"depth-{K} tables need {entries} entries, above the cap of {_max_entries()} "
            "(set SFC_MAX_TABLE_ENTRIES to raise it)"
        )
    cs = tables.child_state
    N = [[[NONE] * F for _ in range(n)] for _ in range(width)]
    Fp = [[[NONE] * F for _ in range(n)] for _ in range(width)]
    Omega = [[[[NONE] * F for _ in range(n)] for _ in range(n)] for _ in range(width)]
    Sc = [[0] * width for _ in range(n)]

    for J in range(width):
        dig = digits(J, K, b)
        for sa in range(n):
            chain = [sa]
            for digit in dig:
                chain.append(cs[chain[-1]][digit])
            Sc[sa][J] = chain[-1]
            for f0 in range(tables.facets_of(chain[-1])):
                f = f0
                records = []
                t = K
                while t > 0:
                    jv, sp = dig[t - 1], chain[t - 1]
                    jw = tables.N[jv][sp][f]
                    if jw != NONE:
                        break
                    fp = tables.Fp[jv][sp][f]
                    if fp == NONE:
                        t = -1
                        break
                    records.append((jv, sp, f))
                    f = fp
                    t -= 1
                records.reverse()
                if t < 0:
                    continue  # the whole query fails: N and Fp stay empty
                if t > 0:
                    # neighbor inside the block: sibling at depth t, then descend
                    sn = cs[sp][jw]
                    tail = _descend(tables, records, sn)
                    if tail != NONE:
                        prefix = 0
                        for digit in dig[: t - 1]:
                            prefix = prefix * b + digit
                        N[J][sa][f0] = (prefix * b + jw) * b ** (K - t) + tail
                    continue
                Fp[J][sa][f0] = f
                for sb in range(n):
                    Omega[J][sa][sb][f0] = _descend(tables, records, sb)

    Sp = None
    if tables.parent_state is not None:
        Sp = [[NONE] * width for _ in range(n)]
        for sa in range(n):
            for J in range(width):
                Sp[Sc[sa][J]][J] = sa

    def freeze(x):
        return tuple(freeze(y) for y in x) if isinstance(x, list) else x

    return MultiLevelTables(tables, K, width, freeze(N), freeze(Fp), freeze(Omega), freeze(Sc), freeze(Sp))


def _ancestor(mlt: MultiLevelTables, node, K: int):
    width = mlt.base.b**K
    q, J = divmod(node.position, width)
    if isinstance(node, HistoryNode):
        h = node.history
        for _ in range(K):
            h = h.parent
        return HistoryNode(node.level - K, q, h), J
    if mlt.Sp is None:
        raise UnsupportedTreeError("child-state maps are not invertible; query with a HistoryNode")
    return AlgebraicNode(node.level - K, q, mlt.Sp[node.state][J]), J


def _block_child(mlt: MultiLevelTables, node, J: int):
    s = mlt.Sc[node.state][J]
    position = node.position * mlt.width + J
    level = node.level + mlt.K
    if isinstance(node, HistoryNode):
        h = node.history
        for digit in digits(J, mlt.K, mlt.base.b):
            h = h.push(mlt.base.child_state[h.state][digit])
        return HistoryNode(level, position, h)
    return AlgebraicNode(level, position, s)


def neighbor_multilevel(mlt: MultiLevelTables, node, f: int):
    """Same answer as ``neighbor``; blocks of K levels from the bottom, single steps on top."""
    _check_node(mlt.base, node)
    _check_facet(mlt.base, node.state, f)
    return _neighbor_ml(mlt, node, f)


def _neighbor_ml(mlt, node, f):
    base = mlt.base
    if node.level == 0:
        return None
    if node.level < mlt.K:
        parent = _parent_of(base, node)
        jv = node.position % base.b
        sp = parent.state
        jw = base.N[jv][sp][f]
        if jw != NONE:
            return _child_of(base, parent, jw)
        fp = base.Fp[jv][sp][f]
        if fp == NONE:
            return None
        pw = _neighbor_ml(mlt, parent, fp)
        if pw is None:
            return None
        jw = base.Omega[jv][sp][pw.state][f]
        return None if jw == NONE else _child_of(base, pw, jw)
    parent, J = _ancestor(mlt, node, mlt.K)
    sa = parent.state
    jw = mlt.N[J][sa][f]
    if jw != NONE:
        return _block_child(mlt, parent, jw)
    fp = mlt.Fp[J][sa][f]
    if fp == NONE:
        return None
    pw = _neighbor_ml(mlt, parent, fp)
    if pw is None:
        return None
    jw = mlt.Omega[J][sa][pw.state][f]
    return None if jw == NONE else _block_child(mlt, pw, jw)


def dumps_multilevel(mlt: MultiLevelTables) -> str:
    """Text block in the same layout as the single-level tables serialization."""
    b, n, F = mlt.width, mlt.base.state_count, mlt.base.facet_count
    out = io.StringIO()
    out.write(f"multilevel {mlt.K}\n")
    out.write(f"width {b}\n")
    _table(out, "Sc_hat", mlt.Sc, (n, b))
    if mlt.Sp is None:
        out.write("Sp_hat none\n")
    else:
        _table(out, "Sp_hat", mlt.Sp, (n, b))
    _table(out, "N_hat", mlt.N, (b, n, F))
    _table(out, "Fp_hat", mlt.Fp, (b, n, F))
    _table(out, "Omega_hat", mlt.Omega, (b, n, n, F))
    return out.getvalue()
