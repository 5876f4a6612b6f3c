"""The permutation group generated by the child-state maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class StateGroupInfo:
    order: int
    is_abelian: bool
    generators: tuple  # sigma_j as tuples s -> S^c(s, j)
    elements: tuple  # sorted permutation tuples, identity first
    state_names: tuple

    def cycles(self, perm) -> str:
        """Cycle notation such as ``(HA)(BR)``; ``id`` for the identity."""
        glue = "" if all(len(n) == 1 for n in self.state_names) else " "
        seen, parts = set(), []
        for start in range(len(perm)):
            if start in seen or perm[start] == start:
                continue
            cycle, s = [], start
            while s not in seen:
                seen.add(s)
                cycle.append(self.state_names[s])
                s = perm[s]
            parts.append("(" + glue.join(cycle) + ")")
        return "".join(parts) or "id"

    def element_strings(self) -> list:
        return [self.cycles(p) for p in self.elements]

    def contains(self, perm) -> bool:
        return tuple(perm) in self.elements


def _compose(p, q):
    """p after q."""
    return tuple(p[x] for x in q)


def state_group(spec) -> Optional[StateGroupInfo]:
    """Closure of the sigma_j under composition, or None if some sigma_j is not bijective."""
    n = spec.state_count
    gens = tuple(spec.system.sigma(j) for j in range(spec.branching))
    if any(len(set(g)) != n for g in gens):
        return None
    identity = tuple(range(n))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose(g, p)
                if q not in elements:
                    elements.add(q)
                    nxt.append(q)
        frontier = nxt
    abelian = all(_compose(a, b) == _compose(b, a) for a in gens for b in gens)
    ordered = tuple(sorted(elements, key=lambda p: (p != identity, p)))
    names = tuple(spec.state_name(s) for s in range(n))
    return StateGroupInfo(len(elements), abelian, gens, ordered, names)
