"""State systems, b-specifications and their validation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from ..geometry import PointMatrix, is_transition_matrix, rational_matrix


@dataclass(frozen=True)
class BStateSystem:
    """States 0..n-1 with root 0 and the child-state table ``child_state[s][j]``."""

    state_count: int
    child_state: tuple
    branching: int
    root_state: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "child_state", tuple(tuple(int(x) for x in row) for row in self.child_state)
        )

    def sigma(self, j: int) -> tuple:
        """The map s -> S^c(s, j) as a tuple."""
        return tuple(row[j] for row in self.child_state)

    def parent_state_table(self) -> Optional[tuple]:
        """S^p with ``table[s][j]`` = parent state of a state-s child at index j.

        None when some sigma_j is not a bijection.
        """
        n, b = self.state_count, self.branching
        table = [[-1] * b for _ in range(n)]
        for j in range(b):
            image = self.sigma(j)
            if len(set(image)) != n:
                return None
            for parent, child in enumerate(image):
                table[child][j] = parent
        return tuple(tuple(row) for row in table)

    def reachable(self) -> set:
        seen = {self.root_state}
        queue = deque([self.root_state])
        while queue:
            s = queue.popleft()
            for t in self.child_state[s]:
                if 0 <= t < self.state_count and t not in seen:
                    seen.add(t)
                    queue.append(t)
        return seen


@dataclass(frozen=True)
class BSpecification:
    """A curve model: state system, root points and transition matrices.

    ``matrices[s][j]`` is the transition matrix M^{s,j} stored as rows.
    """

    system: BStateSystem
    dim: int
    vertex_counts: tuple
    root_points: PointMatrix
    matrices: tuple
    state_names: Optional[tuple] = None
    name: str = ""
    kd: object = field(default=None, compare=False, repr=False)
    cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertex_counts", tuple(int(v) for v in self.vertex_counts))
        object.__setattr__(
            self,
            "matrices",
            tuple(tuple(rational_matrix(m) for m in row) for row in self.matrices),
        )
        if self.state_names is not None:
            object.__setattr__(self, "state_names", tuple(str(n) for n in self.state_names))

    @property
    def branching(self) -> int:
        return self.system.branching

    @property
    def state_count(self) -> int:
        return self.system.state_count

    @property
    def child_state(self) -> tuple:
        return self.system.child_state

    @property
    def root_state(self) -> int:
        return self.system.root_state

    def matrix(self, s: int, j: int) -> tuple:
        return self.matrices[s][j]

    def state_name(self, s: int) -> str:
        if self.state_names is not None:
            return self.state_names[s]
        return str(s)

    def state_index(self, name) -> int:
        """Accept a state name or an integer index."""
        if self.state_names is not None and str(name) in self.state_names:
            return self.state_names.index(str(name))
        s = int(name)
        if not 0 <= s < self.state_count:
            raise ValueError(f"no state {name!r}")
        return s

    @property
    def parent_state(self) -> Optional[tuple]:
        if "parent_state" not in self.cache:
            self.cache["parent_state"] = self.system.parent_state_table()
        return self.cache["parent_state"]

    @property
    def invertible(self) -> bool:
        return self.parent_state is not None


@dataclass(frozen=True)
class SpecViolation:
    clause: str
    where: tuple
    message: str

    def __str__(self):
        loc = f" at {self.where}" if self.where else ""
        return f"{self.clause}{loc}: {self.message}"


@dataclass
class ValidationReport:
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self) -> set:
        return {v.clause for v in self.violations}

    def __str__(self):
        return "ok" if self.ok else "\n".join(str(v) for v in self.violations)


def validate_spec(spec: BSpecification) -> ValidationReport:
    """Check shapes, column sums and reachability of a specification."""
    out = []
    sysm = spec.system
    n, b = sysm.state_count, sysm.branching
    if b < 2:
        out.append(SpecViolation("branching", (), f"b = {b} < 2"))
    if n < 1:
        out.append(SpecViolation("state-count", (), "need at least one state"))
        return ValidationReport(out)
    if sysm.root_state != 0:
        out.append(SpecViolation("root-state", (), "root state must be 0"))
    if len(sysm.child_state) != n or any(len(r) != b for r in sysm.child_state):
        out.append(SpecViolation("state-table-shape", (), f"child_state must be {n} x {b}"))
        return ValidationReport(out)
    for s, row in enumerate(sysm.child_state):
        for j, t in enumerate(row):
            if not 0 <= t < n:
                out.append(SpecViolation("state-range", (s, j), f"child state {t} out of range"))
    if spec.dim < 2:
        out.append(SpecViolation("dimension", (), "ambient dimension must be at least 2"))
    if spec.root_points.dim != spec.dim:
        out.append(SpecViolation("root-shape", (), "root points have the wrong dimension"))
    if len(spec.vertex_counts) != n or any(v < 1 for v in spec.vertex_counts):
        out.append(SpecViolation("vertex-counts", (), "one positive vertex count per state"))
        return ValidationReport(out)
    if spec.root_points.ncols != spec.vertex_counts[sysm.root_state]:
        out.append(
            SpecViolation("root-shape", (), "root point matrix column count != n_root")
        )
    if spec.state_names is not None and (
        len(spec.state_names) != n or len(set(spec.state_names)) != n
    ):
        out.append(SpecViolation("state-names", (), "need one distinct name per state"))
    if len(spec.matrices) != n or any(len(r) != b for r in spec.matrices):
        out.append(SpecViolation("matrix-shape", (), f"need {n} x {b} transition matrices"))
        return ValidationReport(out)
    for s in range(n):
        for j in range(b):
            m = spec.matrices[s][j]
            t = sysm.child_state[s][j]
            if not 0 <= t < n:
                continue
            n_s, n_t = spec.vertex_counts[s], spec.vertex_counts[t]
            if len(m) != n_s or any(len(r) != n_t for r in m):
                out.append(
                    SpecViolation("matrix-shape", (s, j), f"M^{{{s},{j}}} must be {n_s} x {n_t}")
                )
                continue
            if not is_transition_matrix(m):
                out.append(
                    SpecViolation("transition-matrix", (s, j), "a column does not sum to 1")
                )
    missing = set(range(n)) - sysm.reachable()
    for s in sorted(missing):
        out.append(SpecViolation("reachability", (s,), "state is not reachable from the root"))
    return ValidationReport(out)
