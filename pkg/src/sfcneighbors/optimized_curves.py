"""Curve-specific neighbor kernels built on bit arithmetic.

Each kernel answers the same question as the table engine for one curve
family and is checked against it in the test suite.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import ContractError, UnsupportedDimensionError
from .table_gen.tables import NONE

# --- Morton (Z-order) --------------------------------------------------------

MORTON_MAX_LEVEL = {2: 31, 3: 21}


@lru_cache(maxsize=None)
def _morton_masks(d: int, level: int) -> tuple:
    """Bit masks selecting each axis of a Morton code (axis 0 in the lowest bit)."""
    masks = []
    for axis in range(d):
        m = 0
        for t in range(level):
            m |= 1 << (t * d + axis)
        masks.append(m)
    return tuple(masks)


def _check_morton(d, level, position, f):
    if d not in MORTON_MAX_LEVEL:
        raise UnsupportedDimensionError(f"Morton kernel supports d in (2, 3), got {d}")
    if not 0 <= level <= MORTON_MAX_LEVEL[d]:
        raise ContractError(f"level {level} outside 0..{MORTON_MAX_LEVEL[d]} for d={d}")
    if not 0 <= position < 1 << (d * level):
        raise ContractError(f"position {position} outside 0..2^{d * level}-1")
    if not 0 <= f < 2 * d:
        raise ContractError(f"facet {f} outside 0..{2 * d - 1}")


def morton_neighbor(d: int, level: int, position: int, f: int) -> int:
    """Neighbor across facet f by dilated-integer increment/decrement; -1 at the boundary.

    Facet f moves along axis f // 2, towards lower coordinates for even f.
    """
    _check_morton(d, level, position, f)
    mask = _morton_masks(d, level)[f // 2]
    part = position & mask
    if f & 1:
        if part == mask:
            return NONE
        moved = ((part | ~mask) + 1) & mask
    else:
        if part == 0:
            return NONE
        moved = (part - 1) & mask
    return (position & ~mask) | moved


# --- Hilbert 2D --------------------------------------------------------------

H, A, B, R = 0, 1, 2, 3
# child state = parent state XOR code of the child index
HILBERT_CODES = (1, 0, 0, 2)
_LOWER = 0x5555555555555555


def _check_hilbert(level, position):
    if not 0 <= level <= 31:
        raise ContractError(f"level {level} outside 0..31")
    if not 0 <= position < 1 << (2 * level):
        raise ContractError(f"position {position} outside 0..4^{level}-1")


def hilbert2d_state_fast(level: int, position: int) -> int:
    """State of a Hilbert node from digit counts.

    With n3 the number of base-4 digits equal to 3 and n0 the number equal
    to 0, the state is ``2 * (n3 % 2) + (n0 % 2)``, i.e. H, A, B, R = 0..3.
    """
    _check_hilbert(level, position)
    mask = _LOWER & ((1 << (2 * level)) - 1)
    low = position & mask
    high = (position >> 1) & mask
    n3 = (low & high).bit_count()
    n0 = (mask ^ (low | high)).bit_count()
    return 2 * (n3 & 1) + (n0 & 1)


class HilbertKernel:
    """Hilbert 2D neighbor finding with XOR state arithmetic.

    The index tables come from the compiled curve; states along the path are
    recomputed from the position digits instead of being stored.
    """

    def __init__(self, tables):
        if tables.child_state != tuple(tuple(s ^ c for c in HILBERT_CODES) for s in range(4)):
            raise ContractError("tables are not the global 2D Hilbert curve")
        # the descent below reuses the query facet, which needs Fp(j, s, f) = f
        if any(fp not in (NONE, f) for block in tables.Fp for row in block for f, fp in enumerate(row)):
            raise ContractError("Hilbert kernel needs parent facets equal to child facets")
        self.N = [[list(tables.N[j][s]) for s in range(4)] for j in range(4)]
        self.Fp = [[list(tables.Fp[j][s]) for s in range(4)] for j in range(4)]
        self.Omega = [[[list(tables.Omega[j][s][t]) for t in range(4)] for s in range(4)] for j in range(4)]

    def neighbor(self, level: int, position: int, state: int, f: int):
        """``(position, state)`` of the f-neighbor, or None."""
        _check_hilbert(level, position)
        if not 0 <= f < 4 or not 0 <= state < 4:
            raise ContractError("state and facet must lie in 0..3")
        N, Fp, Omega, codes = self.N, self.Fp, self.Omega, HILBERT_CODES
        # ascend: x is the state of the node at the current height
        x = state
        height = 0
        facet = f
        while True:
            if height == level:
                return None
            digit = (position >> (2 * height)) & 3
            parent = x ^ codes[digit]
            hit = N[digit][parent][facet]
            if hit != NONE:
                break
            fp = Fp[digit][parent][facet]
            if fp == NONE:
                return None
            facet = fp
            x = parent
            height += 1
        # sibling of the ancestor at this height
        top = height
        result = (position >> (2 * top + 2) << 2) | hit
        s = parent ^ codes[hit]
        # descend: parent state at height h is state ^ codes of digits 0..h
        acc = x ^ state  # xor of codes for digits 0..top-1
        for h in range(top - 1, -1, -1):
            digit = (position >> (2 * h)) & 3
            ps = state ^ acc  # state of the original ancestor at height h + 1
            acc ^= codes[digit]
            jw = Omega[digit][ps][s][f]
            if jw == NONE:
                return None
            result = (result << 2) | jw
            s ^= codes[jw]
        return result, s


@lru_cache(maxsize=None)
def _hilbert_kernel():
    from .spec_model import builtin
    from .table_gen import compile_spec

    return HilbertKernel(compile_spec(builtin("hilbert2d_global")))


def hilbert2d_neighbor_fast(level: int, position: int, state: int, f: int):
    """``(position, state)`` of the f-neighbor in the global 2D Hilbert curve, or None."""
    return _hilbert_kernel().neighbor(level, position, state, f)


# --- Peano (palindrome property) ---------------------------------------------


class PeanoKernel:
    """Neighbor finding for the single-state Peano model in dimension d.

    Ascend digit by digit until the per-digit table N is defined, then jump
    straight to the answer: the remaining lower digits are mirrored, so no
    descent and no per-level storage are needed.  Facets are in each cell's
    own frame.
    """

    def __init__(self, tables):
        if tables.state_count != 1 or not tables.palindrome:
            raise ContractError("Peano kernel needs single-state palindromic tables")
        self.b = tables.b
        self.facet_count = tables.facet_count
        self.sibling = [tuple(tables.N[a][0]) for a in range(self.b)]
        self.up = [tuple(tables.Fp[a][0]) for a in range(self.b)]

    def neighbor(self, level: int, position: int, f: int) -> int:
        b = self.b
        if level < 0 or not 0 <= position < b**level:
            raise ContractError(f"position {position} outside level {level}")
        if not 0 <= f < self.facet_count:
            raise ContractError(f"facet {f} outside 0..{self.facet_count - 1}")
        block = 1  # b ** (k - 1)
        rest = position
        for _ in range(level):
            digit = rest % b
            target = self.sibling[digit][f]
            if target != NONE:
                low = position % block
                return position - (position % (block * b)) + target * block + (block - 1 - low)
            f = self.up[digit][f]
            if f == NONE:
                return NONE
            rest //= b
            block *= b
        return NONE


@lru_cache(maxsize=None)
def _peano_kernel(d: int):
    from .spec_model import builtin
    from .table_gen import compile_spec

    return PeanoKernel(compile_spec(builtin(f"peano{d}_local")))


def peano_neighbor_fast(d: int, level: int, position: int, f: int) -> int:
    """Neighbor position in the local Peano model of dimension d, or -1."""
    if d < 1:
        raise ContractError("dimension must be positive")
    return _peano_kernel(d).neighbor(level, position, f)


# --- Sierpinski 2D -----------------------------------------------------------


def sierpinski2d_neighbor_fast(level: int, position: int, f: int) -> int:
    """Neighbor in the local Sierpinski model by flipping the lowest k bits.

    Facets are the triangle sides in the local frame: 0 = entry to right
    angle, 1 = hypotenuse, 2 = right angle to exit.  Walking up, child a
    finds its sibling across facet 2 - 2a; any other facet becomes facet
    1 + 2a - f of the parent.
    """
    if not 0 <= level <= 63:
        raise ContractError(f"level {level} outside 0..63")
    if not 0 <= position < 1 << level:
        raise ContractError(f"position {position} outside 0..2^{level}-1")
    if not 0 <= f < 3:
        raise ContractError(f"facet {f} outside 0..2")
    for k in range(1, level + 1):
        a = (position >> (k - 1)) & 1
        if f == 2 - 2 * a:
            return position ^ ((1 << k) - 1)
        f = 1 + 2 * a - f
    return NONE
