"""Generators for the package's explicit tilings and packings.

Every builder returns a Tiling that passes the exact verifier.  The
interesting ones:

* ``figure8``: the 8-tile tiling with side sum 13/5, coordinates in fifths
  (one 3/5 corner tile, three 2/5 tiles, four 1/5 tiles); this is the
  optimum the exhaustive search independently rediscovers.
* ``packing8``: a 3x3 grid with one tile removed, a packing (not a tiling)
  of 8 squares with side sum 8/3.
* ``note(k)``: a (k+1)x(k+1) grid whose lower-left k x k subsquare is
  re-tiled as a (k-1)x(k-1) grid, after which one 2x2 block of the fine
  tiles is merged; k^2 - 1 tiles with side sum k - 1/(k-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from .errors import DomainError, ParseError, StructureError
from .geometry import Tile, Tiling, sigma, verify
from .numerics import Rational

GRID = "grid"
FIGURE8 = "figure8"
PACKING8 = "packing8"
NOTE = "note"


@dataclass(frozen=True, slots=True)
class ConstructionId:
    """One of figure8, packing8, grid(k), note(k)."""

    name: str
    k: Optional[int] = None

    def __post_init__(self):
        if self.name in (GRID, NOTE):
            if self.k is None or self.k < 1:
                raise DomainError(f"{self.name} needs a positive parameter k")
            if self.name == NOTE and self.k < 3:
                raise DomainError("note(k) needs k >= 3 (a 2x2 merge needs (k-1)^2 >= 4)")
        elif self.name in (FIGURE8, PACKING8):
            if self.k is not None:
                raise DomainError(f"{self.name} takes no parameter")
        else:
            raise DomainError(f"unknown construction {self.name!r}")

    def __str__(self):
        return self.name if self.k is None else f"{self.name}:{self.k}"


def parse_construction_id(text: str) -> ConstructionId:
    """Parse CLI syntax: figure8 | packing8 | grid:K | note:K."""
    name, sep, param = text.partition(":")
    if name in (FIGURE8, PACKING8):
        if sep:
            raise ParseError(f"{name} takes no parameter")
        return ConstructionId(name)
    if name in (GRID, NOTE):
        if not sep or not param.isdigit():
            raise ParseError(f"{name} needs an integer parameter, e.g. {name}:3")
        return ConstructionId(name, int(param))
    raise ParseError(f"unknown construction {text!r}")


def grid(k: int) -> Tiling:
    """The standard k x k tiling by equal squares of side 1/k."""
    if k < 1:
        raise DomainError("grid needs k >= 1")
    s = mpq(1, k)
    return Tiling(tuple(Tile(i * s, j * s, s) for j in range(k) for i in range(k)))


def figure8() -> Tiling:
    """The 8-tile tiling of side sum 13/5, tiles listed bottom-up."""
    f = mpq(1, 5)
    coords = [
        (0, 0, 3),
        (3, 0, 2),
        (3, 2, 1),
        (4, 2, 1),
        (0, 3, 2),
        (2, 3, 2),
        (4, 3, 1),
        (4, 4, 1),
    ]
    return Tiling(tuple(Tile(x * f, y * f, s * f) for x, y, s in coords))


def packing8() -> Tiling:
    """grid(3) minus its top-right tile: 8 squares, side sum 8/3, area 8/9."""
    third = mpq(1, 3)
    tiles = [t for t in grid(3).tiles if not (t.x == 2 * third and t.y == 2 * third)]
    return Tiling(tuple(tiles))


def merge_block(t: Tiling, anchor: int, m: int) -> Tiling:
    """Replace an m x m block of equal tiles, anchored at tile ``anchor``
    (its lower-left member), by a single tile of m-fold side.

    The block must exist exactly: tiles of the anchor's size at every
    position (x + a*s, y + b*s) for 0 <= a, b < m.  Tile count drops by
    m^2 - 1 and the side sum by (m^2 - m) * s.
    """
    if not (0 <= anchor < t.n):
        raise StructureError(f"anchor index {anchor} out of range")
    if m < 1:
        raise StructureError("block size must be positive")
    base = t.tiles[anchor]
    pos = {(tile.x, tile.y): (i, tile.s) for i, tile in enumerate(t.tiles)}
    members = set()
    for a in range(m):
        for b in range(m):
            key = (base.x + a * base.s, base.y + b * base.s)
            found = pos.get(key)
            if found is None:
                raise StructureError(f"no tile at block position {a},{b}")
            idx, side = found
            if side != base.s:
                raise StructureError(f"tile at block position {a},{b} has side {side}, expected {base.s}")
            members.add(idx)
    merged = Tile(base.x, base.y, m * base.s)
    out = [merged if i == anchor else tile for i, tile in enumerate(t.tiles) if i == anchor or i not in members]
    result = Tiling(tuple(out))
    v = verify(result)
    if not v:
        raise StructureError(f"merge produced an invalid tiling: {v.detail}")
    return result


def note(k: int) -> Tiling:
    """The k^2 - 1 tile construction with side sum k - 1/(k-1).

    Start from grid(k+1); keep its top row and right column (2k+1 tiles of
    side 1/(k+1)); re-tile the lower-left k/(k+1) subsquare as a
    (k-1) x (k-1) grid of tiles with side k/(k^2-1); then merge the 2x2
    block anchored at the origin.  The anchoring choices are fixed so the
    output is deterministic.
    """
    cid = ConstructionId(NOTE, k)  # validates k >= 3
    coarse = mpq(1, k + 1)
    fine = mpq(k, k * k - 1)
    tiles = []
    anchor_index = len(tiles)
    for j in range(k - 1):
        for i in range(k - 1):
            tiles.append(Tile(i * fine, j * fine, fine))
    for i in range(k + 1):  # top row
        tiles.append(Tile(i * coarse, k * coarse, coarse))
    for j in range(k):  # right column below the top row
        tiles.append(Tile(k * coarse, j * coarse, coarse))
    full = Tiling(tuple(tiles))
    return merge_block(full, anchor_index, 2)


def note_sigma(k: int) -> Rational:
    """Closed-form side sum k - 1/(k-1) of note(k), cross-checked against
    the built tiling."""
    ConstructionId(NOTE, k)
    expected = mpq(k) - mpq(1, k - 1)
    actual = sigma(note(k))
    if actual != expected:
        raise StructureError(f"note({k}) sums to {actual}, expected {expected}")
    return expected


def build(cid: ConstructionId) -> Tiling:
    """Build any named construction; output always passes the verifier
    (with full cover for tilings, containment/disjointness for packing8)."""
    if cid.name == GRID:
        t = grid(cid.k)
    elif cid.name == FIGURE8:
        t = figure8()
    elif cid.name == PACKING8:
        t = packing8()
    else:
        t = note(cid.k)
    v = verify(t, require_full_cover=cid.name != PACKING8)
    if not v:
        raise StructureError(f"construction {cid} failed verification: {v.detail}")
    return t


def best_known_sigma(n: int) -> Optional[Rational]:
    """Best side sum among the explicit constructions with exactly n tiles.

    Used to seed the search incumbent; any value returned is the sigma of a
    genuine tiling, hence a valid lower bound for the optimum.
    """
    best = None

    def offer(value):
        nonlocal best
        if best is None or value > best:
            best = value

    if n == 8:
        offer(sigma(figure8()))
    for k in range(1, 14):
        if k * k == n:
            offer(mpq(k))
        if k >= 3 and k * k - 1 == n:
            offer(mpq(k) - mpq(1, k - 1))
        # grid(k) with one m x m block merged: k^2 - m^2 + 1 tiles
        for m in range(2, k):
            if k * k - m * m + 1 == n:
                offer(mpq(k) - mpq(m * m - m, k))
        # grid(k) with j tiles each split into four: k^2 + 3j tiles
        if n > k * k and (n - k * k) % 3 == 0 and (n - k * k) // 3 <= k * k:
            j = (n - k * k) // 3
            offer(mpq(k) + mpq(j, k))
    return best
