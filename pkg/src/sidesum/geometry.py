"""Tiling data model, exact verifier, side-length sums, and coastal analysis.

A tiling is a list of axis-aligned squares with exact rational lower-left
corners and sides, living inside the unit square.  All operations here are
pure functions over immutable values.  Full coverage is certified through
the area identity (sum of squared sides equals 1), which together with
containment and pairwise interior-disjointness is equivalent to covering
the unit square.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpq

from .errors import DomainError, ParseError
from .numerics import Rational, format_rational, parse_rational

VERTICAL = "vertical"
HORIZONTAL = "horizontal"

_ZERO = mpq(0)
_ONE = mpq(1)


@dataclass(frozen=True, slots=True)
class Tile:
    """Axis-aligned square: lower-left corner (x, y), side s, all exact."""

    x: Rational
    y: Rational
    s: Rational

    def __post_init__(self):
        object.__setattr__(self, "x", mpq(self.x))
        object.__setattr__(self, "y", mpq(self.y))
        object.__setattr__(self, "s", mpq(self.s))

    def corners(self):
        x, y, s = self.x, self.y, self.s
        return ((x, y), (x + s, y), (x, y + s), (x + s, y + s))


@dataclass(frozen=True, slots=True)
class Tiling:
    """An ordered collection of tiles; may be a full tiling or a packing."""

    tiles: tuple[Tile, ...]

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))

    @property
    def n(self) -> int:
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    def __len__(self):
        return len(self.tiles)


@dataclass(frozen=True, slots=True)
class Verdict:
    """Outcome of verify(); on rejection names the first violated condition."""

    ok: bool
    reason: Optional[str] = None  # "tile_bounds" | "overlap" | "coverage"
    tile_indices: tuple[int, ...] = ()
    detail: str = ""

    def __bool__(self):
        return self.ok


def verify(t: Tiling, require_full_cover: bool = False) -> Verdict:
    """Check tile invariants, pairwise interior-disjointness and, optionally,
    the exact area identity sum(s^2) = 1 certifying full coverage."""
    for i, tile in enumerate(t.tiles):
        if tile.s <= 0:
            return Verdict(False, "tile_bounds", (i,), f"tile {i}: side {tile.s} not positive")
        if tile.x < 0 or tile.y < 0:
            return Verdict(False, "tile_bounds", (i,), f"tile {i}: negative corner")
        if tile.x + tile.s > 1 or tile.y + tile.s > 1:
            return Verdict(False, "tile_bounds", (i,), f"tile {i}: exceeds the unit square")
    # O(n^2) open-interval overlap test; n stays small (<= 150 in practice).
    for i in range(len(t.tiles)):
        a = t.tiles[i]
        for j in range(i + 1, len(t.tiles)):
            b = t.tiles[j]
            if a.x < b.x + b.s and b.x < a.x + a.s and a.y < b.y + b.s and b.y < a.y + a.s:
                return Verdict(False, "overlap", (i, j), f"tiles {i} and {j} overlap")
    if require_full_cover:
        area = sum((tile.s * tile.s for tile in t.tiles), _ZERO)
        if area != 1:
            gap = 1 - area
            return Verdict(
                False,
                "coverage",
                (),
                f"area deficit {format_rational(gap)}" if gap > 0 else f"area excess {format_rational(-gap)}",
            )
    return Verdict(True)


def sigma(t: Tiling) -> Rational:
    """Sum of the side lengths, the quantity the whole package maximizes."""
    return sum((tile.s for tile in t.tiles), _ZERO)


def cross_section(t: Tiling, c: Rational, axis: str = VERTICAL) -> Optional[tuple[int, ...]]:
    """Indices of tiles whose interior meets the line {x==c} (or {y==c}).

    Returns None when the line is ambiguous, i.e. contains a tile edge.  On
    an unambiguous line through a valid full tiling the returned sides sum
    to exactly 1.
    """
    c = mpq(c)
    if not (0 < c < 1):
        raise DomainError("cross section line must satisfy 0 < c < 1")
    if axis not in (VERTICAL, HORIZONTAL):
        raise DomainError(f"unknown axis {axis!r}")
    hit = []
    for i, tile in enumerate(t.tiles):
        lo = tile.x if axis == VERTICAL else tile.y
        hi = lo + tile.s
        if c == lo or c == hi:
            return None
        if lo < c < hi:
            hit.append(i)
    return tuple(hit)


@dataclass(frozen=True, slots=True)
class CoastalReport:
    """Partition of a full tiling into left-coastal, right-coastal and inland
    tiles (coastal means touching the x=0 or x=1 edge of the unit square).

    ``big_pair`` is the (left, right) coastal pair of maximal sides, ties
    broken by least (y, x).  Whether its sides sum to exactly 1, a forced
    property of 8-tile tilings, is checked by the audit layer rather than
    assumed here.
    """

    left_coastal: tuple[int, ...]
    right_coastal: tuple[int, ...]
    inland: tuple[int, ...]
    inland_sigma: Rational
    big_pair: Optional[tuple[int, int]]
    size_class_counts: dict = field(compare=False)


def coastal_report(t: Tiling) -> CoastalReport:
    """Classify tiles by coast contact; requires a verified full tiling."""
    v = verify(t, require_full_cover=True)
    if not v:
        raise DomainError(f"coastal_report needs a full tiling: {v.detail}")
    left, right, inland = [], [], []
    for i, tile in enumerate(t.tiles):
        coastal = False
        if tile.x == 0:
            left.append(i)
            coastal = True
        if tile.x + tile.s == 1:
            right.append(i)
            coastal = True
        if not coastal:
            inland.append(i)
    inland_sig = sum((t.tiles[i].s for i in inland), _ZERO)

    def best(indices):
        return min(indices, key=lambda i: (-t.tiles[i].s, t.tiles[i].y, t.tiles[i].x))

    pair = (best(left), best(right)) if left and right else None
    counts = Counter(tile.s for tile in t.tiles)
    return CoastalReport(
        left_coastal=tuple(left),
        right_coastal=tuple(right),
        inland=tuple(inland),
        inland_sigma=inland_sig,
        big_pair=pair,
        size_class_counts=dict(counts),
    )


def big_pair_sides(t: Tiling, report: CoastalReport) -> Optional[tuple[Rational, Rational]]:
    if report.big_pair is None:
        return None
    i, j = report.big_pair
    return (t.tiles[i].s, t.tiles[j].s)


def is_corner_tile(tile: Tile) -> bool:
    """True if some corner of the tile coincides with a unit-square corner."""
    unit = ((_ZERO, _ZERO), (_ONE, _ZERO), (_ZERO, _ONE), (_ONE, _ONE))
    return any(c in unit for c in tile.corners())


ROTATE90 = "rotate90"
REFLECT_X = "reflect_x"
REFLECT_Y = "reflect_y"
TRANSPOSE = "transpose"


def transform(t: Tiling, op: str) -> Tiling:
    """Apply a symmetry of the unit square; side multiset and sigma are
    preserved.  rotate90 is the counterclockwise quarter turn."""
    out = []
    for tile in t.tiles:
        x, y, s = tile.x, tile.y, tile.s
        if op == ROTATE90:
            out.append(Tile(1 - y - s, x, s))
        elif op == REFLECT_X:
            out.append(Tile(1 - x - s, y, s))
        elif op == REFLECT_Y:
            out.append(Tile(x, 1 - y - s, s))
        elif op == TRANSPOSE:
            out.append(Tile(y, x, s))
        else:
            raise DomainError(f"unknown transform {op!r}")
    return Tiling(tuple(out))


def _sorted_by_position(t: Tiling) -> Tiling:
    return Tiling(tuple(sorted(t.tiles, key=lambda tile: (tile.y, tile.x))))


def dihedral_images(t: Tiling) -> list[Tiling]:
    """The 8 images of a tiling under the symmetry group of the square."""
    images = []
    cur = t
    for _ in range(4):
        images.append(cur)
        images.append(transform(cur, REFLECT_X))
        cur = transform(cur, ROTATE90)
    return images


def canonical_form(t: Tiling) -> Tiling:
    """Deterministic representative of a tiling's symmetry class: the
    lexicographically least serialization over the 8 dihedral images, tiles
    sorted by (y, x).  Idempotent by construction."""
    best = None
    best_key = None
    for img in dihedral_images(t):
        srt = _sorted_by_position(img)
        key = to_json(srt)
        if best_key is None or key < best_key:
            best, best_key = srt, key
    return best


# ---------------------------------------------------------------------------
# JSON interchange: the format every CLI command reads and writes
# ---------------------------------------------------------------------------


def to_json_dict(t: Tiling) -> dict:
    return {
        "n": t.n,
        "tiles": [
            {"x": format_rational(tile.x), "y": format_rational(tile.y), "s": format_rational(tile.s)}
            for tile in t.tiles
        ],
    }


def to_json(t: Tiling) -> str:
    return json.dumps(to_json_dict(t), separators=(", ", ": "))


def from_json_dict(doc) -> Tiling:
    if not isinstance(doc, dict):
        raise ParseError("tiling document must be a JSON object")
    if set(doc.keys()) != {"n", "tiles"}:
        raise ParseError('tiling document must have exactly the keys "n" and "tiles"')
    tiles_doc = doc["tiles"]
    if not isinstance(tiles_doc, list):
        raise ParseError('field "tiles" must be a list')
    if not isinstance(doc["n"], int) or doc["n"] != len(tiles_doc):
        raise ParseError('field "n" must equal the number of tiles')
    tiles = []
    for i, td in enumerate(tiles_doc):
        if not isinstance(td, dict) or set(td.keys()) != {"x", "y", "s"}:
            raise ParseError(f'tiles[{i}] must be an object with keys "x", "y", "s"')
        vals = {}
        for fieldname in ("x", "y", "s"):
            raw = td[fieldname]
            if not isinstance(raw, str):
                raise ParseError(f"tiles[{i}].{fieldname}: rationals are serialized as strings")
            try:
                vals[fieldname] = parse_rational(raw)
            except ParseError as exc:
                raise ParseError(f"tiles[{i}].{fieldname}: {exc}") from None
        tiles.append(Tile(vals["x"], vals["y"], vals["s"]))
    return Tiling(tuple(tiles))


def from_json(text: str) -> Tiling:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json_dict(doc)
