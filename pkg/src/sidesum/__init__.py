"""Exact enumeration and optimization of tilings of the unit square by n
axis-aligned squares, maximizing the total side length.

Everything is computed in exact rational (or real quadratic-field)
arithmetic; the headline result is the computational confirmation that the
maximum side sum over all 8-tile tilings is exactly 13/5, achieved by the
``figure8`` construction and strictly below the 8/3 achievable by 8-square
packings.
"""

__version__ = "0.1.0"

from .bounds import BoundCurve, cs_bound, five_tile_residual, four_tile_residual, leftover_area, maximize_curve
from .constructions import (
    ConstructionId,
    best_known_sigma,
    build,
    figure8,
    grid,
    merge_block,
    note,
    note_sigma,
    packing8,
    parse_construction_id,
)
from .errors import (
    DomainError,
    ParseError,
    ResourceLimitError,
    SidesumError,
    StructureError,
    UnboundVariableError,
    UnsupportedFieldError,
)
from .geometry import (
    CoastalReport,
    Tile,
    Tiling,
    Verdict,
    big_pair_sides,
    canonical_form,
    coastal_report,
    cross_section,
    dihedral_images,
    from_json,
    from_json_dict,
    is_corner_tile,
    sigma,
    to_json,
    to_json_dict,
    transform,
    verify,
)
from .lp import LinProgram, LpResult, lp_max, maximize
from .numerics import (
    AffineExpr,
    QuadExt,
    Rational,
    affine_eval,
    decimal_str,
    format_rational,
    parse_rational,
    quadext_cmp,
    rat,
    rational_cmp,
    sqrt_rational,
)
from .oracle import GridResult, grid_enumerate, grid_to_tiling
from .render import RenderSpec, render_svg
from .search import ConstraintStore, SearchResult, enumerate_max, sign_of
