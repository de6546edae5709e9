"""Exact analysis of plane polynomial maps F = (P, Q) and their pencils.

The toolkit decides, with exact rational and algebraic-number arithmetic:
component counts across the pencil aP + bQ = 0, rationality of members,
the blow-up resolution of (P : Q) with its horizontal/dicritical component
taxonomy, the non-proper value set, and the invertibility equivalence for
maps whose pencil members are all irreducible rational curves.
"""

from .config import ToolkitConfig
from .core.multipoly import MultiPoly
from .core.parse import parse_poly
from .harness import run_corpus, run_map
from .jelonek import finite_fibres_check, geometric_degree, nonproper_set, predicates
from .pencil import PencilMap, pencil_member, rationality_verdict, scan_pencil
from .resolution import base_points, resolve_pencil
from .ruppert import absolute_factor_count

__version__ = "0.1.0"

__all__ = [
    "MultiPoly",
    "PencilMap",
    "ToolkitConfig",
    "absolute_factor_count",
    "base_points",
    "finite_fibres_check",
    "geometric_degree",
    "nonproper_set",
    "parse_poly",
    "pencil_member",
    "predicates",
    "rationality_verdict",
    "resolve_pencil",
    "run_corpus",
    "run_map",
    "scan_pencil",
]
