"""Double-linear functions, side duals, duals of DVB* sequences, triality and the side-dual comparisons."""

from .adual import ADualReport, CStarReport, adual_compare, cstar_duality, side_dual_compare
from .pairing import DegenerateSide, ValuedPairing
from .side_duals import (
    SideDual,
    check_side_dual,
    double_dual_matches,
    dual_over_A,
    dual_over_B,
    mirror_matches,
)
from .triality import Triality, TrialityReport, check_triality, triality_pairing
from .udual import FIRST, SECOND, UDual, abstract_matches, line_dual_compare, transpose, u_dual, u_dual_abstract
from .xspace import DoubleLinearFunctional, evaluate, functional, pair_cd_xd, pairing_cd_xd, xspace

__all__ = [
    "ADualReport", "CStarReport", "DegenerateSide", "DoubleLinearFunctional", "FIRST", "SECOND",
    "SideDual", "Triality", "TrialityReport", "UDual", "ValuedPairing", "abstract_matches",
    "adual_compare", "check_side_dual", "check_triality", "cstar_duality", "double_dual_matches",
    "dual_over_A", "dual_over_B", "evaluate", "functional", "line_dual_compare", "mirror_matches",
    "pair_cd_xd", "pairing_cd_xd", "side_dual_compare", "transpose", "triality_pairing", "u_dual",
    "u_dual_abstract", "xspace",
]
