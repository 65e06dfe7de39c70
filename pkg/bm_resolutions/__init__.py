"""bm-resolutions public package namespace."""

from bm_resolutions.betti import betti_numbers, certify_minimal_gbm, is_minimal
from bm_resolutions.bridge_friendly import is_bridge_friendly, search_bridge_friendly
from bm_resolutions.ideal import Monomial, MonomialIdeal, TotalOrder, normalize_mingens, parse_ideal_text
from bm_resolutions.matchings import Matching, bm_matching, gbm_matching, lyubeznik_matching
from bm_resolutions.models import TOOL_VERSION
from bm_resolutions.morse import MorseComplex, morse_differential, verify_resolution

__version__ = TOOL_VERSION

__all__: list[str] = [
    "Monomial",
    "MonomialIdeal",
    "TotalOrder",
    "normalize_mingens",
    "parse_ideal_text",
    "Matching",
    "bm_matching",
    "gbm_matching",
    "lyubeznik_matching",
    "MorseComplex",
    "morse_differential",
    "verify_resolution",
    "betti_numbers",
    "is_minimal",
    "certify_minimal_gbm",
    "is_bridge_friendly",
    "search_bridge_friendly",
]
