"""Isotopy classes of tilings of hyperbolic orbifolds commensurate with the ⋆246 triangle group."""

from .enumeration import EnumerationConfig, detect_ambiguity, enumerate_classes, signature_of
from .orbifold_symbol import euler_characteristic, parse_symbol, standard_presentation
from .realization import load_catalog, realize_symbol, verify
from .tiling_render import RenderOptions, render_svg

__all__ = [
    "EnumerationConfig", "RenderOptions", "detect_ambiguity", "enumerate_classes", "euler_characteristic",
    "load_catalog", "parse_symbol", "realize_symbol", "render_svg", "signature_of", "standard_presentation",
    "verify",
]
