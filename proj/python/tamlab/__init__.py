from ._core import (
    InvalidSystem,
    ParseError,
    SearchSpaceExceeded,
    System,
    TamlabError,
    TrivialFractal,
    contains_sdp,
    fit_union,
    fractal_points,
    mismatch_witness,
    run_cli,
    window_points,
)

__all__ = [
    "InvalidSystem",
    "ParseError",
    "SearchSpaceExceeded",
    "System",
    "TamlabError",
    "TrivialFractal",
    "contains_sdp",
    "fit_union",
    "fractal_points",
    "mismatch_witness",
    "run_cli",
    "window_points",
]
