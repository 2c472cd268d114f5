"""Exact Newhouse thickness, the Gap Lemma and their consequences.

Sets on the line are cut-out programs with exact rational endpoints; sets in
R^d are systems of sup-norm cubes. See the submodules for the operations.
"""

from .core1d import (CutOutSet1D, ExplicitCutout, Gap, HomotheticIFS, MiddleCantor,
                     enumerate_gaps, homothety, make_explicit_cutout, make_ifs,
                     make_middle_cantor, restrict, thickness, truncate_to_intervals)
from .exact import INF, Enclosure, Interval, Q, fmt
from .gaplemma1d import check_gap_lemma, find_intersection, sharpness_counterexample

__version__ = "0.1.0"

__all__ = [
    "CutOutSet1D", "ExplicitCutout", "Gap", "HomotheticIFS", "MiddleCantor",
    "enumerate_gaps", "homothety", "make_explicit_cutout", "make_ifs",
    "make_middle_cantor", "restrict", "thickness", "truncate_to_intervals",
    "INF", "Enclosure", "Interval", "Q", "fmt",
    "check_gap_lemma", "find_intersection", "sharpness_counterexample",
]
