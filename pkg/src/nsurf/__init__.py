"""Normal and almost-normal surfaces on triangulated 3-manifolds.

Exact integer coordinates and matching equations, vertex-solution
enumeration, surface reconstruction and analysis, boundary slopes on
one-vertex torus boundaries, and the width calculus on Morse words.
"""

__version__ = "0.1.0"

from .coordinates import (
    ALMOST_NORMAL,
    NORMAL,
    all_triangles_vector,
    edge_weights,
    euler_characteristic,
    haken_sum,
    is_admissible,
    matching_matrix,
    vertex_link_vector,
)
from .enumeration import bounded_candidates, brute_force_solutions, vertex_solutions
from .errors import (
    BoundaryStructureError,
    CoordinateError,
    DependentEventsError,
    GuardExceededError,
    IncompatibleVectorsError,
    InconsistentWeightsError,
    MorseWordError,
    NsurfError,
    OrientabilityError,
    SlopeError,
    TriangulationError,
)
from .morse import (
    MorseEvent,
    MorseWord,
    bridge_report,
    commute,
    leaf_complexity,
    lmax_profile,
    minimize,
    parse_morse_word,
    width,
)
from .slopes import BoundaryTorus, Slope, band_sum_slopes, boundary_curves, slope_of, slope_survey
from .surfaces import analyze, build_cell_complex, tube_candidates
from .triangulation import Triangulation, parse_triangulation, serialize_triangulation, validate
