"""Automorphism groups of multigraphs and metric graphs, with exhaustive
checks of the tropical Hurwitz bound at small genus."""

__version__ = "0.1.0"

from .automorphism import (  # noqa: E402
    AutomorphismGroup,
    CellSet,
    GraphMap,
    are_isomorphic,
    automorphism_count_oracle,
    automorphisms,
    canonical_form,
    stabilizer,
)
from .families import banana, bouquet, classify_extremal, h, h1, h2, hurwitz_bound, lollipop  # noqa: E402
from .graph import Multigraph, betti_number, bridges, contract, subdivide  # noqa: E402
from .metric import MetricGraph, isometry_group, verify_metric_bound  # noqa: E402
