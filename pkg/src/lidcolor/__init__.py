"""Locally identifying colorings of graphs."""

from lidcolor.bondy import bondy_reduce, distinguishing_set
from lidcolor.errors import CapacityError, InvariantError, LidError, ParseError, UsageError
from lidcolor.generators import generate, generate_hn
from lidcolor.graph import (
    Graph,
    LayerDecomposition,
    are_twins,
    bfs_layers,
    closed_neighborhood,
    contract,
    distinguishers,
    induced,
)
from lidcolor.lid_layers import lid_color_layers
from lidcolor.lid_product import LowTdColoring, lid_color_product, validate_lowtd
from lidcolor.lid_treedepth import lid_color_td
from lidcolor.oracle import OracleResult, chi_exact, chi_lid_exact, chi_td_p_exact
from lidcolor.treedepth import EliminationForest, closure, treedepth_exact, validate_witness
from lidcolor.verify import LidReport, palette, separating_colors, verify_lid

__version__ = "0.1.0"
