"""Extended formulations: flow models, explicit flats, pair polytopes, gluing,
the recursive pipeline and circuit dominants."""
from .circuit import check_tu, circuit_dominant_ef, circuit_piece_ef, cycle_signing, tu_representation
from .explicit import explicit_flat_ef
from .flows import (bidirect, cographic_independence_ef, graphic_independence_ef, spanning_tree_ef,
                    wong_arborescence_dominant)
from .glue import compose_2sum, glue_star
from .minors import p_prime_ef
from .pairs import pair_formulation_cographic, pair_formulation_graphic, pair_vertices
from .pipeline import generic_pair_formulation, part_ef, regular_pipeline

__all__ = [
    "bidirect", "check_tu", "circuit_dominant_ef", "circuit_piece_ef", "cographic_independence_ef",
    "compose_2sum", "cycle_signing", "explicit_flat_ef", "generic_pair_formulation", "glue_star",
    "graphic_independence_ef", "p_prime_ef", "pair_formulation_cographic", "pair_formulation_graphic",
    "pair_vertices", "part_ef", "regular_pipeline", "spanning_tree_ef", "tu_representation",
    "wong_arborescence_dominant",
]
