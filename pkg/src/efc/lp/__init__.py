"""Exact LP models, the rational simplex, certified solving and text I/O."""
from .model import (ExtendedFormulation, LinearProgram, Q, balas_union, embed, intersect, point_ef,
                    product, product_many, size_report)
from .simplex import LpSolution, simplex_solve
from .solve import lift_feasible, lift_many, maximize_over_projection, solve
from .textio import read_lp, write_lp

__all__ = [
    "ExtendedFormulation", "LinearProgram", "LpSolution", "Q", "balas_union", "embed", "intersect",
    "lift_feasible", "lift_many", "maximize_over_projection", "point_ef", "product", "product_many",
    "read_lp", "simplex_solve", "size_report", "solve", "write_lp",
]
