"""Independence polytope from connected-flat rank inequalities."""
from ..lp.model import ExtendedFormulation, LinearProgram, point_ef
from ..matroid import DEFAULT_CAP, BinaryMatroid, connected_flats


def explicit_flat_ef(m: BinaryMatroid, cap: int = DEFAULT_CAP) -> ExtendedFormulation:
    """``x >= 0`` and ``x(F) <= rk(F)`` for every connected flat ``F``.

    The projection is the identity on ``x.<e>``.  Rows are named
    ``flat.<k>`` in the order returned by :func:`connected_flats`.
    """
    if m.n == 0:
        return point_ef((), {})
    lp = LinearProgram()
    x = {e: lp.add_var("x." + e, lb=0) for e in m.elements}
    for k, (flat, rk) in enumerate(connected_flats(m, cap)):
        lp.add_row("flat.%d" % k, {x[e]: 1 for e in sorted(flat, key=m.index.get)}, "<=", rk)
    proj = {e: ({x[e]: 1}, 0) for e in m.elements}
    return ExtendedFormulation(lp, m.elements, proj, {"kind": "explicit"})
