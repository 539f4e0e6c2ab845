"""Minor polytopes P(M2\\T, X) and the leaf polytopes P'(M2), P''(M2).

For a triangle ``T = (alpha, beta, gamma)`` of ``M2`` and ``X`` a subset of
``T``, ``P(M2\\T, X)`` is the hull of ``chi^I`` over independent sets ``I``
of ``M2 \\ T`` whose closure in ``M2`` meets ``T`` only inside ``X``.  It is
assembled from minors of ``M2``:

* ``X = {}``      gives ``P(M2 / T)``,
* ``X = T``       gives ``P(M2 \\ T)``,
* ``X = {t}``     gives ``P(M2 / u \\ t \\ w) & P(M2 / w \\ t \\ u)`` where
  ``{u, w} = T - t`` (an instance of matroid intersection).

Elements that become loops in a minor are fixed to 0.  Graphic parts use the
flow formulation of the graph minor; every other part uses the explicit
connected-flat description.
"""
from typing import Sequence, Tuple

from ..errors import InvalidTriangle
from ..lp.model import ExtendedFormulation, balas_union, embed, intersect, point_ef
from ..matroid import BinaryMatroid, is_triangle, minor_report
from ..parts import Part
from .explicit import explicit_flat_ef
from .flows import graphic_independence_ef


def _as_part(m) -> Part:
    if isinstance(m, Part):
        return m
    return Part("m", "binary", m)


def minor_independence_ef(part, delete: Sequence[str] = (), contract: Sequence[str] = ()) -> ExtendedFormulation:
    """EF of ``P(M / contract \\ delete)`` over ``E - delete - contract``.

    Loops created by contraction appear as coordinates fixed to 0.
    """
    part = _as_part(part)
    m = part.matroid
    gone = set(delete) | set(contract)
    ground = [e for e in m.elements if e not in gone]
    if not ground:
        return point_ef((), {})
    if part.kind == "graphic":
        g = part.graph
        h = g.subgraph_edges([e for e in g.edge_names if e not in set(delete)]).contract_edges(contract)
        if not h.edges:
            return point_ef(ground, {})
        ef = graphic_independence_ef(h)
        return embed(ef, ground, {e: 0 for e in ground if e not in set(h.edge_names)})
    rep = minor_report(m, delete, contract)
    if rep.matroid.n == 0:
        return point_ef(ground, {})
    ef = explicit_flat_ef(rep.matroid)
    return embed(ef, ground, {e: 0 for e in rep.removed_loops})


def _check_triangle(m: BinaryMatroid, t):
    t = tuple(t)
    if len(t) != 3 or any(e not in m.index for e in t) or not is_triangle(m, t):
        raise InvalidTriangle("%s is not a triangle of the part" % (t,))
    return t


def minor_polytope_ef(m2, t: Sequence[str], x_subset: Sequence[str]) -> ExtendedFormulation:
    """EF of ``P(M2\\T, X)`` for ``X`` empty, a singleton, or all of ``T``.

    ``m2`` is a :class:`BinaryMatroid` or a :class:`Part` (graphic parts get
    flow formulations for their minors).
    """
    part = _as_part(m2)
    t = _check_triangle(part.matroid, t)
    xs = set(x_subset)
    if not xs <= set(t):
        raise InvalidTriangle("X must be a subset of the triangle")
    if not xs:
        return minor_independence_ef(part, contract=t)
    if xs == set(t):
        return minor_independence_ef(part, delete=t)
    if len(xs) != 1:
        raise ValueError("X must be empty, a singleton, or the whole triangle")
    (a,) = xs
    u, w = [e for e in t if e != a]
    left = minor_independence_ef(part, delete=(a, w), contract=(u,))
    right = minor_independence_ef(part, delete=(a, u), contract=(w,))
    if not left.ground:
        return left
    return intersect(left, right)


def leaf_ground(m2, t: Sequence[str]) -> Tuple[str, ...]:
    """Ground order of P'/P'': elements outside T, then alpha, beta, gamma."""
    m = _as_part(m2).matroid
    ts = set(t)
    return tuple(e for e in m.elements if e not in ts) + tuple(t)


def p_prime_ef(m2, t: Sequence[str], variant: str = "prime") -> ExtendedFormulation:
    """Balas union of the five pieces defining P'(M2) (or P''(M2)).

    Pieces, in order: ``P(M2\\T, {}) x {0}``, ``P(M2\\T, {t}) x {e_t}`` for
    ``t = alpha, beta, gamma``, and ``P(M2\\T, T) x {e_alpha + e_beta}``
    (``variant="prime"``) or ``x {e_beta + e_gamma}`` (``"double_prime"``).
    The order of ``t`` is semantically relevant.
    """
    if variant not in ("prime", "double_prime"):
        raise ValueError("variant must be 'prime' or 'double_prime'")
    part = _as_part(m2)
    t = _check_triangle(part.matroid, t)
    alpha, beta, gamma = t
    ground = leaf_ground(part, t)

    def piece(xs, ones):
        ef = minor_polytope_ef(part, t, xs)
        fixed = {e: (1 if e in ones else 0) for e in t}
        if not ef.ground:
            fixed.update({e: 0 for e in ground if e not in t})
        return embed(ef, ground, fixed)

    pieces = [piece((), ())]
    for e in t:
        pieces.append(piece((e,), (e,)))
    top = (alpha, beta) if variant == "prime" else (beta, gamma)
    pieces.append(piece(t, top))
    ef = balas_union(pieces)
    ef.tags.update({"kind": variant, "triangle": t})
    return ef


def span_family(m: BinaryMatroid, t: Sequence[str], x_subset: Sequence[str]):
    """Oracle: masks (over ``E - T`` in ground order) of independent ``I``
    avoiding ``T`` with ``cl(I) & T`` inside ``X``."""
    from ..matroid import independent_masks

    tmask = m.mask(t)
    xmask = m.mask(x_subset)
    rest = [j for j, e in enumerate(m.elements) if e not in set(t)]
    out = []
    for mk in independent_masks(m):
        mk = int(mk)
        if mk & tmask:
            continue
        if m.closure_mask(mk) & tmask & ~xmask:
            continue
        out.append(sum(1 << k for k, j in enumerate(rest) if (mk >> j) & 1))
    return out

