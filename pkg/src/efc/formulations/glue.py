"""Gluing formulations along 2-sums and star-shaped 3-sums."""
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ..errors import BlockMismatch, WrongOverlap
from ..lp.model import ExtendedFormulation, LinearProgram, _copy_into, _map_affine
from .pairs import dprime, prime


def _tie(lp: LinearProgram, name: str, left, right):
    """Equation ``left == right`` between two affine forms."""
    (lc, lo), (rc, ro) = left, right
    row: Dict[str, Fraction] = dict(lc)
    for v, a in rc.items():
        row[v] = row.get(v, Fraction(0)) - a
    lp.add_row(name, row, "=", ro - lo)


def glue_star(ef_r: ExtendedFormulation, leaf_efs: Sequence[Tuple[ExtendedFormulation, ExtendedFormulation]]
              ) -> ExtendedFormulation:
    """Combine the centre formulation with the leaves' P' and P''.

    ``ef_r`` must carry ``tags["triangles"]`` (one triple per leaf) and
    ``tags["E0"]``; its ground holds ``E0`` and the blocks ``t'``/``t''``.
    Leaf ``i``'s P' and P'' share a ground ending with its triangle.  The
    result ties ``R(t') = P'_i(t)``, ``R(t'') = P''_i(t)`` and
    ``P'_i(g) = P''_i(g)`` on the leaf's own elements; all ties are
    equations, so the inequality count is exactly the sum of the parts.
    Ground: ``E0`` followed by each leaf's own elements.
    """
    tris = ef_r.tags.get("triangles")
    e0 = ef_r.tags.get("E0")
    if tris is None or e0 is None:
        raise BlockMismatch("centre formulation carries no triangle blocks")
    if len(tris) != len(leaf_efs):
        raise BlockMismatch("%d triangles but %d leaves" % (len(tris), len(leaf_efs)))
    rground = set(ef_r.ground)
    lp = LinearProgram()
    ren_r = _copy_into(lp, ef_r.lp, "R.")
    proj = {g: _map_affine(ef_r.projection[g], ren_r) for g in e0}
    ground: List[str] = list(e0)
    seen = set(e0)
    for i, (tri, (pp, ppp)) in enumerate(zip(tris, leaf_efs)):
        tri = tuple(tri)
        for t in tri:
            if prime(t) not in rground or dprime(t) not in rground:
                raise BlockMismatch("centre lacks the block for %r" % t)
        if tuple(pp.ground[-3:]) != tri or tuple(ppp.ground[-3:]) != tri or pp.ground != ppp.ground:
            raise BlockMismatch("leaf %d grounds do not end with its triangle %s" % (i, tri))
        own = list(pp.ground[:-3])
        if seen & set(own):
            raise BlockMismatch("leaf %d shares elements with the centre or another leaf" % i)
        seen |= set(own)
        r1 = _copy_into(lp, pp.lp, "L%dp." % i)
        r2 = _copy_into(lp, ppp.lp, "L%dpp." % i)
        for g in own:
            a1 = _map_affine(pp.projection[g], r1)
            a2 = _map_affine(ppp.projection[g], r2)
            _tie(lp, "tie.L%d.%s" % (i, g), a1, a2)
            proj[g] = a1
        for t in tri:
            rp = _map_affine(ef_r.projection[prime(t)], ren_r)
            rpp = _map_affine(ef_r.projection[dprime(t)], ren_r)
            _tie(lp, "tie.R%d.%s" % (i, prime(t)), rp, _map_affine(pp.projection[t], r1))
            _tie(lp, "tie.R%d.%s" % (i, dprime(t)), rpp, _map_affine(ppp.projection[t], r2))
        ground += own
    tags = {"kind": "star", "triangles": [tuple(t) for t in tris]}
    return ExtendedFormulation(lp, ground, proj, tags)


def compose_2sum(ef1: ExtendedFormulation, ef2: ExtendedFormulation, shared: str) -> ExtendedFormulation:
    """P(M1 (+)2 M2) from P(M1) x P(M2) and the hyperplane ``x1_p + x2_p = 1``.

    Every basis of the 2-sum is ``B1 + B2 - p`` with ``p`` in exactly one of
    the part bases, which is what the hyperplane encodes; requiring the two
    copies of ``p`` to be equal instead would admit ``I1 + I2`` with both
    ``I1 + p`` and ``I2 + p`` dependent.  The shared coordinate is dropped
    from the ground.
    """
    common = set(ef1.ground) & set(ef2.ground)
    if common != {shared}:
        raise WrongOverlap("grounds overlap in %s, expected exactly %r" % (sorted(common), shared))
    lp = LinearProgram()
    r1 = _copy_into(lp, ef1.lp, "s1.")
    r2 = _copy_into(lp, ef2.lp, "s2.")
    c1, o1 = _map_affine(ef1.projection[shared], r1)
    c2, o2 = _map_affine(ef2.projection[shared], r2)
    row = dict(c1)
    for v, a in c2.items():
        row[v] = row.get(v, Fraction(0)) + a
    lp.add_row("hyper." + shared, row, "=", 1 - o1 - o2)
    ground = [g for g in ef1.ground if g != shared] + [g for g in ef2.ground if g != shared]
    proj = {g: _map_affine(ef1.projection[g], r1) for g in ef1.ground if g != shared}
    proj.update({g: _map_affine(ef2.projection[g], r2) for g in ef2.ground if g != shared})
    return ExtendedFormulation(lp, ground, proj, {"kind": "two_sum", "shared": shared})
