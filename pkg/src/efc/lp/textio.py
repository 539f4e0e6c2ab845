"""Line-oriented text format for LPs and extended formulations.

::

    # comment
    var <name> [lb <q>] [ub <q>]
    row <name> <=|=|>= <q> : <q>*<var> <q>*<var> ...
    proj <ground-elt> = <q>*<var> + ... + <q>

Rationals are written ``p/q`` or as integers.  ``proj`` lines appear in
ground order; a coordinate that is constant is written ``proj e = <q>``.
"""
from fractions import Fraction
from typing import Dict, List, Tuple

from ..errors import ParseError
from .model import ExtendedFormulation, LinearProgram


def fmt_q(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


def _parse_q(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError("line %d: bad rational %r" % (lineno, tok)) from None


def _parse_term(tok: str, lineno: int) -> Tuple[str, Fraction]:
    if "*" not in tok:
        raise ParseError("line %d: expected <q>*<var>, got %r" % (lineno, tok))
    q, v = tok.split("*", 1)
    return v, _parse_q(q, lineno)


def write_lp(ef_or_lp) -> str:
    """Serialise an ExtendedFormulation (or a bare LinearProgram)."""
    if isinstance(ef_or_lp, ExtendedFormulation):
        lp, ef = ef_or_lp.lp, ef_or_lp
    else:
        lp, ef = ef_or_lp, None
    out: List[str] = []
    for j, v in enumerate(lp.variables):
        parts = ["var", v]
        if lp.lb[j] is not None:
            parts += ["lb", fmt_q(lp.lb[j])]
        if lp.ub[j] is not None:
            parts += ["ub", fmt_q(lp.ub[j])]
        out.append(" ".join(parts))
    for r in lp.rows:
        terms = " ".join("%s*%s" % (fmt_q(a), v) for v, a in r.coeffs.items())
        out.append(("row %s %s %s : %s" % (r.name, r.sense, fmt_q(r.rhs), terms)).rstrip())
    if ef is not None:
        for g in ef.ground:
            coeffs, off = ef.projection[g]
            pieces = ["%s*%s" % (fmt_q(a), v) for v, a in coeffs.items()]
            if off or not pieces:
                pieces.append(fmt_q(off))
            out.append("proj %s = %s" % (g, " + ".join(pieces)))
    return "\n".join(out) + "\n"


def read_lp(text: str):
    """Parse text; returns an ExtendedFormulation if any ``proj`` line exists,
    otherwise a LinearProgram."""
    lp = LinearProgram()
    ground: List[str] = []
    proj: Dict[str, Tuple[Dict[str, Fraction], Fraction]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kind = toks[0]
        if kind == "var":
            if len(toks) < 2:
                raise ParseError("line %d: var needs a name" % lineno)
            lb = ub = None
            rest = toks[2:]
            if len(rest) % 2:
                raise ParseError("line %d: dangling bound keyword" % lineno)
            for key, val in zip(rest[::2], rest[1::2]):
                if key == "lb":
                    lb = _parse_q(val, lineno)
                elif key == "ub":
                    ub = _parse_q(val, lineno)
                else:
                    raise ParseError("line %d: unknown bound %r" % (lineno, key))
            lp.add_var(toks[1], lb, ub)
        elif kind == "row":
            if len(toks) < 5 or toks[4] != ":":
                raise ParseError("line %d: expected 'row <name> <sense> <q> : ...'" % lineno)
            name, sense, rhs = toks[1], toks[2], _parse_q(toks[3], lineno)
            if sense not in ("<=", "=", ">="):
                raise ParseError("line %d: bad sense %r" % (lineno, sense))
            coeffs: Dict[str, Fraction] = {}
            for tok in toks[5:]:
                v, a = _parse_term(tok, lineno)
                coeffs[v] = coeffs.get(v, Fraction(0)) + a
            lp.add_row(name, coeffs, sense, rhs)
        elif kind == "proj":
            if len(toks) < 4 or toks[2] != "=":
                raise ParseError("line %d: expected 'proj <elt> = ...'" % lineno)
            g = toks[1]
            coeffs = {}
            off = Fraction(0)
            for tok in toks[3:]:
                if tok == "+":
                    continue
                if "*" in tok:
                    v, a = _parse_term(tok, lineno)
                    coeffs[v] = coeffs.get(v, Fraction(0)) + a
                else:
                    off += _parse_q(tok, lineno)
            ground.append(g)
            proj[g] = (coeffs, off)
        else:
            raise ParseError("line %d: unknown record %r" % (lineno, kind))
    if ground:
        return ExtendedFormulation(lp, ground, proj)
    return lp
