"""Brute-force oracles and the checks that certify formulations at desk scale.

Every check returns a :class:`VerificationReport`; failing entries carry a
concrete counterexample (an objective or a subset).  Random objectives come
from :class:`XorShift64`, so a (instance, trials, seed) triple always yields
the same report.
"""
import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from .decomposition import delta_sum
from .errors import NegativeWeight, NoCircuit
from .lp.model import ExtendedFormulation
from .lp.solve import lift_feasible, lift_many, maximize_over_projection
from .matroid import (DEFAULT_CAP, BinaryMatroid, basis_masks, circuit_masks, connected_flats,
                      independent_masks)

MASK64 = (1 << 64) - 1


class XorShift64:
    """xorshift64* generator (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D).

    The state is the seed (0 is replaced by a fixed constant); outputs are the
    upper bits of ``state * multiplier``.  ``randint(lo, hi)`` reduces modulo
    the range width.
    """

    def __init__(self, seed: int = 42):
        self.state = (seed & MASK64) or 0x9E3779B97F4A7C15

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return ((x * 0x2545F4914F6CDD1D) & MASK64) >> 11

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)

    def weights(self, names: Sequence[str], lo: int, hi: int) -> Dict[str, int]:
        return {e: self.randint(lo, hi) for e in names}


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


class VerificationReport:
    """Named pass/fail checks for one instance."""

    def __init__(self, instance: str, trials: int = 0, seed: int = 0):
        self.instance = instance
        self.trials = trials
        self.seed = seed
        self.checks: List[Tuple[str, str, str]] = []
        self.elapsed = 0.0
        self._t0 = time.perf_counter()

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, "pass" if ok else "fail", detail))
        self.elapsed = time.perf_counter() - self._t0

    def extend(self, other: "VerificationReport"):
        self.checks += other.checks
        self.elapsed = time.perf_counter() - self._t0

    @property
    def ok(self) -> bool:
        return all(s == "pass" for _, s, _ in self.checks)

    def failures(self) -> List[Tuple[str, str, str]]:
        return [c for c in self.checks if c[1] != "pass"]

    def lines(self) -> List[str]:
        return ["check=%s status=%s detail=%s" % (n, s, d.replace("\n", " ")) for n, s, d in self.checks]

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def json_lines(self) -> str:
        out = [json.dumps({"instance": self.instance, "check": n, "status": s, "detail": d})
               for n, s, d in self.checks]
        out.append(json.dumps({"instance": self.instance, "trials": self.trials, "seed": self.seed,
                               "elapsed": round(self.elapsed, 3), "ok": self.ok}))
        return "\n".join(out) + "\n"

    def __repr__(self):
        return "VerificationReport(%s, %d checks, ok=%s)" % (self.instance, len(self.checks), self.ok)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def greedy_max_independent(m: BinaryMatroid, w: Mapping[str, object]) -> Fraction:
    """Max ``w(I)`` over independent ``I`` by the matroid greedy algorithm."""
    order = sorted(m.elements, key=lambda e: (-Fraction(w.get(e, 0)), e))
    mask = 0
    total = Fraction(0)
    for e in order:
        we = Fraction(w.get(e, 0))
        if we <= 0:
            break
        bit = 1 << m.index[e]
        if m.rank_mask(mask | bit) == m.rank_mask(mask) + 1:
            mask |= bit
            total += we
    return total


def _weight_of_mask(m: BinaryMatroid, w: Mapping[str, object], mask: int) -> Fraction:
    return sum((Fraction(w.get(m.elements[j], 0)) for j in range(m.n) if (mask >> j) & 1), Fraction(0))


def min_weight_circuit(m: BinaryMatroid, w: Mapping[str, object], cap: int = DEFAULT_CAP,
                       through: Optional[str] = None) -> Fraction:
    """Min ``w(C)`` over circuits (optionally only those through ``through``)."""
    if any(Fraction(v) < 0 for v in w.values()):
        raise NegativeWeight("weights must be nonnegative")
    masks = [int(c) for c in circuit_masks(m, cap)]
    if through is not None:
        bit = 1 << m.index[through]
        masks = [c for c in masks if c & bit]
    if not masks:
        raise NoCircuit("no circuit" + ("" if through is None else " through %r" % through))
    return min(_weight_of_mask(m, w, c) for c in masks)


def _chi(m: BinaryMatroid, mask: int, ground: Sequence[str]) -> List[int]:
    names = m.names(mask)
    return [1 if g in names else 0 for g in ground]


def _map_parallel(fn, items, jobs: int):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# ---------------------------------------------------------------------------
# independence polytopes
# ---------------------------------------------------------------------------


def _sample_independents(m: BinaryMatroid, rng: XorShift64, extra: int = 1000) -> List[int]:
    seen = set()
    for _ in range(200):
        w = rng.weights(m.elements, 1, 1000)
        order = sorted(m.elements, key=lambda e: -w[e])
        mask = 0
        for e in order:
            bit = 1 << m.index[e]
            if m.rank_mask(mask | bit) == m.rank_mask(mask) + 1:
                mask |= bit
        seen.add(mask)
    for _ in range(extra):
        mask = 0
        for j in range(m.n):
            if rng.randint(0, 3) == 0:
                mask |= 1 << j
        if m.rank_mask(mask) == bin(mask).count("1"):
            seen.add(mask)
    return sorted(seen)


def check_projection_equality(ef: ExtendedFormulation, m: BinaryMatroid, trials: int = 200, seed: int = 42,
                              instance: str = "ef", exhaustive_limit: int = 16, probes: bool = True,
                              lifting: bool = True, jobs: int = 1) -> VerificationReport:
    """Certify ``proj(ef) = P(m)``.

    (a) every independent set lifts (all of them when ``|E| <= 16``, else
    greedy bases for random weights plus random independent subsets);
    (b) ``trials`` objectives in ``[-5, 5]^E``: LP optimum equals greedy;
    (c) no circuit's characteristic vector lifts.
    """
    rep = VerificationReport(instance, trials, seed)
    if sorted(ef.ground) != sorted(m.elements):
        rep.add("ground", False, "formulation ground differs from the matroid's elements")
        return rep
    ground = list(ef.ground)
    rng = XorShift64(seed)
    if lifting:
        if m.n <= exhaustive_limit:
            masks = [int(x) for x in independent_masks(m)]
            how = "exhaustive"
        else:
            masks = _sample_independents(m, XorShift64(seed ^ 0x5A5A))
            how = "sampled"
        wit = lift_many(ef, [_chi(m, mk, ground) for mk in masks])
        bad = [mk for mk, w in zip(masks, wit) if w is None]
        rep.add("lift_independent", not bad, "%s %d sets%s" % (
            how, len(masks), "" if not bad else "; first failure %s" % sorted(m.names(bad[0]))))
    objs = [rng.weights(ground, -5, 5) for _ in range(trials)]

    def one(w):
        res = maximize_over_projection(ef, w)
        want = greedy_max_independent(m, w)
        got = res.value if res.status == "optimal" else res.status
        return got == want, got, want

    results = _map_parallel(one, objs, jobs)
    bad = [(w, got, want) for w, (ok, got, want) in zip(objs, results) if not ok]
    if trials:
        detail = "%d objectives" % trials
        if bad:
            w, got, want = bad[0]
            detail += "; %d mismatches, first w=%s lp=%s greedy=%s" % (
                len(bad), json.dumps([w[g] for g in ground]), got, want)
        rep.add("objectives", not bad, detail)
    if probes:
        circs = [int(c) for c in circuit_masks(m)]
        lifted = [c for c in circs if lift_feasible(ef, _chi(m, c, ground)) is not None]
        rep.add("circuit_probes", not lifted, "%d circuits%s" % (
            len(circs), "" if not lifted else "; %s lifts" % sorted(m.names(lifted[0]))))
    return rep


def check_mutations(ef: ExtendedFormulation, m: BinaryMatroid, rows: Sequence[str], trials: int = 50,
                    seed: int = 42, instance: str = "mutation") -> VerificationReport:
    """Each listed row, deleted on its own, must make the projection check fail."""
    rep = VerificationReport(instance, trials, seed)
    for r in rows:
        mutated = ef.with_lp(ef.lp.remove_row(r))
        sub = check_projection_equality(mutated, m, trials, seed, lifting=False, probes=True)
        caught = not sub.ok
        first = sub.failures()[0] if caught else ("", "", "")
        rep.add("drop[%s]" % r, caught, "caught by %s: %s" % (first[0], first[2]) if caught else "not caught")
    return rep


# ---------------------------------------------------------------------------
# 3-sums
# ---------------------------------------------------------------------------


def _to_sum_mask(src: BinaryMatroid, dst: BinaryMatroid, mask: int) -> int:
    out = 0
    for j in range(src.n):
        if (mask >> j) & 1:
            out |= 1 << dst.index[src.elements[j]]
    return out


def three_sum_bases(m1: BinaryMatroid, m2: BinaryMatroid) -> Tuple[BinaryMatroid, set]:
    """The sum and every set produced by the two basis constructions."""
    m, kind = delta_sum(m1, m2)
    t = [e for e in m1.elements if e in m2.index]
    built = set()
    parts = (m1, m2)
    bases = [[int(b) for b in basis_masks(p)] for p in parts]
    tm = [p.mask(t) for p in parts]
    for i in (0, 1):
        a, b = parts[i], parts[1 - i]
        ta, tb = tm[i], tm[1 - i]
        for ba in bases[i]:
            na = bin(ba & ta).count("1")
            if na == 0:
                for bb in bases[1 - i]:
                    if bin(bb & tb).count("1") == 2:
                        built.add(_to_sum_mask(a, m, ba) | _to_sum_mask(b, m, bb & ~tb))
            elif na == 1:
                t1 = a.names(ba & ta)
                (t1,) = tuple(t1)
                for bb in bases[1 - i]:
                    if bin(bb & tb).count("1") != 1:
                        continue
                    (t2,) = tuple(b.names(bb & tb))
                    if t2 == t1:
                        continue
                    (t3,) = [x for x in t if x not in (t1, t2)]
                    sa = (ba & ~(1 << a.index[t1])) | (1 << a.index[t3])
                    sb = (bb & ~(1 << b.index[t2])) | (1 << b.index[t3])
                    if a.rank_mask(sa) != a.rank or b.rank_mask(sb) != b.rank:
                        continue
                    built.add(_to_sum_mask(a, m, ba & ~ta) | _to_sum_mask(b, m, bb & ~tb))
    return m, built


def check_3sum_bases(m1: BinaryMatroid, m2: BinaryMatroid, instance: str = "3sum") -> VerificationReport:
    """Bases of the 3-sum are exactly the sets built by the two constructions."""
    rep = VerificationReport(instance)
    m, built = three_sum_bases(m1, m2)
    rep.add("rank", m.rank == m1.rank + m2.rank - 2, "rk=%d parts=%d,%d" % (m.rank, m1.rank, m2.rank))
    actual = {int(b) for b in basis_masks(m)}
    missing = actual - built
    extra = built - actual
    rep.add("bases_covered", not missing, "%d bases%s" % (
        len(actual), "" if not missing else "; unmatched %s" % sorted(m.names(min(missing)))))
    rep.add("constructions_are_bases", not extra, "%d built%s" % (
        len(built), "" if not extra else "; non-basis %s" % sorted(m.names(min(extra)))))
    return rep


def check_3sum_flats(m1: BinaryMatroid, m2: BinaryMatroid, instance: str = "3sum") -> VerificationReport:
    """Every connected flat of the sum falls in one of the three flat cases."""
    rep = VerificationReport(instance)
    m, _ = delta_sum(m1, m2)
    t = frozenset(e for e in m1.elements if e in m2.index)
    f1 = [(frozenset(f), r) for f, r in connected_flats(m1)]
    f2 = [(frozenset(f), r) for f, r in connected_flats(m2)]
    s1, s2 = {f for f, _ in f1}, {f for f, _ in f2}
    counts = {"i": 0, "ii": 0, "iii": 0}
    bad = None
    for f, r in connected_flats(m):
        f = frozenset(f)
        if (f <= set(m1.elements) and f in s1) or (f <= set(m2.elements) and f in s2):
            counts["i"] += 1
            continue
        hit = None
        for (a, ra), (b, rb) in itertools.product(f1, f2):
            if a & t != b & t or (a ^ b) != f:
                continue
            k = len(a & t)
            if k == 1 and r == ra + rb - 1:
                hit = "ii"
            elif k == 3 and r == ra + rb - 2:
                hit = "iii"
            if hit:
                break
        if hit is None:
            bad = f
            break
        counts[hit] += 1
    rep.add("connected_flats", bad is None, "cases i=%(i)d ii=%(ii)d iii=%(iii)d" % counts
            + ("" if bad is None else "; unmatched %s" % sorted(bad)))
    return rep


# ---------------------------------------------------------------------------
# pair formulations
# ---------------------------------------------------------------------------


def check_pair_sandwich(ef_r: ExtendedFormulation, m0: BinaryMatroid, trials: int = 100, seed: int = 42,
                        instance: str = "pair") -> VerificationReport:
    """Pair points lift into R; every choice-projection of R stays in P(M0)."""
    from .formulations.pairs import dprime, pair_vertices, prime

    rep = VerificationReport(instance, trials, seed)
    tris = [tuple(t) for t in ef_r.tags["triangles"]]
    e0 = list(ef_r.tags["E0"])
    pts = pair_vertices(m0, tris)
    wit = lift_many(ef_r, [[p[g] for g in ef_r.ground] for p in pts])
    bad = [p for p, w in zip(pts, wit) if w is None]
    rep.add("pair_vertices_lift", not bad, "%d points%s" % (
        len(pts), "" if not bad else "; first failure %s" % sorted(g for g, v in bad[0].items() if v)))
    rng = XorShift64(seed)
    worst = None
    n = 0
    for choice in itertools.product((0, 1), repeat=len(tris)):
        for _ in range(trials):
            w = rng.weights(m0.elements, -5, 5)
            wr = {e: w[e] for e in e0}
            for tri, ch in zip(tris, choice):
                for t in tri:
                    wr[dprime(t) if ch else prime(t)] = w[t]
            got = maximize_over_projection(ef_r, wr).value
            want = greedy_max_independent(m0, w)
            n += 1
            if got is None or got > want:
                worst = (choice, w, got, want)
                break
        if worst:
            break
    rep.add("choice_projections_dominated", worst is None, "%d choices x %d objectives%s" % (
        2 ** len(tris), trials, "" if worst is None else "; choice=%s lp=%s greedy=%s" % (
            worst[0], worst[2], worst[3])))
    return rep


# ---------------------------------------------------------------------------
# circuit dominants and size arithmetic
# ---------------------------------------------------------------------------


def check_circuit_dominant(ef: ExtendedFormulation, m: BinaryMatroid, trials: int = 100, seed: int = 42,
                           pieces: Optional[Mapping[str, ExtendedFormulation]] = None,
                           instance: str = "circuit") -> VerificationReport:
    """LP minima over the dominant (and each piece) equal circuit enumeration."""
    rep = VerificationReport(instance, trials, seed)
    rng = XorShift64(seed)
    ground = list(ef.ground)
    bad = None
    for _ in range(trials):
        w = rng.weights(ground, 0, 10)
        got = maximize_over_projection(ef, w, sense="min").value
        want = min_weight_circuit(m, w)
        if got != want:
            bad = (w, got, want)
            break
    rep.add("union_minimum", bad is None, "%d objectives%s" % (
        trials, "" if bad is None else "; w=%s lp=%s enum=%s" % (json.dumps([bad[0][g] for g in ground]),
                                                                 bad[1], bad[2])))
    zero = maximize_over_projection(ef, {g: 0 for g in ground}, sense="min").value
    rep.add("zero_weight", zero == 0, "min=%s" % zero)
    if pieces:
        bad = None
        prng = XorShift64(seed + 1)
        for e, pe in pieces.items():
            for _ in range(max(1, trials // max(1, len(pieces)))):
                w = prng.weights(ground, 0, 10)
                got = maximize_over_projection(pe, w, sense="min").value
                want = min_weight_circuit(m, w, through=e)
                if got != want:
                    bad = (e, got, want)
                    break
            if bad:
                break
        rep.add("piece_minima", bad is None, "%d pieces%s" % (
            len(pieces), "" if bad is None else "; piece %s lp=%s enum=%s" % bad))
    circs = [int(c) for c in circuit_masks(m)]
    nolift = [c for c in circs if lift_feasible(ef, _chi(m, c, ground)) is None]
    rep.add("circuits_lift", not nolift, "%d circuits%s" % (
        len(circs), "" if not nolift else "; %s does not lift" % sorted(m.names(nolift[0]))))
    return rep


def check_size_bounds(ef: ExtendedFormulation, instance: str = "sizes", m: Optional[BinaryMatroid] = None
                      ) -> VerificationReport:
    """Concrete size arithmetic recomputed from the emitted LP.

    Star levels of the pipeline: total = count(R) + sum of the P'/P'' counts,
    and total <= c1 |E(M0)|^2 + 16 sum count(leaf) with c1 = count(R) /
    |E(M0)|^2.  Circuit dominants: one piece per non-coloop element and the
    measured constant ``ineqs / |E|^2``.
    """
    rep = VerificationReport(instance)
    v, ineq, eq = ef.size_report()
    star = ef.tags.get("star")
    if star:
        additive = star["count_R"] + sum(star["count_pairs"])
        rep.add("additive", ineq == additive, "count=%d R=%d pairs=%s" % (ineq, star["count_R"],
                                                                          star["count_pairs"]))
        rep.add("star_bound", ineq <= star["bound"] + 1e-9,
                "count=%d c1=%.4f |E(M0)|=%d leaves=%s bound=%.1f" % (
                    ineq, star["c1"], star["center_size"], star["count_leaves"], star["bound"]))
    if ef.tags.get("kind") == "circuit-dominant":
        n = len(ef.ground)
        if m is not None:
            full = (1 << m.n) - 1
            expect = sum(1 for j in range(m.n) if m.rank_mask(full & ~(1 << j)) == m.rank)
            rep.add("pieces", ef.tags["pieces"] == expect, "pieces=%d elements=%d" % (ef.tags["pieces"], n))
        rep.add("quadratic", True, "ineqs=%d |E|=%d C=%.4f" % (ineq, n, ineq / float(n * n)))
    rep.add("counts", True, "vars=%d ineqs=%d eqs=%d" % (v, ineq, eq))
    return rep


def independent_vectors(m: BinaryMatroid, ground: Sequence[str]) -> np.ndarray:
    """0/1 matrix of all independent sets in ``ground`` order (for tests)."""
    masks = independent_masks(m)
    idx = np.array([m.index[g] for g in ground], dtype=np.uint64)
    return ((masks[:, None] >> idx[None, :]) & np.uint64(1)).astype(np.int64)
