"""Search for zero loci with trivial canonical bundle over exceptional G/P.

A candidate pair (G/P_k, F) for a d-fold must satisfy rank(F) = dim - d and
dex(F) = Fano index exactly; the summand pool is every nonzero G-dominant
weight within those caps.  A whole space is rejected up front when even its
best dex/rank ratio exceeds iota/(dim - d), which is what kills all the E8
cases without enumerating multisets.  Bundles with a summand on the curated
exception list (nowhere-vanishing general sections) are excluded and the
reason recorded; the numbers themselves cannot see such geometric facts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import hodge
from . import repcalc as rc
from .homspace import HomSpace, dex, dimension, fano_index, parse_homspace
from .koszul import BundleSum, ZeroLocus
from .rootdata import RootSystem, Weight


@dataclass(frozen=True)
class ExceptionEntry:
    """Curated exclusion: a summand whose general sections vanish nowhere."""

    space: str
    weight: Weight
    reason: str
    citation: str


# The spinor-type bundle on the Cayley plane is the one known case on an
# exceptional space: its general sections are nowhere zero, so no candidate
# containing it defines a nonempty zero locus of the expected dimension.
EXCEPTION_LIST: Tuple[ExceptionEntry, ...] = (
    ExceptionEntry(
        space="E6/P1",
        weight=(0, 0, 0, 0, 0, 1),
        reason="a general global section of this rank-10 spinor-type bundle "
        "on the Cayley plane vanishes nowhere",
        citation="nowhere-vanishing sections of the spinor bundle on the Cayley plane",
    ),
)


def exceptional_spaces() -> List[HomSpace]:
    """The 25 exceptional G/P_k of Picard number one, up to the E6 symmetry.

    E6/P5 and E6/P6 are projectively equivalent to E6/P3 and E6/P1 through
    the outer automorphism and are therefore not listed separately.
    """
    names = (
        ["E6/P%d" % k for k in range(1, 5)]
        + ["E7/P%d" % k for k in range(1, 8)]
        + ["E8/P%d" % k for k in range(1, 9)]
        + ["F4/P%d" % k for k in range(1, 5)]
        + ["G2/P%d" % k for k in range(1, 3)]
    )
    return [parse_homspace(n) for n in names]


def admissible_summands(
    X: HomSpace, rank_cap: int, dex_cap: int
) -> List[Tuple[Weight, int, int]]:
    """All nonzero G-dominant weights with rank <= rank_cap, dex <= dex_cap.

    The Levi part is enumerated by coordinate recursion (rank is strictly
    monotone in every coordinate, so each position is cut off as soon as the
    cap is exceeded); twists along w_k then raise dex by rank per step.
    """
    if rank_cap < 1 or dex_cap < 1:
        return []
    r = X.rs.rank
    levi_positions = [i - 1 for i in range(1, r + 1) if i != X.k]
    out: List[Tuple[Weight, int, int]] = []

    def recurse(pos: int, coords: List[int]):
        lam = tuple(coords)
        rank = rc.weyl_dim(X.levi, lam)
        if rank > rank_cap:
            return
        if pos == len(levi_positions):
            base_dex = dex(X, lam) if lam != (0,) * r else 0
            t0 = 0 if any(coords) else 1
            t = t0
            while base_dex + t * rank <= dex_cap:
                w = list(coords)
                w[X.k - 1] = t
                out.append((tuple(w), rank, base_dex + t * rank))
                t += 1
            return
        i = levi_positions[pos]
        c = 0
        while True:
            coords[i] = c
            probe = tuple(coords)
            if rc.weyl_dim(X.levi, probe) > rank_cap:
                coords[i] = 0
                return
            recurse(pos + 1, coords)
            c += 1

    recurse(0, [0] * r)
    return sorted(out)


@dataclass(frozen=True)
class CandidatePair:
    """A numeric solution of rank(F) = dim - d, dex(F) = iota."""

    space: HomSpace
    weights: Tuple[Tuple[Weight, int], ...]
    d: int

    def bundle(self) -> BundleSum:
        return BundleSum.make(self.space, dict(self.weights))

    def zero_locus(self) -> ZeroLocus:
        return ZeroLocus(self.space, self.bundle())

    def orbit_tag(self) -> str:
        """Canonical form under the E6 diagram automorphism (1<->6, 3<->5).

        On the automorphism-fixed spaces (k = 2, 4) the automorphism acts
        summand by summand and identifies E_{w1} with E_{w6} as bundles, so
        each summand is canonicalised separately; on the other spaces the
        whole pair (space, bundle) maps to its partner space.
        """
        if self.space.rs != RootSystem("E", 6):
            return repr((str(self.space), self.weights))
        perm = (5, 1, 4, 3, 2, 0)  # image positions of w1..w6

        def sigma(lam: Weight) -> Weight:
            return tuple(lam[perm[i]] for i in range(6))

        k2 = perm[self.space.k - 1] + 1
        if k2 == self.space.k:
            canon: Dict[Weight, int] = {}
            for lam, m in self.weights:
                key = min(lam, sigma(lam))
                canon[key] = canon.get(key, 0) + m
            return repr((str(self.space), tuple(sorted(canon.items()))))
        mapped: Dict[Weight, int] = {}
        for lam, m in self.weights:
            mapped[sigma(lam)] = mapped.get(sigma(lam), 0) + m
        variants = [
            (str(self.space), self.weights),
            (f"E6/P{k2}", tuple(sorted(mapped.items()))),
        ]
        return repr(min(variants))


@dataclass
class ExclusionRecord:
    space: str
    weights: Tuple[Tuple[Weight, int], ...]
    reason: str
    citation: str


@dataclass
class SpaceSearch:
    space: HomSpace
    candidates: List[CandidatePair]
    excluded: List[ExclusionRecord]
    ratio_pruned: bool
    note: str = ""


def enumerate_candidates(
    X: HomSpace,
    d: int,
    use_ratio: bool = True,
    use_exceptions: bool = True,
) -> SpaceSearch:
    """All multisets of admissible summands with the exact rank/dex budget."""
    frank = dimension(X) - d
    iota = fano_index(X)
    if frank < 1:
        return SpaceSearch(X, [], [], False, note="no positive rank budget")
    pool = admissible_summands(X, frank, iota)
    if use_ratio and pool:
        target = Fraction(iota, frank)
        if all(Fraction(dx, rk) > target for _, rk, dx in pool):
            return SpaceSearch(
                X, [], [], True,
                note=f"every summand has dex/rank > {iota}/{frank}",
            )
    if not pool:
        return SpaceSearch(X, [], [], False, note="no admissible summands")

    exceptions = {
        e.weight: e for e in EXCEPTION_LIST if e.space == str(X)
    } if use_exceptions else {}

    found: List[Tuple[Tuple[Weight, int], ...]] = []

    def recurse(idx: int, rank_left: int, dex_left: int, chosen: List[Tuple[Weight, int]]):
        if rank_left == 0 and dex_left == 0:
            found.append(tuple(chosen))
            return
        if idx == len(pool) or rank_left <= 0 or dex_left <= 0:
            return
        lam, rk, dx = pool[idx]
        max_copies = min(rank_left // rk, dex_left // dx)
        for copies in range(max_copies, -1, -1):
            if copies:
                chosen.append((lam, copies))
            recurse(idx + 1, rank_left - copies * rk, dex_left - copies * dx, chosen)
            if copies:
                chosen.pop()

    recurse(0, frank, iota, [])
    candidates: List[CandidatePair] = []
    excluded: List[ExclusionRecord] = []
    for weights in sorted(found, key=lambda ws: tuple(sorted(ws, reverse=True))):
        weights = tuple(sorted(weights))
        hit = [exceptions[lam] for lam, _ in weights if lam in exceptions]
        if hit:
            excluded.append(
                ExclusionRecord(str(X), weights, hit[0].reason, hit[0].citation)
            )
        else:
            candidates.append(CandidatePair(X, weights, d))
    return SpaceSearch(X, candidates, excluded, False)


@dataclass
class ClassifyRow:
    space: str
    dim: int
    iota: int
    bundle: str
    weights: Tuple[Tuple[Weight, int], ...]
    d: int
    orbit_tag: str
    hodge: Dict[str, Optional[int]] = field(default_factory=dict)
    status: str = "exact"
    note: str = ""


def _hodge_fields(Z: ZeroLocus) -> Tuple[Dict[str, Optional[int]], str]:
    row0 = hodge.h0_row(Z)
    row1 = hodge.h1_row(Z, row0)
    status = "exact"
    out: Dict[str, Optional[int]] = {}
    if Z.d == 4:
        out["h02"] = row0.values[2]
        out["h11"] = row1.values[1]
        out["h13"] = row1.values[3]
        if row0.status != "exact" or row1.status != "exact":
            status = "ambiguous"
    else:
        out["h11"] = row1.values[1]
        out["h12"] = row1.values[2]
        if row0.status == "exact" and row1.status == "exact":
            dia = hodge.assemble(Z)
            out["chi"] = dia.euler_characteristic()
        else:
            out["chi"] = None
            status = "ambiguous"
    return out, status


@dataclass
class ClassifyReport:
    d: int
    rows: List[ClassifyRow]
    excluded: List[ExclusionRecord]
    pruned: List[Tuple[str, str]]

    def dedup_rows(self) -> List[ClassifyRow]:
        seen = {}
        for row in self.rows:
            seen.setdefault(row.orbit_tag, row)
        return list(seen.values())

    def pairs(self) -> List[Tuple[str, Tuple[Tuple[Weight, int], ...]]]:
        return [(r.space, r.weights) for r in self.rows]


def classify(
    spaces: Sequence[HomSpace],
    d: int,
    with_hodge: bool = True,
    use_ratio: bool = True,
    use_exceptions: bool = True,
) -> ClassifyReport:
    rows: List[ClassifyRow] = []
    excluded: List[ExclusionRecord] = []
    pruned: List[Tuple[str, str]] = []
    for X in spaces:
        search = enumerate_candidates(X, d, use_ratio, use_exceptions)
        if search.ratio_pruned:
            pruned.append((str(X), search.note))
        excluded.extend(search.excluded)
        for cand in search.candidates:
            Z = cand.zero_locus()
            note = ""
            if X.rs.family in "ABCD":
                note = "classical family: not cross-validated against the classical classification"
            if with_hodge:
                fields, status = _hodge_fields(Z)
            else:
                fields, status = {}, "exact"
            rows.append(
                ClassifyRow(
                    space=str(X),
                    dim=dimension(X),
                    iota=fano_index(X),
                    bundle=str(cand.bundle()),
                    weights=cand.weights,
                    d=d,
                    orbit_tag=cand.orbit_tag(),
                    hodge=fields,
                    status=status,
                    note=note,
                )
            )
    return ClassifyReport(d, rows, excluded, pruned)


def classify_exceptional(
    d: int,
    with_hodge: bool = True,
    use_ratio: bool = True,
    use_exceptions: bool = True,
) -> ClassifyReport:
    """Reproduce the 4-fold (d=4) and 3-fold (d=3) tables over all 25 spaces."""
    if d not in (3, 4):
        raise ValueError("the classification search is for d in {3, 4}")
    return classify(exceptional_spaces(), d, with_hodge, use_ratio, use_exceptions)
