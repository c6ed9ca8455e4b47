"""Zero loci of general sections: Koszul resolutions and restricted cohomology.

For Z the zero locus of a general section of a completely reducible bundle F
of rank f on X, the Koszul complex resolves O_Z by the wedge powers of F^*.
Tensoring with any bundle E and taking hypercohomology computes H^*(Z, E|_Z)
purely from Borel-Weil-Bott data.  Degeneration of the spectral sequence is
never assumed: the bookkeeping solver below cancels entries only where the
abutment forces it (total degrees outside 0..dim Z must die) and certifies
exact dimensions only when no differential between surviving entries can be
nonzero.  Anything else is reported as bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from . import cache as _cache
from . import repcalc as rc
from .bwbcohom import CohomologyTable, FilteredBundle, bundle_cohomology
from .homspace import HomSpace, dex, dimension, fano_index
from .rootdata import Weight


class EmptyLocusError(ValueError):
    """A trivial summand has nowhere-vanishing general sections."""


class AmbiguousCohomologyError(RuntimeError):
    """Raised when a caller insists on exact values the certificates deny."""


@dataclass(frozen=True)
class BundleSum:
    """Completely reducible equivariant bundle: multiset of P-dominant weights.

    Twists are absorbed into the weights: E_lambda(t) is stored as
    lambda + t*w_k.
    """

    X: HomSpace
    summands: Tuple[Tuple[Weight, int], ...]

    @staticmethod
    def make(X: HomSpace, weights: Dict[Weight, int]) -> "BundleSum":
        for lam, mult in weights.items():
            if mult <= 0:
                raise ValueError("summand multiplicities must be positive")
            if not rc.is_context_dominant(X.levi, lam):
                raise ValueError(f"summand {lam} is not P{X.k}-dominant")
        return BundleSum(X, tuple(sorted(weights.items())))

    def as_dict(self) -> rc.IrrDecomp:
        return dict(self.summands)

    @property
    def rank(self) -> int:
        return sum(m * rc.weyl_dim(self.X.levi, lam) for lam, m in self.summands)

    @property
    def dex(self) -> int:
        return sum(m * dex(self.X, lam) for lam, m in self.summands)

    def has_trivial_summand(self) -> bool:
        zero = (0,) * self.X.rs.rank
        return any(lam == zero for lam, _ in self.summands)

    def dual(self) -> "BundleSum":
        out: Dict[Weight, int] = {}
        for lam, m in self.summands:
            d = rc.dual_highest_weight(self.X.levi, lam)
            out[d] = out.get(d, 0) + m
        return BundleSum.make(self.X, out)

    def char(self) -> rc.PackedChar:
        out: rc.PackedChar = {}
        for lam, m in self.summands:
            for v, mult in rc.char_irr(self.X.levi, lam).items():
                out[v] = out.get(v, 0) + m * mult
        return out

    def __str__(self):
        parts = []
        for lam, m in self.summands:
            t = lam[self.X.k - 1]
            levi = [(i + 1, c) for i, c in enumerate(lam) if c and i != self.X.k - 1]
            if not levi:
                s = f"O({t})"
            else:
                s = "w" + "".join(str(i) * c for i, c in levi)
                if t:
                    s += f"({t})"
            parts.append(s + (f"^{m}" if m > 1 else ""))
        return " + ".join(parts)


@dataclass(frozen=True)
class ZeroLocus:
    """Zero locus of a general global section of ``bundle`` inside ``space``."""

    space: HomSpace
    bundle: BundleSum

    def __post_init__(self):
        if self.bundle.X != self.space:
            raise ValueError("bundle lives on a different space")
        if self.d < 0:
            raise ValueError("bundle rank exceeds the ambient dimension")

    @property
    def d(self) -> int:
        return dimension(self.space) - self.bundle.rank

    def is_canonical_trivial(self) -> bool:
        return self.bundle.dex == fano_index(self.space)


@dataclass
class KoszulPage:
    """Wedge powers of F^* and their Borel-Weil-Bott cohomology."""

    Z: ZeroLocus
    terms: Dict[int, rc.IrrDecomp]
    tables: Dict[int, CohomologyTable]

    def cohomology_dims(self) -> Dict[Tuple[int, int], int]:
        out = {}
        for p, table in self.tables.items():
            for q, dim in table.dims().items():
                out[(p, q)] = dim
        return out


def wedge_dual_chars(Z: ZeroLocus) -> List[rc.PackedChar]:
    """Characters of Lambda^p F^* for p = 0..rank(F)."""

    def compute():
        X = Z.space
        rank = X.rs.rank
        ctx = X.levi
        total = Z.bundle.rank
        tables: List[List[rc.PackedChar]] = []
        for lam, mult in Z.bundle.dual().summands:
            piece_char = rc.char_irr(ctx, lam)
            if mult > 1:
                piece_char = {v: m * mult for v, m in piece_char.items()}
            piece_rank = rc.weyl_dim(ctx, lam) * mult
            tables.append(rc.exterior_char_table(piece_char, piece_rank, rank))
        acc = [{rc.pack((0,) * rank): 1}]
        for tab in tables:
            new: List[rc.PackedChar] = []
            for p in range(min(total, len(acc) - 1 + len(tab) - 1) + 1):
                term: rc.PackedChar = {}
                for a in range(max(0, p - len(tab) + 1), min(p, len(acc) - 1) + 1):
                    piece = rc.conv(acc[a], tab[p - a], rank)
                    for v, m in piece.items():
                        term[v] = term.get(v, 0) + m
                new.append({v: m for v, m in term.items() if m})
            acc = new
        assert len(acc) == total + 1
        return acc

    return _cache.memo("wedge_chars", (str(Z.space), Z.bundle.summands), compute)


def exterior_dual_powers(Z: ZeroLocus) -> KoszulPage:
    """Decomposed wedge powers Lambda^p F^* with their cohomology tables."""
    X = Z.space
    chars = wedge_dual_chars(Z)

    def compute():
        return [rc.decompose_character(X.levi, ch) for ch in chars]

    decomps = _cache.memo("wedge_decomps", (str(X), Z.bundle.summands), compute)
    terms = {p: decomps[p] for p in range(len(decomps))}
    # determinant consistency: the Koszul tail is the line O(-dex F)
    top = terms[Z.bundle.rank]
    assert len(top) == 1 and next(iter(top.values())) == 1
    top_weight = next(iter(top))
    assert top_weight[X.k - 1] == -Z.bundle.dex
    tables = {p: bundle_cohomology(X, dec) for p, dec in terms.items()}
    return KoszulPage(Z, terms, tables)


# -- hypercohomology bookkeeping ---------------------------------------------


@dataclass
class ZCohomology:
    """H^q(Z, E|_Z) dimensions for q = 0..d, with an exactness status.

    ``dims[q]`` is None for a degree the degree-bookkeeping could not pin
    down; ``bounds`` then carries (lower, upper) for that degree.
    """

    d: int
    dims: List[Optional[int]]
    status: str = "exact"  # "exact" | "ambiguous"
    bounds: Dict[int, Tuple[int, int]] = field(default_factory=dict)

    def dim(self, q: int) -> int:
        if q < 0 or q > self.d:
            return 0
        v = self.dims[q]
        if v is None:
            raise AmbiguousCohomologyError(f"degree {q} only bounded: {self.bounds.get(q)}")
        return v

    def known(self, q: int) -> bool:
        return q < 0 or q > self.d or self.dims[q] is not None


_INF = 10**30


def _spectral_solve(entries: Dict[Tuple[int, int, int], int], d: int) -> ZCohomology:
    """Cancel E_1 entries forced by the abutment and certify what survives.

    ``entries[(p, j, q)]`` is a graded contribution to H^q of the p-th
    Koszul term, with j the filtration position of the restricted bundle
    counted from the subbundle end (0 for completely reducible bundles).
    The total complex is filtered by (p, j) lexicographically, so every
    possible differential raises the total degree n = q - p by one and
    strictly lowers (p, j); entries with n outside 0..dim Z must die.

    Per connected component of the possible-differential graph, the total
    rank y_n of all differentials between degrees n and n+1 obeys
    y_{n-1} + y_n = E(n) at illegal degrees and <= E(n) at legal ones.
    Interval propagation over these aggregates certifies each surviving
    degree whose value is independent of the undetermined ranks; anything
    else is reported as per-degree bounds.  Dropping the per-entry rank
    caps only enlarges the feasible set, so a certified value is sound.
    """
    keys = [k for k, v in entries.items() if v]

    def connected(a, b) -> bool:
        # orient as source -> target with deg(target) = deg(source) + 1;
        # a differential must strictly lower the filtration pair (p, j)
        na, nb = a[2] - a[0], b[2] - b[0]
        if na + 1 == nb:
            source, target = a, b
        elif nb + 1 == na:
            source, target = b, a
        else:
            return False
        return (target[0], target[1]) < (source[0], source[1])

    # connected components
    comp_of: Dict[Tuple[int, int, int], int] = {}
    for k in keys:
        comp_of[k] = -1
    cid = 0
    for k in keys:
        if comp_of[k] != -1:
            continue
        stack = [k]
        comp_of[k] = cid
        while stack:
            cur = stack.pop()
            for other in keys:
                if comp_of[other] == -1 and connected(cur, other):
                    comp_of[other] = cid
                    stack.append(other)
        cid += 1

    total: Dict[int, Tuple[int, int]] = {}  # degree -> (lo, hi) of survivors

    def add_interval(n, lo, hi):
        a, b = total.get(n, (0, 0))
        total[n] = (a + lo, b + hi)

    for c in range(cid):
        members = [k for k in keys if comp_of[k] == c]
        E: Dict[int, int] = {}
        for k in members:
            n = k[2] - k[0]
            E[n] = E.get(n, 0) + entries[k]
        linked = set()
        for a in members:
            for b in members:
                na, nb = a[2] - a[0], b[2] - b[0]
                if na + 1 == nb and connected(a, b):
                    linked.add(na)
        # y[n]: total differential rank between degrees n and n+1
        y: Dict[int, Tuple[int, int]] = {
            n: ((0, _INF) if n in linked else (0, 0)) for n in set(E) | {m - 1 for m in E}
        }
        changed = True
        while changed:
            changed = False
            for n, e in E.items():
                illegal = not 0 <= n <= d
                l0, h0 = y.get(n - 1, (0, 0))
                l1, h1 = y.get(n, (0, 0))
                # y_{n-1} + y_n == e at illegal degrees, <= e at legal ones
                new0 = (max(l0, e - h1) if illegal else l0, min(h0, e - l1))
                new1 = (max(l1, e - h0) if illegal else l1, min(h1, e - l0))
                if new0[0] > new0[1] or new1[0] > new1[1]:
                    raise AssertionError("inconsistent spectral bookkeeping")
                if (n - 1) in y and new0 != (l0, h0):
                    y[n - 1] = new0
                    changed = True
                if n in y and new1 != (l1, h1):
                    y[n] = new1
                    changed = True
        for n, e in E.items():
            l0, h0 = y.get(n - 1, (0, 0))
            l1, h1 = y.get(n, (0, 0))
            if not 0 <= n <= d:
                if l0 + l1 > e or h0 + h1 < e:
                    raise AssertionError("illegal degree cannot be cancelled")
                continue
            add_interval(n, max(0, e - h0 - h1), e - l0 - l1)

    dims: List[Optional[int]] = [0] * (d + 1)
    bounds: Dict[int, Tuple[int, int]] = {}
    status = "exact"
    for n, (lo, hi) in sorted(total.items()):
        if lo == hi:
            dims[n] = lo
        else:
            dims[n] = None
            bounds[n] = (lo, hi)
            status = "ambiguous"
    return ZCohomology(d, dims, status, bounds)


RestrictableBundle = Union[BundleSum, FilteredBundle, None]


def _graded_chars(Z: ZeroLocus, E: RestrictableBundle) -> List[rc.PackedChar]:
    """Characters of the graded pieces of E, subbundle end first."""
    X = Z.space
    if E is None:
        return [{rc.pack((0,) * X.rs.rank): 1}]
    if isinstance(E, BundleSum):
        return [E.char()]
    return [rc.char_of_decomp(X.levi, dict(g)) for g in E.gradeds]


def restricted_cohomology(Z: ZeroLocus, E: RestrictableBundle) -> ZCohomology:
    """H^q(Z, E|_Z) via the Koszul resolution tensored with E.

    ``E`` may be a completely reducible BundleSum, a FilteredBundle (its
    gradeds enter as extra filtration levels of the bookkeeping), or None
    for the structure sheaf.
    """
    X = Z.space
    rank = X.rs.rank
    f = Z.bundle.rank
    wedges = wedge_dual_chars(Z)
    gradeds = _graded_chars(Z, E)
    entries: Dict[Tuple[int, int, int], int] = {}
    for p in range(f + 1):
        for j, gchar in enumerate(gradeds):
            prod = rc.conv(wedges[p], gchar, rank)
            dec = rc.decompose_character(X.levi, prod)
            for q, v in bundle_cohomology(X, dec).dims().items():
                if v:
                    entries[(p, j, q)] = entries.get((p, j, q), 0) + v
    return _spectral_solve(entries, Z.d)


def structure_cohomology(Z: ZeroLocus) -> ZCohomology:
    """h^q(Z, O_Z) for q = 0..d from the Koszul resolution itself."""
    if Z.bundle.has_trivial_summand():
        raise EmptyLocusError(
            "a trivial summand has constant nonzero general sections; the locus is empty"
        )
    return restricted_cohomology(Z, None)
