"""Borel-Weil-Bott cohomology of equivariant bundles on G/P_k.

For an irreducible bundle E_lambda the recipe is mechanical: if lambda+rho
lies on a wall, every cohomology group vanishes; otherwise exactly one
survives, in degree ell(w), with dominant label w(lambda+rho)-rho.  The
interesting machinery here is for *filtered* bundles (the cotangent bundle
and friends): their graded pieces are completely reducible, RegInd collects
the Bott indices of the regular pieces, and exact dimensions are certified
whenever every connecting map of the long exact sequences is forced to
vanish by a zero on one side.  Anything short of that certificate is
reported as per-degree bounds, never silently guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import repcalc as rc
from .homspace import HomSpace, dimension
from .rootdata import Weight, add, rho, to_dominant_chamber


class NotPDominantError(ValueError):
    pass


def _check_p_dominant(X: HomSpace, lam: Weight):
    if not rc.is_context_dominant(X.levi, lam):
        raise NotPDominantError(f"{lam} is not P{X.k}-dominant on {X}")


@dataclass
class CohomologyTable:
    """Cohomology of a bundle on X: degree -> {dominant G-weight: multiplicity}.

    ``exact`` tables carry honest multiplicities; when the filtration
    certificate fails the table degenerates to per-degree dimension bounds
    (lower, upper) while ``entries`` keeps the upper-bound multiset.
    """

    X: HomSpace
    entries: Dict[int, Dict[Weight, int]] = field(default_factory=dict)
    exact: bool = True
    bounds: Dict[int, Tuple[int, int]] = field(default_factory=dict)

    def add_entry(self, q: int, hw: Weight, mult: int = 1):
        row = self.entries.setdefault(q, {})
        row[hw] = row.get(hw, 0) + mult

    def degree_dim(self, q: int) -> int:
        group = self.X.group
        return sum(
            m * rc.weyl_dim(group, hw) for hw, m in self.entries.get(q, {}).items()
        )

    def dims(self) -> Dict[int, int]:
        return {q: self.degree_dim(q) for q in sorted(self.entries) if self.entries[q]}

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * d for q, d in self.dims().items())

    def merge(self, other: "CohomologyTable"):
        assert self.X == other.X
        for q, row in other.entries.items():
            for hw, m in row.items():
                self.add_entry(q, hw, m)
        self.exact = self.exact and other.exact

    def is_zero(self) -> bool:
        return all(not row for row in self.entries.values())


def bwb(X: HomSpace, lam: Weight) -> CohomologyTable:
    """Cohomology of the irreducible bundle E_lambda by Borel-Weil-Bott."""
    _check_p_dominant(X, lam)
    table = CohomologyTable(X)
    res = to_dominant_chamber(X.rs, add(lam, rho(X.rs)))
    if res.singular:
        return table
    hw = tuple(a - b for a, b in zip(res.dominant, rho(X.rs)))
    table.add_entry(res.length, hw)
    return table


def bott_index(X: HomSpace, lam: Weight) -> Optional[int]:
    """Length of the climbing word for lambda+rho, or None when singular."""
    res = to_dominant_chamber(X.rs, add(lam, rho(X.rs)))
    return None if res.singular else res.length


def bundle_cohomology(X: HomSpace, bundle: rc.IrrDecomp) -> CohomologyTable:
    """Cohomology of a completely reducible bundle: direct sums are exact."""
    table = CohomologyTable(X)
    for lam, mult in sorted(bundle.items()):
        piece = bwb(X, lam)
        for q, row in piece.entries.items():
            for hw, m in row.items():
                table.add_entry(q, hw, m * mult)
    return table


@dataclass(frozen=True)
class FilteredBundle:
    """Equivariant bundle given by its graded pieces, subbundle end first."""

    gradeds: Tuple[Tuple[Tuple[Weight, int], ...], ...]

    @staticmethod
    def from_decomps(decomps: Sequence[rc.IrrDecomp]) -> "FilteredBundle":
        if not decomps:
            raise ValueError("a filtered bundle needs at least one graded piece")
        return FilteredBundle(tuple(tuple(sorted(d.items())) for d in decomps))

    def decomps(self) -> List[rc.IrrDecomp]:
        return [dict(g) for g in self.gradeds]

    def twist(self, X: HomSpace, t: int) -> "FilteredBundle":
        return FilteredBundle.from_decomps(
            [{X.twist(lam, t): m for lam, m in g} for g in self.gradeds]
        )

    def total_decomp(self) -> rc.IrrDecomp:
        out: rc.IrrDecomp = {}
        for g in self.gradeds:
            for lam, m in g:
                out[lam] = out.get(lam, 0) + m
        return out


def reg_ind(X: HomSpace, bundle: FilteredBundle) -> Set[int]:
    """Bott indices of the regular-shifted graded constituents."""
    out: Set[int] = set()
    for graded in bundle.gradeds:
        for lam, _ in graded:
            idx = bott_index(X, lam)
            if idx is not None:
                out.add(idx)
    return out


def filtered_cohomology(X: HomSpace, bundle: FilteredBundle) -> CohomologyTable:
    """Cohomology of a filtered bundle through its long exact sequences.

    Walking the filtration from the deep end, the accumulated cohomology is
    exact as long as, at every step and every degree q, either the fresh
    graded piece has H^q = 0 or the accumulated bundle has H^{q+1} = 0; that
    kills every connecting map.  Otherwise the result degrades to bounds
    (lower 0, upper the sum of the graded dimensions per degree).
    """
    acc = CohomologyTable(X)
    certified = True
    for graded in bundle.gradeds:
        piece = bundle_cohomology(X, dict(graded))
        if certified:
            for q in piece.dims():
                if acc.degree_dim(q + 1) != 0:
                    certified = False
                    break
        acc.merge(piece)
    if certified:
        return acc
    acc.exact = False
    acc.bounds = {q: (0, d) for q, d in acc.dims().items()}
    return acc


def serre_dual_weight(X: HomSpace, lam: Weight) -> Weight:
    """Highest weight of K_X (x) E_lambda^*, the Serre-duality partner."""
    from .homspace import fano_index

    dual = rc.dual_highest_weight(X.levi, lam)
    return X.twist(dual, -fano_index(X))
