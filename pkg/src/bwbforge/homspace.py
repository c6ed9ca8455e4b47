"""Geometry of rational homogeneous varieties G/P_k of Picard number one.

The variety is encoded by its ambient root system and the Bourbaki index k
of the omitted simple node.  Dimension, Fano index and the graded pieces of
the cotangent bundle are all read off the set of positive roots whose
coefficient at alpha_k is positive; the ``dex`` invariant of an irreducible
bundle E_lambda is the k-th coordinate of the sum of all weights of the
underlying Levi module, so that det(E_lambda) = O(dex).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from . import repcalc as rc
from .rootdata import (
    RootSystem,
    Weight,
    parse_root_system,
    positive_roots,
    root_to_weight,
)


@dataclass(frozen=True)
class HomSpace:
    """G/P_k for the k-th maximal parabolic of a simple group."""

    rs: RootSystem
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.rs.rank:
            raise ValueError(f"parabolic index {self.k} out of range for {self.rs}")

    def __str__(self):
        return f"{self.rs}/P{self.k}"

    @property
    def levi(self) -> rc.Context:
        return rc.levi_context(self.rs, self.k)

    @property
    def group(self) -> rc.Context:
        return rc.full_context(self.rs)

    def fundamental(self, i: int) -> Weight:
        return tuple(1 if m == i - 1 else 0 for m in range(self.rs.rank))

    def line(self, t: int) -> Weight:
        """Weight of the line bundle O(t)."""
        return tuple(t if m == self.k - 1 else 0 for m in range(self.rs.rank))

    def twist(self, lam: Weight, t: int) -> Weight:
        """E_lambda(t) = E_{lambda + t * w_k}."""
        return tuple(c + (t if m == self.k - 1 else 0) for m, c in enumerate(lam))


def parse_homspace(text: str) -> HomSpace:
    """Parse a designator like 'E6/P3' or 'G2/P1'."""
    parts = text.strip().split("/")
    if len(parts) != 2 or not parts[1].upper().startswith("P"):
        raise ValueError(f"cannot parse homogeneous space {text!r}")
    return HomSpace(parse_root_system(parts[0]), int(parts[1][1:]))


@lru_cache(maxsize=None)
def nilradical_roots(X: HomSpace) -> Tuple[Tuple[int, ...], ...]:
    """Positive roots with positive coefficient at alpha_k."""
    return tuple(b for b in positive_roots(X.rs) if b[X.k - 1] > 0)


def dimension(X: HomSpace) -> int:
    return len(nilradical_roots(X))


def fano_index(X: HomSpace) -> int:
    """iota with K_X = O(-iota): k-coordinate of the sum over the nilradical."""
    total = [0] * X.rs.rank
    for b in nilradical_roots(X):
        w = root_to_weight(X.rs, b)
        for i in range(X.rs.rank):
            total[i] += w[i]
    return total[X.k - 1]


def minimal_embedding_dim(X: HomSpace) -> int:
    """N with X âŠ‚ P^N minimally: dim V_G(w_k) - 1."""
    return rc.weyl_dim(X.group, X.fundamental(X.k)) - 1


def depth(X: HomSpace) -> int:
    return max(b[X.k - 1] for b in nilradical_roots(X))


@dataclass(frozen=True)
class GradedCotangent:
    """Graded pieces of Omega_{G/P}, deepest piece first (the subbundle end).

    ``pieces[j]`` is the decomposition into irreducible bundles E_lambda of
    the piece dual to g_{-level[j]}; the weight lambda is the Levi-highest
    weight of g_{-level[j]} itself, because E_lambda carries the dual module
    in its fibre.
    """

    depth: int
    levels: Tuple[int, ...]
    pieces: Tuple[Tuple[Tuple[Weight, int], ...], ...]

    def piece_decomp(self, j: int) -> rc.IrrDecomp:
        return dict(self.pieces[j])

    def as_filtration(self) -> List[rc.IrrDecomp]:
        return [dict(p) for p in self.pieces]


@lru_cache(maxsize=None)
def gradation(X: HomSpace) -> GradedCotangent:
    """Levi-irreducible pieces of the cotangent bundle, by grading level."""
    rs = X.rs
    m = depth(X)
    roots = set(positive_roots(rs))
    levi_simple = [tuple(1 if j == i - 1 else 0 for j in range(rs.rank)) for i in X.levi.levi]
    levels = []
    pieces = []
    for ell in range(m, 0, -1):
        phi = [b for b in nilradical_roots(X) if b[X.k - 1] == ell]
        decomp: Dict[Weight, int] = {}
        for b in phi:
            # -b is a highest vector of g_{-ell} iff no Levi raising survives
            raisable = any(
                tuple(x - y for x, y in zip(b, a)) in roots for a in levi_simple
            )
            if not raisable:
                w = tuple(-c for c in root_to_weight(rs, b))
                decomp[w] = decomp.get(w, 0) + 1
        total = sum(rc.weyl_dim(X.levi, lam) * mult for lam, mult in decomp.items())
        assert total == len(phi), f"graded piece {ell} of {X}: {total} != {len(phi)}"
        levels.append(ell)
        pieces.append(tuple(sorted(decomp.items())))
    return GradedCotangent(depth=m, levels=tuple(levels), pieces=tuple(pieces))


def graded_module_char(X: HomSpace, ell: int) -> rc.PackedChar:
    """Character of the Levi module g_{-ell} (all weights multiplicity one)."""
    weights: Dict[Weight, int] = {}
    for b in nilradical_roots(X):
        if b[X.k - 1] == ell:
            w = tuple(-c for c in root_to_weight(X.rs, b))
            weights[w] = weights.get(w, 0) + 1
    return rc.char_from_weights(weights)


def dex(X: HomSpace, lam: Weight) -> int:
    """det E_lambda = O(dex): k-coordinate of the sum of module weights."""
    return rc.sum_of_weights(X.levi, lam)[X.k - 1]


def bundle_rank(X: HomSpace, lam: Weight) -> int:
    return rc.weyl_dim(X.levi, lam)


def dex_closed_form(X: HomSpace, lam: Weight) -> int:
    """Closed forms for Grassmannians, symplectic Grassmannians and spinor
    varieties; raises for spaces where no closed form is on record."""
    if not rc.is_context_dominant(X.levi, lam):
        raise rc.NonDominantError(f"{lam} not P{X.k}-dominant")
    r = X.rs.rank
    k = X.k
    fam = X.rs.family
    rank_e = Fraction(bundle_rank(X, lam))

    def tail(j):  # sum_{i=j}^{r} lam_i with 1-based j
        return sum(lam[i - 1] for i in range(j, r + 1))

    if fam == "A":
        val = (
            Fraction(sum(tail(j) for j in range(1, k + 1)), k)
            - Fraction(sum(tail(j) for j in range(k + 1, r + 1)), r + 1 - k)
        ) * rank_e
    elif fam == "C":
        val = Fraction(sum(tail(j) for j in range(1, k + 1)), k) * rank_e
    elif fam == "D" and k in (r - 1, r):
        mu = list(lam)
        if k == r - 1:  # the two spinor half-spaces swap under the flip
            mu[r - 2], mu[r - 1] = mu[r - 1], mu[r - 2]
        # epsilon-coordinate sum: a_m = sum_{j>=m, j<=r-2} mu_j + (mu_{r-1}+mu_r)/2
        # for m <= r-2, a_{r-1} = (mu_{r-1}+mu_r)/2, a_r = (mu_r - mu_{r-1})/2.
        # (The half-spin term enters r-1 times plus the signed tail, not r
        # times: the two readings agree exactly when mu_{r-1} = 0.)
        body = (
            sum(sum(mu[i - 1] for i in range(j, r - 1)) for j in range(1, r - 1))
            + (r - 1) * Fraction(mu[r - 2] + mu[r - 1], 2)
            + Fraction(mu[r - 1] - mu[r - 2], 2)
        )
        val = 2 * Fraction(body, r) * rank_e
    else:
        raise ValueError(f"no closed dex formula for {X}")
    assert val.denominator == 1
    return int(val)
