"""Root systems, Cartan data and Weyl-group machinery for the simple types A-G.

Conventions (fixed once, used by every other module):

* Simple roots are numbered 1..rank in the Bourbaki ordering.  For the
  exceptional types this means: E6/E7/E8 have the chain 1-3-4-5-...-rank with
  node 2 attached to node 4; F4 is 1-2=>3-4 (alpha1, alpha2 long); G2 is
  1<=2 (alpha1 short, alpha2 long).
* A *weight* is a tuple of integers, coordinate ``i`` being the coefficient
  of the fundamental weight w_{i+1}.
* A *root* is a tuple of integers in the simple-root basis.
* The invariant bilinear form is normalised so that long roots have squared
  length 2.
* ``simple_root_weight`` realises alpha_j in the fundamental-weight basis;
  its coefficients are <alpha_j, alpha_i^v>, i.e. the j-th column of the
  Cartan matrix returned by :func:`cartan_matrix`.

The simple reflection acts by ``s_i(w) = w - w[i-1] * alpha_i``; this is the
convention under which e.g. the F4 weight (0,0,0,1) moves through
(0,0,1,-1), (0,1,-1,0), (1,-1,1,0), (1,0,-1,1), (1,0,0,-1) under
s4,s3,s2,s3,s4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

Weight = Tuple[int, ...]
Root = Tuple[int, ...]

_FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


class RootDataError(ValueError):
    """Invalid family/rank combination or malformed weight input."""


@dataclass(frozen=True)
class RootSystem:
    """A simple root system ``family`` of the given ``rank`` (Bourbaki labels)."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise RootDataError(f"unknown family {self.family!r}")
        r = self.rank
        ok = {
            "A": r >= 1,
            "B": r >= 2,
            "C": r >= 2,
            "D": r >= 3,
            "E": r in (6, 7, 8),
            "F": r == 4,
            "G": r == 2,
        }[self.family]
        if not ok:
            raise RootDataError(f"rank {r} not admissible for family {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    # -- diagram data ------------------------------------------------------

    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Unordered adjacency of the Dynkin diagram, 1-based node labels."""
        r = self.rank
        if self.family in ("A", "B", "C"):
            return tuple((i, i + 1) for i in range(1, r))
        if self.family == "D":
            return tuple((i, i + 1) for i in range(1, r - 1)) + ((r - 2, r),)
        if self.family == "E":
            chain = [(1, 3)] + [(i, i + 1) for i in range(3, r)]
            return tuple(chain) + ((2, 4),)
        if self.family == "F":
            return ((1, 2), (2, 3), (3, 4))
        return ((1, 2),)  # G2

    def root_length_halves(self) -> Tuple[Fraction, ...]:
        """d_i = (alpha_i, alpha_i)/2 with long roots normalised to d = 1."""
        r = self.rank
        if self.family in ("A", "D", "E"):
            return tuple([Fraction(1)] * r)
        if self.family == "B":
            return tuple([Fraction(1)] * (r - 1) + [Fraction(1, 2)])
        if self.family == "C":
            return tuple([Fraction(1, 2)] * (r - 1) + [Fraction(1)])
        if self.family == "F":
            return (Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 2))
        return (Fraction(1, 3), Fraction(1))  # G2


@lru_cache(maxsize=None)
def _pairing_matrix(rs: RootSystem) -> Tuple[Tuple[int, ...], ...]:
    """A[i][j] = <alpha_{j+1}, alpha_{i+1}^v>, so alpha_j is column j in w-basis."""
    r = rs.rank
    d = rs.root_length_halves()
    A = [[0] * r for _ in range(r)]
    for i in range(r):
        A[i][i] = 2
    for a, b in rs.edges():
        i, j = a - 1, b - 1
        # (alpha_i, alpha_j) = -max(d_i, d_j) for every bonded pair in finite type
        prod = -max(d[i], d[j])
        A[j][i] = int(prod / d[j])  # <alpha_i, alpha_j^v>
        A[i][j] = int(prod / d[i])  # <alpha_j, alpha_i^v>
    return tuple(tuple(row) for row in A)


def cartan_matrix(rs: RootSystem) -> Tuple[Tuple[int, ...], ...]:
    """Cartan matrix with column j holding alpha_{j+1} in the w-basis."""
    return _pairing_matrix(rs)


def simple_root_weight(rs: RootSystem, i: int) -> Weight:
    """alpha_i (1-based) expressed in the fundamental-weight basis."""
    A = _pairing_matrix(rs)
    return tuple(A[m][i - 1] for m in range(rs.rank))


def rho(rs: RootSystem) -> Weight:
    """Half sum of positive roots = sum of fundamental weights = (1,...,1)."""
    return (1,) * rs.rank


def add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(a: Weight, c: int) -> Weight:
    return tuple(c * x for x in a)


def reflect(rs: RootSystem, w: Weight, i: int) -> Weight:
    """Simple reflection s_i acting on a weight (w-basis), i 1-based."""
    c = w[i - 1]
    if c == 0:
        return w
    alpha = simple_root_weight(rs, i)
    return tuple(x - c * y for x, y in zip(w, alpha))


@lru_cache(maxsize=None)
def positive_roots(rs: RootSystem) -> Tuple[Root, ...]:
    """All positive roots in the simple-root basis.

    Generated by the closure algorithm over root strings, returned in a
    deterministic order: graded lexicographic by height, then coordinates.
    """
    r = rs.rank
    A = _pairing_matrix(rs)
    simple = [tuple(1 if m == i else 0 for m in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(r):
                pairing = sum(beta[m] * A[i][m] for m in range(r))
                # depth of the alpha_i string below beta
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if probe[i] < 0 or tuple(probe) not in roots:
                        break
                    p += 1
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    cand = tuple(up)
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        layer = nxt
    return tuple(sorted(roots, key=lambda v: (sum(v), v)))


def root_to_weight(rs: RootSystem, beta: Root) -> Weight:
    """Convert simple-root coordinates to fundamental-weight coordinates."""
    A = _pairing_matrix(rs)
    r = rs.rank
    return tuple(sum(A[i][j] * beta[j] for j in range(r)) for i in range(r))


@lru_cache(maxsize=None)
def coroot_vector(rs: RootSystem, beta: Root) -> Tuple[int, ...]:
    """Integer vector k with <w, beta^v> = sum_i k_i w_i for weights w."""
    d = rs.root_length_halves()
    dbeta = _root_norm_half(rs, beta)
    vec = []
    for i in range(rs.rank):
        val = Fraction(beta[i]) * d[i] / dbeta
        if val.denominator != 1:
            raise AssertionError("coroot coordinates must be integral")
        vec.append(int(val))
    return tuple(vec)


@lru_cache(maxsize=None)
def _root_norm_half(rs: RootSystem, beta: Root) -> Fraction:
    """(beta, beta)/2 for a root in simple-root coordinates."""
    return inner_product_roots(rs, beta, beta) / 2


@lru_cache(maxsize=None)
def _root_gram(rs: RootSystem) -> Tuple[Tuple[Fraction, ...], ...]:
    """B[i][j] = (alpha_i, alpha_j)."""
    r = rs.rank
    d = rs.root_length_halves()
    B = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        B[i][i] = 2 * d[i]
    for a, b in rs.edges():
        i, j = a - 1, b - 1
        B[i][j] = B[j][i] = -max(d[i], d[j])
    return tuple(tuple(row) for row in B)


def inner_product_roots(rs: RootSystem, x: Root, y: Root) -> Fraction:
    B = _root_gram(rs)
    r = rs.rank
    return sum(Fraction(x[i]) * B[i][j] * y[j] for i in range(r) for j in range(r))


@lru_cache(maxsize=None)
def _weight_to_root_matrix(rs: RootSystem) -> Tuple[Tuple[Fraction, ...], ...]:
    """Inverse of the Cartan matrix: weight coords -> simple-root coords."""
    r = rs.rank
    A = [[Fraction(x) for x in row] for row in _pairing_matrix(rs)]
    inv = [[Fraction(1) if i == j else Fraction(0) for j in range(r)] for i in range(r)]
    for col in range(r):
        piv = next(row for row in range(col, r) if A[row][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        inv[col] = [x / pv for x in inv[col]]
        for row in range(r):
            if row != col and A[row][col] != 0:
                f = A[row][col]
                A[row] = [x - f * y for x, y in zip(A[row], A[col])]
                inv[row] = [x - f * y for x, y in zip(inv[row], inv[col])]
    return tuple(tuple(row) for row in inv)


def weight_to_root_coords(rs: RootSystem, w: Weight) -> Tuple[Fraction, ...]:
    inv = _weight_to_root_matrix(rs)
    r = rs.rank
    return tuple(sum(inv[i][j] * w[j] for j in range(r)) for i in range(r))


def inner_product(rs: RootSystem, a: Weight, b: Weight) -> Fraction:
    """W-invariant form on weights, long roots of squared length 2."""
    ra = weight_to_root_coords(rs, a)
    rb = weight_to_root_coords(rs, b)
    B = _root_gram(rs)
    r = rs.rank
    return sum(ra[i] * B[i][j] * rb[j] for i in range(r) for j in range(r))


def pair_coroot(rs: RootSystem, w: Weight, beta: Root) -> int:
    """<w, beta^v> as an exact integer."""
    k = coroot_vector(rs, beta)
    return sum(k[i] * w[i] for i in range(rs.rank))


@dataclass(frozen=True)
class ChamberResult:
    """Outcome of pushing a weight into the dominant chamber.

    ``singular`` weights lie on a wall (some Weyl image has a zero
    coordinate at a climbing index); otherwise ``dominant`` is the unique
    dominant representative and ``word`` the reduced word of simple
    reflections applied, first reflection first.
    """

    singular: bool
    dominant: Optional[Weight] = None
    word: Tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.word)


def to_dominant_chamber(
    rs: RootSystem, w: Weight, indices: Optional[Sequence[int]] = None
) -> ChamberResult:
    """Climb ``w`` to the dominant chamber of the (parabolic) Weyl group.

    ``indices`` restricts the climb to the Weyl group generated by the given
    simple reflections (default: all of W).  Climbing always reflects at the
    smallest index carrying a negative coordinate, which makes the resulting
    reduced word deterministic.  A zero coordinate at any climbing index at
    any stage certifies the weight singular (wall membership is
    Weyl-invariant) and aborts early.
    """
    idx = tuple(indices) if indices is not None else tuple(range(1, rs.rank + 1))
    cur = tuple(w)
    word = []
    while True:
        neg = 0
        for i in idx:
            c = cur[i - 1]
            if c == 0:
                return ChamberResult(singular=True)
            if c < 0 and neg == 0:
                neg = i
        if neg == 0:
            return ChamberResult(singular=False, dominant=cur, word=tuple(word))
        cur = reflect(rs, cur, neg)
        word.append(neg)


def is_dominant(w: Weight, indices: Optional[Iterable[int]] = None) -> bool:
    if indices is None:
        return all(c >= 0 for c in w)
    return all(w[i - 1] >= 0 for i in indices)


def parse_root_system(text: str) -> RootSystem:
    """Parse 'E6', 'A5', ... into a RootSystem."""
    text = text.strip()
    if len(text) < 2 or text[0].upper() not in _FAMILIES:
        raise RootDataError(f"cannot parse root system {text!r}")
    try:
        rank = int(text[1:])
    except ValueError as exc:
        raise RootDataError(f"cannot parse root system {text!r}") from exc
    return RootSystem(text[0].upper(), rank)
