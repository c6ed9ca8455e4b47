"""Character arithmetic for irreducible modules of a reductive context.

A *context* is either the full group G or the reductive part L of a maximal
parabolic, described by the subset of simple-root indices that survive.
Weights always live in the AMBIENT fundamental-weight basis, so a Levi
character remembers its twist along the omitted node(s).

Characters are dicts mapping a packed weight (see ``pack``/``unpack``) to a
positive integer multiplicity; formal sums of irreducibles (IrrDecomp) are
dicts mapping highest-weight tuples to multiplicities.  Everything is exact
big-integer arithmetic; rationals appear only inside the Freudenthal
recursion and never leak out.

Decomposition of an arbitrary character into irreducibles uses the
rho-shifted reflection trick: each weight mu contributes sgn(w) at the
dominant representative of mu+rho (nothing on walls), which telescopes to
the multiset of highest weights.  This is linear in the support size and is
what makes wedge powers of the rank-29 bundles over E7/P1 cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import cache as _cache
from .rootdata import (
    RootSystem,
    Weight,
    add,
    coroot_vector,
    inner_product,
    positive_roots,
    reflect,
    rho,
    root_to_weight,
    simple_root_weight,
    sub,
    weight_to_root_coords,
)

PackedChar = Dict[int, int]
IrrDecomp = Dict[Weight, int]

_BITS = 16
_OFFSET = 1 << (_BITS - 1)
_MASK = (1 << _BITS) - 1


class NonDominantError(ValueError):
    """Raised when an operation requires a context-dominant highest weight."""


@dataclass(frozen=True)
class Context:
    """Reductive context: the ambient group restricted to ``levi`` nodes.

    ``levi`` is a sorted tuple of 1-based simple-root indices; the full set
    is the group G itself, all-but-k is the Levi of the maximal parabolic
    P_k.
    """

    rs: RootSystem
    levi: Tuple[int, ...]

    def __post_init__(self):
        if any(i < 1 or i > self.rs.rank for i in self.levi):
            raise ValueError("levi indices out of range")
        if tuple(sorted(set(self.levi))) != self.levi:
            raise ValueError("levi indices must be sorted and unique")

    @property
    def is_full(self) -> bool:
        return len(self.levi) == self.rs.rank

    def omitted(self) -> Tuple[int, ...]:
        return tuple(i for i in range(1, self.rs.rank + 1) if i not in self.levi)

    def __str__(self):
        if self.is_full:
            return str(self.rs)
        return f"{self.rs}|L{{{','.join(map(str, self.levi))}}}"


def full_context(rs: RootSystem) -> Context:
    return Context(rs, tuple(range(1, rs.rank + 1)))


def levi_context(rs: RootSystem, k: int) -> Context:
    """Levi of the k-th maximal parabolic (omit node k)."""
    return Context(rs, tuple(i for i in range(1, rs.rank + 1) if i != k))


def is_context_dominant(ctx: Context, lam: Weight) -> bool:
    return all(lam[i - 1] >= 0 for i in ctx.levi)


def _require_dominant(ctx: Context, lam: Weight):
    if not is_context_dominant(ctx, lam):
        raise NonDominantError(f"{lam} is not dominant for {ctx}")


# -- packed weight helpers --------------------------------------------------


def pack(w: Weight) -> int:
    v = 0
    for i, c in enumerate(w):
        v |= (c + _OFFSET) << (_BITS * i)
    return v


def unpack(v: int, rank: int) -> Weight:
    return tuple(((v >> (_BITS * i)) & _MASK) - _OFFSET for i in range(rank))


@lru_cache(maxsize=None)
def _pack_zero(rank: int) -> int:
    return pack((0,) * rank)


def char_from_weights(weights: Dict[Weight, int]) -> PackedChar:
    out: PackedChar = {}
    for w, m in weights.items():
        out[pack(w)] = out.get(pack(w), 0) + m
    return out


def char_to_weights(char: PackedChar, rank: int) -> Dict[Weight, int]:
    return {unpack(v, rank): m for v, m in char.items()}


def char_dim(char: PackedChar) -> int:
    return sum(char.values())


def conv(a: PackedChar, b: PackedChar, rank: int) -> PackedChar:
    """Pointwise convolution (character of a tensor product)."""
    z = _pack_zero(rank)
    out: PackedChar = {}
    if len(a) < len(b):
        a, b = b, a
    get = out.get
    for vb, mb in b.items():
        shift = vb - z
        for va, ma in a.items():
            key = va + shift
            out[key] = get(key, 0) + ma * mb
    return {k: m for k, m in out.items() if m}


def char_twist(char: PackedChar, rank: int, w: Weight) -> PackedChar:
    """Translate every weight of the character by ``w``."""
    shift = pack(w) - _pack_zero(rank)
    return {v + shift: m for v, m in char.items()}


def char_scale_weights(char: PackedChar, rank: int, m: int) -> PackedChar:
    """Adams operation psi^m: scale every weight by the integer m."""
    out: PackedChar = {}
    for v, mult in char.items():
        key = pack(tuple(m * c for c in unpack(v, rank)))
        out[key] = out.get(key, 0) + mult
    return out


def char_negate(char: PackedChar, rank: int) -> PackedChar:
    return char_scale_weights(char, rank, -1)


# -- context data ------------------------------------------------------------


@lru_cache(maxsize=None)
def context_positive_roots(ctx: Context) -> Tuple[Tuple[int, ...], ...]:
    """Positive roots of the context, in ambient simple-root coordinates."""
    levi = set(ctx.levi)
    out = []
    for beta in positive_roots(ctx.rs):
        if all(c == 0 or (i + 1) in levi for i, c in enumerate(beta)):
            out.append(beta)
    return tuple(out)


@lru_cache(maxsize=None)
def _coroot_vectors(ctx: Context) -> Tuple[Tuple[int, ...], ...]:
    return tuple(coroot_vector(ctx.rs, beta) for beta in context_positive_roots(ctx))


_dim_memo: Dict[Tuple[Context, Weight], int] = {}


def weyl_dim(ctx: Context, lam: Weight) -> int:
    """Dimension of the irreducible ctx-module with highest weight ``lam``."""
    got = _dim_memo.get((ctx, lam))
    if got is not None:
        return got
    _require_dominant(ctx, lam)
    num = 1
    den = 1
    shifted = add(lam, rho(ctx.rs))
    one = rho(ctx.rs)
    for k in _coroot_vectors(ctx):
        num *= sum(ki * wi for ki, wi in zip(k, shifted))
        den *= sum(ki * wi for ki, wi in zip(k, one))
    assert num % den == 0
    _dim_memo[(ctx, lam)] = num // den
    return num // den


def dominant_rep(ctx: Context, w: Weight) -> Weight:
    """Dominant W_L-representative of a weight (zeros allowed, no word)."""
    cur = w
    while True:
        neg = next((i for i in ctx.levi if cur[i - 1] < 0), 0)
        if neg == 0:
            return cur
        cur = reflect(ctx.rs, cur, neg)


_climb_memo: Dict[Tuple[Context, int], Optional[Tuple[int, int]]] = {}


def _climb_signed(ctx: Context, packed: int) -> Optional[Tuple[int, int]]:
    """Signed dominant representative of a rho-shifted weight.

    Returns None if the weight lies on a wall of the context, otherwise
    (sign, packed dominant representative).
    """
    memo_key = (ctx, packed)
    got = _climb_memo.get(memo_key, 0)
    if got != 0:
        return got
    rank = ctx.rs.rank
    cur = unpack(packed, rank)
    sign = 1
    while True:
        neg = 0
        for i in ctx.levi:
            c = cur[i - 1]
            if c == 0:
                _climb_memo[memo_key] = None
                return None
            if c < 0 and neg == 0:
                neg = i
        if neg == 0:
            res = (sign, pack(cur))
            _climb_memo[memo_key] = res
            return res
        cur = reflect(ctx.rs, cur, neg)
        sign = -sign


def decompose_character(ctx: Context, char: PackedChar) -> IrrDecomp:
    """Decompose a genuine (virtual-free) character into irreducibles."""
    rank = ctx.rs.rank
    shift = pack(rho(ctx.rs)) - _pack_zero(rank)
    acc: Dict[int, int] = {}
    for v, m in char.items():
        res = _climb_signed(ctx, v + shift)
        if res is None:
            continue
        sign, dom = res
        key = dom - shift
        acc[key] = acc.get(key, 0) + sign * m
    out: IrrDecomp = {}
    for key, m in acc.items():
        if m == 0:
            continue
        if m < 0:
            raise AssertionError("negative multiplicity: input was not a character")
        out[unpack(key, rank)] = m
    return out


# -- irreducible characters (Freudenthal) ------------------------------------


def _freudenthal(ctx: Context, lam: Weight) -> Dict[Weight, int]:
    rs = ctx.rs
    rank = rs.rank
    pos = context_positive_roots(ctx)
    pos_w = [root_to_weight(rs, b) for b in pos]
    rr = rho(rs)

    def ip(a: Weight, b: Weight) -> Fraction:
        return inner_product(rs, a, b)

    # all weights <= lam whose dominant representative stays <= lam
    simple_w = [simple_root_weight(rs, i) for i in ctx.levi]

    def le_lam(mu: Weight) -> bool:
        coords = weight_to_root_coords(rs, sub(lam, mu))
        return all(c.denominator == 1 and c >= 0 for c in coords)

    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in simple_w:
                cand = sub(mu, a)
                if cand in seen:
                    continue
                if le_lam(dominant_rep(ctx, cand)):
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt

    # depth = half the drop of the pairing with 2 rho_L^v
    cov = _coroot_vectors(ctx)

    def level(mu: Weight) -> int:
        drop = sum(
            sum(k[i] * (lam[i] - mu[i]) for i in range(rank)) for k in cov
        )
        assert drop % 2 == 0
        return drop // 2

    by_level = sorted(seen, key=lambda mu: (level(mu), mu))
    mults: Dict[Weight, int] = {lam: 1}
    lam_norm = ip(add(lam, rr), add(lam, rr))
    for mu in by_level:
        if mu == lam:
            continue
        acc = Fraction(0)
        for beta_w in pos_w:
            nu = add(mu, beta_w)
            k = 1
            while nu in mults:
                acc += mults[nu] * ip(nu, beta_w)
                k += 1
                nu = add(mu, tuple(k * c for c in beta_w))
        denom = lam_norm - ip(add(mu, rr), add(mu, rr))
        if acc == 0:
            continue
        val = 2 * acc / denom
        assert val.denominator == 1 and val >= 0
        if val:
            mults[mu] = int(val)
    return mults


def char_irr(ctx: Context, lam: Weight) -> PackedChar:
    """Character of the irreducible ctx-module with highest weight lam."""
    _require_dominant(ctx, lam)

    def compute():
        mults = _freudenthal(ctx, lam)
        total = sum(mults.values())
        expected = weyl_dim(ctx, lam)
        assert total == expected, f"Freudenthal total {total} != Weyl dim {expected}"
        return char_from_weights(mults)

    return _cache.memo("char", (str(ctx), lam), compute)


def weight_multiplicities(ctx: Context, lam: Weight) -> Dict[Weight, int]:
    """Weight multiset of V_ctx(lam), in the ambient weight basis."""
    return char_to_weights(char_irr(ctx, lam), ctx.rs.rank)


def char_of_decomp(ctx: Context, decomp: IrrDecomp) -> PackedChar:
    out: PackedChar = {}
    for lam, m in decomp.items():
        for v, mult in char_irr(ctx, lam).items():
            out[v] = out.get(v, 0) + m * mult
    return out


def decomp_dim(ctx: Context, decomp: IrrDecomp) -> int:
    return sum(m * weyl_dim(ctx, lam) for lam, m in decomp.items())


# -- duals, tensor products, plethysms ---------------------------------------


def dual_highest_weight(ctx: Context, lam: Weight) -> Weight:
    """Highest weight of the dual module: dominant representative of -lam."""
    _require_dominant(ctx, lam)
    return dominant_rep(ctx, tuple(-c for c in lam))


def tensor_decompose(ctx: Context, a: IrrDecomp, b: IrrDecomp) -> IrrDecomp:
    """Decompose the tensor product of two formal sums of irreducibles."""
    out: IrrDecomp = {}
    for la, ma in a.items():
        for lb, mb in b.items():
            for lam, m in _tensor_pair(ctx, la, lb).items():
                out[lam] = out.get(lam, 0) + ma * mb * m
    return out


def _tensor_pair(ctx: Context, la: Weight, lb: Weight) -> IrrDecomp:
    def compute():
        prod = conv(char_irr(ctx, la), char_irr(ctx, lb), ctx.rs.rank)
        return decompose_character(ctx, prod)

    return _cache.memo("tensor", (str(ctx), la, lb), compute)


def exterior_char_table(char: PackedChar, kmax: int, rank: int) -> List[PackedChar]:
    """Characters of Lambda^0..Lambda^kmax via the Newton/Girard recursion."""
    psi = [None] + [char_scale_weights(char, rank, m) for m in range(1, kmax + 1)]
    es: List[PackedChar] = [{_pack_zero(rank): 1}]
    for k in range(1, kmax + 1):
        acc: PackedChar = {}
        for m in range(1, k + 1):
            term = conv(es[k - m], psi[m], rank)
            sgn = 1 if m % 2 == 1 else -1
            for v, mult in term.items():
                acc[v] = acc.get(v, 0) + sgn * mult
        ek: PackedChar = {}
        for v, mult in acc.items():
            if mult:
                assert mult % k == 0
                ek[v] = mult // k
        es.append(ek)
    return es


def symmetric_char_table(char: PackedChar, kmax: int, rank: int) -> List[PackedChar]:
    """Characters of S^0..S^kmax via the Newton/Girard recursion."""
    psi = [None] + [char_scale_weights(char, rank, m) for m in range(1, kmax + 1)]
    hs: List[PackedChar] = [{_pack_zero(rank): 1}]
    for k in range(1, kmax + 1):
        acc: PackedChar = {}
        for m in range(1, k + 1):
            term = conv(hs[k - m], psi[m], rank)
            for v, mult in term.items():
                acc[v] = acc.get(v, 0) + mult
        hk: PackedChar = {}
        for v, mult in acc.items():
            if mult:
                assert mult % k == 0
                hk[v] = mult // k
        hs.append(hk)
    return hs


def exterior_power(ctx: Context, rep: IrrDecomp, k: int) -> IrrDecomp:
    """Lambda^k of a formal sum of irreducibles, decomposed again."""
    total = decomp_dim(ctx, rep)
    if k < 0 or k > total:
        raise ValueError(f"wedge degree {k} out of range 0..{total}")
    char = char_of_decomp(ctx, rep)
    table = exterior_char_table(char, k, ctx.rs.rank)
    return decompose_character(ctx, table[k])


def symmetric_power(ctx: Context, rep: IrrDecomp, k: int) -> IrrDecomp:
    if k < 0:
        raise ValueError("symmetric degree must be nonnegative")
    char = char_of_decomp(ctx, rep)
    table = symmetric_char_table(char, k, ctx.rs.rank)
    return decompose_character(ctx, table[k])


def sum_of_weights(ctx: Context, lam: Weight) -> Weight:
    """Sum over the weight multiset of V_ctx(lam); Levi coordinates vanish.

    Only defined for a Levi context with exactly one omitted node: the
    surviving coordinate at the omitted node is the determinant twist.

    The sum equals dim * (W_L-invariant part of lam): writing lam = mu + y
    with mu a rational combination of the Levi simple roots and y carrying
    zero Levi coordinates, the barycenter of the weight multiset is y.  The
    multiplicity-weighted sum from Freudenthal agrees (property-tested) but
    this closed route stays cheap on the big E8 Levi sweeps.
    """
    if len(ctx.omitted()) != 1:
        raise ValueError("sum_of_weights needs a Levi context omitting one node")
    _require_dominant(ctx, lam)

    def compute():
        rs = ctx.rs
        rank = rs.rank
        k = ctx.omitted()[0]
        A = [[Fraction(x) for x in row] for row in
             ( _pairing_rows(rs) )]
        levi = list(ctx.levi)
        n = len(levi)
        # solve sum_j c_j * A[i][j] = lam_i over the Levi block
        M = [[A[levi[i] - 1][levi[j] - 1] for j in range(n)] for i in range(n)]
        b = [Fraction(lam[i - 1]) for i in levi]
        c = _solve_fraction_system(M, b)
        y_k = Fraction(lam[k - 1]) - sum(c[j] * A[k - 1][levi[j] - 1] for j in range(n))
        total = weyl_dim(ctx, lam) * y_k
        assert total.denominator == 1
        res = [0] * rank
        res[k - 1] = int(total)
        return tuple(res)

    return _cache.memo("sumwts", (str(ctx), lam), compute)


def sum_of_weights_bruteforce(ctx: Context, lam: Weight) -> Weight:
    """Multiplicity-weighted weight sum via Freudenthal; oracle for the above."""
    rank = ctx.rs.rank
    total = [0] * rank
    for w, m in weight_multiplicities(ctx, lam).items():
        for i in range(rank):
            total[i] += m * w[i]
    return tuple(total)


def _pairing_rows(rs: RootSystem):
    from .rootdata import cartan_matrix

    return cartan_matrix(rs)


def _solve_fraction_system(M: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    n = len(b)
    A = [row[:] + [b[i]] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]
