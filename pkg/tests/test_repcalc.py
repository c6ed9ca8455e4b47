import random

import pytest

from bwbforge import repcalc as rc
from bwbforge.rootdata import RootSystem, positive_roots, reflect, root_to_weight


E6 = RootSystem("E", 6)
E7 = RootSystem("E", 7)
F4 = RootSystem("F", 4)
G2 = RootSystem("G", 2)


def w(rank, **kw):
    v = [0] * rank
    for key, val in kw.items():
        v[int(key[1:]) - 1] = val
    return tuple(v)


def test_weyl_dim_anchors():
    assert rc.weyl_dim(rc.full_context(G2), (0, 3)) == 273
    assert rc.weyl_dim(rc.full_context(G2), (0, 0)) == 1
    assert rc.weyl_dim(rc.full_context(E6), w(6, i1=1)) == 27
    assert rc.weyl_dim(rc.full_context(G2), (0, 1)) == 14
    assert rc.weyl_dim(rc.full_context(G2), (5, 0)) == 378
    assert rc.weyl_dim(rc.full_context(E7), w(7, i7=1)) == 56
    assert rc.weyl_dim(rc.full_context(RootSystem("E", 8)), w(8, i8=1)) == 248
    # minimal nontrivial modules that drive the E7/P7 and E8/P8 prunes
    assert rc.weyl_dim(rc.levi_context(E7, 7), w(7, i1=1)) == 27
    assert rc.weyl_dim(rc.levi_context(RootSystem("E", 8), 8), w(8, i7=1)) == 56


def test_weyl_dim_rejects_non_dominant():
    with pytest.raises(rc.NonDominantError):
        rc.weyl_dim(rc.full_context(G2), (-1, 0))


def test_rank_one_levi_string():
    ctx = rc.levi_context(G2, 2)  # A1 Levi on node 1
    mults = rc.weight_multiplicities(ctx, (1, 0))
    assert len(mults) == 2 and set(mults.values()) == {1}


def test_adjoint_multiplicities_brute_force():
    ctx = rc.full_context(G2)
    mults = rc.weight_multiplicities(ctx, (0, 1))
    # oracle: the adjoint character is the 12 roots plus rank many zeros
    expected = {}
    for beta in positive_roots(G2):
        for sign in (1, -1):
            wt = tuple(sign * c for c in root_to_weight(G2, beta))
            expected[wt] = expected.get(wt, 0) + 1
    expected[(0, 0)] = 2
    assert mults == expected
    assert mults[(0, 0)] == 2


def test_spin7_levi_standard_module():
    ctx = rc.levi_context(F4, 4)
    mults = rc.weight_multiplicities(ctx, (1, 0, 0, 0))
    assert len(mults) == 7 and sum(mults.values()) == 7


def test_freudenthal_total_dimension_sweep():
    cases = [
        (rc.full_context(F4), (0, 0, 0, 1)),
        (rc.full_context(G2), (1, 1)),
        (rc.levi_context(E6, 3), w(6, i6=1)),
        (rc.levi_context(E7, 1), w(7, i7=1)),
        (rc.levi_context(E6, 1), w(6, i6=1)),
        (rc.full_context(RootSystem("A", 3)), (1, 1, 1)),
    ]
    for ctx, lam in cases:
        mults = rc.weight_multiplicities(ctx, lam)
        assert sum(mults.values()) == rc.weyl_dim(ctx, lam)


def test_weight_multiset_levi_invariance():
    ctx = rc.levi_context(F4, 4)
    mults = rc.weight_multiplicities(ctx, (0, 0, 1, 0))
    for i in ctx.levi:
        reflected = {}
        for wt, m in mults.items():
            reflected[reflect(F4, wt, i)] = reflected.get(reflect(F4, wt, i), 0) + m
        assert reflected == mults


def test_dual_highest_weight_anchors():
    assert rc.dual_highest_weight(rc.levi_context(F4, 4), (1, 0, 0, 0)) == (1, 0, 0, -2)
    assert rc.dual_highest_weight(rc.full_context(E6), (0,) * 6) == (0,) * 6
    assert rc.dual_highest_weight(rc.full_context(E6), w(6, i1=1)) == w(6, i6=1)


def test_dual_involution_and_dimension():
    rng = random.Random(5)
    ctx = rc.levi_context(E6, 2)
    for _ in range(10):
        lam = tuple(
            rng.randint(0, 2) if i != 1 else rng.randint(-2, 2) for i in range(6)
        )
        dual = rc.dual_highest_weight(ctx, lam)
        assert rc.dual_highest_weight(ctx, dual) == lam
        assert rc.weyl_dim(ctx, dual) == rc.weyl_dim(ctx, lam)


def test_tensor_with_trivial_and_clebsch_gordan():
    a1 = rc.full_context(RootSystem("A", 1))
    assert rc.tensor_decompose(a1, {(3,): 2}, {(0,): 1}) == {(3,): 2}
    assert rc.tensor_decompose(a1, {(1,): 1}, {(1,): 1}) == {(2,): 1, (0,): 1}


def test_tensor_against_convolution_oracle():
    # G2/P2 Levi: all module pairs with dim <= 20
    ctx = rc.levi_context(G2, 2)
    small = []
    for a in range(0, 6):
        for t in range(-2, 3):
            lam = (a, t)
            if rc.weyl_dim(ctx, lam) <= 20:
                small.append(lam)
    for la in small[:12]:
        for lb in small[:12]:
            dec = rc.tensor_decompose(ctx, {la: 1}, {lb: 1})
            lhs = rc.char_of_decomp(ctx, dec)
            rhs = rc.conv(rc.char_irr(ctx, la), rc.char_irr(ctx, lb), 2)
            assert lhs == rhs


def test_exterior_identities_f4p4():
    ctx = rc.levi_context(F4, 4)
    e1 = {(1, 0, 0, 0): 1}
    assert rc.exterior_power(ctx, e1, 0) == {(0, 0, 0, 0): 1}
    assert rc.exterior_power(ctx, e1, 2) == {(0, 1, 0, 0): 1}
    assert rc.exterior_power(ctx, e1, 3) == {(0, 0, 2, 0): 1}
    assert rc.exterior_power(ctx, e1, 4) == {(0, 0, 2, 1): 1}
    assert rc.exterior_power(ctx, e1, 5) == {(0, 1, 0, 3): 1}
    assert rc.exterior_power(ctx, e1, 6) == {(1, 0, 0, 5): 1}
    assert rc.exterior_power(ctx, e1, 7) == {(0, 0, 0, 7): 1}
    with pytest.raises(ValueError):
        rc.exterior_power(ctx, e1, 8)


def test_lambda_ring_consistency():
    ctx = rc.levi_context(E6, 3)
    rep = {w(6, i1=1): 1, w(6, i6=1): 1}  # rank 7
    char = rc.char_of_decomp(ctx, rep)
    assert rc.exterior_power(ctx, rep, 1) == rep
    assert rc.symmetric_power(ctx, rep, 1) == rep
    # L^2 + S^2 re-expands to the full square of the character
    sq = rc.conv(char, char, 6)
    both = rc.char_of_decomp(ctx, rc.exterior_power(ctx, rep, 2))
    for v, m in rc.char_of_decomp(ctx, rc.symmetric_power(ctx, rep, 2)).items():
        both[v] = both.get(v, 0) + m
    assert both == sq
    # sum of wedge ranks is 2^rank
    total = sum(
        rc.decomp_dim(ctx, rc.exterior_power(ctx, rep, k)) for k in range(0, 8)
    )
    assert total == 2 ** 7


def test_wedge_rank_binomial_convolution():
    ctx = rc.levi_context(E6, 2)
    rep = {w(6, i1=1): 1, w(6, i2=1): 2}  # ranks 6 + 1 + 1
    from math import comb

    for k in range(0, 9):
        expect = sum(
            comb(6, a) * comb(2, k - a) for a in range(0, min(6, k) + 1) if k - a >= 0
        )
        assert rc.decomp_dim(ctx, rc.exterior_power(ctx, rep, k)) == expect


def test_top_wedge_is_determinant():
    ctx = rc.levi_context(F4, 1)
    lam = (0, 0, 0, 1)
    rank = rc.weyl_dim(ctx, lam)
    top = rc.exterior_power(ctx, {lam: 1}, rank)
    assert len(top) == 1
    det_weight, mult = next(iter(top.items()))
    assert mult == 1
    assert det_weight == rc.sum_of_weights(ctx, lam)


def test_sum_of_weights_anchors():
    assert rc.sum_of_weights(rc.levi_context(F4, 1), (0, 0, 0, 1)) == (3, 0, 0, 0)
    assert rc.sum_of_weights(rc.levi_context(F4, 1), (0,) * 4) == (0,) * 4
    assert rc.sum_of_weights(rc.levi_context(E7, 1), w(7, i7=1)) == w(7, i1=6)


def test_sum_of_weights_requires_single_omitted_node():
    ctx = rc.Context(F4, (2, 3))
    with pytest.raises(ValueError):
        rc.sum_of_weights(ctx, (0, 1, 0, 0))


def test_sum_of_weights_matches_freudenthal_oracle():
    cases = [
        (rc.levi_context(F4, 4), (1, 0, 0, 0)),
        (rc.levi_context(F4, 4), (0, 0, 1, 0)),
        (rc.levi_context(E6, 3), w(6, i5=1)),
        (rc.levi_context(G2, 1), (0, 1)),
        (rc.levi_context(RootSystem("A", 5), 2), (3, 0, 0, 0, 0)),
    ]
    for ctx, lam in cases:
        assert rc.sum_of_weights(ctx, lam) == rc.sum_of_weights_bruteforce(ctx, lam)


def test_decompose_character_flags_non_characters():
    ctx = rc.full_context(RootSystem("A", 1))
    bad = {rc.pack((-2,)): 1}  # lone negative weight: no module has this character
    with pytest.raises(AssertionError):
        rc.decompose_character(ctx, bad)


def test_decompose_character_roundtrip():
    ctx = rc.levi_context(E6, 2)
    dec = {w(6, i1=1): 2, w(6, i3=1): 1, w(6, i2=3): 1}
    assert rc.decompose_character(ctx, rc.char_of_decomp(ctx, dec)) == dec


from hypothesis import given, settings
from hypothesis import strategies as st

_coords = st.tuples(*[st.integers(-20, 20)] * 4)


@given(_coords)
@settings(max_examples=80, deadline=None)
def test_pack_unpack_roundtrip(wt):
    assert rc.unpack(rc.pack(wt), 4) == wt


@given(
    st.dictionaries(_coords, st.integers(1, 4), min_size=1, max_size=5),
    st.dictionaries(_coords, st.integers(1, 4), min_size=1, max_size=5),
    st.dictionaries(_coords, st.integers(1, 4), min_size=1, max_size=5),
)
@settings(max_examples=40, deadline=None)
def test_convolution_is_associative_and_counts_dims(a, b, c):
    pa, pb, pc = (rc.char_from_weights(x) for x in (a, b, c))
    left = rc.conv(rc.conv(pa, pb, 4), pc, 4)
    right = rc.conv(pa, rc.conv(pb, pc, 4), 4)
    assert left == right
    assert rc.char_dim(left) == rc.char_dim(pa) * rc.char_dim(pb) * rc.char_dim(pc)
