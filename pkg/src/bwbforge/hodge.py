"""Hodge numbers of zero loci via conormal-sequence chases.

The h^{0,q} row is the structure-sheaf cohomology; h^{1,q} comes from the
long exact sequence of 0 -> F^*|_Z -> Omega_X|_Z -> Omega_Z -> 0, seeded
with the values forced by Hodge symmetry and Serre duality; for fourfolds
h^{2,2} follows from the second wedge of the conormal sequence, split at
its kernel sheaf into two short exact sequences sharing unknowns.

All chases run through one small solver: an exact sequence whose entries
are known integers or named unknowns splits at its zero entries into
segments with vanishing alternating sum, and a segment with a single
unknown determines it.  Iterating over all sequences to a fixpoint
reproduces every determination step of the G2 computations without ever
assuming a particular map vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import repcalc as rc
from .bwbcohom import FilteredBundle
from .homspace import HomSpace, gradation, graded_module_char
from .koszul import (
    AmbiguousCohomologyError,
    BundleSum,
    ZCohomology,
    ZeroLocus,
    restricted_cohomology,
    structure_cohomology,
)

Cell = Union[int, str]  # a known dimension or the name of an unknown


class ChaseStuckError(RuntimeError):
    pass


def solve_exact_system(sequences: List[List[Cell]]) -> Tuple[Dict[str, int], bool]:
    """Solve for the unknowns of a family of exact sequences.

    Each sequence is implicitly 0-terminated on both ends.  Returns the
    solved unknowns and whether everything was determined.
    """
    values: Dict[str, int] = {}

    def substituted(seq: List[Cell]) -> List[Cell]:
        return [values.get(c, c) if isinstance(c, str) else c for c in seq]

    progress = True
    while progress:
        progress = False
        for seq in sequences:
            cur = substituted(seq)
            # split at known zeros
            segment: List[Cell] = []
            segments = []
            for cell in cur + [0]:
                if cell == 0:
                    if segment:
                        segments.append(segment)
                    segment = []
                else:
                    segment.append(cell)
            for seg in segments:
                unknowns = [c for c in seg if isinstance(c, str)]
                if len(unknowns) != 1:
                    continue
                name = unknowns[0]
                total = 0
                sign_of_unknown = 1
                for i, c in enumerate(seg):
                    s = 1 if i % 2 == 0 else -1
                    if isinstance(c, str):
                        sign_of_unknown = s
                    else:
                        total += s * c
                val = -total * sign_of_unknown
                if val < 0:
                    raise ChaseStuckError(f"exact sequence forces {name} = {val} < 0")
                if name in values and values[name] != val:
                    raise ChaseStuckError(f"inconsistent chase: {name}")
                values[name] = val
                progress = True
    all_names = {c for seq in sequences for c in seq if isinstance(c, str)}
    return values, all_names <= set(values)


def _conormal_les(a: Sequence[Cell], b: Sequence[Cell], c: Sequence[Cell]) -> List[Cell]:
    """Interleave rows of H^q(A), H^q(B), H^q(C) for 0 -> A -> B -> C -> 0."""
    out: List[Cell] = []
    for qa, qb, qc in zip(a, b, c):
        out.extend([qa, qb, qc])
    return out


@dataclass
class HodgeRow:
    values: List[Optional[int]]
    status: str  # "exact" | "ambiguous"

    def __iter__(self):
        return iter(self.values)


@dataclass
class ChaseReport:
    """Audit trail of an exact-sequence chase.

    ``sequences`` holds the interleaved long exact sequences (integers for
    known dimensions, names for unknowns), ``known`` the symmetry-forced
    seed values, ``solved`` every unknown the fixpoint determined.  A value
    appears in ``solved`` only if it is forced by exactness plus the
    recorded zero cells.
    """

    sequences: List[List[Cell]]
    known: Dict[str, int]
    solved: Dict[str, int]
    complete: bool

    def notes(self) -> List[str]:
        stuck = sorted(
            {c for seq in self.sequences for c in seq if isinstance(c, str)}
            - set(self.solved)
        )
        return [f"undetermined: {name}" for name in stuck]


def _dims_or_fail(t: ZCohomology, what: str) -> List[int]:
    if t.status != "exact":
        raise AmbiguousCohomologyError(f"{what}: {t.bounds}")
    return [v if v is not None else 0 for v in t.dims]


def omega_filtration(X: HomSpace) -> FilteredBundle:
    return FilteredBundle.from_decomps(gradation(X).as_filtration())


def h0_row(Z: ZeroLocus) -> HodgeRow:
    """h^{0,q}(Z) for q = 0..d, straight from the Koszul resolution."""
    t = structure_cohomology(Z)
    if t.status != "exact":
        return HodgeRow([t.dims[q] for q in range(Z.d + 1)], "ambiguous")
    return HodgeRow(list(t.dims), "exact")


def is_hyperkaehler_candidate(Z: ZeroLocus, row0: HodgeRow) -> bool:
    """The h^2(O) = 1 criterion for a fourfold with trivial canonical bundle."""
    return Z.d == 4 and row0.status == "exact" and row0.values[2] == 1


def _h1_chase(Z: ZeroLocus, row0: HodgeRow) -> Optional[ChaseReport]:
    d = Z.d
    known: Dict[str, int] = {}
    # conjugation: h^{1,0} = h^{0,1}; triviality of K_Z: h^{1,d} = h^{d,1} = h^{0,1}
    known[f"x{0}"] = row0.values[1]
    known[f"x{d}"] = row0.values[1]
    try:
        a = _dims_or_fail(restricted_cohomology(Z, Z.bundle.dual()), "F^*|_Z")
        b = _dims_or_fail(
            restricted_cohomology(Z, omega_filtration(Z.space)), "Omega|_Z"
        )
    except AmbiguousCohomologyError:
        return ChaseReport([], known, {}, False)
    cells: List[Cell] = [f"x{q}" for q in range(d + 1)]
    seq = _conormal_les(a, b, [known.get(c, c) for c in cells])
    values, complete = solve_exact_system([seq])
    values.update(known)
    return ChaseReport([seq], known, values, complete)


def h1_chase_report(Z: ZeroLocus) -> ChaseReport:
    """The conormal chase with its audit trail."""
    row0 = h0_row(Z)
    if row0.status != "exact":
        return ChaseReport([], {}, {}, False)
    return _h1_chase(Z, row0)


def h1_row(Z: ZeroLocus, row0: Optional[HodgeRow] = None) -> HodgeRow:
    """h^{1,q}(Z) via the conormal sequence 0 -> F^*|_Z -> Omega_X|_Z -> Omega_Z -> 0."""
    d = Z.d
    if row0 is None:
        row0 = h0_row(Z)
    if row0.status != "exact":
        return HodgeRow([None] * (d + 1), "ambiguous")
    report = _h1_chase(Z, row0)
    out = [report.solved.get(f"x{q}") for q in range(d + 1)]
    return HodgeRow(out, "exact" if all(v is not None for v in out) else "ambiguous")


def _symmetric_square_bundle(Z: ZeroLocus) -> BundleSum:
    X = Z.space
    char = Z.bundle.dual().char()
    table = rc.symmetric_char_table(char, 2, X.rs.rank)
    return BundleSum.make(X, rc.decompose_character(X.levi, table[2]))


def _fstar_tensor_omega(Z: ZeroLocus) -> FilteredBundle:
    """(F^* (x) Omega_X) filtered by the cotangent gradation, deep end first."""
    X = Z.space
    rank = X.rs.rank
    fchar = Z.bundle.dual().char()
    grad = gradation(X)
    decomps = []
    for ell in grad.levels:
        prod = rc.conv(fchar, graded_module_char(X, ell), rank)
        decomps.append(rc.decompose_character(X.levi, prod))
    return FilteredBundle.from_decomps(decomps)


def _omega_square(Z: ZeroLocus) -> FilteredBundle:
    """Lambda^2 Omega_X graded by total depth (deepest first)."""
    X = Z.space
    rank = X.rs.rank
    grad = gradation(X)
    chars = {ell: graded_module_char(X, ell) for ell in grad.levels}
    m = grad.depth
    decomps = []
    for s in range(2 * m, 1, -1):
        acc: rc.PackedChar = {}
        for i in grad.levels:
            j = s - i
            if j < i or j not in chars:
                continue
            if i == j:
                piece = rc.exterior_char_table(chars[i], 2, rank)[2]
            else:
                piece = rc.conv(chars[i], chars[j], rank)
            for v, mult in piece.items():
                acc[v] = acc.get(v, 0) + mult
        if acc:
            decomps.append(rc.decompose_character(X.levi, acc))
    return FilteredBundle.from_decomps(decomps)


def h22(Z: ZeroLocus, row0: Optional[HodgeRow] = None, row1: Optional[HodgeRow] = None) -> int:
    """h^{2,2} of a fourfold via the second wedge of the conormal sequence.

    0 -> S^2 F^*|_Z -> (F^* (x) Omega)|_Z -> Omega^2_X|_Z -> Omega^2_Z -> 0
    is split at the kernel K of its last map; the two resulting short exact
    sequences share the unknowns H^q(K), and the Omega^2_Z cells other than
    (2,2) are forced by symmetry from the first two rows.
    """
    if Z.d != 4:
        raise ValueError("h22 chase is for fourfolds")
    if row0 is None:
        row0 = h0_row(Z)
    if row1 is None:
        row1 = h1_row(Z, row0)
    if row0.status != "exact" or row1.status != "exact":
        raise AmbiguousCohomologyError("h22 needs exact h^{0,q} and h^{1,q} rows")
    report = h22_chase_report(Z, row0, row1)
    if "h22" not in report.solved:
        raise AmbiguousCohomologyError("h^{2,2} not determined by the chase")
    return report.solved["h22"]


def h22_chase_report(
    Z: ZeroLocus, row0: Optional[HodgeRow] = None, row1: Optional[HodgeRow] = None
) -> ChaseReport:
    if row0 is None:
        row0 = h0_row(Z)
    if row1 is None:
        row1 = h1_row(Z, row0)
    a = _dims_or_fail(restricted_cohomology(Z, _symmetric_square_bundle(Z)), "S^2F^*|_Z")
    b = _dims_or_fail(restricted_cohomology(Z, _fstar_tensor_omega(Z)), "F^* (x) Omega|_Z")
    c = _dims_or_fail(restricted_cohomology(Z, _omega_square(Z)), "Omega^2|_Z")
    # h^{2,q} forced by conjugation + Serre duality from rows 0 and 1
    known = {
        "x0": row0.values[2],  # h^{2,0} = h^{0,2}
        "x1": row1.values[2],  # h^{2,1} = h^{1,2}
        "x3": row1.values[2],  # h^{2,3} = h^{3,2} = h^{1,2}
        "x4": row0.values[2],  # h^{2,4} = h^{4,2} = h^{0,2}
    }
    x: List[Cell] = [known["x0"], known["x1"], "h22", known["x3"], known["x4"]]
    kcells: List[Cell] = [f"k{q}" for q in range(5)]
    seq_a = _conormal_les(a, b, kcells)   # 0 -> S^2F^*|_Z -> (F^* x Omega)|_Z -> K -> 0
    seq_b = _conormal_les(kcells, c, x)   # 0 -> K -> Omega^2_X|_Z -> Omega^2_Z -> 0
    values, complete = solve_exact_system([seq_a, seq_b])
    return ChaseReport([seq_a, seq_b], known, values, complete)


UNKNOWN = None


@dataclass
class HodgeDiamond:
    """The h^{p,q} array of a d-fold with per-cell provenance flags."""

    d: int
    h: Dict[Tuple[int, int], Optional[int]] = field(default_factory=dict)
    flags: Dict[Tuple[int, int], str] = field(default_factory=dict)

    def set(self, p: int, q: int, value: Optional[int], flag: str):
        self.h[(p, q)] = value
        self.flags[(p, q)] = flag

    def get(self, p: int, q: int) -> Optional[int]:
        return self.h.get((p, q))

    def complete(self) -> bool:
        return all(
            self.h.get((p, q)) is not None
            for p in range(self.d + 1)
            for q in range(self.d + 1)
        )

    def euler_characteristic(self) -> Optional[int]:
        if not self.complete():
            return None
        return sum(
            (-1) ** (p + q) * self.h[(p, q)]
            for p in range(self.d + 1)
            for q in range(self.d + 1)
        )

    def rows(self) -> List[List[Optional[int]]]:
        return [[self.h.get((p, q)) for q in range(self.d + 1)] for p in range(self.d + 1)]


def assemble(Z: ZeroLocus, with_h22: bool = True) -> HodgeDiamond:
    """Full Hodge diamond of Z (d = 3 or 4) with symmetry-forced filling."""
    d = Z.d
    if d not in (3, 4):
        raise ValueError("diamond assembly implemented for 3- and 4-folds")
    row0 = h0_row(Z)
    row1 = h1_row(Z, row0)
    dia = HodgeDiamond(d)
    for q, v in enumerate(row0.values):
        dia.set(0, q, v, "computed" if v is not None else "ambiguous")
    for q, v in enumerate(row1.values):
        dia.set(1, q, v, "computed" if v is not None else "ambiguous")
    if d == 4:
        if with_h22:
            try:
                val = h22(Z, row0, row1)
                dia.set(2, 2, val, "computed")
            except AmbiguousCohomologyError:
                dia.set(2, 2, None, "ambiguous")
        else:
            dia.set(2, 2, None, "ambiguous")
    # symmetry closure: h^{p,q} = h^{q,p} = h^{d-p,d-q}
    changed = True
    while changed:
        changed = False
        for p in range(d + 1):
            for q in range(d + 1):
                v = dia.get(p, q)
                if v is None:
                    continue
                for pp, qq in ((q, p), (d - p, d - q), (d - q, d - p)):
                    if dia.get(pp, qq) is None:
                        dia.set(pp, qq, v, "symmetry-forced")
                        changed = True
                    elif dia.get(pp, qq) != v:
                        raise ChaseStuckError(
                            f"diamond symmetry violated at ({pp},{qq})"
                        )
    for p in range(d + 1):
        for q in range(d + 1):
            if (p, q) not in dia.h:
                dia.set(p, q, None, "ambiguous")
    return dia


def euler_characteristic(dia: HodgeDiamond) -> Optional[int]:
    return dia.euler_characteristic()
