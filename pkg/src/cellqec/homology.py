"""Z2 homology of a cellulation: H1, essential cycles, systoles."""
from __future__ import annotations

from dataclasses import dataclass

from . import gf2, surface
from .gf2 import Gf2Matrix, Gf2Vector
from .surface import Cellulation


class NonCycleError(ValueError):
    """Essentiality was asked of a chain that is not a cycle."""


class TrivialHomologyError(ValueError):
    """Systole requested on a surface with trivial H1."""


@dataclass(frozen=True)
class HomologySummary:
    z1_dim: int
    b1_dim: int
    h1_dim: int
    primal_systole: int | None   # None = infinite (h1 = 0)
    dual_systole: int | None
    primal_witness: Gf2Vector | None
    dual_witness: Gf2Vector | None


def h1_dim(c: Cellulation) -> int:
    """dim H1(c; Z2) = dim ker(boundary_1) - rank(boundary_2)."""
    fe, ve = surface.incidence_matrices(c)
    z1 = c.edge_count - gf2.rank(ve)
    b1 = gf2.rank(fe)
    return z1 - b1


def is_essential(c: Cellulation, chain: Gf2Vector) -> bool:
    """True iff the cycle is not a sum of face boundaries."""
    fe, ve = surface.incidence_matrices(c)
    return _is_essential(fe, ve, chain)


def _is_essential(fe: Gf2Matrix, ve: Gf2Matrix, chain: Gf2Vector) -> bool:
    if not ve.mul_vector(chain).is_zero():
        raise NonCycleError("chain has nonzero boundary")
    return not gf2.in_span(fe.row_vectors(), chain)


def _class_representatives(fe: Gf2Matrix, ve: Gf2Matrix) -> list[Gf2Vector]:
    """A basis of H1 as cycle representatives (one per basis class)."""
    boundary_rows = list(fe.row_bits)
    reps = []
    span_rows = list(boundary_rows)
    base_rank = len(gf2._eliminate(span_rows, fe.cols))
    for v in gf2.kernel_basis(ve):
        new_rank = len(gf2._eliminate(span_rows + [v.bits], fe.cols))
        if new_rank > base_rank:
            reps.append(v)
            span_rows.append(v.bits)
            base_rank = new_rank
    return reps


def _min_essential(fe: Gf2Matrix, ve: Gf2Matrix) -> tuple[int, Gf2Vector]:
    """Minimum-weight essential cycle by per-class coset search."""
    reps = _class_representatives(fe, ve)
    if not reps:
        raise TrivialHomologyError("surface has trivial first homology")
    boundary_basis = fe.row_vectors()
    best: tuple[int, Gf2Vector] | None = None
    k = len(reps)
    for mask in range(1, 1 << k):
        offset = Gf2Vector.zero(fe.cols)
        for i in range(k):
            if (mask >> i) & 1:
                offset ^= reps[i]
        w, witness = gf2.min_weight_in_coset(boundary_basis, offset)
        if best is None or (w, witness.sort_key()) < (best[0], best[1].sort_key()):
            best = (w, witness)
    return best


def systole(c: Cellulation) -> tuple[int, Gf2Vector]:
    """(length, witness) of a shortest essential cycle."""
    fe, ve = surface.incidence_matrices(c)
    return _min_essential(fe, ve)


def dual_systole(c: Cellulation) -> tuple[int, Gf2Vector]:
    """Shortest essential dual cycle: the roles of the incidences swap."""
    fe, ve = surface.incidence_matrices(c)
    return _min_essential(ve, fe)


def summary(c: Cellulation) -> HomologySummary:
    fe, ve = surface.incidence_matrices(c)
    z1 = c.edge_count - gf2.rank(ve)
    b1 = gf2.rank(fe)
    h1 = z1 - b1
    if h1 == 0:
        return HomologySummary(z1, b1, 0, None, None, None, None)
    ps, pw = _min_essential(fe, ve)
    ds, dw = _min_essential(ve, fe)
    return HomologySummary(z1, b1, h1, ps, ds, pw, dw)
