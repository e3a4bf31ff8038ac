"""CSS stabilizer codes of cellulations and planar punctured-disk codes.

Convention (fixed throughout): face operators are X-type, vertex
operators are Z-type.  d_z (bit-flip distance) is the primal systole,
d_x (phase distance) the dual systole.  logical_x vectors live in
ker(vertex_edge) \\ rowspace(face_edge); logical_z dually.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from . import gf2, homology, surface
from .gf2 import Gf2Matrix, Gf2Vector
from .surface import Cellulation


@dataclass(frozen=True)
class PauliOperator:
    """Symplectic representation of a tensor product of Pauli matrices."""

    n: int
    x_bits: int
    z_bits: int
    phase: int = 1  # +1 or -1

    def __post_init__(self):
        if self.phase not in (1, -1):
            raise ValueError("phase must be +1 or -1")

    @classmethod
    def x_type(cls, support: Gf2Vector) -> "PauliOperator":
        return cls(support.n, support.bits, 0)

    @classmethod
    def z_type(cls, support: Gf2Vector) -> "PauliOperator":
        return cls(support.n, 0, support.bits)

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise gf2.LengthMismatch(f"{self.n} != {other.n}")
        # moving other's X part past self's Z part costs one sign per overlap
        sign = -1 if (self.z_bits & other.x_bits).bit_count() & 1 else 1
        return PauliOperator(self.n, self.x_bits ^ other.x_bits,
                             self.z_bits ^ other.z_bits,
                             self.phase * other.phase * sign)

    def commutes_with(self, other: "PauliOperator") -> bool:
        s = (self.x_bits & other.z_bits).bit_count()
        s += (self.z_bits & other.x_bits).bit_count()
        return s % 2 == 0

    def hadamard_all(self) -> "PauliOperator":
        """Conjugate every tensor factor by H: swaps the X and Z parts."""
        return PauliOperator(self.n, self.z_bits, self.x_bits, self.phase)

    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    def to_string(self) -> str:
        out = []
        for i in range(self.n):
            x = (self.x_bits >> i) & 1
            z = (self.z_bits >> i) & 1
            out.append("IXZY"[x + 2 * z])
        prefix = "" if self.phase == 1 else "-"
        return prefix + "".join(out)


@dataclass(frozen=True)
class CssCode:
    n: int
    x_stabilizers: Gf2Matrix
    z_stabilizers: Gf2Matrix
    k: int
    d_x: int | None
    d_z: int | None
    logical_x: tuple[Gf2Vector, ...] = field(default=())
    logical_z: tuple[Gf2Vector, ...] = field(default=())

    def parameters(self) -> tuple:
        return (self.n, self.k, self.d_x, self.d_z)

    def x_operators(self) -> list[PauliOperator]:
        return [PauliOperator.x_type(r) for r in self.x_stabilizers.row_vectors()]

    def z_operators(self) -> list[PauliOperator]:
        return [PauliOperator.z_type(r) for r in self.z_stabilizers.row_vectors()]

    def pauli_strings(self) -> list[str]:
        return ([p.to_string() for p in self.x_operators()]
                + [p.to_string() for p in self.z_operators()])

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d_x": self.d_x,
            "d_z": self.d_z,
            "x_stabilizers": self.x_stabilizers.to_lists(),
            "z_stabilizers": self.z_stabilizers.to_lists(),
            "logical_x": [v.to_list() for v in self.logical_x],
            "logical_z": [v.to_list() for v in self.logical_z],
        }


def _quotient_representatives(vectors: Sequence[Gf2Vector],
                              modulo_rows: Sequence[int],
                              cols: int) -> list[Gf2Vector]:
    """Vectors forming a basis of span(vectors) modulo span(modulo_rows)."""
    reduced = gf2._eliminate(list(modulo_rows), cols)
    reps = []
    for v in vectors:
        r = v.bits
        for pr in reduced:
            p = (pr & -pr).bit_length() - 1
            if (r >> p) & 1:
                r ^= pr
        if r:
            # absorb into the elimination so later vectors are independent
            p = (r & -r).bit_length() - 1
            for i, pr in enumerate(reduced):
                if (pr >> p) & 1:
                    reduced[i] = pr ^ r
            reduced.append(r)
            reps.append(v)
    return reps


def _invert_gf2(rows: list[int], k: int) -> list[int]:
    """Inverse of a k x k GF(2) matrix given as row bit sets."""
    aug = [rows[i] | (1 << (k + i)) for i in range(k)]
    red = gf2._eliminate(aug, 2 * k)
    if len(red) != k:
        raise ValueError("matrix is singular over GF(2)")
    inv = [0] * k
    for r in red:
        p = (r & -r).bit_length() - 1
        if p >= k:
            raise ValueError("matrix is singular over GF(2)")
        inv[p] = r >> k
    return inv


def _normalize_pairing(logical_x: list[Gf2Vector],
                       logical_z: list[Gf2Vector]) -> list[Gf2Vector]:
    """Recombine logical_x so that logical_x[i] . logical_z[j] = delta_ij."""
    k = len(logical_z)
    gram = []
    for lx in logical_x:
        bits = 0
        for j, lz in enumerate(logical_z):
            bits |= lx.dot(lz) << j
        gram.append(bits)
    inv = _invert_gf2(gram, k)
    out = []
    for i in range(k):
        acc = Gf2Vector.zero(logical_x[0].n)
        for a in range(k):
            if (inv[i] >> a) & 1:
                acc ^= logical_x[a]
        out.append(acc)
    return out


def build_code(c: Cellulation) -> CssCode:
    """The CSS code of a cellulation: X on faces, Z on vertices."""
    fe, ve = surface.incidence_matrices(c)
    n = c.edge_count
    k = n - gf2.rank(fe) - gf2.rank(ve)
    if k == 0:
        return CssCode(n, fe, ve, 0, None, None)
    # minimum-weight witness per homology basis class, both sides.  An
    # X-type logical must commute with every vertex Z check, so its
    # support is a primal cycle; dually Z-type logicals ride dual cycles.
    logical_x = _class_minimal_witnesses(fe, ve)
    logical_z = _class_minimal_witnesses(ve, fe)
    d_z = min(v.weight for v in logical_x)
    d_x = min(v.weight for v in logical_z)
    # global minima can live in non-basis classes; take the true systoles
    d_z = min(d_z, homology._min_essential(fe, ve)[0])
    d_x = min(d_x, homology._min_essential(ve, fe)[0])
    logical_x = _normalize_pairing(logical_x, logical_z)
    return CssCode(n, fe, ve, k, d_x, d_z,
                   tuple(logical_x), tuple(logical_z))


def _class_minimal_witnesses(fe: Gf2Matrix, ve: Gf2Matrix) -> list[Gf2Vector]:
    reps = homology._class_representatives(fe, ve)
    basis = fe.row_vectors()
    return [gf2.min_weight_in_coset(basis, r)[1] for r in reps]


def check_relations(code: CssCode) -> bool:
    """XOR of all face rows and of all vertex rows must both vanish."""
    x = 0
    for r in code.x_stabilizers.row_bits:
        x ^= r
    z = 0
    for r in code.z_stabilizers.row_bits:
        z ^= r
    return x == 0 and z == 0


def commutes(code: CssCode) -> bool:
    """Every X generator commutes with every Z generator."""
    for xr in code.x_stabilizers.row_bits:
        for zr in code.z_stabilizers.row_bits:
            if (xr & zr).bit_count() & 1:
                return False
    return True


def hadamard_dual_equivalent(c: Cellulation) -> bool:
    """Code of the dual cellulation = Hadamard-rotated original code.

    Checked as row-space equality after the edge <-> dual edge
    identification (dual edge i corresponds to primal edge i).
    """
    code = build_code(c)
    dcode = build_code(surface.dual(c))
    return (gf2.rowspace_equal(code.x_stabilizers, dcode.z_stabilizers)
            and gf2.rowspace_equal(code.z_stabilizers, dcode.x_stabilizers))


# ---------------------------------------------------------------------------
# generic CSS distance via the incidence graph of the check matrices
# ---------------------------------------------------------------------------

class UnsupportedCheckStructure(ValueError):
    """A check matrix column touches more than two generators."""


def _min_weight_logical(check: Gf2Matrix,
                        functionals: Sequence[Gf2Vector]) -> tuple[int, Gf2Vector]:
    """Minimum weight over ker(check) minus the dual-trivial subspace.

    check must have column weights <= 2, so its kernel is the cycle space
    of a graph (columns of weight 1 attach to a single virtual boundary
    node; columns of weight 0 are free single-edge cycles).  A vector is
    nontrivial iff it pairs oddly with some functional; the minimum is
    found by breadth-first search in the 2^k-fold parity cover, which is
    exact because a minimum-weight nontrivial vector always contains a
    nontrivial connected cycle of no larger weight.
    """
    n = check.cols
    k = len(functionals)
    if k == 0:
        raise ValueError("no functionals: code has k = 0")
    tau = [0] * n
    for e in range(n):
        for i, f in enumerate(functionals):
            tau[e] |= ((f.bits >> e) & 1) << i
    rows_of: list[list[int]] = [[] for _ in range(n)]
    for i, rb in enumerate(check.row_bits):
        b = rb
        while b:
            e = (b & -b).bit_length() - 1
            rows_of[e].append(i)
            b &= b - 1
    virtual = check.rows
    use_virtual = any(len(r) == 1 for r in rows_of)
    n_nodes = check.rows + (1 if use_virtual else 0)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_nodes)]
    best: tuple[int, int] | None = None  # (weight, bits)
    for e in range(n):
        rs = rows_of[e]
        if len(rs) > 2:
            raise UnsupportedCheckStructure(
                f"column {e} touches {len(rs)} generators")
        if len(rs) == 0:
            if tau[e]:
                cand = (1, 1 << e)
                if best is None or cand < best:
                    best = cand
            continue
        a = rs[0]
        b = rs[1] if len(rs) == 2 else virtual
        adj[a].append((b, e))
        adj[b].append((a, e))
    nk = 1 << k
    for start in range(n_nodes):
        # BFS over (node, parity) states from (start, 0)
        size = n_nodes * nk
        dist = [-1] * size
        parent: list[tuple[int, int] | None] = [None] * size  # (prev_state, edge)
        s0 = start * nk
        dist[s0] = 0
        q = deque([s0])
        limit = best[0] if best is not None else None
        while q:
            st = q.popleft()
            d = dist[st]
            if limit is not None and d + 1 > limit:
                break
            node, par = divmod(st, nk)
            for other, e in adj[node]:
                t2 = other * nk + (par ^ tau[e])
                if dist[t2] < 0:
                    dist[t2] = d + 1
                    parent[t2] = (st, e)
                    q.append(t2)
        for t in range(1, nk):
            st = start * nk + t
            if dist[st] < 0:
                continue
            bits = 0
            cur = st
            while parent[cur] is not None:
                prev, e = parent[cur]
                bits ^= 1 << e
                cur = prev
            cand = (bits.bit_count(), bits)
            if cand[0] and (best is None or cand < best):
                best = cand
    if best is None:
        raise ValueError("no nontrivial vector found; functionals inconsistent")
    return best[0], Gf2Vector(n, best[1])


def _logical_representatives(code: CssCode) -> tuple[list[Gf2Vector], list[Gf2Vector]]:
    """(x-side, z-side) homology-class bases from the check matrices.

    x-side reps span ker(x_stabilizers) / rowspace(z_stabilizers); z-side
    reps span ker(z_stabilizers) / rowspace(x_stabilizers).
    """
    xk = gf2.kernel_basis(code.x_stabilizers)
    zk = gf2.kernel_basis(code.z_stabilizers)
    x_side = _quotient_representatives(xk, code.z_stabilizers.row_bits, code.n)
    z_side = _quotient_representatives(zk, code.x_stabilizers.row_bits, code.n)
    return x_side, z_side


def css_distance(code: CssCode) -> tuple[int, int]:
    """(d_x, d_z) computed from the check matrices alone.

    d_z = min weight in ker(z_stabilizers) \\ rowspace(x_stabilizers);
    d_x with the roles swapped.  Uses the parity-cover graph search, so
    it scales to the large planar instances.
    """
    if code.k < 1:
        raise ValueError("distance undefined for k = 0")
    x_side, z_side = _logical_representatives(code)
    d_z, _ = _min_weight_logical(code.z_stabilizers, x_side)
    d_x, _ = _min_weight_logical(code.x_stabilizers, z_side)
    return d_x, d_z


# ---------------------------------------------------------------------------
# puncturing: planarization by discarding one face and one vertex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PunctureResult:
    code: CssCode
    row_spaces_preserved: bool
    planar: bool


def _drop_row(m: Gf2Matrix, i: int) -> Gf2Matrix:
    if not 0 <= i < m.rows:
        raise IndexError(i)
    rows = m.row_bits[:i] + m.row_bits[i + 1:]
    return Gf2Matrix(m.rows - 1, m.cols, rows)


def _tanner_planar(x_stab: Gf2Matrix, z_stab: Gf2Matrix) -> bool:
    import networkx as nx

    g = nx.Graph()
    n = x_stab.cols
    for q in range(n):
        g.add_node(("q", q))
    for i, r in enumerate(x_stab.row_bits):
        for q in range(n):
            if (r >> q) & 1:
                g.add_edge(("x", i), ("q", q))
    for i, r in enumerate(z_stab.row_bits):
        for q in range(n):
            if (r >> q) & 1:
                g.add_edge(("z", i), ("q", q))
    ok, _ = nx.check_planarity(g)
    return ok


def puncture(c: Cellulation, face_id: int, vertex_id: int) -> PunctureResult:
    """Delete one face row and one vertex row; the code is unchanged.

    The product relations make any single face and vertex generator
    redundant, so the stabilizer row spaces -- and hence all code
    parameters -- are preserved.  The planarity flag reports whether the
    remaining generators admit a planar Tanner-graph layout.
    """
    full = build_code(c)
    x2 = _drop_row(full.x_stabilizers, face_id)
    z2 = _drop_row(full.z_stabilizers, vertex_id)
    preserved = (gf2.rowspace_equal(full.x_stabilizers, x2)
                 and gf2.rowspace_equal(full.z_stabilizers, z2))
    code = CssCode(full.n, x2, z2, full.k, full.d_x, full.d_z,
                   full.logical_x, full.logical_z)
    return PunctureResult(code, preserved, _tanner_planar(x2, z2))


# ---------------------------------------------------------------------------
# planar punctured-disk codes on the square lattice
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlanarPatch:
    """A width x height block of unit squares with rectangular holes.

    Holes are (x, y, w, h) rectangles in face coordinates.  Qubits live
    on the edges of the punctured region; X generators are the kept unit
    squares, Z generators all vertices.  The discarded outer face and the
    closed-surface completion vertex are exactly the redundant
    generators, so k equals the number of holes.
    """

    width: int
    height: int
    holes: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("patch must have positive size")
        for x, y, w, h in self.holes:
            if w < 1 or h < 1:
                raise ValueError("hole must have positive size")
            if x < 1 or y < 1 or x + w > self.width - 1 or y + h > self.height - 1:
                raise ValueError("hole touches the outer boundary")
        for i, a in enumerate(self.holes):
            for b in self.holes[i + 1:]:
                if (a[0] < b[0] + b[2] and b[0] < a[0] + a[2]
                        and a[1] < b[1] + b[3] and b[1] < a[1] + a[3]):
                    raise ValueError("holes overlap")

    def to_json_dict(self) -> dict:
        return {"width": self.width, "height": self.height,
                "holes": [list(h) for h in self.holes]}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "PlanarPatch":
        return cls(int(doc["width"]), int(doc["height"]),
                   tuple(tuple(int(v) for v in h) for h in doc["holes"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "PlanarPatch":
        return cls.from_json_dict(json.loads(text))


def _patch_in_hole(patch: PlanarPatch, fx: int, fy: int) -> bool:
    for x, y, w, h in patch.holes:
        if x <= fx < x + w and y <= fy < y + h:
            return True
    return False


def build_punctured_disk_code(patch: PlanarPatch) -> CssCode:
    """CSS code of a punctured disk; k = number of holes."""
    W, H = patch.width, patch.height
    # vertices strictly inside a hole are absent
    vid: dict[tuple[int, int], int] = {}
    for i in range(W + 1):
        for j in range(H + 1):
            interior = any(x < i < x + w and y < j < y + h
                           for x, y, w, h in patch.holes)
            if not interior:
                vid[(i, j)] = len(vid)
    edges: list[tuple[int, int]] = []
    eid: dict[tuple, int] = {}
    # horizontal edge ('h', i, j): (i,j)-(i+1,j); interior to a hole iff
    # its open segment lies inside one
    for i in range(W):
        for j in range(H + 1):
            inside = any(x <= i < x + w and y < j < y + h
                         for x, y, w, h in patch.holes)
            if not inside:
                eid[("h", i, j)] = len(edges)
                edges.append((vid[(i, j)], vid[(i + 1, j)]))
    for i in range(W + 1):
        for j in range(H):
            inside = any(x < i < x + w and y <= j < y + h
                         for x, y, w, h in patch.holes)
            if not inside:
                eid[("v", i, j)] = len(edges)
                edges.append((vid[(i, j)], vid[(i, j + 1)]))
    n = len(edges)
    x_rows = []
    for i in range(W):
        for j in range(H):
            if _patch_in_hole(patch, i, j):
                continue
            bits = (1 << eid[("h", i, j)]) | (1 << eid[("h", i, j + 1)])
            bits |= (1 << eid[("v", i, j)]) | (1 << eid[("v", i + 1, j)])
            x_rows.append(bits)
    z_rows = [0] * len(vid)
    for e, (a, b) in enumerate(edges):
        z_rows[a] ^= 1 << e
        z_rows[b] ^= 1 << e
    x_stab = Gf2Matrix(len(x_rows), n, tuple(x_rows))
    z_stab = Gf2Matrix(len(z_rows), n, tuple(z_rows))
    k = n - gf2.rank(x_stab) - gf2.rank(z_stab)
    if k != len(patch.holes):
        raise AssertionError(
            f"expected k = {len(patch.holes)} holes, computed {k}")
    partial = CssCode(n, x_stab, z_stab, k, None, None)
    if k == 0:
        return partial
    x_side, z_side = _logical_representatives(partial)
    d_z, _ = _min_weight_logical(z_stab, x_side)
    d_x, _ = _min_weight_logical(x_stab, z_side)
    # z_side lives in ker(z_stab), so those supports carry X-type logicals
    logical_x = _normalize_pairing(z_side, x_side)
    return CssCode(n, x_stab, z_stab, k, d_x, d_z,
                   tuple(logical_x), tuple(x_side))


def planar_two_holes_patch() -> PlanarPatch:
    """The shipped two-qubit planar instance: d_x = 7, d_z = 4.

    Unit holes with margin 6 to the boundary and separation 7, the
    smallest axis-aligned layout whose hole-to-boundary and hole-to-hole
    dual paths all cost at least 7 edges.
    """
    return PlanarPatch(20, 13, ((6, 6, 1, 1), (13, 6, 1, 1)))
