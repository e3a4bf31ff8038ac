"""Exhaustive enumeration of small closed-surface cellulations.

A cellulation of a closed surface is the same data as a signed rotation
system: a cyclic order of edge-ends around each vertex plus a twist bit
per edge.  The enumerator fixes a vertex degree sequence, lays the edge
ends out as slots and depth-first searches over perfect matchings of the
slots with twist bits, tracing faces and orientability incrementally.
Isomorphism rejection is by the canonical form of the flag system.

Symmetry reductions used by the matching search:

R1  Vertices of equal degree are interchangeable and each vertex's
    rotation may be cyclically shifted, so a previously untouched vertex
    is entered only through the lowest-indexed untouched vertex of its
    degree class, at its slot 0.  Pure relabelling, always sound.
R2  The edge that first reaches an untouched vertex is generated
    untwisted (loops and cycle-closing edges get both twist values).
    Justified by local orientation flips; enabled by default and
    cross-checked against the unreduced search in the test suite.

Duality halves the work when the Euler characteristic pins the face
count: sides with more faces than vertices are enumerated as their duals
and dualized back.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from . import homology, invariants, stabilizer, surface
from .surface import Cellulation, CellulationError, FlagMap


class EnumerationBudgetError(RuntimeError):
    """The requested edge count exceeds the enumeration budget."""


MAX_EDGE_COUNT = 10


@dataclass(frozen=True)
class EnumerationConstraints:
    """Filters for the cellulation census.

    chi/orientable describe the target surface (None = unconstrained).
    Systole bounds of 1 are vacuous.  bigon_faces and valence2_vertices
    demand exact counts when set.
    """
    edge_count: int
    chi: int | None = None
    orientable: bool | None = None
    min_primal_systole: int = 1
    min_dual_systole: int = 1
    vertex_count: int | None = None
    bigon_faces: int | None = None
    valence2_vertices: int | None = None

    def __post_init__(self):
        if self.edge_count < 1:
            raise ValueError("edge_count must be at least 1")
        if self.min_primal_systole < 1 or self.min_dual_systole < 1:
            raise ValueError("systole bounds must be at least 1")

    @classmethod
    def rp2(cls, edge_count: int, **kw) -> "EnumerationConstraints":
        return cls(edge_count=edge_count, chi=1, orientable=False, **kw)


# ---------------------------------------------------------------------------
# core matching search over one degree sequence
# ---------------------------------------------------------------------------

def _partitions(total: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing partitions of total into exactly `parts` parts."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = -(-total // parts)  # ceil: keep the sequence feasible
    for first in range(min(cap, total - (parts - 1)), lo - 1, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _scheme_search(degrees: tuple[int, ...],
                   visit: Callable[[list[int], list[int], int, bool], None],
                   f_target: int | None,
                   reduce_tree_twists: bool,
                   max_bigons: int | None = None) -> int:
    """DFS over signed matchings of the slot structure given by degrees.

    Calls visit(s0, s1, faces, orientable) at every complete scheme (the
    matching is guaranteed connected); returns the number of complete
    schemes visited.  f_target, when set, prunes branches whose face
    count already rules out the target Euler characteristic.
    """
    v = len(degrees)
    nslots = sum(degrees)
    starts: list[int] = []
    acc = 0
    for d in degrees:
        starts.append(acc)
        acc += d
    slot_vertex = [i for i, d in enumerate(degrees) for _ in range(d)]
    nflags = 2 * nslots

    # corner involution s1 is fixed by the rotation layout; the side
    # involution s2 is (2s <-> 2s+1) implicitly
    s1 = [0] * nflags
    for i, d in enumerate(degrees):
        for j in range(d):
            a = starts[i] + j
            b = starts[i] + (j + 1) % d
            s1[2 * a + 1] = 2 * b
            s1[2 * b] = 2 * a + 1

    class_of = [0] * v
    for i in range(1, v):
        class_of[i] = class_of[i - 1] + (degrees[i] != degrees[i - 1])

    match = [-1] * nslots
    twist = [0] * nslots
    # face tracing: paths alternating fixed s1 edges and matched s0
    # edges; end[] maps a path endpoint to the opposite endpoint and
    # plen[] holds the path's s0-edge count (= face size on closure + 1)
    end = list(s1)
    plen = [0] * nflags
    parent = list(range(v))
    rel = [0] * v      # orientation parity relative to the union-find parent
    size = [1] * v
    free = list(degrees)
    touched = [False] * v
    st = {"free": nslots, "faces": 0, "conflicts": 0, "leaves": 0,
          "bigons": 0}

    def find(x: int) -> tuple[int, int]:
        p = 0
        while parent[x] != x:
            p ^= rel[x]
            x = parent[x]
        return x, p

    def apply(a: int, b: int, t: int):
        """Match slots a, b with twist t; returns an undo record or None
        when the branch is pruned."""
        rec: list[tuple] = []
        va, vb = slot_vertex[a], slot_vertex[b]
        match[a] = b
        match[b] = a
        twist[a] = t
        twist[b] = t
        st["free"] -= 2
        rec.append(("slots", a, b))
        if not touched[vb]:
            touched[vb] = True
            rec.append(("touch", vb))
        # orientation parity: an untwisted edge keeps the local
        # orientations aligned, a twisted one flips them
        ra, pa = find(va)
        rb, pb = find(vb)
        if ra == rb:
            if (pa ^ pb) != t:
                st["conflicts"] += 1
                rec.append(("conflict",))
            free[ra] -= 2
            rec.append(("free", ra))
            root = ra
        else:
            if size[ra] < size[rb]:
                ra, rb = rb, ra
                pa, pb = pb, pa
            rec.append(("union", rb, size[ra], free[ra]))
            parent[rb] = ra
            rel[rb] = pa ^ pb ^ t
            size[ra] += size[rb]
            free[ra] += free[rb] - 2
            root = ra
        if free[root] == 0 and st["free"] > 0:
            return rec, False  # a closed component with slots left over
        # face tracing: the two s0 flag edges of the new ribbon
        if t == 0:
            pairs = ((2 * a, 2 * b + 1), (2 * a + 1, 2 * b))
        else:
            pairs = ((2 * a, 2 * b), (2 * a + 1, 2 * b + 1))
        for p, q in pairs:
            if end[p] == q:
                st["faces"] += 1
                bigon = plen[p] + 1 == 2
                if bigon:
                    st["bigons"] += 1
                rec.append(("face", bigon))
            else:
                ep, eq = end[p], end[q]
                merged = plen[p] + plen[q] + 1
                rec.append(("ends", ep, end[ep], plen[ep],
                            eq, end[eq], plen[eq]))
                end[ep] = eq
                end[eq] = ep
                plen[ep] = merged
                plen[eq] = merged
        if f_target is not None:
            if st["faces"] > f_target or (st["faces"] == f_target
                                          and st["free"] > 0):
                return rec, False
        if max_bigons is not None and st["bigons"] > max_bigons:
            return rec, False
        return rec, True

    def undo(rec: list[tuple]) -> None:
        for item in reversed(rec):
            tag = item[0]
            if tag == "slots":
                _, a, b = item
                match[a] = -1
                match[b] = -1
                st["free"] += 2
            elif tag == "touch":
                touched[item[1]] = False
            elif tag == "conflict":
                st["conflicts"] -= 1
            elif tag == "free":
                free[item[1]] += 2
            elif tag == "union":
                _, rb, sz, fr = item
                ra = parent[rb]
                parent[rb] = rb
                rel[rb] = 0
                size[ra] = sz
                free[ra] = fr
            elif tag == "face":
                st["faces"] -= 1
                if item[1]:
                    st["bigons"] -= 1
            else:  # ends
                _, ep, oep, olp, eq, oeq, olq = item
                end[ep] = oep
                end[eq] = oeq
                plen[ep] = olp
                plen[eq] = olq

    def emit() -> None:
        st["leaves"] += 1
        s0 = [0] * nflags
        for a in range(nslots):
            b = match[a]
            if b < a:
                continue
            if twist[a] == 0:
                s0[2 * a], s0[2 * b + 1] = 2 * b + 1, 2 * a
                s0[2 * a + 1], s0[2 * b] = 2 * b, 2 * a + 1
            else:
                s0[2 * a], s0[2 * b] = 2 * b, 2 * a
                s0[2 * a + 1], s0[2 * b + 1] = 2 * b + 1, 2 * a + 1
        visit(s0, s1, st["faces"], st["conflicts"] == 0)

    def rec_search(hint: int) -> None:
        if st["free"] == 0:
            emit()
            return
        a = hint
        while match[a] >= 0:
            a += 1
        va = slot_vertex[a]
        seed = not touched[va]
        touched[va] = True
        offered: set[int] = set()
        for b in range(a + 1, nslots):
            if match[b] >= 0:
                continue
            vb = slot_vertex[b]
            fresh = not touched[vb]
            if fresh:
                cls = class_of[vb]
                if b != starts[vb] or cls in offered:
                    continue
                offered.add(cls)
            twists = (0,) if fresh and reduce_tree_twists else (0, 1)
            for t in twists:
                record, ok = apply(a, b, t)
                if ok:
                    rec_search(a + 1)
                undo(record)
        if seed:
            touched[va] = False

    if v and nslots % 2 == 0 and (f_target is None or f_target >= 1):
        rec_search(0)
    return st["leaves"]


# ---------------------------------------------------------------------------
# census driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusStats:
    edge_count: int
    schemes_examined: int
    classes_examined: int
    survivors: int


def _face_sizes(c: Cellulation) -> list[int]:
    return [len(walk) for walk in c.faces]


def _vertex_degrees(c: Cellulation) -> list[int]:
    deg = [0] * c.vertex_count
    for a, b in c.edges:
        deg[a] += 1
        deg[b] += 1
    return deg


def _passes_filters(c: Cellulation, cons: EnumerationConstraints) -> bool:
    if cons.bigon_faces is not None:
        if _face_sizes(c).count(2) != cons.bigon_faces:
            return False
    if cons.valence2_vertices is not None:
        if _vertex_degrees(c).count(2) != cons.valence2_vertices:
            return False
    if cons.min_primal_systole > 1:
        try:
            if homology.systole(c)[0] < cons.min_primal_systole:
                return False
        except homology.TrivialHomologyError:
            pass  # no essential cycles at all: every bound holds
    if cons.min_dual_systole > 1:
        try:
            if homology.dual_systole(c)[0] < cons.min_dual_systole:
                return False
        except homology.TrivialHomologyError:
            pass
    return True


def _enumerate_with_stats(cons: EnumerationConstraints,
                          reduce_tree_twists: bool = True,
                          use_duality: bool = True,
                          progress: Callable[[str], None] | None = None,
                          ) -> tuple[list[Cellulation], CensusStats]:
    if cons.edge_count > MAX_EDGE_COUNT:
        raise EnumerationBudgetError(
            f"edge count {cons.edge_count} exceeds the budget of"
            f" {MAX_EDGE_COUNT}")
    e = cons.edge_count
    chi = cons.chi
    v_lo, v_hi = 1, e + 1
    if chi is not None:
        v_hi = min(v_hi, e + chi - 1)  # face count must stay positive
        v_lo = max(v_lo, chi - e)      # face count is at most 2e
    if cons.vertex_count is not None:
        if not v_lo <= cons.vertex_count <= v_hi:
            return [], CensusStats(e, 0, 0, 0)
        v_lo = v_hi = cons.vertex_count

    seen: set[tuple] = set()
    results: list[Cellulation] = []
    schemes = 0
    classes = 0

    def handle(flags: FlagMap, dualize: bool) -> None:
        nonlocal classes
        side = flags.dual() if dualize else flags
        key = side.canonical_form()
        if key in seen:
            return
        seen.add(key)
        c = side.to_cellulation()
        classes += 1
        if _passes_filters(c, cons):
            results.append(c)

    for v in range(v_lo, v_hi + 1):
        dualize = False
        side_v = v
        if chi is not None and use_duality:
            f = chi - v + e
            if f > v:
                # enumerate the mirror side, which has the finer degree
                # sequences, and dualize each class back
                side_v, dualize = f, True
        f_target = None if chi is None else chi - side_v + e

        def visit(s0, s1, faces, orientable, _dual=dualize):
            if chi is not None and side_v - e + faces != chi:
                return
            if cons.orientable is not None and orientable != cons.orientable:
                return
            nflags = len(s0)
            s2 = [0] * nflags
            for s in range(nflags // 2):
                s2[2 * s] = 2 * s + 1
                s2[2 * s + 1] = 2 * s
            handle(FlagMap(s0, s1, s2), _dual)

        # the enumerated side's vertex degrees and face sizes trade
        # places under dualization, so both structural counts prune
        want2 = cons.bigon_faces if dualize else cons.valence2_vertices
        side_bigons = cons.valence2_vertices if dualize else cons.bigon_faces
        for degs in _partitions(2 * e, side_v, 2 * e):
            if want2 is not None and degs.count(2) != want2:
                continue
            n = _scheme_search(degs, visit, f_target,
                               reduce_tree_twists,
                               max_bigons=side_bigons)
            schemes += n
            if progress is not None:
                progress(f"v={v} side={side_v} degrees={degs}:"
                         f" {n} schemes, {classes} classes so far")

    return results, CensusStats(e, schemes, classes, len(results))


def enumerate_cellulations(cons: EnumerationConstraints,
                           reduce_tree_twists: bool = True,
                           use_duality: bool = True) -> list[Cellulation]:
    """One representative per isomorphism class matching the constraints."""
    return _enumerate_with_stats(cons, reduce_tree_twists, use_duality)[0]


# ---------------------------------------------------------------------------
# the nonexistence report
# ---------------------------------------------------------------------------

def census_report(edge_count: int, min_systole: int = 3,
                  **kw) -> dict:
    """JSON-ready census of projective-plane cellulations at one size."""
    cons = EnumerationConstraints.rp2(
        edge_count, min_primal_systole=min_systole,
        min_dual_systole=min_systole, **kw)
    survivors, stats = _enumerate_with_stats(cons)
    docs = [s.to_json_dict()
            for s in sorted(survivors, key=surface.canonical_form)]
    return {
        "edge_count": edge_count,
        "min_systole": min_systole,
        "schemes_examined": stats.schemes_examined,
        "classes_examined": stats.classes_examined,
        "survivor_count": len(docs),
        "survivors": docs,
    }


def verify_no_small_codes(edge_counts: tuple[int, ...] = (5, 7)) -> dict:
    """Census of RP2 cellulations with both systoles >= 3.

    At 5 and 7 edges the survivor lists must come out empty while the
    examined-class counts stay positive (the filter, not the generator,
    is what empties them).
    """
    return {"reports": [census_report(e) for e in edge_counts]}


# ---------------------------------------------------------------------------
# vertex identification
# ---------------------------------------------------------------------------

def identify_vertices(c: Cellulation, face_index: int,
                      corner_a: int, corner_b: int) -> Cellulation:
    """Pinch one face at two of its corners, merging the corner vertices.

    Corner t of a face walk sits at the start vertex of step t.  The
    pinch splits the face into two closed walks through the merged
    vertex: V drops by 1, F grows by 1, edges and the Euler
    characteristic are unchanged.  Raises CellulationError when the two
    corners sit at the same vertex or the pinch does not close up into a
    surface.
    """
    walk = c.faces[face_index]
    size = len(walk)
    t1, t2 = sorted((corner_a % size, corner_b % size))
    u = c.step_tail(*walk[t1])
    w = c.step_tail(*walk[t2])
    if u == w:
        raise CellulationError("corners lie at the same vertex")
    if w < u:
        u, w = w, u
        # the split below only depends on the corner positions

    def relabel(x: int) -> int:
        if x == w:
            return u
        return x - 1 if x > w else x

    edges = tuple((relabel(a), relabel(b)) for a, b in c.edges)
    part_a = walk[t1:t2]
    part_b = walk[t2:] + walk[:t1]
    faces = tuple(f for i, f in enumerate(c.faces) if i != face_index)
    faces += (tuple(part_a), tuple(part_b))
    merged = Cellulation(c.vertex_count - 1, edges, faces)
    surface.validate(merged)  # raises on pinched stars
    return merged


def all_identifications(c: Cellulation) -> Iterator[Cellulation]:
    """Every valid single vertex identification, one per face-corner pair."""
    for fi, walk in enumerate(c.faces):
        for t1 in range(len(walk)):
            for t2 in range(t1 + 1, len(walk)):
                try:
                    yield identify_vertices(c, fi, t1, t2)
                except CellulationError:
                    continue


def identification_reaches(c: Cellulation, target: Cellulation) -> bool:
    key = surface.canonical_form(target)
    return any(surface.canonical_form(m) == key
               for m in all_identifications(c))


def edge_slides(c: Cellulation) -> Iterator[Cellulation]:
    """Every cellulation one edge slide away, one per resulting class.

    A slide detaches one end of an edge and moves it across an adjacent
    edge to that edge's far endpoint.  Cell counts and the surface are
    unchanged; the two faces meeting the moved end trade the crossed
    edge.  Realized as a local resewing of the corner involution s1.
    """
    flags, labels = surface.build_flags_labeled(c)
    chi = flags.euler_characteristic()
    seen: set[bytes] = set()
    for a1 in range(flags.n):
        # a1: flag of the moving edge end; b1: the crossed edge's near
        # end in the same corner; c1: its far end; d1, x: the corners
        # that open up at the far and near vertex
        b1 = flags.s1[a1]
        a2 = flags.s2[a1]
        x = flags.s1[a2]
        c1 = flags.s0[b1]
        d1 = flags.s1[c1]
        if len({a1, a2, b1, c1, d1, x}) != 6:
            continue
        s1 = list(flags.s1)
        s1[x] = b1
        s1[b1] = x
        s1[a1] = d1
        s1[d1] = a1
        s1[c1] = a2
        s1[a2] = c1
        fm = surface.FlagMap(flags.s0, s1, flags.s2)
        if fm.component_count() != 1 or fm.euler_characteristic() != chi:
            continue
        out = fm.to_cellulation(labels)
        try:
            surface.validate(out)
        except CellulationError:
            continue
        key = surface.canonical_form(out)
        if key not in seen:
            seen.add(key)
            yield out


def identification_with_slides_reaches(c: Cellulation, target: Cellulation,
                                       max_slides: int = 2) -> bool:
    """Does a vertex identification plus at most max_slides edge slides
    land in target's class?"""
    key = surface.canonical_form(target)
    frontier: dict[bytes, Cellulation] = {}
    for m in all_identifications(c):
        k = surface.canonical_form(m)
        if k == key:
            return True
        frontier.setdefault(k, m)
    visited = set(frontier)
    for _ in range(max_slides):
        step: dict[bytes, Cellulation] = {}
        for m in frontier.values():
            for s in edge_slides(m):
                k = surface.canonical_form(s)
                if k == key:
                    return True
                if k not in visited:
                    visited.add(k)
                    step[k] = s
        frontier = step
        if not frontier:
            break
    return False


# ---------------------------------------------------------------------------
# figure reconstruction
# ---------------------------------------------------------------------------

def _rank2_count(c: Cellulation) -> int:
    code = stabilizer.build_code(c)
    return len(invariants.rank_profile(code).rank2_pairs)


def reconstruct_figures() -> tuple[Cellulation, Cellulation, dict]:
    """Rebuild the two nine-edge projective-plane cellulations.

    The coarser one (4 vertices, 6 faces) is pinned by: both systoles at
    least 3, exactly three bigon faces and exactly three rank-2 qubit
    pairs.  The finer one (5 vertices, 5 faces) by: both systoles at
    least 3, exactly one bigon, exactly one valence-2 vertex, exactly
    two rank-2 pairs, and a vertex identification reaching the coarser
    class.  Certificates record every filter value and the survivor
    multiplicities; with several survivors the canonically smallest is
    pinned and flagged.
    """
    fig3_pool = enumerate_cellulations(EnumerationConstraints.rp2(
        9, min_primal_systole=3, min_dual_systole=3,
        vertex_count=4, bigon_faces=3))
    fig3_hits = [c for c in fig3_pool if _rank2_count(c) == 3]
    if not fig3_hits:
        raise CellulationError("no 4-vertex nine-edge class survives")
    fig3_hits.sort(key=surface.canonical_form)
    fig3 = fig3_hits[0]

    fig2_pool = enumerate_cellulations(EnumerationConstraints.rp2(
        9, min_primal_systole=3, min_dual_systole=3,
        vertex_count=5, bigon_faces=1, valence2_vertices=1))
    fig2_hits = [c for c in fig2_pool
                 if _rank2_count(c) == 2 and identification_reaches(c, fig3)]
    if not fig2_hits:
        raise CellulationError("no 5-vertex nine-edge class survives")
    fig2_hits.sort(key=surface.canonical_form)
    fig2 = fig2_hits[0]

    def cert(c: Cellulation, pool: list, hits: list) -> dict:
        info = surface.validate(c)
        return {
            "cellulation": c.to_json_dict(),
            "surface": info.surface_name,
            "vertices": c.vertex_count,
            "edges": c.edge_count,
            "faces": c.face_count,
            "primal_systole": homology.systole(c)[0],
            "dual_systole": homology.dual_systole(c)[0],
            "bigon_faces": _face_sizes(c).count(2),
            "valence2_vertices": _vertex_degrees(c).count(2),
            "rank2_pairs": _rank2_count(c),
            "pool_size": len(pool),
            "survivor_count": len(hits),
            "ambiguous": len(hits) > 1,
        }

    certificates = {
        "fig2": cert(fig2, fig2_pool, fig2_hits),
        "fig3": cert(fig3, fig3_pool, fig3_hits),
        "fig2_identifies_to_fig3": True,
        "fig3_identifies_to_shor": identification_with_slides_reaches(
            fig3, surface.fig4_shor(), max_slides=3),
    }
    return fig2, fig3, certificates


# ---------------------------------------------------------------------------
# sampling for property suites
# ---------------------------------------------------------------------------

def sample_small_cellulations(count: int, seed: int,
                              max_edges: int = 3) -> list[Cellulation]:
    """Deterministic sample from the census of all closed surfaces."""
    import random

    pool: list[Cellulation] = []
    for e in range(1, max_edges + 1):
        pool.extend(enumerate_cellulations(EnumerationConstraints(e)))
    rng = random.Random(seed)
    if count >= len(pool):
        picks = [pool[rng.randrange(len(pool))]
                 for _ in range(count - len(pool))]
        return pool + picks
    return rng.sample(pool, count)
