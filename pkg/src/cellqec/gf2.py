"""Dense bit-packed linear algebra over GF(2).

Vectors and matrices store their entries as Python integers used as bit
sets (bit i = coefficient of coordinate i), so row operations are single
XORs regardless of length.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

# Hard cap on the number of subspace combinations an exhaustive coset
# search may visit.  Exceeding it raises instead of truncating.
COSET_SEARCH_BUDGET = 1 << 28


class SearchBudgetExceeded(RuntimeError):
    """An exhaustive search would visit more combinations than allowed."""


class LengthMismatch(ValueError):
    """Vectors of different ambient dimension were combined."""


@dataclass(frozen=True)
class Gf2Vector:
    """Fixed-length vector over the two-element field."""

    n: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("bits out of range for vector length")

    @classmethod
    def zero(cls, n: int) -> "Gf2Vector":
        return cls(n, 0)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "Gf2Vector":
        bits = 0
        for i in support:
            if not 0 <= i < n:
                raise ValueError(f"index {i} out of range")
            bits |= 1 << i
        return cls(n, bits)

    @classmethod
    def from_list(cls, coeffs: Sequence[int]) -> "Gf2Vector":
        bits = 0
        for i, c in enumerate(coeffs):
            if c % 2:
                bits |= 1 << i
        return cls(len(coeffs), bits)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if (self.bits >> i) & 1)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "Gf2Vector") -> "Gf2Vector":
        if self.n != other.n:
            raise LengthMismatch(f"{self.n} != {other.n}")
        return Gf2Vector(self.n, self.bits ^ other.bits)

    def dot(self, other: "Gf2Vector") -> int:
        if self.n != other.n:
            raise LengthMismatch(f"{self.n} != {other.n}")
        return (self.bits & other.bits).bit_count() & 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def sort_key(self) -> tuple:
        """Deterministic tie-break key: weight first, then earliest support."""
        return (self.weight, self.support())


@dataclass(frozen=True)
class Gf2Matrix:
    """Row-major bit-packed matrix over GF(2)."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_bits) != self.rows:
            raise ValueError("row count mismatch")
        for r in self.row_bits:
            if r < 0 or r >> self.cols:
                raise ValueError("row bits out of range for column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Gf2Matrix":
        if not rows:
            raise ValueError("cannot infer column count from empty row list")
        cols = len(rows[0])
        bits = tuple(Gf2Vector.from_list(r).bits for r in rows)
        return cls(len(rows), cols, bits)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Gf2Vector], cols: int | None = None) -> "Gf2Matrix":
        if cols is None:
            if not vectors:
                raise ValueError("cannot infer column count from empty vector list")
            cols = vectors[0].n
        for v in vectors:
            if v.n != cols:
                raise LengthMismatch(f"{v.n} != {cols}")
        return cls(len(vectors), cols, tuple(v.bits for v in vectors))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.cols, self.row_bits[i])

    def row_vectors(self) -> list[Gf2Vector]:
        return [Gf2Vector(self.cols, b) for b in self.row_bits]

    def entry(self, i: int, j: int) -> int:
        return (self.row_bits[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [self.row(i).to_list() for i in range(self.rows)]

    def transpose(self) -> "Gf2Matrix":
        cols = []
        for j in range(self.cols):
            bits = 0
            for i in range(self.rows):
                bits |= ((self.row_bits[i] >> j) & 1) << i
            cols.append(bits)
        return Gf2Matrix(self.cols, self.rows, tuple(cols))

    def mul_vector(self, v: Gf2Vector) -> Gf2Vector:
        """Matrix-vector product M·v (v indexed by columns)."""
        if v.n != self.cols:
            raise LengthMismatch(f"{v.n} != {self.cols}")
        bits = 0
        for i, r in enumerate(self.row_bits):
            bits |= ((r & v.bits).bit_count() & 1) << i
        return Gf2Vector(self.rows, bits)

    def restrict_columns(self, keep: Sequence[int]) -> "Gf2Matrix":
        keep = list(keep)
        out = []
        for r in self.row_bits:
            bits = 0
            for new_j, j in enumerate(keep):
                bits |= ((r >> j) & 1) << new_j
            out.append(bits)
        return Gf2Matrix(self.rows, len(keep), tuple(out))

    def stack(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.cols != other.cols:
            raise LengthMismatch(f"{self.cols} != {other.cols}")
        return Gf2Matrix(self.rows + other.rows, self.cols,
                         self.row_bits + other.row_bits)


def _eliminate(rows: list[int], cols: int) -> list[int]:
    """Row-echelon reduction in place on a list of row bit sets.

    Returns the list of nonzero reduced rows, pivots in increasing
    column order.
    """
    pivots: list[int] = []  # parallel with reduced rows: pivot column
    reduced: list[int] = []
    for r in rows:
        for p, pr in zip(pivots, reduced):
            if (r >> p) & 1:
                r ^= pr
        if r:
            p = (r & -r).bit_length() - 1
            # back-substitute into earlier rows to keep rows fully reduced
            for i, pr in enumerate(reduced):
                if (pr >> p) & 1:
                    reduced[i] = pr ^ r
            pivots.append(p)
            reduced.append(r)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [reduced[i] for i in order]


def rank(m: Gf2Matrix) -> int:
    """Dimension of the row space of m over GF(2)."""
    return len(_eliminate(list(m.row_bits), m.cols))


def row_reduce(m: Gf2Matrix) -> Gf2Matrix:
    """Reduced row-echelon form with zero rows dropped."""
    red = _eliminate(list(m.row_bits), m.cols)
    return Gf2Matrix(len(red), m.cols, tuple(red))


def kernel_basis(m: Gf2Matrix) -> list[Gf2Vector]:
    """Basis of the right null space {v : M·v = 0}."""
    n = m.cols
    # Gaussian elimination on columns: track combination of unit vectors.
    # Work with augmented rows of the transpose.
    rows = []
    for j in range(n):
        col_bits = 0
        for i in range(m.rows):
            col_bits |= ((m.row_bits[i] >> j) & 1) << i
        rows.append((col_bits, 1 << j))
    pivots: list[tuple[int, int]] = []
    basis = []
    for col_bits, combo in rows:
        for p_bits, p_combo in pivots:
            low = (p_bits & -p_bits)
            if col_bits & low:
                col_bits ^= p_bits
                combo ^= p_combo
        if col_bits:
            pivots.append((col_bits, combo))
        else:
            basis.append(Gf2Vector(n, combo))
    return basis


def in_span(basis: Sequence[Gf2Vector], v: Gf2Vector) -> bool:
    """True iff v is a GF(2) linear combination of basis vectors."""
    for b in basis:
        if b.n != v.n:
            raise LengthMismatch(f"{b.n} != {v.n}")
    reduced = _eliminate([b.bits for b in basis], v.n)
    r = v.bits
    for pr in reduced:
        p = (pr & -pr).bit_length() - 1
        if (r >> p) & 1:
            r ^= pr
    return r == 0


def solve(m: Gf2Matrix, rhs: Gf2Vector) -> Gf2Vector | None:
    """One solution x of M·x = rhs, or None if inconsistent."""
    if rhs.n != m.rows:
        raise LengthMismatch(f"{rhs.n} != {m.rows}")
    # Eliminate on rows of [M^T | I] to express rhs in the column space.
    n = m.cols
    aug = []
    for j in range(n):
        col_bits = 0
        for i in range(m.rows):
            col_bits |= ((m.row_bits[i] >> j) & 1) << i
        aug.append((col_bits, 1 << j))
    pivots: list[tuple[int, int]] = []
    for col_bits, combo in aug:
        for p_bits, p_combo in pivots:
            low = (p_bits & -p_bits)
            if col_bits & low:
                col_bits ^= p_bits
                combo ^= p_combo
        if col_bits:
            pivots.append((col_bits, combo))
    r = rhs.bits
    x = 0
    for p_bits, p_combo in pivots:
        low = (p_bits & -p_bits)
        if r & low:
            r ^= p_bits
            x ^= p_combo
    if r:
        return None
    return Gf2Vector(n, x)


def rowspace_equal(a: Gf2Matrix, b: Gf2Matrix) -> bool:
    """True iff the two matrices span the same row space."""
    if a.cols != b.cols:
        raise LengthMismatch(f"{a.cols} != {b.cols}")
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(a.stack(b))


def min_weight_in_coset(
    subspace_basis: Sequence[Gf2Vector],
    offset: Gf2Vector,
    budget: int | None = None,
) -> tuple[int, Gf2Vector]:
    """Minimum Hamming weight over the coset offset + span(subspace_basis).

    Enumerates the 2^dim subspace combinations in Gray-code order so each
    step is one XOR.  Returns (weight, witness); ties are broken by the
    earliest-support rule of Gf2Vector.sort_key.  Raises
    SearchBudgetExceeded rather than returning an approximate answer.
    """
    if budget is None:
        budget = COSET_SEARCH_BUDGET  # resolved at call time: overridable
    n = offset.n
    basis = _eliminate([b.bits for b in subspace_basis], n)
    for b in subspace_basis:
        if b.n != n:
            raise LengthMismatch(f"{b.n} != {n}")
    dim = len(basis)
    if 1 << dim > budget:
        raise SearchBudgetExceeded(
            f"coset search over 2^{dim} combinations exceeds budget {budget}")
    best_bits = offset.bits
    best_key = (best_bits.bit_count(), best_bits)
    cur = offset.bits
    for i in range(1, 1 << dim):
        cur ^= basis[(i & -i).bit_length() - 1]
        w = cur.bit_count()
        if w < best_key[0]:
            best_bits, best_key = cur, (w, cur)
        elif w == best_key[0]:
            v = Gf2Vector(n, cur)
            if v.sort_key() < Gf2Vector(n, best_bits).sort_key():
                best_bits, best_key = cur, (w, cur)
    witness = Gf2Vector(n, best_bits)
    return witness.weight, witness
