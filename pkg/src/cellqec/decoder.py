"""Syndrome extraction, minimum-weight correction and Monte Carlo runs.

Decoding is exhaustive (certified minimum-weight, lexicographic
tie-break) rather than matching-based: every target instance is small
enough that a Gray-code coset search over the check kernel is exact.
"""
from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from . import gf2
from .gf2 import Gf2Matrix, Gf2Vector
from .stabilizer import CssCode

RNG_ALGORITHM = "numpy-philox4x64(key=seed, counter hi word=trial)"


class InconsistentSyndrome(ValueError):
    """The syndrome is not in the image of the check matrix."""


class SyndromeMismatch(ValueError):
    """Error and correction produce different syndromes."""


@dataclass(frozen=True)
class ErrorPattern:
    x_errors: Gf2Vector  # bit flips, a chain on primal edges
    z_errors: Gf2Vector  # phase errors, a chain on dual edges

    def __post_init__(self):
        if self.x_errors.n != self.z_errors.n:
            raise gf2.LengthMismatch("x/z error lengths differ")

    @classmethod
    def zero(cls, n: int) -> "ErrorPattern":
        return cls(Gf2Vector.zero(n), Gf2Vector.zero(n))


@dataclass(frozen=True)
class Syndrome:
    z_checks: Gf2Vector  # vertex operator eigenvalue flips (from x errors)
    x_checks: Gf2Vector  # face operator eigenvalue flips (from z errors)


def syndrome(code: CssCode, err: ErrorPattern) -> Syndrome:
    if err.x_errors.n != code.n:
        raise gf2.LengthMismatch(f"{err.x_errors.n} != {code.n}")
    return Syndrome(
        z_checks=code.z_stabilizers.mul_vector(err.x_errors),
        x_checks=code.x_stabilizers.mul_vector(err.z_errors),
    )


def _min_weight_chain(checks: Gf2Matrix, syn: Gf2Vector) -> Gf2Vector:
    particular = gf2.solve(checks, syn)
    if particular is None:
        raise InconsistentSyndrome("syndrome outside the check image")
    kernel = gf2.kernel_basis(checks)
    _, chain = gf2.min_weight_in_coset(kernel, particular)
    return chain


def correct(code: CssCode, syn: Syndrome) -> ErrorPattern:
    """Minimum-weight error pattern reproducing the syndrome."""
    return ErrorPattern(
        x_errors=_min_weight_chain(code.z_stabilizers, syn.z_checks),
        z_errors=_min_weight_chain(code.x_stabilizers, syn.x_checks),
    )


def is_failure(code: CssCode, err: ErrorPattern,
               corr: ErrorPattern) -> tuple[bool, bool]:
    """(x_fail, z_fail): does the residual act on the code space?

    x_fail is essentiality of the residual bit-flip chain (nontrivial in
    ker(z_stabilizers)/rowspace(x_stabilizers)); z_fail dually.
    """
    s1, s2 = syndrome(code, err), syndrome(code, corr)
    if s1 != s2:
        raise SyndromeMismatch("correction does not match the error syndrome")
    res_x = err.x_errors ^ corr.x_errors
    res_z = err.z_errors ^ corr.z_errors
    x_fail = not gf2.in_span(code.x_stabilizers.row_vectors(), res_x)
    z_fail = not gf2.in_span(code.z_stabilizers.row_vectors(), res_z)
    return x_fail, z_fail


def decode_error(code: CssCode, err: ErrorPattern) -> tuple[bool, bool]:
    return is_failure(code, err, correct(code, syndrome(code, err)))


@dataclass(frozen=True)
class MonteCarloResult:
    p_x: float
    p_z: float
    trials: int
    x_failures: int
    z_failures: int
    seed: int
    rng_algorithm: str = RNG_ALGORITHM

    def to_csv_row(self) -> str:
        return (f"{self.p_x},{self.p_z},{self.trials},"
                f"{self.x_failures},{self.z_failures},{self.seed}")

    @staticmethod
    def csv_header() -> str:
        return "p_x,p_z,trials,x_failures,z_failures,seed"


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # independent stream per trial: results do not depend on how trials
    # are partitioned across workers
    return np.random.Generator(np.random.Philox(key=seed, counter=trial << 64))


def monte_carlo(code: CssCode, p_x: float, p_z: float, trials: int,
                seed: int) -> MonteCarloResult:
    """iid X/Z errors per qubit; exhaustive decode; deterministic in seed."""
    if not (0.0 <= p_x <= 1.0 and 0.0 <= p_z <= 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    xf = zf = 0
    n = code.n
    for t in range(trials):
        rng = _trial_rng(seed, t)
        draws = rng.random((2, n))
        xb = 0
        zb = 0
        for q in range(n):
            if draws[0, q] < p_x:
                xb |= 1 << q
            if draws[1, q] < p_z:
                zb |= 1 << q
        err = ErrorPattern(Gf2Vector(n, xb), Gf2Vector(n, zb))
        fx, fz = decode_error(code, err)
        xf += fx
        zf += fz
    return MonteCarloResult(p_x, p_z, trials, xf, zf, seed)


@dataclass(frozen=True)
class ExhaustiveSweepRow:
    weight: int
    x_patterns: int
    x_failures: int
    z_patterns: int
    z_failures: int


def exhaustive_weight_sweep(code: CssCode, max_weight: int) -> list[ExhaustiveSweepRow]:
    """Decode every X-only and Z-only error of weight <= max_weight."""
    from itertools import combinations

    rows = []
    n = code.n
    for w in range(max_weight + 1):
        xp = xf = zp = zf = 0
        for support in combinations(range(n), w):
            v = Gf2Vector.from_support(n, support)
            fx, _ = decode_error(code, ErrorPattern(v, Gf2Vector.zero(n)))
            xp += 1
            xf += fx
            _, fz = decode_error(code, ErrorPattern(Gf2Vector.zero(n), v))
            zp += 1
            zf += fz
        rows.append(ExhaustiveSweepRow(w, xp, xf, zp, zf))
    return rows


def sweep_csv(results: list[MonteCarloResult]) -> str:
    buf = io.StringIO()
    buf.write(MonteCarloResult.csv_header() + "\n")
    for r in results:
        buf.write(r.to_csv_row() + "\n")
    return buf.getvalue()
