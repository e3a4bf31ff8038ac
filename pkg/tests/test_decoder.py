import pytest

from cellqec import decoder, homology, stabilizer, surface
from cellqec.decoder import ErrorPattern, Syndrome
from cellqec.gf2 import Gf2Vector


def _code(name):
    return stabilizer.build_code(surface.catalog(name))


class TestSyndrome:
    def test_zero_error_zero_syndrome(self):
        code = _code("fig4_shor")
        s = decoder.syndrome(code, ErrorPattern.zero(code.n))
        assert s.z_checks.is_zero() and s.x_checks.is_zero()

    def test_linearity(self):
        code = _code("fig4_shor")
        a = ErrorPattern(Gf2Vector.from_support(9, [0, 4]), Gf2Vector.zero(9))
        b = ErrorPattern(Gf2Vector.from_support(9, [4, 7]), Gf2Vector.zero(9))
        ab = ErrorPattern(a.x_errors ^ b.x_errors, Gf2Vector.zero(9))
        sa, sb = decoder.syndrome(code, a), decoder.syndrome(code, b)
        sab = decoder.syndrome(code, ab)
        assert sab.z_checks == sa.z_checks ^ sb.z_checks

    def test_length_check(self):
        with pytest.raises(Exception):
            decoder.syndrome(_code("fig4_shor"), ErrorPattern.zero(5))


class TestCorrect:
    def test_every_weight_one_error_is_corrected(self):
        code = _code("fig4_shor")
        n = code.n
        for q in range(n):
            v = Gf2Vector.from_support(n, [q])
            assert decoder.decode_error(
                code, ErrorPattern(v, Gf2Vector.zero(n))) == (False, False)
            assert decoder.decode_error(
                code, ErrorPattern(Gf2Vector.zero(n), v)) == (False, False)

    def test_correction_may_differ_by_a_stabilizer(self):
        # X on edge 1 and X on edge 0 share a syndrome; the residual is
        # the bigon face operator, so no logical failure
        code = _code("fig4_shor")
        err = ErrorPattern(Gf2Vector.from_support(9, [1]), Gf2Vector.zero(9))
        corr = decoder.correct(code, decoder.syndrome(code, err))
        assert corr.x_errors.weight == 1
        assert decoder.is_failure(code, err, corr) == (False, False)

    def test_systole_witness_fails_silently(self):
        # an essential cycle has zero syndrome, so the decoder applies no
        # correction and the logical state is corrupted
        c = surface.fig4_shor()
        code = stabilizer.build_code(c)
        _, witness = homology.systole(c)
        err = ErrorPattern(witness, Gf2Vector.zero(9))
        syn = decoder.syndrome(code, err)
        assert syn.z_checks.is_zero()
        corr = decoder.correct(code, syn)
        assert corr.x_errors.is_zero()
        assert decoder.is_failure(code, err, corr) == (True, False)

    def test_inconsistent_syndrome_rejected(self):
        code = _code("fig4_shor")
        bad = Syndrome(z_checks=Gf2Vector.from_support(3, [0]),
                       x_checks=Gf2Vector.zero(7))
        with pytest.raises(decoder.InconsistentSyndrome):
            decoder.correct(code, bad)

    def test_mismatched_correction_rejected(self):
        code = _code("fig4_shor")
        err = ErrorPattern(Gf2Vector.from_support(9, [0]), Gf2Vector.zero(9))
        with pytest.raises(decoder.SyndromeMismatch):
            decoder.is_failure(code, err, ErrorPattern.zero(9))

    def test_toric_weight_one(self):
        code = _code("toric(3,3)")
        for q in range(code.n):
            v = Gf2Vector.from_support(code.n, [q])
            assert decoder.decode_error(
                code, ErrorPattern(v, Gf2Vector.zero(code.n))) == (False, False)


class TestExhaustiveSweep:
    def test_weight_one_sweep(self):
        rows = decoder.exhaustive_weight_sweep(_code("fig4_shor"), 1)
        assert rows[0] == decoder.ExhaustiveSweepRow(0, 1, 0, 1, 0)
        assert rows[1].x_patterns == rows[1].z_patterns == 9
        assert rows[1].x_failures == rows[1].z_failures == 0

    def test_weight_two_sees_failures(self):
        # distance 3: some weight-2 errors decode to the wrong class
        rows = decoder.exhaustive_weight_sweep(_code("fig4_shor"), 2)
        assert rows[2].x_failures > 0
        assert rows[2].z_failures > 0


class TestMonteCarlo:
    def test_deterministic_in_seed(self):
        code = _code("fig4_shor")
        a = decoder.monte_carlo(code, 0.1, 0.1, trials=40, seed=11)
        b = decoder.monte_carlo(code, 0.1, 0.1, trials=40, seed=11)
        assert a == b
        c = decoder.monte_carlo(code, 0.1, 0.1, trials=40, seed=12)
        assert (a.x_failures, a.z_failures) != (c.x_failures, c.z_failures) \
            or a.seed != c.seed

    def test_zero_rate_never_fails(self):
        res = decoder.monte_carlo(_code("fig4_shor"), 0.0, 0.0,
                                  trials=25, seed=3)
        assert res.x_failures == res.z_failures == 0

    def test_trial_streams_are_position_independent(self):
        # trial t draws from its own keyed stream, so any partition of
        # the trial range reproduces the same per-trial randomness
        r1 = decoder._trial_rng(5, 17).random(4)
        r2 = decoder._trial_rng(5, 17).random(4)
        r3 = decoder._trial_rng(5, 18).random(4)
        assert (r1 == r2).all()
        assert (r1 != r3).any()

    def test_probability_validation(self):
        with pytest.raises(ValueError):
            decoder.monte_carlo(_code("fig4_shor"), 1.5, 0.0, 1, 0)

    def test_csv_format(self):
        res = decoder.monte_carlo(_code("fig4_shor"), 0.05, 0.0,
                                  trials=10, seed=2)
        text = decoder.sweep_csv([res])
        lines = text.strip().split("\n")
        assert lines[0] == "p_x,p_z,trials,x_failures,z_failures,seed"
        assert lines[1].startswith("0.05,0.0,10,")
        assert lines[1].endswith(",2")
