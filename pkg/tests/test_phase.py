"""Phase function, critical points, region classification, signature table."""

import math

import numpy as np
import pytest

from nnlstep import CutSide, Direction, RegionTag, classify, critical_points, signature_table, theta


class TestDirection:
    def test_validation(self):
        with pytest.raises(ValueError):
            Direction(0.5, -1.0)
        with pytest.raises(ValueError):
            Direction(float("inf"), 1.0)


class TestTheta:
    def test_value_off_cut(self):
        d = Direction(0.5, 1.0)
        k = 2.0
        assert theta(k, d) == pytest.approx((4 * 0.5 + 2 * k) * math.sqrt(3.0))

    def test_boundary_values_opposite(self):
        d = Direction(0.3, 1.0)
        x = -0.6
        assert theta(x, d, CutSide.ABOVE) == pytest.approx(-theta(x, d, CutSide.BELOW))

    def test_pure_imaginary_on_cut(self):
        d = Direction(0.3, 1.0)
        val = theta(0.0, d, CutSide.ABOVE)
        assert val == pytest.approx(4j * 0.3)


class TestCriticalPoints:
    def test_vieta_relations(self):
        d = Direction(0.8, 1.3)
        k1, k2 = critical_points(d)
        assert k1 + k2 == pytest.approx(-d.xi)
        assert k1 * k2 == pytest.approx(-0.5 * d.A**2)
        assert k1 < -d.A < 0 < k2

    def test_stationarity(self):
        d = Direction(0.75, 1.0)
        k1, k2 = critical_points(d)
        eps = 1e-6
        # k1 < -A is off the cut; k2 in (-A, A) needs a side.
        for k0, side in ((k1, CutSide.OFF), (k2, CutSide.ABOVE)):
            dth = (theta(k0 + eps, d, side) - theta(k0 - eps, d, side)) / (2 * eps)
            assert abs(dth) < 1e-6

    def test_half_boundary_hits_branch_point(self):
        k1, _ = critical_points(Direction(0.5, 1.0))
        assert k1 == pytest.approx(-1.0)

    def test_negative_xi_rejected(self):
        with pytest.raises(ValueError):
            critical_points(Direction(-0.1, 1.0))


class TestClassify:
    @pytest.mark.parametrize(
        "xi, tag",
        [
            (0.75, RegionTag.MODULATED_PLUS),
            (-0.75, RegionTag.MODULATED_MINUS),
            (0.2, RegionTag.CENTRAL_PLUS),
            (-0.2, RegionTag.CENTRAL_MINUS),
            (0.5, RegionTag.BOUNDARY),
            (-0.5, RegionTag.BOUNDARY),
            (0.0, RegionTag.BOUNDARY),
        ],
    )
    def test_regions(self, xi, tag):
        assert classify(Direction(xi, 1.0)) is tag

    def test_scales_with_amplitude(self):
        assert classify(Direction(0.75, 2.0)) is RegionTag.CENTRAL_PLUS


class TestSignatureTable:
    def test_grid_avoids_cut_and_matches_pointwise(self):
        d = Direction(0.75, 1.0)
        re, im, sign = signature_table(d, n_re=81, n_im=81)
        assert not np.any(im == 0.0)
        assert sign.shape == (im.size, re.size)
        # Spot-check against a direct evaluation.
        for i, j in ((10, 17), (40, 60), (70, 5)):
            k = re[j] + 1j * im[i]
            fk = np.sqrt(k - 1.0) * np.sqrt(k + 1.0)
            want = np.sign(np.imag((4 * d.xi + 2 * k) * fk))
            assert sign[i, j] == int(want)

    def test_conjugate_antisymmetry(self):
        # Im theta is odd under k -> conj(k) by Schwarz symmetry.
        d = Direction(0.3, 1.0)
        re, im, sign = signature_table(d, n_re=41, n_im=40)
        idx = np.argsort(im)
        s = sign[idx, :]
        mirrored = -s[::-1, :]
        if np.allclose(im[idx], -im[idx][::-1]):
            assert np.array_equal(s, mirrored)
