import json
import math

import numpy as np
import pytest

from torusgeo.spectrum import (
    FieldError,
    SpectralField,
    evaluate,
    grad_l2_norm,
    l2_norm,
    norms,
    parse_field,
    preset_random,
    preset_sine,
    serialize_field,
)

COS_X_DOC = '{"coefficients": [{"k": [1, 0], "re": 0.5, "im": 0.0}]}'


def cos_x_field():
    return parse_field(COS_X_DOC)


class TestParse:
    def test_hermitian_completion_of_half_spectrum(self):
        field = cos_x_field()
        assert field.coefficients == {(1, 0): 0.5 + 0j, (-1, 0): 0.5 - 0j}
        assert field.bandlimit == 1.0

    def test_nonzero_mean_rejected(self):
        with pytest.raises(FieldError, match="mean"):
            parse_field('{"coefficients": [{"k": [0, 0], "re": 1.0, "im": 0.0}]}')

    def test_conjugate_pair_accepted(self):
        doc = json.dumps(
            {
                "coefficients": [
                    {"k": [1, 2], "re": 0.0, "im": -0.5},
                    {"k": [-1, -2], "re": 0.0, "im": 0.5},
                ]
            }
        )
        field = parse_field(doc)
        assert field.bandlimit == math.sqrt(5.0)
        assert field.get((1, 2)) == -0.5j

    def test_conflicting_pair_rejected(self):
        doc = json.dumps(
            {
                "coefficients": [
                    {"k": [1, 2], "re": 0.3, "im": 0.0},
                    {"k": [-1, -2], "re": 0.1, "im": 0.0},
                ]
            }
        )
        with pytest.raises(FieldError, match="conjugate"):
            parse_field(doc)

    def test_malformed_frequency_rejected(self):
        with pytest.raises(FieldError, match="frequency"):
            parse_field('{"coefficients": [{"k": [1.5, 0], "re": 0.5, "im": 0.0}]}')
        with pytest.raises(FieldError, match="frequency"):
            parse_field('{"coefficients": [{"k": [1], "re": 0.5, "im": 0.0}]}')

    def test_invalid_json_rejected(self):
        with pytest.raises(FieldError, match="JSON"):
            parse_field("{not json")

    def test_roundtrip_emits_both_pair_members(self):
        field = preset_sine(3)
        text = serialize_field(field)
        doc = json.loads(text)
        keys = {tuple(item["k"]) for item in doc["coefficients"]}
        assert keys == {(1, 3), (-1, -3)}
        assert parse_field(text) == field


class TestPresets:
    def test_sine_coefficients(self):
        field = preset_sine(1)
        assert field.get((1, 1)) == -0.5j
        assert field.get((-1, -1)) == 0.5j
        assert len(field) == 2
        # Plancherel on the two coefficients of modulus 1/2
        assert l2_norm(field) ** 2 == pytest.approx(0.5, abs=1e-15)

    def test_sine_bandlimit(self):
        assert preset_sine(3).bandlimit == math.sqrt(10.0)

    def test_sine_grad_norm(self):
        # 4*pi^2 * |k|^2 * total mass = 4*pi^2 * 5 * 1/2 for ell = 2
        assert grad_l2_norm(preset_sine(2)) ** 2 == pytest.approx(10.0 * math.pi**2, rel=1e-14)

    def test_sine_requires_positive_ell(self):
        with pytest.raises(ValueError):
            preset_sine(0)

    def test_random_deterministic(self):
        assert preset_random(5, 0.0, 42) == preset_random(5, 0.0, 42)
        assert preset_random(5, 0.0, 42) != preset_random(5, 0.0, 43)

    def test_random_radius_one_support(self):
        field = preset_random(1, 0.7, 3)
        assert set(field.coefficients) <= {(1, 0), (-1, 0), (0, 1), (0, -1)}

    def test_random_invariants(self):
        for seed in range(5):
            preset_random(8, 2.0, seed).check_invariants()


class TestEvaluate:
    def test_cos_at_origin(self):
        assert evaluate(cos_x_field(), (0.0, 0.0)) == pytest.approx(1.0, abs=1e-14)

    def test_sine_quarter_period(self):
        assert evaluate(preset_sine(1), (0.25, 0.0)) == pytest.approx(1.0, abs=1e-14)

    def test_sine2_zero_crossing(self):
        # sin(2*pi*(0.1 + 2*0.2)) = sin(pi) = 0
        assert abs(evaluate(preset_sine(2), (0.1, 0.2))) <= 1e-12

    def test_matches_direct_synthesis(self):
        field = preset_random(4, 1.0, 11)
        rng = np.random.default_rng(0)
        for _ in range(20):
            x, y = rng.uniform(), rng.uniform()
            direct = sum(
                (c * np.exp(2j * np.pi * (k[0] * x + k[1] * y))).real
                for k, c in field.coefficients.items()
            )
            assert evaluate(field, (x, y)) == pytest.approx(direct, abs=1e-12)


class TestNorms:
    def test_sine1_closed_forms(self):
        nr = norms(preset_sine(1), s_max=1)
        assert nr.l2 == pytest.approx(math.sqrt(0.5), rel=1e-14)
        assert nr.grad_l2 == pytest.approx(2.0 * math.pi, rel=1e-14)

    def test_sine1_second_derivative_l1(self):
        # d^2/dx^2 sin(2pi(x+y)) has |.|-integral (2pi)^2 * 2/pi = 8*pi;
        # oracle: 1-D high-resolution quadrature of |cos|
        grid_1d = (np.arange(200_001) + 0.5) / 200_001
        abs_cos_integral = np.mean(np.abs(np.cos(2.0 * np.pi * grid_1d)))
        assert abs_cos_integral == pytest.approx(2.0 / math.pi, abs=1e-8)
        nr = norms(preset_sine(1), s_max=2, grid=1024)
        assert nr.deriv_l1[2] == pytest.approx(8.0 * math.pi, rel=1e-3)

    def test_ratio_for_single_pair(self):
        field = SpectralField({(1, 0): 0.5, (-1, 0): 0.5})
        assert norms(field, s_max=1).ratio_n == pytest.approx(2.0 * math.pi, rel=1e-14)

    def test_grid_below_nyquist_margin_rejected(self):
        field = preset_random(10, 0.0, 1)
        with pytest.raises(ValueError, match="Nyquist"):
            norms(field, s_max=1, grid=16)

    def test_deriv_l1_considers_mixed_derivatives(self):
        # for sin(2pi(x + 3y)) the pure-y derivative dominates: (2pi*3)^2 * 2/pi
        nr = norms(preset_sine(3), s_max=2)
        assert nr.deriv_l1[2] == pytest.approx((2.0 * math.pi * 3) ** 2 * 2.0 / math.pi, rel=1e-3)


class TestInvariantProperties:
    @pytest.mark.parametrize("seed", range(5))
    def test_plancherel_consistency_random(self, seed):
        field = preset_random(6, 1.0, seed)
        self._check_plancherel(field)

    @pytest.mark.parametrize("ell", [1, 2, 5])
    def test_plancherel_consistency_sine(self, ell):
        self._check_plancherel(preset_sine(ell))

    @staticmethod
    def _check_plancherel(field):
        g = int(4 * field.bandlimit) + 1
        pts = np.arange(g) / g
        total = 0.0
        for x in pts:
            for y in pts:
                total += evaluate(field, (x, y)) ** 2
        mean_sq = total / g**2
        assert mean_sq == pytest.approx(l2_norm(field) ** 2, rel=1e-10)

    @pytest.mark.parametrize("seed", range(3))
    def test_triangle_bound_on_deriv_l1(self, seed):
        field = preset_random(5, 0.5, seed)
        nr = norms(field, s_max=3)
        for s in (1, 2, 3):
            bound = sum(
                (2.0 * math.pi * math.hypot(*k)) ** s * abs(c)
                for k, c in field.coefficients.items()
            )
            assert nr.deriv_l1[s] <= bound * (1.0 + 1e-9)

    def test_constructors_pass_invariant_checker(self):
        preset_sine(4).check_invariants()
        cos_x_field().check_invariants()
        preset_random(3, 1.0, 77).check_invariants()

    def test_drop_threshold(self):
        field = SpectralField({(1, 0): 1e-16, (-1, 0): 1e-16, (2, 1): 0.25, (-2, -1): 0.25})
        assert set(field.coefficients) == {(2, 1), (-2, -1)}
        assert field.bandlimit == math.sqrt(5.0)
