import json

import numpy as np
import pytest

from weylkit import (
    ParseError,
    ValidationError,
    channel_to_json,
    choi_matrix,
    choi_to_json,
    coefficients_to_json,
    gamma_to_json,
    json_to_channel,
    json_to_coefficients,
    json_to_gamma,
    json_to_matrix,
    json_to_vector,
    matrix_to_json,
    vector_to_json,
    weyl_channel,
)
from weylkit.numerics import format_float
from weylkit.rand import random_complex_matrix, random_gamma, random_ket

RNG = np.random.default_rng(99)


class TestFloatFormatting:
    def test_negative_zero_normalized(self):
        assert format_float(-0.0) == "0"

    def test_seventeen_digit_round_trip(self):
        for x in (0.1, 1 / 3, np.pi, 1e-300, -2.5e17, 123456789.123456789):
            assert float(format_float(x)) == x

    def test_rejects_non_finite(self):
        with pytest.raises(ValidationError):
            format_float(float("nan"))


class TestMatrixFormat:
    def test_round_trip_exact(self):
        a = random_complex_matrix(3, RNG, rows=4)
        text = matrix_to_json(a)
        back = json_to_matrix(text)
        np.testing.assert_array_equal(back, a)

    def test_byte_deterministic(self):
        a = random_complex_matrix(5, RNG)
        text = matrix_to_json(a)
        assert text == matrix_to_json(json_to_matrix(text))

    def test_is_valid_json_with_expected_fields(self):
        doc = json.loads(matrix_to_json(np.eye(2)))
        assert doc == {"rows": 2, "cols": 2, "entries": [[1, 0], [0, 0], [0, 0], [1, 0]]}

    def test_vector_uses_single_column(self):
        v = random_ket(3, RNG)
        doc = json.loads(vector_to_json(v))
        assert doc["rows"] == 3 and doc["cols"] == 1
        np.testing.assert_array_equal(json_to_vector(vector_to_json(v)), v)

    def test_parse_error_reports_position(self):
        with pytest.raises(ParseError, match="line 1"):
            json_to_matrix('{"rows": 2, "cols": 2, "entries": [[1, 0]')

    def test_parse_rejects_wrong_entry_count(self):
        with pytest.raises(ParseError, match="4"):
            json_to_matrix('{"rows": 2, "cols": 2, "entries": [[1, 0]]}')

    def test_parse_rejects_bad_pair(self):
        with pytest.raises(ParseError, match="entry 1"):
            json_to_matrix('{"rows": 1, "cols": 2, "entries": [[1, 0], ["x", 0]]}')

    def test_parse_rejects_missing_rows(self):
        with pytest.raises(ParseError, match="rows"):
            json_to_matrix('{"cols": 2, "entries": []}')

    def test_parse_rejects_non_object(self):
        with pytest.raises(ParseError, match="object"):
            json_to_matrix("[1, 2, 3]")


class TestCoefficientFormat:
    def test_round_trip(self):
        xi = random_complex_matrix(3, RNG)
        text = coefficients_to_json(xi)
        np.testing.assert_array_equal(json_to_coefficients(text), xi)
        doc = json.loads(text)
        assert doc["order"] == "l-major"
        assert doc["d"] == 3

    def test_l_major_order(self):
        xi = np.arange(4).reshape(2, 2).astype(complex)
        doc = json.loads(coefficients_to_json(xi))
        assert doc["xi"] == [[0, 0], [1, 0], [2, 0], [3, 0]]

    def test_rejects_wrong_order_tag(self):
        with pytest.raises(ParseError, match="l-major"):
            json_to_coefficients('{"d": 2, "order": "k-major", "xi": [[0,0],[0,0],[0,0],[0,0]]}')


class TestGammaFormat:
    def test_round_trip(self):
        g = random_gamma(3, RNG)
        back = json_to_gamma(gamma_to_json(g))
        np.testing.assert_array_equal(back.gamma, g.gamma)

    def test_normalization_failure_reports_all_columns(self):
        bad = '{"d": 2, "gamma": [[1, 0], [0.5, 0], [0, 0], [0, 0]]}'
        with pytest.raises(ValidationError, match=r"column 0: 1.*column 1: 0\.25"):
            json_to_gamma(bad)

    def test_rejects_bad_dimension(self):
        with pytest.raises(ParseError, match="'d'"):
            json_to_gamma('{"d": 1, "gamma": [[1, 0]]}')


class TestChannelFormat:
    def test_round_trip(self):
        ch = weyl_channel(np.full((2, 2), 0.25))
        back = json_to_channel(channel_to_json(ch))
        assert back.d == ch.d and len(back) == len(ch)
        for a, b in zip(back.kraus, ch.kraus):
            np.testing.assert_array_equal(a, b)

    def test_rejects_empty_kraus(self):
        with pytest.raises(ParseError, match="kraus"):
            json_to_channel('{"d": 2, "kraus": []}')

    def test_rejects_mismatched_shape(self):
        bad = '{"d": 2, "kraus": [{"rows": 3, "cols": 3, "entries": ' + json.dumps(
            [[1, 0]] * 9
        ) + "}]}"
        with pytest.raises(ParseError, match="2 x 2"):
            json_to_channel(bad)


class TestChoiFormat:
    def test_header_and_body(self):
        ch = weyl_channel(np.full((2, 2), 0.25))
        text = choi_to_json(choi_matrix(ch))
        doc = json.loads(text)
        assert doc["convention"] == "column-stacking"
        assert doc["rows"] == 4 and doc["cols"] == 4
        np.testing.assert_array_equal(json_to_matrix(text), choi_matrix(ch))
