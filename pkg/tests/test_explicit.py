"""Unit tests for the explicit-formula comparison pieces."""

import csv

import pytest
from mpmath import mp, mpf

from lseries.coefficients import cusp_s8_coeffs
from lseries.explicit import (
    comparison_rows,
    log_derivative_point,
    oscillatory_sum,
    prime_power_jumps,
    prime_side,
    satake_trace,
    trivial_term,
    write_comparison_csv,
    zero_side,
    zero_term,
)
from lseries.gamma_phase import PrecisionContext


def test_prime_power_jumps_up_to_twenty():
    values = [v for v, _, _ in prime_power_jumps(20)]
    assert values == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]
    by_value = {v: (p, n) for v, p, n in prime_power_jumps(20)}
    assert by_value[16] == (2, 4)
    assert by_value[9] == (3, 2)
    assert by_value[19] == (19, 1)


def test_satake_trace_good_prime_recurrence():
    coeffs = cusp_s8_coeffs(10)
    with mp.workdps(40):
        c = mpf(coeffs[3]) / mp.power(3, mpf(7) / 2)
        assert abs(satake_trace(coeffs[3], 3, 1) - c) < mpf("1e-35")
        assert abs(satake_trace(coeffs[3], 3, 2) - (c ** 2 - 2)) < mpf("1e-35")
        assert abs(satake_trace(coeffs[3], 3, 3) - (c ** 3 - 3 * c)) < mpf("1e-35")


def test_satake_trace_ramified_prime_is_linear():
    coeffs = cusp_s8_coeffs(10)
    assert coeffs[2] == -8
    with mp.workdps(40):
        alpha = -1 / mp.sqrt(2)
        for n in (1, 2, 3, 5):
            assert abs(satake_trace(-8, 2, n) - alpha ** n) < mpf("1e-35")


def test_satake_trace_rejects_zero_exponent():
    with pytest.raises(ValueError):
        satake_trace(-8, 2, 0)


def test_prime_side_half_weight_at_boundary():
    coeffs = cusp_s8_coeffs(10)
    ctx = PrecisionContext(digits=30)
    with mp.workdps(ctx.workdps):
        below = prime_side("3.9", coeffs, ctx)
        at = prime_side(4, coeffs, ctx)
        above = prime_side("4.1", coeffs, ctx)
        term = satake_trace(-8, 2, 2) * mp.log(2)
        assert abs(at - (below + term / 2)) < mpf("1e-25")
        assert abs(above - (below + term)) < mpf("1e-25")


def test_trivial_term_matches_its_tail_series():
    ctx = PrecisionContext(digits=30)
    with mp.workdps(ctx.workdps):
        x = mpf(9)
        tail = 2 * mp.fsum(
            mp.power(x, -(2 * j + 1) / mpf(2)) / (2 * j + 1) for j in range(3, 80)
        )
        assert abs(trivial_term(x, ctx) - tail) < mpf("1e-25")
    with pytest.raises(ValueError):
        trivial_term(1, ctx)


def test_zero_term_is_twice_real_part_of_power_over_zero():
    ctx = PrecisionContext(digits=30)
    with mp.workdps(ctx.workdps):
        x, t = mpf(5), mpf("8.2720409199")
        rho = mp.mpc(mpf(1) / 2, t)
        direct = 2 * (mp.power(x, rho) / rho).real
        assert abs(zero_term(x, t, ctx) - direct) < mpf("1e-25")


def test_log_derivative_point_values():
    value, derivative, ratio = log_derivative_point()
    with mp.workdps(40):
        assert abs(value - mpf("0.5942254156")) < mpf("1e-9")
        assert abs(derivative - mpf("0.1875716234")) < mpf("1e-8")
        assert abs(ratio - mpf("0.3156573558")) < mpf("1e-8")


def test_zero_side_combines_three_pieces():
    ctx = PrecisionContext(digits=30)
    ts = [mpf("8.2720409199"), mpf("11.3959869930")]
    with mp.workdps(ctx.workdps):
        x = mpf(6)
        ratio = mpf("0.3156573558")
        expected = -oscillatory_sum(x, ts, ctx) + trivial_term(x, ctx) - ratio
        assert abs(zero_side(x, ts, ratio, ctx) - expected) < mpf("1e-25")


def test_comparison_rows_structure():
    coeffs = cusp_s8_coeffs(10)
    ctx = PrecisionContext(digits=25)
    ts = [mpf("8.2720409199")]
    rows = comparison_rows("3.5", "5.5", ts, coeffs, mpf("0.3156573558"), ctx)
    # midpoint, three rows at 4, midpoint, three rows at 5, midpoint
    assert len(rows) == 9
    xs = [float(r["x"]) for r in rows]
    assert xs == sorted(xs)
    assert xs.count(4.0) == 3 and xs.count(5.0) == 3
    with mp.workdps(ctx.workdps):
        for row in rows:
            assert abs(row["difference"] - (row["prime_side"] - row["zero_side"])) < mpf("1e-20")
        jump_rows = [r for r in rows if float(r["x"]) == 4.0]
        term = satake_trace(coeffs[2], 2, 2) * mp.log(2)
        assert abs(jump_rows[1]["prime_side"] - jump_rows[0]["prime_side"] - term / 2) < mpf("1e-20")
        assert abs(jump_rows[2]["prime_side"] - jump_rows[0]["prime_side"] - term) < mpf("1e-20")
        # the smooth side is continuous across the jump
        assert jump_rows[0]["zero_side"] == jump_rows[1]["zero_side"] == jump_rows[2]["zero_side"]


def test_write_comparison_csv_roundtrip(tmp_path):
    coeffs = cusp_s8_coeffs(10)
    ctx = PrecisionContext(digits=25)
    rows = comparison_rows("3.5", "4.5", [mpf("8.2720409199")], coeffs, mpf("0.3156573558"), ctx)
    path = tmp_path / "comparison.csv"
    write_comparison_csv(str(path), rows)
    with open(path, newline="") as handle:
        parsed = list(csv.reader(handle))
    assert parsed[0] == ["x", "prime_side", "zero_side", "difference"]
    assert len(parsed) == len(rows) + 1
    for text_row, row in zip(parsed[1:], rows):
        assert float(text_row[0]) == pytest.approx(float(row["x"]))
        assert float(text_row[3]) == pytest.approx(float(row["difference"]), abs=1e-12)
