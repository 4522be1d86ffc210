import math

import numpy as np
import pytest

from sta_otto import (ConfigError, OutOfRangeTime, boundary_residuals,
                      check_trap_inversion, effective_frequency_sq,
                      evaluate_polynomial_ramp, omega_of, polynomial_ramp,
                      reversed_protocol, sample_protocol, user_table,
                      user_table_from_csv)
from sta_otto.protocol import ProtocolKind, tag_of


@pytest.fixture
def ramp():
    return polynomial_ramp(0.32, 1.0, 1.0)


def test_quintic_values_frozen(ramp):
    # closed-form values of the quintic and its derivatives
    s = sample_protocol(ramp, 0.25)
    assert s.omega == pytest.approx(0.390390625, abs=1e-15)
    assert s.omega_dot == pytest.approx(0.7171875, abs=1e-15)
    assert s.omega_ddot == pytest.approx(3.825, abs=1e-12)
    s = sample_protocol(ramp, 0.5)
    assert s.omega == pytest.approx(0.66, abs=1e-15)
    assert s.omega_dot == pytest.approx(1.275, abs=1e-15)
    assert s.omega_ddot == pytest.approx(0.0, abs=1e-12)


def test_boundary_residuals_flat_ends(ramp):
    assert max(boundary_residuals(ramp).values()) < 1e-14


def test_midpoint_symmetry(ramp):
    s = sample_protocol(ramp, 0.5)
    assert s.omega == pytest.approx(0.5 * (0.32 + 1.0), abs=1e-15)


def test_derivative_scaling_with_duration():
    fast = polynomial_ramp(0.32, 1.0, 1.0)
    slow = polynomial_ramp(0.32, 1.0, 4.0)
    a = sample_protocol(fast, 0.3)
    b = sample_protocol(slow, 1.2)  # same s = t/tau
    assert b.omega == pytest.approx(a.omega, rel=1e-15)
    assert b.omega_dot == pytest.approx(a.omega_dot / 4.0, rel=1e-15)
    assert b.omega_ddot == pytest.approx(a.omega_ddot / 16.0, rel=1e-15)


def test_out_of_range_time(ramp):
    with pytest.raises(OutOfRangeTime):
        evaluate_polynomial_ramp(ramp, -1e-9)
    with pytest.raises(OutOfRangeTime):
        evaluate_polynomial_ramp(ramp, 1.0 + 1e-9)


def test_invalid_construction():
    with pytest.raises(ConfigError):
        polynomial_ramp(0.0, 1.0, 1.0)
    with pytest.raises(ConfigError):
        polynomial_ramp(0.32, -1.0, 1.0)
    with pytest.raises(ConfigError):
        polynomial_ramp(0.32, 1.0, 0.0)


def test_effective_frequency_formula():
    w, wd, wdd = 0.66, 1.275, 0.0
    expected = w * w - 3.0 * wd * wd / (4.0 * w * w) + wdd / (2.0 * w)
    assert effective_frequency_sq(w, wd, wdd) == pytest.approx(expected,
                                                               rel=1e-15)
    # softening faster than the trap can follow inverts it
    assert effective_frequency_sq(0.4, 1.0, 0.0) < 0.0


def test_trap_inversion_detection():
    assert check_trap_inversion(polynomial_ramp(0.32, 1.0, 0.5)).inverted
    report = check_trap_inversion(polynomial_ramp(0.32, 1.0, 5.0))
    assert not report.inverted
    assert report.min_omega_eff_sq > 0.0
    assert 0.0 <= report.argmin_t <= 5.0


def test_trap_inversion_grid_size_guard(ramp):
    with pytest.raises(ConfigError):
        check_trap_inversion(ramp, grid_size=8)


def test_reversed_protocol(ramp):
    rev = reversed_protocol(ramp)
    assert rev.omega_initial == ramp.omega_final
    assert rev.omega_final == ramp.omega_initial
    for t in (0.0, 0.3, 0.71, 1.0):
        assert sample_protocol(rev, t).omega == pytest.approx(
            sample_protocol(ramp, 1.0 - t).omega, rel=1e-14)
    assert tag_of(ramp) == "compression"
    assert tag_of(rev) == "expansion"


def test_omega_of_matches_sampling(ramp):
    omega = omega_of(ramp)
    for t in np.linspace(0.0, 1.0, 17):
        assert omega(float(t)) == pytest.approx(
            sample_protocol(ramp, float(t)).omega, rel=1e-15)


def _quintic_knots(n=41, tau=1.0):
    ts = np.linspace(0.0, tau, n)
    ramp = polynomial_ramp(0.32, 1.0, tau)
    ws = np.array([sample_protocol(ramp, float(t)).omega for t in ts])
    return ts, ws


def test_user_table_reproduces_quintic():
    ts, ws = _quintic_knots()
    table = user_table(ts, ws)
    assert table.kind is ProtocolKind.USER_TABLE
    ramp = polynomial_ramp(0.32, 1.0, 1.0)
    for t in (0.13, 0.5, 0.87):
        a, b = sample_protocol(table, t), sample_protocol(ramp, t)
        assert a.omega == pytest.approx(b.omega, rel=1e-8)
        assert a.omega_dot == pytest.approx(b.omega_dot, abs=2e-5)
    # endpoint flatness is checked by evaluation, not assumed
    assert max(boundary_residuals(table).values()) < 1e-4


def test_user_table_validation():
    ts, ws = _quintic_knots()
    with pytest.raises(ConfigError):
        user_table(ts[:5], ws[:5])  # too few knots
    with pytest.raises(ConfigError):
        user_table(ts[::-1], ws)  # not increasing
    with pytest.raises(ConfigError):
        user_table(ts + 0.1, ws)  # does not start at 0
    bad = ws.copy()
    bad[3] = -0.2
    with pytest.raises(ConfigError):
        user_table(ts, bad)  # nonpositive frequency
    with pytest.raises(ConfigError):
        user_table(ts, ws[:-1])  # ragged columns


def test_user_table_from_csv(tmp_path):
    ts, ws = _quintic_knots(n=21)
    path = tmp_path / "ramp.csv"
    lines = ["t,omega"] + [f"{float(t)!r},{float(w)!r}"
                           for t, w in zip(ts, ws)]
    path.write_text("\n".join(lines) + "\n")
    table = user_table_from_csv(str(path))
    assert table.omega_initial == pytest.approx(0.32)
    assert table.omega_final == pytest.approx(1.0)
    # header is optional
    headerless = tmp_path / "bare.csv"
    headerless.write_text("\n".join(lines[1:]) + "\n")
    assert user_table_from_csv(str(headerless)).duration == table.duration


def test_user_table_from_csv_rejects_garbage(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t,omega\n0.0,0.32\noops,not_a_number\n")
    with pytest.raises(ConfigError):
        user_table_from_csv(str(path))
    empty = tmp_path / "empty.csv"
    empty.write_text("\n")
    with pytest.raises(ConfigError):
        user_table_from_csv(str(empty))


def test_reversed_table_rejected():
    ts, ws = _quintic_knots()
    with pytest.raises(ConfigError):
        reversed_protocol(user_table(ts, ws))
