import numpy as np
import pytest

from hysteresis_rc.errors import DomainError
from hysteresis_rc.preisach import InitialStatePolicy, system_output
from hysteresis_rc.reservoir import (
    HysteresisReservoir,
    build_reservoir,
    drive,
    scale_input,
    write_design_matrix_csv,
)


def test_half_widths_d5():
    res = build_reservoir(5, 10, 10)
    assert np.allclose(res.half_widths, 2.5 * np.arange(1, 11))


def test_smallest_range_covers_input_at_d10():
    res = build_reservoir(10, 10, 10)
    assert res.half_widths[0] == 5.0


def test_largest_range_inside_input_at_d05():
    res = build_reservoir(0.5, 10, 10)
    assert res.half_widths[-1] == 2.5


@pytest.mark.parametrize("kw", [dict(d=0), dict(d=-1), dict(d=1, m=0), dict(d=1, n_h=0)])
def test_build_rejects(kw):
    with pytest.raises(ValueError):
        build_reservoir(**kw)


def test_adding_systems_keeps_existing_thresholds():
    small = build_reservoir(2, 3, 100, base_seed=9)
    big = build_reservoir(2, 5, 100, base_seed=9)
    for a, b in zip(small.systems, big.systems):
        assert np.array_equal(a.low, b.low) and np.array_equal(a.high, b.high)


@pytest.mark.parametrize("u,expected", [(0, -5), (0.25, 0), (0.5, 5)])
def test_scale_input(u, expected):
    assert scale_input(u) == expected


@pytest.mark.parametrize("bad", [-0.01, 0.51, float("nan")])
def test_scale_input_domain(bad):
    with pytest.raises(DomainError):
        scale_input(bad)


def test_scale_input_array():
    u = np.arange(11) / 20
    assert np.array_equal(scale_input(u), np.arange(-5, 6, dtype=float))


def test_constant_input_gives_constant_columns():
    res = build_reservoir(1, 10, 500, base_seed=1)
    phi = drive(res, np.full(20, 5.0))
    assert np.all(phi == phi[0])


def test_entries_in_unit_interval():
    res = build_reservoir(3, 10, 500, base_seed=2)
    u = np.random.default_rng(0).uniform(-5, 5, 300)
    phi = drive(res, u)
    assert phi.shape == (300, 10)
    assert phi.min() >= 0 and phi.max() <= 1


def test_drive_deterministic():
    u = np.random.default_rng(1).uniform(-5, 5, 200)
    a = drive(build_reservoir(5, 10, 300, base_seed=4), u)
    b = drive(build_reservoir(5, 10, 300, base_seed=4), u)
    assert np.array_equal(a, b)


def test_drive_matches_per_system_stepping():
    u = np.random.default_rng(2).integers(-5, 6, 150).astype(float)
    res = build_reservoir(2, 4, 400, base_seed=3)
    ref = [s.copy() for s in res.systems]
    phi = drive(res, u)
    expected = np.array([[system_output(s, x) for s in ref] for x in u])
    assert np.array_equal(phi, expected)
    for s, r in zip(res.systems, ref):
        assert np.array_equal(s.state, r.state)


def test_drive_continues_state():
    u = np.random.default_rng(3).integers(-5, 6, 100).astype(float)
    whole = drive(build_reservoir(5, 10, 300, base_seed=5), u)
    res = build_reservoir(5, 10, 300, base_seed=5)
    split = np.vstack([drive(res, u[:37]), drive(res, u[37:])])
    assert np.array_equal(whole, split)


def test_non_finite_input_reports_index():
    res = build_reservoir(5, 2, 10)
    u = np.zeros(10)
    u[6] = np.inf
    with pytest.raises(DomainError, match="index 6"):
        drive(res, u)


def test_column_independence():
    u = np.random.default_rng(4).integers(-5, 6, 200).astype(float)
    res = build_reservoir(3, 4, 300, base_seed=6)
    phi = drive(res, u)
    other = build_reservoir(3, 4, 300, base_seed=6)
    other.systems[2] = build_reservoir(7, 1, 50, base_seed=99).systems[0]
    phi2 = drive(other, u)
    assert np.array_equal(np.delete(phi, 2, axis=1), np.delete(phi2, 2, axis=1))


def test_permutation_equivariance():
    u = np.random.default_rng(5).integers(-5, 6, 120).astype(float)
    res = build_reservoir(3, 5, 200, base_seed=7)
    perm = [3, 0, 4, 1, 2]
    shuffled = HysteresisReservoir([res.systems[i].copy() for i in perm], 3, 200, 7)
    phi = drive(res, u)
    assert np.array_equal(drive(shuffled, u), phi[:, perm])


def test_history_dependence():
    # same final input 0, reached from below vs from above
    ascend = drive(build_reservoir(1, 1, 100_000, base_seed=8), [-0.5, 0.0])[-1, 0]
    descend = drive(build_reservoir(1, 1, 100_000, base_seed=8), [0.5, 0.0])[-1, 0]
    # r = 0.5: branch values 1 - ((0 + r)/2r)^2 and ((r - 0)/2r)^2
    assert ascend == pytest.approx(0.75, abs=0.01)
    assert descend == pytest.approx(0.25, abs=0.01)


def test_policy_reaches_systems():
    res = build_reservoir(2, 3, 500, policy=InitialStatePolicy.ALL_DOWN)
    for s in res.systems:
        assert not np.any(s.state[s.low < 0])
    res.policy = InitialStatePolicy.ALL_UP
    res.reset()
    assert all(np.all(s.state[s.high > 0]) for s in res.systems)


def test_design_matrix_csv(tmp_path):
    phi = drive(build_reservoir(5, 3, 100), [-5.0, 0.0, 5.0])
    write_design_matrix_csv(phi, tmp_path / "phi.csv")
    lines = (tmp_path / "phi.csv").read_text().splitlines()
    assert lines[0] == "t,Y1,Y2,Y3"
    assert len(lines) == 4
    assert [float(v) for v in lines[2].split(",")[1:]] == phi[1].tolist()
