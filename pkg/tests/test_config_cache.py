"""Scenario config parsing/validation/fingerprints and the eigen cache."""

import json

import numpy as np
import pytest

from multiwell import ConfigError, Grid, UnitSystem, assemble, lowest_eigenpairs, sample
from multiwell.cache import load, store
from multiwell.config import config_from_dict, load_config
from conftest import GAAS, make_profile


def minimal_raw(**overrides):
    raw = {
        "geometry": {
            "total_length_nm": 100.0,
            "well_count": 2,
            "barrier_width_nm": 4.2,
            "barrier_height_eV": 0.5,
        },
        "grid_points": 400,
        "effective_mass_ratio": 0.067,
    }
    raw.update(overrides)
    return raw


def test_defaults():
    cfg = config_from_dict(minimal_raw())
    assert cfg.k == 2  # defaults to the well count
    assert cfg.tau_max == 2.0
    assert cfg.tau_samples == 2048
    assert cfg.seed == 1729
    assert cfg.initial_state.target_well == 1
    axis = cfg.tau_axis()
    assert axis[0] == 0.0 and axis[-1] == 2.0 and len(axis) == 2048


def test_unit_suffixed_keys_enforced():
    raw = minimal_raw()
    raw["geometry"] = {"total_length": 100.0, "well_count": 2}
    with pytest.raises(ConfigError, match="unit suffixes"):
        config_from_dict(raw)


def test_missing_geometry():
    with pytest.raises(ConfigError):
        config_from_dict({"grid_points": 100})


def test_pattern_needs_enough_states():
    with pytest.raises(ConfigError):
        config_from_dict(minimal_raw(num_states=1))


def test_signs_length_checked():
    with pytest.raises(ConfigError):
        config_from_dict(minimal_raw(initial_state={"target_well": 1, "signs": [1, 1, 1]}))


def test_coefficients_and_pattern_exclusive():
    with pytest.raises(ConfigError):
        config_from_dict(
            minimal_raw(initial_state={"target_well": 1, "coefficients": [[1, 0]]})
        )


def test_coefficient_initial_state_parsed():
    cfg = config_from_dict(
        minimal_raw(initial_state={"coefficients": [[0.6, 0.0], [0.0, 0.8]]})
    )
    assert cfg.initial_state.coefficients == (0.6 + 0j, 0.8j)


def test_bad_tau_samples():
    with pytest.raises(ConfigError):
        config_from_dict(minimal_raw(tau_samples=1))


def test_fingerprint_sensitivity():
    base = config_from_dict(minimal_raw())
    assert base.fingerprint() == config_from_dict(minimal_raw()).fingerprint()
    changed = {
        "grid_points": 500,
        "effective_mass_ratio": 1.0,
        "tau_max": 3.0,
        "tau_samples": 1024,
        "seed": 7,
        "num_states": 3,
        "snapshot_taus": [0.5],
        "initial_state": {"target_well": 2},
    }
    for key, value in changed.items():
        assert config_from_dict(minimal_raw(**{key: value})).fingerprint() != base.fingerprint()
    higher = config_from_dict(
        minimal_raw(geometry={**minimal_raw()["geometry"], "barrier_height_eV": 0.6})
    )
    assert higher.fingerprint() != base.fingerprint()
    # output selection never changes the physics fingerprint
    assert config_from_dict(minimal_raw(outputs=["traces"])). fingerprint() == base.fingerprint()


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError, match="valid JSON"):
        load_config(bad)


def test_load_config_round_trip(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(minimal_raw()))
    cfg = load_config(path)
    assert cfg.geometry.barrier_height == 0.5
    assert cfg.grid_points == 400


@pytest.fixture()
def solved():
    grid = Grid(length=100.0, points=300)
    profile = make_profile(2, 0.5)
    ham = assemble(sample(profile, grid), grid, GAAS)
    return ham, lowest_eigenpairs(ham, 2)


def test_cache_round_trip_bitwise(tmp_path, solved):
    ham, sol = solved
    store(str(tmp_path), sol)
    loaded = load(str(tmp_path), sol.fingerprint, ham, 2)
    assert loaded is not None
    np.testing.assert_array_equal(loaded.energies, sol.energies)
    np.testing.assert_array_equal(loaded.vectors, sol.vectors)
    np.testing.assert_array_equal(loaded.residuals, sol.residuals)


def test_cache_miss_returns_none(tmp_path, solved):
    ham, _ = solved
    assert load(str(tmp_path), "0" * 64, ham, 2) is None


def test_cache_rejects_mismatched_problem(tmp_path, solved):
    ham, sol = solved
    store(str(tmp_path), sol)
    other_grid = Grid(length=100.0, points=301)
    other = assemble(
        sample(make_profile(2, 0.5), other_grid), other_grid, GAAS
    )
    assert load(str(tmp_path), sol.fingerprint, other, 2) is None
    assert load(str(tmp_path), sol.fingerprint, ham, 3) is None


def test_cache_rejects_tampered_vectors(tmp_path, solved):
    ham, sol = solved
    path = store(str(tmp_path), sol)
    with np.load(path) as data:
        payload = dict(data)
    payload["vectors"] = payload["vectors"] * 1.001  # breaks orthonormality
    np.savez(path, **payload)
    assert load(str(tmp_path), sol.fingerprint, ham, 2) is None


def test_cache_rejects_wrong_mass(tmp_path, solved):
    ham, sol = solved
    store(str(tmp_path), sol)
    grid = Grid(length=100.0, points=300)
    other = assemble(sample(make_profile(2, 0.5), grid), grid, UnitSystem())
    assert load(str(tmp_path), sol.fingerprint, other, 2) is None
