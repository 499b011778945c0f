"""Scenario configuration: one JSON document, unit-suffixed keys throughout.

Every physical quantity carries its unit in the key name (total_length_nm,
barrier_height_eV, ...) so a config file can never be misread in the wrong
units.  The fingerprint hashes exactly the physics-affecting fields; output
selection never changes it.
"""

import hashlib
import json
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError
from .potential import MultiWellSpec
from .spectral import DEFAULT_SEED
from .units import UnitSystem

_GEOMETRY_KEYS = {
    "total_length_nm",
    "well_count",
    "barrier_width_nm",
    "barrier_height_eV",
    "well_depth_reference_eV",
}


@dataclass(frozen=True, slots=True)
class InitialStateSpec:
    """Either a sign pattern (optionally brute-forced) or explicit coefficients.

    target_well is 1-based here, matching the config file and reports.
    """

    target_well: int | None = None
    signs: tuple | None = None
    coefficients: tuple | None = None  # complex values

    def __post_init__(self):
        has_pattern = self.target_well is not None or self.signs is not None
        if has_pattern and self.coefficients is not None:
            raise ConfigError("initial_state: give a pattern or coefficients, not both")
        if not has_pattern and self.coefficients is None:
            raise ConfigError("initial_state: needs target_well, signs or coefficients")
        if self.signs is not None and self.target_well is None:
            raise ConfigError("initial_state: explicit signs also need target_well")


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario: geometry, discretization, dynamics window, outputs."""

    geometry: MultiWellSpec
    grid_points: int = 2000
    num_states: int | None = None
    effective_mass_ratio: float = 1.0
    tau_max: float = 2.0
    tau_samples: int = 2048
    initial_state: InitialStateSpec = field(
        default_factory=lambda: InitialStateSpec(target_well=1)
    )
    snapshot_taus: tuple = ()
    seed: int = DEFAULT_SEED
    hop_threshold: float = 0.9
    outputs: tuple | None = None

    def __post_init__(self):
        if self.grid_points < 3:
            raise ConfigError(f"grid_points must be >= 3, got {self.grid_points}")
        if self.tau_samples < 2:
            raise ConfigError(f"tau_samples must be >= 2, got {self.tau_samples}")
        if self.tau_max <= 0:
            raise ConfigError(f"tau_max must be positive, got {self.tau_max}")
        if not 0.0 < self.hop_threshold < 1.0:
            raise ConfigError(f"hop_threshold must be in (0,1), got {self.hop_threshold}")
        if self.effective_mass_ratio <= 0:
            raise ConfigError(
                f"effective_mass_ratio must be positive, got {self.effective_mass_ratio}"
            )
        if any(t < 0 for t in self.snapshot_taus):
            raise ConfigError("snapshot_taus must be >= 0")
        k = self.k
        if k < 1 or k > self.grid_points:
            raise ConfigError(f"num_states {k} out of range 1..{self.grid_points}")
        ini = self.initial_state
        n = self.geometry.well_count
        if ini.coefficients is not None:
            if not ini.coefficients:
                raise ConfigError("initial_state.coefficients is empty")
            if len(ini.coefficients) > k:
                raise ConfigError(
                    f"{len(ini.coefficients)} coefficients but only {k} retained states"
                )
        else:
            if k < n:
                raise ConfigError(
                    f"sign-pattern initial states need num_states >= well_count ({n}), got {k}"
                )
            if not 1 <= ini.target_well <= n:
                raise ConfigError(
                    f"initial_state.target_well {ini.target_well} out of range 1..{n}"
                )
            if ini.signs is not None and len(ini.signs) != n:
                raise ConfigError(
                    f"initial_state.signs needs {n} entries, got {len(ini.signs)}"
                )

    @property
    def k(self) -> int:
        """Retained basis size; defaults to the well count."""
        return self.num_states if self.num_states is not None else self.geometry.well_count

    @property
    def units(self) -> UnitSystem:
        return UnitSystem(effective_mass_ratio=self.effective_mass_ratio)

    def tau_axis(self) -> np.ndarray:
        return np.linspace(0.0, self.tau_max, self.tau_samples)

    def physics_dict(self) -> dict:
        """The fields that affect computed numbers (fingerprint input)."""
        ini = self.initial_state
        if ini.coefficients is not None:
            initial = {
                "coefficients": [[z.real, z.imag] for z in ini.coefficients]
            }
        else:
            initial = {"target_well": ini.target_well}
            if ini.signs is not None:
                initial["signs"] = list(ini.signs)
        g = self.geometry
        return {
            "geometry": {
                "total_length_nm": g.total_length,
                "well_count": g.well_count,
                "barrier_width_nm": g.barrier_width,
                "barrier_height_eV": g.barrier_height,
                "well_depth_reference_eV": g.well_depth_reference,
            },
            "grid_points": self.grid_points,
            "num_states": self.k,
            "effective_mass_ratio": self.effective_mass_ratio,
            "tau_max": self.tau_max,
            "tau_samples": self.tau_samples,
            "initial_state": initial,
            "snapshot_taus": list(self.snapshot_taus),
            "seed": self.seed,
            "hop_threshold": self.hop_threshold,
        }

    def fingerprint(self) -> str:
        payload = json.dumps(self.physics_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    def with_barrier_height(self, height: float) -> "ScenarioConfig":
        g = self.geometry
        return replace(
            self,
            geometry=MultiWellSpec(
                total_length=g.total_length,
                well_count=g.well_count,
                barrier_width=g.barrier_width,
                barrier_height=height,
                well_depth_reference=g.well_depth_reference,
            ),
        )

    def with_seed(self, seed: int) -> "ScenarioConfig":
        return self if seed == self.seed else replace(self, seed=seed)


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise ConfigError(f"{context}: missing required key '{key}'")
    return mapping[key]


def config_from_dict(raw: dict) -> ScenarioConfig:
    """Build and validate a ScenarioConfig from parsed JSON."""
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    geometry_raw = _require(raw, "geometry", "config")
    if not isinstance(geometry_raw, dict):
        raise ConfigError("geometry must be an object")
    unknown = set(geometry_raw) - _GEOMETRY_KEYS
    if unknown:
        raise ConfigError(f"geometry: unknown keys {sorted(unknown)}; note the unit suffixes")
    try:
        geometry = MultiWellSpec(
            total_length=float(_require(geometry_raw, "total_length_nm", "geometry")),
            well_count=int(_require(geometry_raw, "well_count", "geometry")),
            barrier_width=float(geometry_raw.get("barrier_width_nm", 0.0)),
            barrier_height=float(geometry_raw.get("barrier_height_eV", 0.0)),
            well_depth_reference=float(geometry_raw.get("well_depth_reference_eV", 0.0)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"geometry: {exc}") from exc

    ini_raw = raw.get("initial_state", {"target_well": 1})
    if not isinstance(ini_raw, dict):
        raise ConfigError("initial_state must be an object")
    coefficients = None
    if "coefficients" in ini_raw:
        try:
            coefficients = tuple(
                complex(float(pair[0]), float(pair[1])) for pair in ini_raw["coefficients"]
            )
        except (TypeError, ValueError, IndexError) as exc:
            raise ConfigError(
                "initial_state.coefficients must be [re, im] pairs"
            ) from exc
    signs = None
    if "signs" in ini_raw:
        signs = tuple(int(s) for s in ini_raw["signs"])
    target = ini_raw.get("target_well")
    initial = InitialStateSpec(
        target_well=int(target) if target is not None else None,
        signs=signs,
        coefficients=coefficients,
    )

    try:
        return ScenarioConfig(
            geometry=geometry,
            grid_points=int(raw.get("grid_points", 2000)),
            num_states=int(raw["num_states"]) if "num_states" in raw else None,
            effective_mass_ratio=float(raw.get("effective_mass_ratio", 1.0)),
            tau_max=float(raw.get("tau_max", 2.0)),
            tau_samples=int(raw.get("tau_samples", 2048)),
            initial_state=initial,
            snapshot_taus=tuple(float(t) for t in raw.get("snapshot_taus", ())),
            seed=int(raw.get("seed", DEFAULT_SEED)),
            hop_threshold=float(raw.get("hop_threshold", 0.9)),
            outputs=tuple(raw["outputs"]) if "outputs" in raw else None,
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def load_config(path) -> ScenarioConfig:
    """Read and validate a config file; all failures become ConfigError."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_dict(raw)
