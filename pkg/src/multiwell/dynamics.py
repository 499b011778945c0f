"""Spectral time evolution, correlation traces and hop detection.

All propagation is a phase rotation of eigenbasis coefficients,

    psi(x, tau) = sum_n c_n phi_n(x) exp(-i E_n (tau T_rev) / hbar),

which is exact given the eigenpairs; no time stepping happens anywhere.
Times are dimensionless, tau = t / T_rev, with T_rev the infinite-well
revival period for the same total length and mass, and scaled energies
Ebar_n = T_rev * E_n so that phases read Ebar_n tau / hbar.
"""

from dataclasses import dataclass, field

import numpy as np

from .core import Wavefunction
from .errors import BasisMismatchError, DomainError, TruncationError
from .potential import PotentialProfile, well_coverage_weights
from .spectral import EigenSolution

#: Fraction of a state's weight that must fall inside the retained basis.
CAPTURE_THRESHOLD = 0.999

#: Default peak threshold for hop detection; "localized" has no quantitative
#: definition in the underlying model, so this convention is surfaced in
#: every hop report.
HOP_THRESHOLD = 0.9


@dataclass(frozen=True, eq=False)
class SpectralState:
    """A state expressed as coefficients over an EigenSolution basis.

    ``captured_weight`` records how much of the originating wavefunction the
    basis captured before renormalization (1.0 for states born in
    coefficient space).
    """

    basis: EigenSolution
    coefficients: np.ndarray = field(repr=False)
    label: str = "state"
    captured_weight: float = 1.0

    def __post_init__(self):
        c = np.ascontiguousarray(self.coefficients, dtype=np.complex128)
        if c.shape != (self.basis.size,):
            raise DomainError(
                f"coefficient count {c.shape} does not match basis size {self.basis.size}"
            )
        total = float(np.sum(np.abs(c) ** 2))
        if abs(total - 1.0) > 1.0e-10:
            raise DomainError(f"coefficient weights sum to {total}, expected 1")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    def scaled_energies(self) -> np.ndarray:
        """Ebar_n = T_rev * E_n, eV*fs."""
        return self.basis.revival_time() * self.basis.energies


def _require_same_basis(a: SpectralState, b: SpectralState) -> None:
    if a.basis.fingerprint != b.basis.fingerprint:
        raise BasisMismatchError("states are expanded over different eigenbases")


@dataclass(frozen=True, eq=False)
class CorrelationTrace:
    """Squared overlaps against a reference, on a uniform scaled-time axis."""

    tau_axis: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    reference_label: str

    def __post_init__(self):
        tau = np.ascontiguousarray(self.tau_axis, dtype=np.float64)
        val = np.ascontiguousarray(self.values, dtype=np.float64)
        if tau.ndim != 1 or tau.shape != val.shape:
            raise DomainError("tau axis and values must be 1-D and equal length")
        steps = np.diff(tau)
        if tau.size > 1:
            if np.any(steps <= 0):
                raise DomainError("tau axis must be strictly increasing")
            mean = float(np.mean(steps))
            if np.max(np.abs(steps - mean)) > 1.0e-9 * max(mean, 1.0):
                raise DomainError("tau axis must be uniform")
        if np.any(val < -1.0e-9) or np.any(val > 1.0 + 1.0e-9):
            raise DomainError("trace values must lie in [0, 1]")
        tau.setflags(write=False)
        val.setflags(write=False)
        object.__setattr__(self, "tau_axis", tau)
        object.__setattr__(self, "values", val)

    @property
    def step(self) -> float:
        return float(self.tau_axis[1] - self.tau_axis[0]) if self.tau_axis.size > 1 else 0.0


def project(psi0: Wavefunction, basis: EigenSolution, label: str = "state") -> SpectralState:
    """Expand psi0 over the basis: c_n = <phi_n | psi0>.

    The captured weight sum |c_n|^2 must be at least 0.999, i.e. the state
    must actually live inside the retained basis; coefficients are then
    renormalized to unit weight.  States with more weight outside the basis
    raise TruncationError (solve with a larger K).
    """
    if (
        psi0.grid.length != basis.grid.length
        or psi0.grid.points != basis.grid.points
    ):
        raise BasisMismatchError("wavefunction grid does not match the basis grid")
    spacing = basis.grid.spacing
    coeffs = (basis.vectors.T @ psi0.amplitudes) * np.sqrt(spacing)
    captured = float(np.sum(np.abs(coeffs) ** 2))
    if captured < CAPTURE_THRESHOLD:
        raise TruncationError(
            f"only {captured:.6f} of the state lies inside the retained {basis.size} "
            f"states (need >= {CAPTURE_THRESHOLD}); rerun with a larger K"
        )
    coeffs = coeffs / np.sqrt(captured)
    return SpectralState(
        basis=basis, coefficients=coeffs, label=label, captured_weight=captured
    )


def evolve(state: SpectralState, tau: float) -> Wavefunction:
    """Reconstruct psi(x, tau) on the grid; norm is preserved exactly."""
    if tau < 0:
        raise DomainError(f"tau must be >= 0, got {tau}")
    ebar = state.scaled_energies()
    phases = np.exp(-1j * ebar * tau / state.basis.units.hbar)
    amps = state.basis.vectors @ (state.coefficients * phases)
    amps /= np.sqrt(state.basis.grid.spacing)
    return Wavefunction(state.basis.grid, amps)


def autocorrelation(state: SpectralState, tau_axis: np.ndarray) -> CorrelationTrace:
    """|A(tau)|^2 with A = sum_n |c_n|^2 exp(i Ebar_n tau / hbar)."""
    tau = np.ascontiguousarray(tau_axis, dtype=np.float64)
    weights = np.abs(state.coefficients) ** 2
    ebar = state.scaled_energies()
    amp = np.exp(1j * np.outer(tau, ebar) / state.basis.units.hbar) @ weights
    values = np.minimum(np.abs(amp) ** 2, 1.0 + 1.0e-12)
    return CorrelationTrace(tau_axis=tau, values=values, reference_label="self")


def well_correlation(
    reference_states: list,
    evolving: SpectralState,
    tau_axis: np.ndarray,
) -> list:
    """|<ref_k | psi(tau)>|^2 for each reference, computed in coefficient space.

    No grid reconstruction is involved: the overlap is
    sum_n conj(c_n^(k)) c_n exp(-i Ebar_n tau / hbar).
    """
    tau = np.ascontiguousarray(tau_axis, dtype=np.float64)
    ebar = evolving.scaled_energies()
    phases = np.exp(-1j * np.outer(tau, ebar) / evolving.basis.units.hbar)
    rotating = phases * evolving.coefficients
    traces = []
    for ref in reference_states:
        _require_same_basis(ref, evolving)
        amp = rotating @ np.conj(ref.coefficients)
        values = np.minimum(np.abs(amp) ** 2, 1.0 + 1.0e-12)
        traces.append(
            CorrelationTrace(tau_axis=tau, values=values, reference_label=ref.label)
        )
    return traces


def any_well_trace(traces: list) -> CorrelationTrace:
    """Pointwise maximum of per-well traces: localization anywhere.

    Consecutive peaks of this trace are successive localization events, so
    its peak spacing is the hop period (a single well's trace peaks only
    every second hop).
    """
    if not traces:
        raise DomainError("need at least one trace")
    tau = traces[0].tau_axis
    stacked = np.vstack([t.values for t in traces])
    return CorrelationTrace(
        tau_axis=tau, values=stacked.max(axis=0), reference_label="any"
    )


def probability_in_well(
    psi: Wavefunction, profile: PotentialProfile, well_index: int
) -> float:
    """Probability weight inside one well: sum |psi_i|^2 h over the region.

    Node cells straddling a well edge contribute their coverage fraction, so
    well and barrier probabilities tile exactly to 1.
    """
    n = profile.spec.well_count
    if not 0 <= well_index < n:
        raise DomainError(f"well index {well_index} out of range for {n} wells")
    weights = well_coverage_weights(profile, psi.grid)
    density = np.abs(psi.amplitudes) ** 2 * psi.grid.spacing
    return float(np.dot(weights[well_index], density))


@dataclass(frozen=True, slots=True)
class HopEvent:
    """One localization event: a refined trace peak."""

    tau: float
    value: float


@dataclass(frozen=True, slots=True)
class HopDetection:
    """Peaks above threshold plus the mean spacing of consecutive peaks."""

    events: tuple
    period: float | None
    threshold: float

    @property
    def count(self) -> int:
        return len(self.events)


def detect_hops(trace: CorrelationTrace, threshold: float = HOP_THRESHOLD) -> HopDetection:
    """Find strict interior maxima above ``threshold``.

    Each peak is refined by a three-point parabolic fit; plateaus and the
    axis endpoints never count.  An empty result is a valid outcome.
    """
    if not 0.0 < threshold < 1.0:
        raise DomainError(f"threshold must be in (0, 1), got {threshold}")
    v = trace.values
    tau = trace.tau_axis
    events = []
    for i in range(1, v.size - 1):
        if v[i] > v[i - 1] and v[i] > v[i + 1] and v[i] > threshold:
            denom = v[i - 1] - 2.0 * v[i] + v[i + 1]
            if denom != 0.0:
                delta = 0.5 * (v[i - 1] - v[i + 1]) / denom
                delta = float(np.clip(delta, -0.5, 0.5))
            else:
                delta = 0.0
            tau_star = tau[i] + delta * trace.step
            val_star = v[i] - 0.25 * (v[i - 1] - v[i + 1]) * delta
            events.append(HopEvent(tau=float(tau_star), value=float(val_star)))
    period = None
    if len(events) >= 2:
        times = np.array([e.tau for e in events])
        period = float(np.mean(np.diff(times)))
    return HopDetection(events=tuple(events), period=period, threshold=threshold)
