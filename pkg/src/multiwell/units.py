"""Unit system: every interface in this package speaks nm, eV and fs.

In these units the two constants below are all the physics input needed;
magnitudes of typical well energies (1e-5..1e-1 eV) and times (1e3..1e5 fs)
stay close to unity, which keeps the linear algebra well scaled.
"""

from dataclasses import dataclass

#: Reduced Planck constant, eV*fs.
HBAR_EV_FS = 0.6582119569

#: hbar^2 / (2 m_e) for the free electron, eV*nm^2.
HBAR_SQ_OVER_TWO_ME = 0.0380998


@dataclass(frozen=True, slots=True)
class UnitSystem:
    """Physical constants plus the effective-mass knob.

    ``effective_mass_ratio`` multiplies the free-electron mass; 1.0 is a free
    electron, 0.067 is a GaAs-like conduction-band electron.  The mass is an
    explicit parameter of every scenario because well spectra and tunneling
    times scale strongly with it.
    """

    hbar: float = HBAR_EV_FS
    hbar_sq_over_two_me: float = HBAR_SQ_OVER_TWO_ME
    effective_mass_ratio: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        if self.hbar_sq_over_two_me <= 0:
            raise ValueError("hbar^2/(2 m_e) must be positive")
        if self.effective_mass_ratio <= 0:
            raise ValueError("effective_mass_ratio must be positive")

    @property
    def hbar_sq_over_two_mass(self) -> float:
        """hbar^2 / (2 m) in eV*nm^2 for the effective mass."""
        return self.hbar_sq_over_two_me / self.effective_mass_ratio

    @property
    def mass(self) -> float:
        """Effective mass in eV*fs^2/nm^2."""
        return self.hbar**2 / (2.0 * self.hbar_sq_over_two_mass)


#: Free-electron defaults.
DEFAULT_UNITS = UnitSystem()
