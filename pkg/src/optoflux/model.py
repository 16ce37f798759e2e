"""Physical parameter model of the two-cavity optomechanical plaquette.

Two optical modes (a_L, a_R) hop with amplitude J, two mechanical modes
(b_L, b_R) hop with amplitude V, and on each site a drive-enhanced
optomechanical coupling G_j with drive phase phi_j connects light to sound.
The gauge-invariant synthetic flux around the four-mode loop is
phi = phi_L - phi_R.

Unit conventions
----------------
All stored rates and frequencies are angular (rad/s).  Constructors whose
argument names end in ``_hz`` take ordinary frequencies in Hz and multiply by
2*pi exactly once; this is the only place that conversion happens.  Phases are
radians, stored as given (wrap to (-pi, pi] only for display, see
:func:`wrap_phase`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

TWO_PI = 2.0 * math.pi


def wrap_phase(phi: float) -> float:
    """Map a phase to the display interval (-pi, pi]."""
    w = (phi + math.pi) % TWO_PI - math.pi
    if w == -math.pi:
        return math.pi
    return w


def _require_nonneg(name, value):
    if value < 0.0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")


@dataclass(frozen=True)
class OpticalMode:
    """One cavity field.

    external_decay / internal_decay are kappa_e and kappa_i; the total decay
    kappa = kappa_e + kappa_i.  drive_amplitude is the laser amplitude in
    sqrt(photons/s), vacuum_coupling the single-photon optomechanical rate;
    both matter only for steady-state calculations and default to zero.
    """

    external_decay: float
    internal_decay: float
    drive_phase: float = 0.0
    drive_amplitude: float = 0.0
    vacuum_coupling: float = 0.0
    cavity_frequency: float = 0.0

    def __post_init__(self):
        _require_nonneg("external_decay", self.external_decay)
        _require_nonneg("internal_decay", self.internal_decay)
        _require_nonneg("vacuum_coupling", self.vacuum_coupling)

    @property
    def total_decay(self) -> float:
        return self.external_decay + self.internal_decay


@dataclass(frozen=True)
class MechanicalMode:
    """One mechanical resonator: frequency omega_m and decay split gamma_e/gamma_i."""

    frequency: float
    external_decay: float
    internal_decay: float

    def __post_init__(self):
        if self.frequency <= 0.0:
            raise ValueError(f"mechanical frequency must be > 0, got {self.frequency!r}")
        _require_nonneg("external_decay", self.external_decay)
        _require_nonneg("internal_decay", self.internal_decay)

    @property
    def total_decay(self) -> float:
        return self.external_decay + self.internal_decay


@dataclass(frozen=True)
class CavitySite:
    """Optical plus mechanical mode sharing one optomechanical cavity."""

    optical: OpticalMode
    mechanical: MechanicalMode


@dataclass(frozen=True)
class SystemParams:
    """Complete parameter set of the plaquette.

    Hop amplitudes and enhanced couplings are magnitudes (>= 0); all phase
    information lives in the drive phases of the optical modes.  Detunings
    are laser-relative (delta_j = omega_drive - omega_cavity) and are stored
    explicitly so that non-red-detuned setups remain expressible.
    """

    left: CavitySite
    right: CavitySite
    optical_hop: float
    mechanical_hop: float
    G_L: float
    G_R: float
    detuning_L: float
    detuning_R: float

    def __post_init__(self):
        _require_nonneg("optical_hop", self.optical_hop)
        _require_nonneg("mechanical_hop", self.mechanical_hop)
        _require_nonneg("G_L", self.G_L)
        _require_nonneg("G_R", self.G_R)

    @classmethod
    def red_detuned(cls, left, right, optical_hop, mechanical_hop, G_L, G_R):
        """Build with the red-detuned operating point delta_j = -omega_mj."""
        return cls(
            left=left,
            right=right,
            optical_hop=optical_hop,
            mechanical_hop=mechanical_hop,
            G_L=G_L,
            G_R=G_R,
            detuning_L=-left.mechanical.frequency,
            detuning_R=-right.mechanical.frequency,
        )

    # -- shorthand accessors used throughout the formula code ----------------

    @property
    def kappa_L(self) -> float:
        return self.left.optical.total_decay

    @property
    def kappa_R(self) -> float:
        return self.right.optical.total_decay

    @property
    def kappa_eL(self) -> float:
        return self.left.optical.external_decay

    @property
    def kappa_eR(self) -> float:
        return self.right.optical.external_decay

    @property
    def gamma_L(self) -> float:
        return self.left.mechanical.total_decay

    @property
    def gamma_R(self) -> float:
        return self.right.mechanical.total_decay

    @property
    def gamma_eL(self) -> float:
        return self.left.mechanical.external_decay

    @property
    def gamma_eR(self) -> float:
        return self.right.mechanical.external_decay

    @property
    def omega_mL(self) -> float:
        return self.left.mechanical.frequency

    @property
    def omega_mR(self) -> float:
        return self.right.mechanical.frequency

    @property
    def phi_L(self) -> float:
        return self.left.optical.drive_phase

    @property
    def phi_R(self) -> float:
        return self.right.optical.drive_phase

    @property
    def synthetic_flux(self) -> float:
        return self.phi_L - self.phi_R

    # -- copy-with helpers ----------------------------------------------------

    def with_flux(self, flux: float) -> "SystemParams":
        """Copy with phi_L moved so that phi_L - phi_R equals ``flux``."""
        optical = replace(self.left.optical, drive_phase=self.phi_R + flux)
        return replace(self, left=replace(self.left, optical=optical))

    def with_mechanical_hop(self, value: float) -> "SystemParams":
        return replace(self, mechanical_hop=value)

    def with_optical_hop(self, value: float) -> "SystemParams":
        return replace(self, optical_hop=value)

    def with_enhanced_coupling(self, G_L=None, G_R=None) -> "SystemParams":
        return replace(
            self,
            G_L=self.G_L if G_L is None else G_L,
            G_R=self.G_R if G_R is None else G_R,
        )


@dataclass(frozen=True, eq=False)
class Susceptibilities:
    """The four inverse susceptibilities at one probe frequency.

    chi_aj_inv = -i(omega + delta_j) + kappa_j/2
    chi_bj_inv = -i(omega - omega_mj) + gamma_j/2

    Decay enters only the real part, detuning only the imaginary part.
    Fields are complex scalars for scalar omega and complex arrays when the
    probe frequency was an array.
    """

    chi_aL_inv: complex
    chi_aR_inv: complex
    chi_bL_inv: complex
    chi_bR_inv: complex


def susceptibilities(params: SystemParams, omega) -> Susceptibilities:
    """Evaluate the four inverse susceptibilities at probe frequency omega.

    ``omega`` may be a float or an ndarray; the result broadcasts.  Total
    function of its inputs, no side effects.
    """
    return Susceptibilities(
        chi_aL_inv=-1j * (omega + params.detuning_L) + params.kappa_L / 2.0,
        chi_aR_inv=-1j * (omega + params.detuning_R) + params.kappa_R / 2.0,
        chi_bL_inv=-1j * (omega - params.omega_mL) + params.gamma_L / 2.0,
        chi_bR_inv=-1j * (omega - params.omega_mR) + params.gamma_R / 2.0,
    )


# Reference parameter set (the "table1" preset of the CLI): rates in Hz as
# commonly quoted for a microwave-frequency two-cavity optomechanical chip.
# The mechanical hop V is deliberately not part of the preset and must be
# supplied by the caller; the interference tuning in `optimize` is the usual
# way to pick it.
TABLE1_HZ = {
    "optical_hop": 110e6,
    "G_L": 33e6,
    "G_R": 31e6,
    "omega_mL": 5.7884e9,
    "omega_mR": 5.7791e9,
    "kappa_eL": 0.74e9,
    "kappa_eR": 0.44e9,
    "kappa_iL": 0.29e9,
    "kappa_iR": 0.31e9,
    "gamma_eL": 4.3e6,
    "gamma_eR": 5.7e6,
    "gamma_iL": 1.0e6,
    "gamma_iR": 1.2e6,
}


def from_table1(mechanical_hop_hz: float, flux: float = 0.0) -> SystemParams:
    """Reference red-detuned parameter set with caller-chosen mechanical hop.

    ``mechanical_hop_hz`` is V in Hz (converted to angular internally) and
    ``flux`` is the synthetic flux in radians, realised as phi_L = flux,
    phi_R = 0.
    """
    t = TABLE1_HZ
    left = CavitySite(
        optical=OpticalMode(
            external_decay=TWO_PI * t["kappa_eL"],
            internal_decay=TWO_PI * t["kappa_iL"],
            drive_phase=flux,
        ),
        mechanical=MechanicalMode(
            frequency=TWO_PI * t["omega_mL"],
            external_decay=TWO_PI * t["gamma_eL"],
            internal_decay=TWO_PI * t["gamma_iL"],
        ),
    )
    right = CavitySite(
        optical=OpticalMode(
            external_decay=TWO_PI * t["kappa_eR"],
            internal_decay=TWO_PI * t["kappa_iR"],
            drive_phase=0.0,
        ),
        mechanical=MechanicalMode(
            frequency=TWO_PI * t["omega_mR"],
            external_decay=TWO_PI * t["gamma_eR"],
            internal_decay=TWO_PI * t["gamma_iR"],
        ),
    )
    return SystemParams.red_detuned(
        left=left,
        right=right,
        optical_hop=TWO_PI * t["optical_hop"],
        mechanical_hop=TWO_PI * mechanical_hop_hz,
        G_L=TWO_PI * t["G_L"],
        G_R=TWO_PI * t["G_R"],
    )
