"""Closed-form nonreciprocity measures of the plaquette.

Each isolation is 10*log10 of a forward/backward power ratio, equivalently
20*log10 of the amplitude ratio.  The three channels and the element ratios
of M^-1 they correspond to (1-based indices inside each 2x2 block):

    phonon transport       B_eff^-1[2,1] / B_eff^-1[1,2]
    photon -> phonon       (-B_eff^-1 D A^-1)[2,1] / (-B_eff^-1 D A^-1)[1,2]
    phonon -> photon       (-A_eff^-1 C B^-1)[2,1] / (-A_eff^-1 C B^-1)[1,2]

Writing Gamma_A = J G_L G_R / det_A for the optically mediated
mechanical-mechanical coupling, the phonon ratio is
|V - Gamma_A e^{-i phi}| / |V - Gamma_A e^{+i phi}|: the direct hop V
interferes with the optical bridge, and the interference differs between
the two directions unless Gamma_A is real or phi is an integer multiple
of pi.

The amplitudes are evaluated in a cleared-denominator form, e.g.

    phonon:           |V det_A - J G_L G_R e^{-i phi}|
                  vs  |V det_A - J G_L G_R e^{+i phi}|
    photon -> phonon: |G_L V chi_aR_inv + J G_R chi_bL_inv e^{-i phi}|
                  vs  |G_R V chi_aL_inv + J G_L chi_bR_inv e^{+i phi}|

which are algebraically identical to the block-element ratios but remain
finite for vanishing couplings and at undamped optical resonances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linsys
from .errors import DegenerateBlock, ZeroCoupling
from .model import SystemParams, susceptibilities

PHONON = "phonon"
PHOTON_TO_PHONON = "photon_to_phonon"
PHONON_TO_PHOTON = "phonon_to_photon"
QUANTITIES = (PHONON, PHOTON_TO_PHONON, PHONON_TO_PHOTON)

#: amplitudes below this count as an exact null (perfect isolation sentinel)
UNDERFLOW = 1e-300


@dataclass(frozen=True)
class IsolationPoint:
    """Isolation in dB at one probe frequency (angular)."""

    omega: float
    value_db: float


@dataclass(frozen=True)
class GammaMediated:
    """Optically mediated coupling terms entering the closed forms.

    gamma_A    = J G_L G_R / det_A           (phonon transport)
    gamma_plus = (J / chi_aL_inv) (G_L / G_R) chi_bR_inv   (conversion, +)
    gamma_minus= (J / chi_aR_inv) (G_R / G_L) chi_bL_inv   (conversion, -)
    """

    gamma_A: complex
    gamma_plus: complex
    gamma_minus: complex


def gamma_terms(params: SystemParams, omega: float) -> GammaMediated:
    """Evaluate the three mediated-coupling terms at one frequency.

    For J = 0 every term is zero.  With J > 0 the conversion terms divide by
    the optical susceptibilities and by G_L, G_R: both enhanced couplings
    must be nonzero (:class:`ZeroCoupling` otherwise), and on an exactly
    undamped optical resonance (chi_a_inv = 0) the affected conversion term
    is a pole and comes back as complex nan while gamma_A stays finite.
    A vanishing det_A raises :class:`DegenerateBlock`.
    """
    J = params.optical_hop
    if J == 0.0:
        return GammaMediated(0j, 0j, 0j)
    chi = susceptibilities(params, omega)
    det_A = chi.chi_aR_inv * chi.chi_aL_inv + J * J
    scale = abs(chi.chi_aR_inv) * abs(chi.chi_aL_inv) + J * J
    if abs(det_A) < linsys.DEGENERACY_RTOL * scale:
        raise DegenerateBlock(f"det_A = {det_A!r} vanishes at omega = {omega!r}")
    if params.G_L == 0.0 or params.G_R == 0.0:
        raise ZeroCoupling("gamma_plus/gamma_minus need both G_L and G_R nonzero")
    undefined = complex(math.nan, math.nan)
    return GammaMediated(
        gamma_A=complex(J * params.G_L * params.G_R / det_A),
        gamma_plus=(
            complex((J / chi.chi_aL_inv) * (params.G_L / params.G_R) * chi.chi_bR_inv)
            if chi.chi_aL_inv != 0 else undefined
        ),
        gamma_minus=(
            complex((J / chi.chi_aR_inv) * (params.G_R / params.G_L) * chi.chi_bL_inv)
            if chi.chi_aR_inv != 0 else undefined
        ),
    )


def _ratio_db(num, den):
    """20*log10(num/den) with exact-zero and underflow handling.

    Bitwise-equal amplitudes give exactly 0 dB.  A numerator or denominator
    below UNDERFLOW reports -inf or +inf (+inf is the perfect-isolation
    sentinel); both below gives nan.
    """
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        db = 20.0 * (np.log10(num) - np.log10(den))
    tiny_n = num < UNDERFLOW
    tiny_d = den < UNDERFLOW
    db = np.where(tiny_d & ~tiny_n, math.inf, db)
    db = np.where(tiny_n & ~tiny_d, -math.inf, db)
    db = np.where(tiny_n & tiny_d, math.nan, db)
    db = np.where(num == den, 0.0, db)
    if db.ndim == 0:
        return float(db)
    return db


def _phonon_amplitudes(params, omega):
    chi = susceptibilities(params, omega)
    J = params.optical_hop
    det_A = chi.chi_aR_inv * chi.chi_aL_inv + J * J
    bridge = J * params.G_L * params.G_R
    z = np.exp(1j * params.synthetic_flux)
    v_det = params.mechanical_hop * det_A
    return np.abs(v_det - bridge * np.conj(z)), np.abs(v_det - bridge * z)


def _photon_to_phonon_amplitudes(params, omega):
    chi = susceptibilities(params, omega)
    J = params.optical_hop
    V = params.mechanical_hop
    z = np.exp(1j * params.synthetic_flux)
    num = np.abs(params.G_L * V * chi.chi_aR_inv + J * params.G_R * chi.chi_bL_inv * np.conj(z))
    den = np.abs(params.G_R * V * chi.chi_aL_inv + J * params.G_L * chi.chi_bR_inv * z)
    return num, den


def _phonon_to_photon_amplitudes(params, omega):
    chi = susceptibilities(params, omega)
    J = params.optical_hop
    V = params.mechanical_hop
    z = np.exp(1j * params.synthetic_flux)
    num = np.abs(params.G_R * V * chi.chi_aL_inv + J * params.G_L * chi.chi_bR_inv * np.conj(z))
    den = np.abs(params.G_L * V * chi.chi_aR_inv + J * params.G_R * chi.chi_bL_inv * z)
    return num, den


_AMPLITUDES = {
    PHONON: _phonon_amplitudes,
    PHOTON_TO_PHONON: _photon_to_phonon_amplitudes,
    PHONON_TO_PHOTON: _phonon_to_photon_amplitudes,
}


def isolation_db(params: SystemParams, omega, quantity: str = PHONON):
    """Isolation in dB for one transport/conversion channel.

    ``omega`` may be a float or an ndarray of probe frequencies; the return
    matches.  This is the vector workhorse behind the scalar operations and
    the sweep module.
    """
    try:
        amplitudes = _AMPLITUDES[quantity]
    except KeyError:
        raise ValueError(f"unknown quantity {quantity!r}, expected one of {QUANTITIES}") from None
    num, den = amplitudes(params, np.asarray(omega, dtype=float))
    return _ratio_db(num, den)


def phonon_isolation(params: SystemParams, omega: float) -> IsolationPoint:
    """Forward/backward phonon transmission ratio in dB at one frequency."""
    num, den = _phonon_amplitudes(params, float(omega))
    return IsolationPoint(omega=float(omega), value_db=_ratio_db(num, den))


def photon_to_phonon_isolation(params: SystemParams, omega: float) -> IsolationPoint:
    """Forward (L->R) over backward (R->L) photon-to-phonon conversion, dB."""
    num, den = _photon_to_phonon_amplitudes(params, float(omega))
    return IsolationPoint(omega=float(omega), value_db=_ratio_db(num, den))


def phonon_to_photon_isolation(params: SystemParams, omega: float) -> IsolationPoint:
    """Forward (L->R) over backward (R->L) phonon-to-photon conversion, dB."""
    num, den = _phonon_to_photon_amplitudes(params, float(omega))
    return IsolationPoint(omega=float(omega), value_db=_ratio_db(num, den))


def transmission_matrix(params: SystemParams, omega: float) -> np.ndarray:
    """Mode-amplitude response to unit coherent inputs at the four ports.

    Returns M^-1(omega) . diag(sqrt(kappa_eL), sqrt(kappa_eR),
    sqrt(gamma_eL), sqrt(gamma_eR)) built from the closed-form blocks.  The
    external-coupling factors cancel out of same-species ratios only when
    the two ports share the coupling rate; the isolation functions above
    follow the bare block-element convention instead.
    """
    blocks = linsys.effective_blocks(params, omega)
    ports = np.sqrt(
        [params.kappa_eL, params.kappa_eR, params.gamma_eL, params.gamma_eR]
    )
    return blocks.assemble() * ports[np.newaxis, :]
