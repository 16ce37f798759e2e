"""Shared test utilities: randomized parameter draws and the dense oracle."""

import math

import numpy as np

import optoflux as of

# mode ordering (a_L, a_R, b_L, b_R): element pairs whose magnitude ratio
# defines each isolation, as (forward, backward) indices into M^-1
ORACLE_ELEMENTS = {
    of.PHONON: ((3, 2), (2, 3)),
    of.PHOTON_TO_PHONON: ((3, 0), (2, 1)),
    of.PHONON_TO_PHOTON: ((1, 2), (0, 3)),
}


def random_params(rng):
    """Reference rates scaled log-uniformly over +-2 decades, random phases."""
    s = 10.0 ** rng.uniform(-2.0, 2.0, size=8)
    phi_L, phi_R = rng.uniform(0.0, of.TWO_PI, size=2)
    left = of.CavitySite(
        optical=of.OpticalMode(
            external_decay=of.TWO_PI * 0.74e9 * s[0],
            internal_decay=of.TWO_PI * 0.29e9 * s[0],
            drive_phase=phi_L,
        ),
        mechanical=of.MechanicalMode(
            frequency=of.TWO_PI * 5.7884e9,
            external_decay=of.TWO_PI * 4.3e6 * s[1],
            internal_decay=of.TWO_PI * 1.0e6 * s[1],
        ),
    )
    right = of.CavitySite(
        optical=of.OpticalMode(
            external_decay=of.TWO_PI * 0.44e9 * s[2],
            internal_decay=of.TWO_PI * 0.31e9 * s[2],
            drive_phase=phi_R,
        ),
        mechanical=of.MechanicalMode(
            frequency=of.TWO_PI * 5.7791e9,
            external_decay=of.TWO_PI * 5.7e6 * s[3],
            internal_decay=of.TWO_PI * 1.2e6 * s[3],
        ),
    )
    return of.SystemParams.red_detuned(
        left=left,
        right=right,
        optical_hop=of.TWO_PI * 110e6 * s[4],
        mechanical_hop=of.TWO_PI * 1e6 * s[5],
        G_L=of.TWO_PI * 33e6 * s[6],
        G_R=of.TWO_PI * 31e6 * s[7],
    )


def random_omega(rng):
    return of.TWO_PI * rng.uniform(5.0e9, 6.5e9)


def oracle_isolation_db(params, omega, quantity):
    """Isolation from the dense-inverted matrix element magnitudes."""
    minv = of.invert_dense(of.build_matrix(params, omega))
    (fi, fj), (bi, bj) = ORACLE_ELEMENTS[quantity]
    return 20.0 * math.log10(abs(minv[fi, fj]) / abs(minv[bi, bj]))


def max_entrywise_relative(a, b):
    """Largest |a - b| / |b| over entries (b as reference, no zero entries)."""
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))
