#!/usr/bin/env python
# Copyright 2026 The eisfilm developers
#
# This file is part of eisfilm
#
# eisfilm is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or (at
# your option) any later version.
#
# eisfilm is distributed in the hope that it will be useful, but
# WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with eisfilm.  If not, see <http://www.gnu.org/licenses/>.
"""
Static SVG export of Bode and Nyquist diagrams.
"""
import logging

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from eisfilm.impedance.circuit import to_bode, to_nyquist

log = logging.getLogger(__name__)

PHASE_MARGIN_DEG = 5.0


def _save(fig, path):
    fig.savefig(path, format="svg")
    plt.close(fig)
    log.info("Wrote %s", path)


def phase_limits(phases):
    """
    Phase axis limits covering every sample and zero, padded by PHASE_MARGIN_DEG.

        >>> phase_limits([[-90.0, -45.0], [-10.0]])
        (-95.0, 5.0)

    """
    values = np.concatenate([np.ravel(p) for p in phases] + [[0.0]])
    values = values[np.isfinite(values)]
    return float(values.min()) - PHASE_MARGIN_DEG, float(values.max()) + PHASE_MARGIN_DEG


def bode_svg(path, spectra, labels=None):
    """
    Writes a Bode diagram, magnitude and phase against log frequency in two panels sharing the frequency axis.

    :param path: output file
    :param spectra: one :py:class:`Spectrum` or a list of them, overlaid
    :param labels: legend text for each spectrum

    """
    if not isinstance(spectra, (list, tuple)):
        spectra = [spectra]
    fig, (ax_mag, ax_phase) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
    phases = []
    for i, s in enumerate(spectra):
        b = to_bode(s)
        label = labels[i] if labels else None
        ax_mag.loglog(b.frequency_hz, b.magnitude_ohm, 'o-', markersize=3, label=label)
        ax_phase.semilogx(b.frequency_hz, b.phase_deg, 'o-', markersize=3)
        phases.append(b.phase_deg)
    ax_mag.set_ylabel(r"|Z| / $\Omega$")
    ax_phase.set_ylabel("Phase / deg")
    ax_phase.set_xlabel("Frequency / Hz")
    ax_phase.set_ylim(*phase_limits(phases))
    if labels:
        ax_mag.legend(fontsize="small")
    fig.tight_layout()
    _save(fig, path)


def nyquist_svg(path, spectra, labels=None):
    """
    Writes a Nyquist diagram, -Im Z against Re Z with equal axis scales.
    """
    if not isinstance(spectra, (list, tuple)):
        spectra = [spectra]
    fig, ax = plt.subplots(figsize=(6, 6))
    for i, s in enumerate(spectra):
        n = to_nyquist(s)
        ax.plot(n.real_ohm, n.neg_imag_ohm, 'o-', markersize=3, label=labels[i] if labels else None)
    ax.set_aspect('equal', adjustable='datalim')
    ax.set_xlabel(r"Z' / $\Omega$")
    ax.set_ylabel(r"-Z'' / $\Omega$")
    if labels:
        ax.legend(fontsize="small")
    fig.tight_layout()
    _save(fig, path)
