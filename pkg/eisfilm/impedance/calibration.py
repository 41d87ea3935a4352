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
Calibration of film thickness against impedance.  Fitted resistance and capacitance at each operating point are
joined with film thickness measured by interferometry at the same point, the joined records are turned into a
monotone curve of thickness against capacitance, and the curve is used to read thickness from new fits.  The
resistance only selects the lubrication regime, the capacitance carries the thickness.
"""
import logging
import math

import numpy as np
from scipy import optimize
from scipy.interpolate import PchipInterpolator

from eisfilm.impedance import DomainError, EisException, JoinError, EmptyJoinError, ModelBuildError, \
    is_open_circuit
from eisfilm.impedance.circuit import Element, ElementKind, parallel_rc, sweep
from eisfilm.impedance.fitting import Regime, RegimeThresholds, classify_resistance

log = logging.getLogger(__name__)

KNOT_MERGE_REL = 0.005
"""Capacitances within this relative distance are one knot"""

MIN_KNOTS = 3


class OperatingPoint(object):
    """
    Temperature, entrainment speed and load of a measurement.  The temperature may be None when unknown.
    """

    def __init__(self, temperature_c, speed_mm_s, load_n):
        self.temperature_c = None if temperature_c is None else float(temperature_c)
        self.speed_mm_s = float(speed_mm_s)
        self.load_n = float(load_n)
        if not self.speed_mm_s >= 0:
            raise DomainError("Speed must not be negative: %s" % speed_mm_s, key="speed_mm_s")
        if not self.load_n > 0:
            raise DomainError("Load must be positive: %s" % load_n, key="load_n")

    def __eq__(self, other):
        if not isinstance(other, OperatingPoint):
            return NotImplemented
        return (self.temperature_c, self.speed_mm_s, self.load_n) == (other.temperature_c, other.speed_mm_s,
                                                                      other.load_n)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.temperature_c, self.speed_mm_s, self.load_n))

    def __str__(self):
        if self.temperature_c is None:
            return "U=%gmm/s W=%gN" % (self.speed_mm_s, self.load_n)
        return "T=%gC U=%gmm/s W=%gN" % (self.temperature_c, self.speed_mm_s, self.load_n)

    def __repr__(self):
        return self.__str__()


class JoinTolerance(object):
    """
    Largest differences at which two operating points are the same: an absolute temperature difference in
    degrees, and relative speed and load differences.
    """

    def __init__(self, temperature_c=0.5, speed_rel=0.01, load_rel=0.01):
        self.temperature_c = float(temperature_c)
        self.speed_rel = float(speed_rel)
        self.load_rel = float(load_rel)

    @staticmethod
    def _close(a, b, rel):
        return abs(a - b) <= rel * max(abs(a), abs(b))

    def matches(self, a, b):
        if (a.temperature_c is None) != (b.temperature_c is None):
            return False
        if a.temperature_c is not None and abs(a.temperature_c - b.temperature_c) > self.temperature_c:
            return False
        return self._close(a.speed_mm_s, b.speed_mm_s, self.speed_rel) and self._close(a.load_n, b.load_n,
                                                                                        self.load_rel)


class CalibrationRecord(object):
    """
    Fitted resistance and capacitance at an operating point, with the film thickness measured there, already
    converted to the material pair of the impedance rig.

    .. py:attribute:: h_is_lower_bound

        True for boundary lubrication records, where the thickness is only a bound.

    """

    def __init__(self, op, r_ohm, c_farad, h_m, h_is_lower_bound=False):
        if not (is_open_circuit(r_ohm) or r_ohm > 0) or not c_farad > 0 or not h_m > 0:
            raise DomainError("Calibration record needs positive R, C and h: %s %s %s" % (r_ohm, c_farad, h_m))
        self.op = op
        self.r_ohm = r_ohm
        self.c_farad = float(c_farad)
        self.h_m = float(h_m)
        self.h_is_lower_bound = h_is_lower_bound

    def __str__(self):
        return "%s R=%gohm C=%gF h=%gm%s" % (self.op, self.r_ohm, self.c_farad, self.h_m,
                                            " (lower bound)" if self.h_is_lower_bound else "")

    def __repr__(self):
        return self.__str__()


class MergeResult(object):
    """Records joined by :py:func:`merge_datasets`, and the operating points left over on each side."""

    def __init__(self, records, unmatched_fits, unmatched_utfi):
        self.records = records
        self.unmatched_fits = unmatched_fits
        self.unmatched_utfi = unmatched_utfi

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __str__(self):
        return "%d matched, %d unmatched fits, %d unmatched film thickness rows" % (
            len(self.records), len(self.unmatched_fits), len(self.unmatched_utfi))


def merge_datasets(fits, utfi, factor, tolerance=None, r0=None, thresholds=None):
    """
    Joins fits and interferometry film thickness on their operating points.  Each fit and each film thickness
    row is used at most once.

    :param fits: list of (:py:class:`OperatingPoint`, :py:class:`FitResult`)
    :param utfi: list of (:py:class:`OperatingPoint`, h_utfi in metres)
    :param factor: material conversion factor applied to each film thickness
    :param tolerance: :py:class:`JoinTolerance`
    :param r0: stationary contact resistance, when given boundary records are flagged as lower bounds
    :return: :py:class:`MergeResult`
    :raises JoinError: When an operating point matches more than one row on the other side
    :raises EmptyJoinError: When nothing could be joined

    """
    if not factor > 0:
        raise DomainError("Conversion factor must be positive: %s" % factor)
    if tolerance is None:
        tolerance = JoinTolerance()
    if thresholds is None:
        thresholds = RegimeThresholds()

    pairs = []
    for i, (op, fit) in enumerate(fits):
        candidates = [j for j, (utfi_op, _) in enumerate(utfi) if tolerance.matches(op, utfi_op)]
        if len(candidates) > 1:
            collisions = [str(utfi[j][0]) for j in candidates]
            raise JoinError("Fit at %s matches %d film thickness rows: %s" % (op, len(candidates),
                                                                              ", ".join(collisions)),
                            collisions=collisions)
        if candidates:
            pairs.append((i, candidates[0]))
    used = {}
    for i, j in pairs:
        if j in used:
            collisions = [str(fits[used[j]][0]), str(fits[i][0])]
            raise JoinError("Film thickness row at %s matches fits at %s" % (utfi[j][0], ", ".join(collisions)),
                            collisions=collisions)
        used[j] = i

    records = []
    for i, j in pairs:
        op, fit = fits[i]
        if not fit.converged:
            log.warning("Joining a fit at %s that did not converge", op)
        lower_bound = False
        if r0 is not None:
            lower_bound = classify_resistance(fit.r1, r0, thresholds) == Regime.BOUNDARY
        records.append(CalibrationRecord(op, fit.r1, fit.c1, factor * utfi[j][1], lower_bound))
    matched_fits = set(i for i, _ in pairs)
    unmatched_fits = [op for i, (op, _) in enumerate(fits) if i not in matched_fits]
    unmatched_utfi = [op for j, (op, _) in enumerate(utfi) if j not in used]
    for op in unmatched_fits:
        log.warning("No film thickness row for the fit at %s", op)
    for op in unmatched_utfi:
        log.warning("No fit for the film thickness row at %s", op)
    if not records:
        raise EmptyJoinError("No joinable operating points between %d fits and %d film thickness rows" % (
            len(fits), len(utfi)))
    result = MergeResult(records, unmatched_fits, unmatched_utfi)
    log.info("%s", result)
    return result


class ThicknessEstimate(object):

    def __init__(self, h_m, regime, extrapolated):
        self.h_m = h_m
        self.regime = Regime(regime)
        self.extrapolated = extrapolated

    def __iter__(self):
        return iter((self.h_m, self.regime, self.extrapolated))

    def __str__(self):
        return "h=%gm %s%s" % (self.h_m, self.regime, " (extrapolated)" if self.extrapolated else "")


class ThicknessModel(object):
    """
    Film thickness as a monotone function of capacitance, with resistance thresholds for the regime.

    The knots are (log10 C, log10 h) pairs with C increasing and h decreasing.  Between knots a shape preserving
    piecewise cubic is used, outside them a straight line in log-log space continuing the end interval.

    .. py:attribute:: breakdown_r_threshold_ohm

        Below this resistance the contact is in boundary lubrication.

    .. py:attribute:: full_film_r_threshold_ohm

        Above this resistance the contact is carried by a full film.

    """

    def __init__(self, log_c, log_h, breakdown_r_threshold_ohm, full_film_r_threshold_ohm=None, provenance=()):
        log_c = np.array(log_c, dtype=float)
        log_h = np.array(log_h, dtype=float)
        if log_c.shape != log_h.shape or log_c.ndim != 1:
            raise ModelBuildError("Knot tables of different lengths", offending=[])
        if log_c.size < MIN_KNOTS:
            raise ModelBuildError("A thickness model needs at least %d knots, got %d" % (MIN_KNOTS, log_c.size),
                                  offending=[])
        if not np.all(np.diff(log_c) > 0) or not np.all(np.diff(log_h) < 0):
            raise ModelBuildError("Knots must have increasing capacitance and decreasing thickness", offending=[])
        if not breakdown_r_threshold_ohm > 0:
            raise ModelBuildError("Breakdown threshold must be positive", offending=[])
        if full_film_r_threshold_ohm is None:
            full_film_r_threshold_ohm = breakdown_r_threshold_ohm * 1e3
        log_c.setflags(write=False)
        log_h.setflags(write=False)
        self._log_c = log_c
        self._log_h = log_h
        self._breakdown = float(breakdown_r_threshold_ohm)
        self._full_film = float(full_film_r_threshold_ohm)
        self._provenance = list(provenance)
        self._interpolant = PchipInterpolator(log_c, log_h, extrapolate=False)
        self._low_slope = (log_h[1] - log_h[0]) / (log_c[1] - log_c[0])
        self._high_slope = (log_h[-1] - log_h[-2]) / (log_c[-1] - log_c[-2])

    @property
    def log_c(self):
        return self._log_c

    @property
    def log_h(self):
        return self._log_h

    @property
    def knots(self):
        """List of (log10 C, log10 h) pairs"""
        return list(zip(self._log_c.tolist(), self._log_h.tolist()))

    @property
    def breakdown_r_threshold_ohm(self):
        return self._breakdown

    @property
    def full_film_r_threshold_ohm(self):
        return self._full_film

    @property
    def provenance(self):
        return self._provenance

    @property
    def h_min_m(self):
        return 10.0 ** self._log_h[-1]

    @property
    def h_max_m(self):
        return 10.0 ** self._log_h[0]

    def covers_thickness(self, h_m):
        return self.h_min_m * (1 - 1e-12) <= h_m <= self.h_max_m * (1 + 1e-12)

    def thickness(self, c_farad):
        """
        Film thickness at a capacitance.

        :return: (h_m, extrapolated)

        """
        x = math.log10(c_farad)
        lo, hi = self._log_c[0], self._log_c[-1]
        # a knot capacitance written out and read back may land an ulp outside the table
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        if x < lo - slack:
            return 10.0 ** (self._log_h[0] + self._low_slope * (x - lo)), True
        if x > hi + slack:
            return 10.0 ** (self._log_h[-1] + self._high_slope * (x - hi)), True
        x = min(max(x, lo), hi)
        return 10.0 ** float(self._interpolant(x)), False

    def capacitance(self, h_m):
        """
        Capacitance at which the model gives a film thickness, the inverse of :py:meth:`thickness` inside the
        knot range.

        :param h_m: film thickness in metres, between :py:attr:`h_min_m` and :py:attr:`h_max_m`
        :return: capacitance in farads
        :raises DomainError: When the thickness lies outside the knot range

        """
        if not h_m > 0 or not self.covers_thickness(h_m):
            raise DomainError("Film thickness %g m outside the calibrated range %g-%g m" % (
                h_m, self.h_min_m, self.h_max_m), key="h_m")
        y = min(max(math.log10(h_m), self._log_h[-1]), self._log_h[0])
        # log_h decreases, so the knot interval holding y is found on the reversed table
        k = self._log_h.size - 1 - int(np.searchsorted(self._log_h[::-1], y))
        k = min(max(k, 0), self._log_h.size - 2)
        if y == self._log_h[k]:
            return 10.0 ** self._log_c[k]
        if y == self._log_h[k + 1]:
            return 10.0 ** self._log_c[k + 1]
        x = optimize.bisect(lambda x: float(self._interpolant(x)) - y, self._log_c[k], self._log_c[k + 1],
                            xtol=1e-15, maxiter=200)
        return 10.0 ** x

    def __len__(self):
        return self._log_c.size

    def __str__(self):
        return "Thickness model of %d knots, h %g-%g m, boundary below %g ohm" % (
            len(self), self.h_min_m, self.h_max_m, self._breakdown)


def build_thickness_model(records, r0, thresholds=None):
    """
    Builds the thickness model from calibration records.  Records in boundary lubrication are left out, the
    rest are sorted by capacitance, records whose capacitances lie within 0.5% of each other are merged into one
    knot at the geometric mean of their capacitance and thickness, and the knots must then have strictly
    decreasing thickness.

    :param records: list of :py:class:`CalibrationRecord`
    :param r0: stationary contact resistance
    :param thresholds: :py:class:`RegimeThresholds`
    :return: :py:class:`ThicknessModel`
    :raises ModelBuildError: When fewer than three knots remain or thickness does not fall with capacitance

    """
    if thresholds is None:
        thresholds = RegimeThresholds()
    breakdown = thresholds.boundary_ohm(r0)
    film = [rec for rec in records if not rec.r_ohm < breakdown]
    if len(film) < len(records):
        log.info("Left out %d records below the breakdown threshold %g ohm", len(records) - len(film), breakdown)
    if len(film) < MIN_KNOTS:
        raise ModelBuildError("Need at least %d film bearing records, got %d" % (MIN_KNOTS, len(film)),
                              offending=[str(rec) for rec in film])
    film.sort(key=lambda rec: rec.c_farad)

    groups = []
    for rec in film:
        if groups and rec.c_farad - groups[-1][0].c_farad <= KNOT_MERGE_REL * groups[-1][0].c_farad:
            groups[-1].append(rec)
        else:
            groups.append([rec])
    log_c = [float(np.mean([math.log10(rec.c_farad) for rec in group])) for group in groups]
    log_h = [float(np.mean([math.log10(rec.h_m) for rec in group])) for group in groups]

    offending = []
    for k in range(1, len(groups)):
        if not log_h[k] < log_h[k - 1]:
            for rec in groups[k - 1] + groups[k]:
                if str(rec) not in offending:
                    offending.append(str(rec))
    if offending:
        raise ModelBuildError("Film thickness does not decrease with capacitance for %d records" % len(offending),
                              offending=offending)
    if len(groups) < MIN_KNOTS:
        raise ModelBuildError("Only %d distinct capacitances after merging, need %d" % (len(groups), MIN_KNOTS),
                              offending=[str(rec) for rec in film])
    model = ThicknessModel(log_c, log_h, breakdown, thresholds.full_film_ohm(r0), provenance=film)
    log.info("%s", model)
    return model


def thickness_from_rc(m, r, c):
    """
    Film thickness and regime for a fitted resistance and capacitance.  Below the breakdown threshold the
    thickness is the smallest knot thickness, flagged as extrapolated.

    :param m: :py:class:`ThicknessModel`
    :param r: resistance in ohms, or OPEN_CIRCUIT
    :param c: capacitance in farads
    :return: :py:class:`ThicknessEstimate`

    """
    if not (is_open_circuit(r) or r > 0) or not c > 0:
        raise DomainError("Resistance and capacitance must be positive: r=%s c=%s" % (r, c))
    if r < m.breakdown_r_threshold_ohm:
        return ThicknessEstimate(m.h_min_m, Regime.BOUNDARY, True)
    regime = Regime.FULL_FILM if r > m.full_film_r_threshold_ohm else Regime.MIXED
    h, extrapolated = m.thickness(c)
    return ThicknessEstimate(h, regime, extrapolated)


class FamilyMember(object):
    """
    One film thickness of a model response family.  When the contact model is not valid at the thickness,
    ``spectrum`` is None and ``error`` holds the exception.
    """

    def __init__(self, h_m, spectrum, resistance_ohm=None, capacitance_farad=None, calibrated=False, error=None):
        self.h_m = h_m
        self.spectrum = spectrum
        self.resistance_ohm = resistance_ohm
        self.capacitance_farad = capacitance_farad
        self.calibrated = calibrated
        self.error = error

    def __iter__(self):
        return iter((self.h_m, self.spectrum))

    def __str__(self):
        if self.error is not None:
            return "h=%gm failed: %s" % (self.h_m, self.error.message)
        return "h=%gm R=%s C=%gF%s" % (self.h_m, self.resistance_ohm, self.capacitance_farad,
                                      " (calibrated)" if self.calibrated else "")


def model_response_family(m, contact, h_grid, grid, alpha=None, r0=None):
    """
    Spectra implied by the thickness model over a range of film thickness.  Inside the knot range the
    capacitance is read from the model, outside it, or without a model, it follows from the contact geometry.
    The resistance is R0/alpha and the equivalent parallel RC is swept over the grid.

    :param m: :py:class:`ThicknessModel` or None
    :param contact: :py:class:`BallOnDiscModel` giving the geometry
    :param h_grid: film thickness values in metres
    :param grid: :py:class:`FrequencyGrid`
    :param alpha: breakdown ratio, a constant or a function of h, the contact's own ratio when None
    :param r0: stationary contact resistance, the contact's own when None
    :return: list of :py:class:`FamilyMember`, failed members carry their error

    """
    if r0 is not None:
        contact = type(contact)(contact.permittivity_f_per_m, contact.hertz_radius_m, contact.ball_radius_m,
                                contact.film_thickness_m, contact.breakdown_ratio, r0, contact.surround_form)
    family = []
    for h in h_grid:
        try:
            if alpha is None:
                a = contact.breakdown_ratio
            elif callable(alpha):
                a = alpha(h)
            else:
                a = alpha
            member = contact.with_film(h, a)
            r = member.resistance()
            calibrated = m is not None and m.covers_thickness(h)
            c = m.capacitance(h) if calibrated else member.capacitance()
            network = Element(ElementKind.CAPACITOR, c) if is_open_circuit(r) else parallel_rc(r, c)
            family.append(FamilyMember(h, sweep(network, grid), r, c, calibrated))
        except EisException as e:
            log.warning("No response at h=%g m: %s", h, e.message)
            family.append(FamilyMember(h, None, error=e))
    return family
