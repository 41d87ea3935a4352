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
Identification of equivalent circuit parameters from a measured spectrum by complex nonlinear least squares,
detection of diffusion behaviour, and classification of the lubrication regime from the fitted resistance.

Parameters are fitted as their natural logarithms, which keeps every parameter positive without constraints.
The minimiser is a Levenberg-Marquardt iteration on the weighted real and imaginary residuals, using analytic
derivatives of the model impedance.
"""
import collections
import logging
import math

import numpy as np
from scipy import linalg, signal

from eisfilm.impedance import NumericStatus, DomainError
from eisfilm.impedance.circuit import Element, ElementKind, Parallel, Series, phase_degrees

log = logging.getLogger(__name__)

DAMPING_MAX = 1e16
DAMPING_MIN = 1e-20
PHASE_JUMP_DEG = 60.0
PHASE_JUMP_WEIGHT = 0.1
PROPORTIONAL_FLOOR = 1e-3
LOW_CONFIDENCE_C = 1e-10
# weighted cost below this fraction of the weighted data energy is treated as an exact fit
EXACT_FIT_FLOOR = 1e-28

REPORT_COLUMNS = ['file', 'model', 'r1_ohm', 'c1_farad', 'r2_ohm', 'aw', 'residual_norm', 'iterations', 'converged',
                  'regime']


class ModelKind(NumericStatus):
    """
    Circuit topology fitted to a spectrum.  Every kind has the capacitor C1 in parallel with the resistance R1,
    the Warburg kinds put the Warburg element in series with R1 inside the parallel branch, and the series R
    kinds add R2 in series with the whole.
    """
    PARALLEL_RC = 0
    PARALLEL_RC_SERIES_R = 1
    PARALLEL_RC_WARBURG = 2
    PARALLEL_RC_SERIES_R_WARBURG = 3
    states = {
        0: {'name': 'PARALLEL_RC', 'friendly': 'rc', 'aliases': ['ParallelRC'],
            'parameters': ['R1_ohm', 'C1_farad'],
            'description': 'R1 in parallel with C1'},
        1: {'name': 'PARALLEL_RC_SERIES_R', 'friendly': 'rc+r', 'aliases': ['ParallelRC_SeriesR'],
            'parameters': ['R1_ohm', 'C1_farad', 'R2_ohm'],
            'description': 'R1 in parallel with C1, in series with R2'},
        2: {'name': 'PARALLEL_RC_WARBURG', 'friendly': 'rc+w', 'aliases': ['ParallelRC_Warburg'],
            'parameters': ['R1_ohm', 'C1_farad', 'Aw'],
            'description': 'C1 in parallel with R1 and a Warburg element in series'},
        3: {'name': 'PARALLEL_RC_SERIES_R_WARBURG', 'friendly': 'rc+r+w', 'aliases': ['ParallelRC_SeriesR_Warburg'],
            'parameters': ['R1_ohm', 'C1_farad', 'R2_ohm', 'Aw'],
            'description': 'C1 in parallel with R1 and a Warburg element in series, in series with R2'},
    }

    @property
    def parameter_names(self):
        return list(self.states[self._status]['parameters'])

    @property
    def has_series_r(self):
        return 'R2_ohm' in self.states[self._status]['parameters']

    @property
    def has_warburg(self):
        return 'Aw' in self.states[self._status]['parameters']

    def network(self, params):
        """
        Circuit of this topology for a dictionary of parameter values.

        Example::

            >>> print(ModelKind(ModelKind.PARALLEL_RC_SERIES_R).network(
            ...     {'R1_ohm': 1000, 'C1_farad': 1e-6, 'R2_ohm': 100}))
            (R1000|C1e-06)-R100

        """
        r1 = Element(ElementKind.RESISTOR, params['R1_ohm'])
        c1 = Element(ElementKind.CAPACITOR, params['C1_farad'])
        if self.has_warburg:
            core = Parallel(c1, Series(r1, Element(ElementKind.WARBURG, params['Aw'])))
        else:
            core = Parallel(r1, c1)
        if self.has_series_r:
            return Series(core, Element(ElementKind.RESISTOR, params['R2_ohm']))
        return core


class Weighting(NumericStatus):
    MODULUS = 0
    PROPORTIONAL = 1
    UNIT = 2
    states = {
        0: {'name': 'MODULUS', 'friendly': 'modulus', 'description': 'Both components weighted by 1/|Z|^2'},
        1: {'name': 'PROPORTIONAL', 'friendly': 'proportional',
            'description': 'Real part weighted by 1/Re(Z)^2, imaginary part by 1/Im(Z)^2, each floored at '
                           '(1e-3 |Z|)^2'},
        2: {'name': 'UNIT', 'friendly': 'unit', 'description': 'Unweighted'},
    }


class Regime(NumericStatus):
    FULL_FILM = 0
    MIXED = 1
    BOUNDARY = 2
    states = {
        0: {'name': 'FULL_FILM', 'friendly': 'FullFilm', 'aliases': ['full-film', 'full film'],
            'description': 'Surfaces separated by the lubricant film, the contact is close to open circuit'},
        1: {'name': 'MIXED', 'friendly': 'Mixed',
            'description': 'Intermittent asperity contact'},
        2: {'name': 'BOUNDARY', 'friendly': 'Boundary',
            'description': 'Load carried by asperities, the contact is close to short circuit'},
    }


class FitConfig(object):
    """
    Settings of the least squares fit.

    .. py:attribute:: param_tol

        Largest change of any log parameter in a converged step.

    .. py:attribute:: resid_tol

        Largest relative decrease of the cost in a converged step.

    .. py:attribute:: grad_tol

        Largest cosine between the residual and a Jacobian column at a stationary point that counts as a
        minimum.

    .. py:attribute:: screen_phase

        Down weight samples whose phase jumps by more than 60 degrees from both neighbours.

    """

    def __init__(self, weighting=Weighting.MODULUS, max_iterations=200, param_tol=1e-10, resid_tol=1e-12,
                 grad_tol=1e-6, damping_init=1e-3, screen_phase=True):
        self.weighting = Weighting(weighting)
        if int(max_iterations) < 1:
            raise DomainError("max_iterations must be at least 1: %s" % max_iterations, key="max_iterations")
        self.max_iterations = int(max_iterations)
        for name, value in (('param_tol', param_tol), ('resid_tol', resid_tol), ('grad_tol', grad_tol),
                            ('damping_init', damping_init)):
            if not float(value) > 0:
                raise DomainError("%s must be positive: %s" % (name, value), key=name)
        self.param_tol = float(param_tol)
        self.resid_tol = float(resid_tol)
        self.grad_tol = float(grad_tol)
        self.damping_init = float(damping_init)
        self.screen_phase = bool(screen_phase)

    def __str__(self):
        return "%s weighting, %d iterations, param_tol=%g resid_tol=%g" % (
            self.weighting, self.max_iterations, self.param_tol, self.resid_tol)


class RegimeThresholds(object):
    """
    Regime boundaries as multiples of the stationary contact resistance R0.  Below boundary_factor * R0 the
    contact is in boundary lubrication, above open_factor * R0 it is carried by a full film.
    """

    def __init__(self, boundary_factor=10.0, open_factor=1e4):
        if not 0 < boundary_factor < open_factor:
            raise DomainError("Need 0 < boundary_factor < open_factor: %s, %s" % (boundary_factor, open_factor))
        self.boundary_factor = float(boundary_factor)
        self.open_factor = float(open_factor)

    def boundary_ohm(self, r0):
        return self.boundary_factor * r0

    def full_film_ohm(self, r0):
        return self.open_factor * r0


class InitialGuess(object):
    """Starting values of R1 and C1 for the fit."""

    def __init__(self, r_init, c_init, low_confidence=False):
        self.r_init = r_init
        self.c_init = c_init
        self.low_confidence = low_confidence

    def __iter__(self):
        return iter((self.r_init, self.c_init))

    def __str__(self):
        return "R=%g C=%g%s" % (self.r_init, self.c_init, " (low confidence)" if self.low_confidence else "")


class FitResult(object):
    """
    Outcome of a fit.

    .. py:attribute:: params

        Dictionary of fitted values keyed by ``R1_ohm``, ``C1_farad`` and, depending on the model, ``R2_ohm``
        and ``Aw``.

    .. py:attribute:: residual_norm

        Root mean square of the weighted residuals.

    .. py:attribute:: param_stderr

        Standard error of each parameter from the linearised covariance at the solution, keyed as ``params``.

    .. py:attribute:: exit_reason

        Why the iteration stopped, one of ``tolerance``, ``stationary``, ``max-iterations`` or
        ``rank-deficient``.

    """

    def __init__(self, model, params, residual_norm, iterations, converged, param_stderr, exit_reason=""):
        self.model = ModelKind(model)
        self.params = params
        self.residual_norm = residual_norm
        self.iterations = iterations
        self.converged = converged
        self.param_stderr = param_stderr
        self.exit_reason = exit_reason

    @property
    def r1(self):
        return self.params['R1_ohm']

    @property
    def c1(self):
        return self.params['C1_farad']

    @property
    def r2(self):
        return self.params.get('R2_ohm')

    @property
    def aw(self):
        return self.params.get('Aw')

    def network(self):
        return self.model.network(self.params)

    def __str__(self):
        values = " ".join("%s=%.6g" % (k, self.params[k]) for k in self.model.parameter_names)
        return "%s fit %s residual=%.3g iterations=%d converged=%s" % (
            self.model, values, self.residual_norm, self.iterations, self.converged)

    def __repr__(self):
        return self.__str__()


def _model_response(kind, params, omega):
    """
    Impedance of the model and its derivatives with respect to the log parameters.

    With Zf = R1 (+ Zw) and D = 1 + j w C1 Zf the parallel part is Zf/D, so
    dZ/dlnR1 = R1/D^2, dZ/dlnAw = Zw/D^2 and dZ/dlnC1 = -j w C1 Zf^2/D^2.
    """
    names = kind.parameter_names
    r1 = params[0]
    c1 = params[1]
    jac = np.empty((omega.size, len(names)), dtype=complex)
    zf = np.full(omega.shape, r1, dtype=complex)
    if kind.has_warburg:
        aw = params[names.index('Aw')]
        zw = aw * (1 - 1j) / np.sqrt(omega)
        zf = zf + zw
    d = 1 + 1j * omega * c1 * zf
    d2 = d * d
    z = zf / d
    jac[:, 0] = r1 / d2
    jac[:, 1] = -1j * omega * c1 * zf * zf / d2
    if kind.has_warburg:
        jac[:, names.index('Aw')] = zw / d2
    if kind.has_series_r:
        r2 = params[names.index('R2_ohm')]
        z = z + r2
        jac[:, names.index('R2_ohm')] = r2
    return z, jac


def residual_weights(z, weighting):
    """
    Weights of the real and imaginary residuals of each sample.

    :return: (real weights, imaginary weights) arrays

    """
    weighting = Weighting(weighting)
    mag2 = np.abs(z) ** 2
    if weighting == Weighting.MODULUS:
        w = 1.0 / mag2
        return w, w.copy()
    if weighting == Weighting.PROPORTIONAL:
        floor = (PROPORTIONAL_FLOOR ** 2) * mag2
        return 1.0 / np.maximum(np.real(z) ** 2, floor), 1.0 / np.maximum(np.imag(z) ** 2, floor)
    ones = np.ones(z.shape)
    return ones, ones.copy()


def phase_jumps(s):
    """
    Boolean mask of the samples whose phase differs by more than 60 degrees from both neighbours.  The first and
    last samples have only one neighbour and are never flagged.
    """
    phase = phase_degrees(s.z)
    flagged = np.zeros(len(s), dtype=bool)
    if len(s) >= 3:
        before = np.abs(phase[1:-1] - phase[:-2])
        after = np.abs(phase[1:-1] - phase[2:])
        flagged[1:-1] = (before > PHASE_JUMP_DEG) & (after > PHASE_JUMP_DEG)
    return flagged


class LevenbergMarquardt(object):
    """
    Damped Gauss-Newton minimiser of a sum of squared real residuals.

    Each iteration solves (J^T J + lambda diag(J^T J)) step = -J^T r.  A step that lowers the cost is taken and
    lambda divided by ten, otherwise lambda is multiplied by ten and the step solved again, up to a ceiling of
    1e16.  When no damping level lowers the cost the current point is stationary, and it counts as converged
    only when the fit is exact or the residual is orthogonal to every Jacobian column within ``grad_tol``.

    :param residuals: function of the parameter vector returning the residual vector
    :param jacobian: function of the parameter vector returning the residual Jacobian
    :param config: :py:class:`FitConfig`
    :param floor: cost at or below which the fit is exact to rounding

    """

    TOLERANCE = "tolerance"
    STATIONARY = "stationary"
    MAX_ITERATIONS = "max-iterations"
    RANK_DEFICIENT = "rank-deficient"

    def __init__(self, residuals, jacobian, config, floor=0.0):
        self.residuals = residuals
        self.jacobian = jacobian
        self.config = config
        self.floor = floor
        self.iterations = 0
        self.exit_reason = ""
        self.converged = False

    def _cost(self, x):
        with np.errstate(over='ignore', invalid='ignore'):
            r = self.residuals(x)
            cost = float(np.dot(r, r))
        if not math.isfinite(cost):
            return r, float('inf')
        return r, cost

    def _solve(self, a, g, scale, damping):
        try:
            step = linalg.solve(a + damping * np.diag(scale), -g, assume_a='pos')
        except (linalg.LinAlgError, ValueError):
            return None
        if not np.all(np.isfinite(step)):
            return None
        return step

    @staticmethod
    def gradient_cosine(jac, r):
        """
        Largest cosine between the residual vector and a column of the Jacobian, one for a column that is zero.
        """
        r_norm = linalg.norm(r)
        if r_norm == 0:
            return 0.0
        column_norms = np.sqrt(np.sum(jac * jac, axis=0))
        cosines = np.ones(jac.shape[1])
        nonzero = column_norms > 0
        cosines[nonzero] = np.abs(np.dot(jac.T, r)[nonzero]) / (column_norms[nonzero] * r_norm)
        return float(np.max(cosines))

    def minimize(self, x0):
        """
        Runs the iteration from x0.

        :return: the best parameter vector found, and its cost

        """
        cfg = self.config
        x = np.array(x0, dtype=float)
        r, cost = self._cost(x)
        damping = cfg.damping_init
        self.iterations = 0
        self.converged = False
        self.exit_reason = self.MAX_ITERATIONS
        while self.iterations < cfg.max_iterations:
            jac = self.jacobian(x)
            a = np.dot(jac.T, jac)
            g = np.dot(jac.T, r)
            scale = np.diag(a).copy()
            scale[scale <= 0] = 1.0
            accepted = False
            solved = False
            while damping <= DAMPING_MAX:
                step = self._solve(a, g, scale, damping)
                if step is None:
                    damping *= 10.0
                    continue
                solved = True
                x_new = x + step
                r_new, cost_new = self._cost(x_new)
                if cost_new < cost:
                    accepted = True
                    damping = max(damping / 10.0, DAMPING_MIN)
                    break
                damping *= 10.0
            if not accepted:
                if solved:
                    self.exit_reason = self.STATIONARY
                    self.converged = cost <= self.floor or self.gradient_cosine(jac, r) <= cfg.grad_tol
                    if not self.converged:
                        log.warning("Stuck at cost %.6g with the residual not orthogonal to the Jacobian", cost)
                else:
                    self.exit_reason = self.RANK_DEFICIENT
                    log.warning("Normal equations singular at every damping level, returning best parameters")
                break
            self.iterations += 1
            decrease = cost - cost_new
            x, r, previous, cost = x_new, r_new, cost, cost_new
            log.debug("Iteration %d cost %.6g damping %.3g", self.iterations, cost, damping)
            small_step = np.max(np.abs(step)) <= cfg.param_tol
            small_change = decrease <= cfg.resid_tol * previous or cost <= self.floor
            if small_step and small_change:
                self.converged = True
                self.exit_reason = self.TOLERANCE
                break
        return x, cost


def _guess(s):
    order = np.argsort(s.frequency_hz)
    f = s.frequency_hz[order]
    z = s.z[order]
    r_init = float(np.abs(z[0]))
    phase = phase_degrees(z)
    if not np.any(phase < -10.0):
        log.warning("No sample has a phase below -10 degrees, capacitance guess %g F has low confidence",
                    LOW_CONFIDENCE_C)
        return InitialGuess(r_init, LOW_CONFIDENCE_C, True)
    f45 = float(f[np.argmin(np.abs(phase + 45.0))])
    return InitialGuess(r_init, 1.0 / (2 * math.pi * f45 * r_init), False)


def initial_guess_rc(s):
    """
    Starting values for a parallel RC fit.  R is the magnitude at the lowest frequency, where the parallel RC
    is on its DC plateau, and C follows from the frequency whose phase is nearest -45 degrees,
    C = 1/(2 pi f45 R).

    :param s: :py:class:`Spectrum` with at least 5 samples over at least 2 decades
    :return: :py:class:`InitialGuess`, low confidence with C = 1e-10 F when no phase falls below -10 degrees
    :raises DomainError: When the spectrum is too short or too narrow

    """
    if len(s) < 5:
        raise DomainError("Initial guess needs at least 5 samples, got %d" % len(s))
    f = s.frequency_hz
    if math.log10(f.max() / f.min()) < 2.0 - 1e-9:
        raise DomainError("Initial guess needs at least 2 decades of frequency, got %g to %g Hz" % (f.min(),
                                                                                                 f.max()))
    return _guess(s)


def _arc_apex(z):
    """Index of the most prominent interior maximum of -Im z, the global maximum when there is none."""
    height = -np.imag(z)
    peaks, properties = signal.find_peaks(height, prominence=0.1 * max(float(height.max()), 0.0))
    if peaks.size:
        return int(peaks[np.argmax(properties["prominences"])])
    return int(np.argmax(height))


def _start_values(s, kind):
    """Initial parameter vector, in natural units, for any model kind."""
    order = np.argsort(s.frequency_hz)
    f = s.frequency_hz[order]
    z = s.z[order]
    omega = 2 * math.pi * f
    guess = _guess(s)
    r_low = float(np.real(z[0])) if np.real(z[0]) > 0 else guess.r_init
    values = {'R1_ohm': guess.r_init, 'C1_farad': guess.c_init}
    if kind.has_warburg:
        aw = 0.5 * abs(float(np.imag(z[0]))) * math.sqrt(omega[0])
        aw = aw if aw > 0 else 1e-3 * r_low
        values['Aw'] = aw
        values['R1_ohm'] = max(r_low - aw / math.sqrt(omega[0]), 0.1 * r_low)
    if kind.has_series_r:
        r2 = float(np.real(z[-1]))
        if not 0 < r2 < r_low:
            r2 = 1e-3 * r_low
        values['R2_ohm'] = r2
        values['R1_ohm'] = max(values['R1_ohm'] - r2, 1e-3 * r_low)
    if kind != ModelKind.PARALLEL_RC:
        # apex of the arc, where w R1 C1 = 1; a diffusion tail rises again below it
        apex = _arc_apex(z)
        if np.imag(z[apex]) < 0:
            values['C1_farad'] = 1.0 / (omega[apex] * values['R1_ohm'])
    return [values[name] for name in kind.parameter_names]


def fit_model(s, kind=ModelKind.PARALLEL_RC, cfg=None, start=None):
    """
    Fits a circuit topology to a spectrum by minimising sum w_i |Z_model(w_i) - Z_i|^2 over the logarithms of
    the parameters.

    :param s: :py:class:`Spectrum`
    :param kind: :py:class:`ModelKind`
    :param cfg: :py:class:`FitConfig`, defaults when None
    :param start: optional sequence of starting values in the order of ``kind.parameter_names``
    :return: :py:class:`FitResult`, with converged False and the best parameters found when the iteration fails
    :raises DomainError: When there are fewer than two samples per parameter

    """
    kind = ModelKind(kind)
    if cfg is None:
        cfg = FitConfig()
    names = kind.parameter_names
    if len(s) < 2 * len(names):
        raise DomainError("Fitting %s needs at least %d samples, got %d" % (kind, 2 * len(names), len(s)))

    omega = s.omega
    data = s.z
    w_re, w_im = residual_weights(data, cfg.weighting)
    if cfg.screen_phase:
        jumps = phase_jumps(s)
        if np.any(jumps):
            log.warning("%d samples with phase jumps above %g degrees down weighted by %g", int(jumps.sum()),
                        PHASE_JUMP_DEG, PHASE_JUMP_WEIGHT)
            w_re = np.where(jumps, w_re * PHASE_JUMP_WEIGHT, w_re)
            w_im = np.where(jumps, w_im * PHASE_JUMP_WEIGHT, w_im)
    sw = np.concatenate([np.sqrt(w_re), np.sqrt(w_im)])
    target = np.concatenate([np.real(data), np.imag(data)])

    def residuals(x):
        z, _ = _model_response(kind, np.exp(x), omega)
        return sw * (np.concatenate([np.real(z), np.imag(z)]) - target)

    def jacobian(x):
        _, jac = _model_response(kind, np.exp(x), omega)
        return sw[:, np.newaxis] * np.concatenate([np.real(jac), np.imag(jac)])

    if start is None:
        start = _start_values(s, kind)
    floor = EXACT_FIT_FLOOR * float(np.dot(sw * target, sw * target))
    solver = LevenbergMarquardt(residuals, jacobian, cfg, floor)
    x, cost = solver.minimize(np.log(np.asarray(start, dtype=float)))

    values = np.exp(x)
    dof = target.size - len(names)
    stderr = np.full(len(names), np.nan)
    jac = jacobian(x)
    try:
        cov = linalg.inv(np.dot(jac.T, jac)) * (cost / dof)
        stderr = values * np.sqrt(np.abs(np.diag(cov)))
    except (linalg.LinAlgError, ValueError):
        log.warning("Covariance of the %s fit is singular, standard errors unavailable", kind)
    residual_norm = math.sqrt(cost / target.size)
    result = FitResult(kind, collections.OrderedDict(zip(names, values.tolist())), residual_norm,
                       solver.iterations, solver.converged,
                       collections.OrderedDict(zip(names, stderr.tolist())), solver.exit_reason)
    log.info("%s", result)
    return result


def select_model(s, kinds=None, cfg=None, improvement=0.1):
    """
    Fits each candidate topology from the simplest up and keeps a more complex one only when it converges and
    lowers the residual norm by more than the given fraction.  The Warburg topologies are only tried when
    :py:func:`detect_warburg` finds diffusion behaviour.

    :return: the selected :py:class:`FitResult`

    """
    if kinds is None:
        kinds = [ModelKind.PARALLEL_RC, ModelKind.PARALLEL_RC_SERIES_R]
        detection = detect_warburg(s)
        if detection.present:
            kinds += [ModelKind.PARALLEL_RC_WARBURG, ModelKind.PARALLEL_RC_SERIES_R_WARBURG]
    best = None
    for kind in kinds:
        kind = ModelKind(kind)
        if len(s) < 2 * len(kind.parameter_names):
            continue
        result = fit_model(s, kind, cfg)
        if best is None:
            best = result
        elif result.converged and result.residual_norm < (1.0 - improvement) * best.residual_norm:
            best = result
    if best is None:
        raise DomainError("Spectrum of %d samples is too short for any candidate model" % len(s))
    return best


class WarburgDetection(object):
    """
    Outcome of :py:func:`detect_warburg`.  ``slope`` and ``phase_low`` are NaN when ``indeterminate``.
    """

    def __init__(self, present, slope, phase_low, indeterminate=False):
        self.present = present
        self.slope = slope
        self.phase_low = phase_low
        self.indeterminate = indeterminate

    def __iter__(self):
        return iter((self.present, self.slope, self.phase_low))

    def __str__(self):
        if self.indeterminate:
            return "Warburg indeterminate"
        return "Warburg %s, slope %.3f, phase %.1f deg" % ("present" if self.present else "absent", self.slope,
                                                         self.phase_low)


def detect_warburg(s, slope_range=(-0.6, -0.4), phase_range=(-55.0, -35.0)):
    """
    Looks for semi-infinite diffusion in the lowest decade of the spectrum, where the log-log slope of |Z|
    against angular frequency approaches -1/2 and the phase approaches -45 degrees.

    :param s: :py:class:`Spectrum`
    :return: :py:class:`WarburgDetection`, indeterminate when the spectrum does not cover a full decade with at
        least three samples in its lowest decade

    """
    f = s.frequency_hz
    lowest = f.min()
    in_decade = f <= lowest * 10.0 * (1 + 1e-12)
    if f.max() < lowest * 10.0 * (1 - 1e-12) or np.count_nonzero(in_decade) < 3:
        log.info("Not enough low frequency coverage to look for Warburg behaviour")
        return WarburgDetection(False, float('nan'), float('nan'), True)
    omega = 2 * math.pi * f[in_decade]
    z = s.z[in_decade]
    slope = float(np.polyfit(np.log10(omega), np.log10(np.abs(z)), 1)[0])
    phase_low = float(np.median(phase_degrees(z)))
    present = (slope_range[0] <= slope <= slope_range[1]) and (phase_range[0] <= phase_low <= phase_range[1])
    return WarburgDetection(present, slope, phase_low)


def classify_resistance(r1, r0, thresholds=None):
    """
    Regime for a contact resistance.

    Example::

        >>> print(classify_resistance(10.0, 10.0))
        Boundary
        >>> print(classify_resistance(1e9, 10.0))
        FullFilm

    """
    if thresholds is None:
        thresholds = RegimeThresholds()
    if r1 < thresholds.boundary_ohm(r0):
        return Regime(Regime.BOUNDARY)
    if r1 > thresholds.full_film_ohm(r0):
        return Regime(Regime.FULL_FILM)
    return Regime(Regime.MIXED)


def classify_regime(fit, r0, thresholds=None):
    """
    Lubrication regime of a fitted contact from its resistance R1.  Boundary below boundary_factor * r0,
    full film above open_factor * r0, mixed between.

    :param fit: :py:class:`FitResult`
    :param r0: stationary contact resistance
    :param thresholds: :py:class:`RegimeThresholds`
    :return: :py:class:`Regime`

    """
    if not fit.converged:
        log.info("Classifying the best parameters of a fit that did not converge")
    return classify_resistance(fit.r1, r0, thresholds)


def fit_report_row(name, result, regime):
    """
    Values of one fit report row keyed by column name.  Parameters that the model does not have are None.

    :param name: spectrum file name
    :param result: :py:class:`FitResult`
    :param regime: :py:class:`Regime` or an error text
    :return: OrderedDict

    """
    row = collections.OrderedDict((c, None) for c in REPORT_COLUMNS)
    row['file'] = name
    row['model'] = result.model.friendly
    row['r1_ohm'] = result.r1
    row['c1_farad'] = result.c1
    row['r2_ohm'] = result.r2
    row['aw'] = result.aw
    row['residual_norm'] = result.residual_norm
    row['iterations'] = result.iterations
    row['converged'] = result.converged
    row['regime'] = regime
    return row
