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
Command handlers.  Each handler takes plain arguments, does its work through the library, and returns the
process exit status.  Library exceptions are caught in the handler and turned into a message on standard error
and the exit status of the exception class.
"""
import logging
import multiprocessing
import os
import sys

import numpy as np

from eisfilm import formats
from eisfilm.impedance import EisException, DomainError
from eisfilm.impedance.calibration import merge_datasets, build_thickness_model, thickness_from_rc, \
    model_response_family
from eisfilm.impedance.circuit import FrequencyGrid, synth_spectrum, to_bode, to_nyquist
from eisfilm.impedance.contact import DEFAULT_R0_OHM
from eisfilm.impedance.ehd import EhdInputs, film_thickness_table, material_conversion_factor, \
    DEFAULT_ELLIPTICITY, DEFAULT_SPEEDS_MM_S
from eisfilm.impedance.fitting import ModelKind, Weighting, FitConfig, RegimeThresholds, fit_model, select_model, \
    classify_regime, fit_report_row

log = logging.getLogger(__name__)

AUTO_MODEL = "auto"


def handle_eis_exception(e):
    """
    Reports an exception on standard error and returns its exit status.

    :param e: :py:class:`EisException`
    :return: exit status

    """
    sys.stderr.write("%s: %s\n" % (e.__class__.__name__, e.message))
    sys.stderr.write("%s\n" % e.to_json())
    return e.exit_status


def _svg_path(output_path):
    return os.path.splitext(output_path)[0] + ".svg"


def thresholds_for(r0, threshold_ohm=None):
    """Regime thresholds, with the boundary threshold given in ohms when threshold_ohm is set."""
    if threshold_ohm is None:
        return RegimeThresholds()
    defaults = RegimeThresholds()
    return RegimeThresholds(float(threshold_ohm) / r0, defaults.open_factor)


def cmd_simulate(config_path, output_path, noise=0.0, seed=0, grid=None, metadata=False):
    """
    Writes the spectrum of the ball on disc contact described by a configuration file.

    :param config_path: contact configuration
    :param output_path: spectrum CSV to write
    :param noise: relative noise sigma
    :param seed: noise seed
    :param grid: :py:class:`FrequencyGrid`, the default measurement grid when None
    :param metadata: write the operating point and amplitude as comment lines before the header
    :return: exit status

    """
    try:
        config = formats.ContactConfig.from_file(config_path)
        model = config.ball_on_disc()
        if grid is None:
            grid = FrequencyGrid.default()
        log.info("Simulating %s over %s", model, grid)
        spectrum = synth_spectrum(model.network(), grid, noise, seed, config.operating_point(), config.amplitude_mv)
        formats.write_spectrum(output_path, spectrum, metadata)
        return 0
    except EisException as e:
        return handle_eis_exception(e)


def execute_fit(path, model, cfg, r0, thresholds):
    """
    Fits one spectrum file.  Runs in a worker process, so failures are returned rather than raised.

    :return: (fit report row, operating point or None), or the exception that stopped the fit

    """
    try:
        spectrum = formats.read_spectrum(path)
        if model == AUTO_MODEL:
            result = select_model(spectrum, cfg=cfg)
        else:
            result = fit_model(spectrum, model, cfg)
        regime = classify_regime(result, r0, thresholds)
        return fit_report_row(os.path.basename(path), result, regime), spectrum.meta
    except EisException as e:
        return e


def _execute_fit_star(arguments):
    return execute_fit(*arguments)


def _init_worker(level):
    multiprocessing.log_to_stderr(level)


def cmd_fit(paths, output_path, model="rc", weighting="modulus", r0=DEFAULT_R0_OHM, threshold_ohm=None, jobs=1,
            points_path=None):
    """
    Fits every spectrum and writes one report row per input, in input order.  A file that cannot be read or
    fitted gives an error row.

    :param paths: spectrum files
    :param output_path: report CSV to write
    :param model: ``rc``, ``rc+r``, ``rc+w``, ``rc+r+w`` or ``auto``
    :param weighting: ``modulus``, ``proportional`` or ``unit``
    :param jobs: number of worker processes
    :param points_path: optional operating point CSV to write, for the spectra that carry one
    :return: 0 when at least one fit succeeded, 1 when all failed

    """
    try:
        if model != AUTO_MODEL:
            model = ModelKind.from_name(model)
        cfg = FitConfig(weighting=Weighting.from_name(weighting))
        thresholds = thresholds_for(r0, threshold_ohm)
        if not paths:
            raise DomainError("No spectrum files given")
        work = [(path, model, cfg, r0, thresholds) for path in paths]
        if jobs > 1 and len(paths) > 1:
            pool = multiprocessing.Pool(min(jobs, len(paths)), _init_worker, (logging.getLogger().level,))
            try:
                outcomes = pool.map(_execute_fit_star, work)
            finally:
                pool.close()
                pool.join()
        else:
            outcomes = [execute_fit(*w) for w in work]
        rows = []
        points = []
        failures = 0
        for path, rc in zip(paths, outcomes):
            if isinstance(rc, EisException):
                failures += 1
                log.warning("Fit of %s failed: %s", path, rc.message)
                name = model.friendly if model != AUTO_MODEL else AUTO_MODEL
                rows.append(formats.error_report_row(os.path.basename(path), name, rc.message))
                continue
            row, op = rc
            rows.append(row)
            if op is not None:
                points.append((row['file'], op))
        formats.write_fit_report(output_path, rows)
        if points_path:
            formats.write_operating_points(points_path, points)
        if failures == len(paths):
            sys.stderr.write("All %d fits failed\n" % failures)
            return 1
        return 0
    except EisException as e:
        return handle_eis_exception(e)


def cmd_bode(spectrum_path, output_path, svg=False):
    """Writes the Bode table ``freq_hz,z_mag_ohm,z_phase_deg`` and optionally an SVG plot beside it."""
    try:
        spectrum = formats.read_spectrum(spectrum_path)
        formats.write_bode(output_path, to_bode(spectrum))
        if svg:
            from eisfilm.plots import bode_svg
            bode_svg(_svg_path(output_path), spectrum)
        return 0
    except EisException as e:
        return handle_eis_exception(e)


def cmd_nyquist(spectrum_path, output_path, svg=False):
    """Writes the Nyquist table ``freq_hz,z_real_ohm,z_neg_imag_ohm`` and optionally an SVG plot beside it."""
    try:
        spectrum = formats.read_spectrum(spectrum_path)
        formats.write_nyquist(output_path, to_nyquist(spectrum))
        if svg:
            from eisfilm.plots import nyquist_svg
            nyquist_svg(_svg_path(output_path), spectrum)
        return 0
    except EisException as e:
        return handle_eis_exception(e)


def cmd_calibrate(report_path, utfi_path, model_path, points_path=None, r0=DEFAULT_R0_OHM, factor=None,
                  threshold_ohm=None, dataset_path=None):
    """
    Joins a fit report with interferometry film thickness, builds the thickness model and writes it.  The
    operating point of each fit is looked up by file name in the operating point CSV.

    :param points_path: operating point CSV as written by :py:func:`cmd_fit`
    :param factor: material conversion factor, steel pair over steel and glass when None
    :param dataset_path: optional calibration dataset CSV to write
    :return: exit status

    """
    try:
        if factor is None:
            factor = material_conversion_factor()
        thresholds = thresholds_for(r0, threshold_ohm)
        points = formats.read_operating_points(points_path) if points_path else {}
        fits = []
        for name, fit, regime in formats.read_fit_report(report_path):
            op = points.get(name)
            if fit is None:
                log.info("Skipping error row for %s", name)
            elif op is None:
                log.warning("Fit of %s has no operating point and cannot be joined", name)
            else:
                fits.append((op, fit))
        utfi = formats.read_utfi(utfi_path)
        merged = merge_datasets(fits, utfi, factor, r0=r0, thresholds=thresholds)
        sys.stdout.write("matched=%d unmatched_fits=%d unmatched_utfi=%d\n" % (
            len(merged.records), len(merged.unmatched_fits), len(merged.unmatched_utfi)))
        if dataset_path:
            formats.write_dataset(dataset_path, merged.records)
        model = build_thickness_model(merged.records, r0, thresholds)
        formats.write_model(model_path, model)
        sys.stdout.write("knots=%d\n" % len(model))
        return 0
    except EisException as e:
        if getattr(e, 'offending', None):
            for record in e.offending:
                sys.stderr.write("offending: %s\n" % record)
        return handle_eis_exception(e)


def cmd_thickness(model_path, r, c):
    """Prints ``h_nm,regime,extrapolated`` for a resistance and capacitance."""
    try:
        model = formats.read_model(model_path)
        estimate = thickness_from_rc(model, r, c)
        sys.stdout.write("%s,%s,%s\n" % (formats.format_float(estimate.h_m * 1e9), estimate.regime,
                                         formats.format_value(estimate.extrapolated)))
        return 0
    except EisException as e:
        return handle_eis_exception(e)


def cmd_family(model_path, config_path, output_dir, h_grid_nm=(0.1, 1000.0, 5), alpha=None, grid=None,
               svg=False):
    """
    Writes the spectra of the contact over a log spaced range of film thickness, one CSV per thickness plus an
    index ``family.csv``, and optionally overlaid Bode and Nyquist SVG plots.

    :param h_grid_nm: (lowest, highest, count) film thickness in nanometres
    :param alpha: breakdown ratio, from the configuration when None
    :return: exit status

    """
    try:
        model = formats.read_model(model_path)
        config = formats.ContactConfig.from_file(config_path)
        contact = config.ball_on_disc()
        if grid is None:
            grid = FrequencyGrid.default()
        lo, hi, count = h_grid_nm
        if not 0 < lo <= hi or int(count) < 1:
            raise DomainError("Film thickness grid needs 0 < lowest <= highest and a positive count")
        h_values = (np.logspace(np.log10(lo), np.log10(hi), int(count)) * 1e-9).tolist()
        family = model_response_family(model, contact, h_values, grid, alpha=alpha)
        if not os.path.isdir(output_dir):
            os.makedirs(output_dir)
        index = []
        spectra = []
        labels = []
        for i, member in enumerate(family):
            name = ""
            if member.error is None:
                name = "family_%02d.csv" % i
                formats.write_spectrum(os.path.join(output_dir, name), member.spectrum)
                spectra.append(member.spectrum)
                labels.append("h = %.3g nm" % (member.h_m * 1e9))
            index.append((member.h_m * 1e9, member.resistance_ohm, member.capacitance_farad, member.calibrated,
                          name, "" if member.error is None else member.error.message))
        formats.write_rows(os.path.join(output_dir, "family.csv"),
                            ['h_nm', 'r_ohm', 'c_farad', 'calibrated', 'file', 'error'], index)
        if svg and spectra:
            from eisfilm.plots import bode_svg, nyquist_svg
            bode_svg(os.path.join(output_dir, "family_bode.svg"), spectra, labels)
            nyquist_svg(os.path.join(output_dir, "family_nyquist.svg"), spectra, labels)
        if family and not spectra:
            return handle_eis_exception(family[0].error)
        return 0
    except EisException as e:
        return handle_eis_exception(e)


def cmd_film(config_path, output_path, viscosity_pa_s, pressure_viscosity_per_pa, k=DEFAULT_ELLIPTICITY,
             temperature_c=None, speeds_mm_s=DEFAULT_SPEEDS_MM_S, factor=1.0):
    """
    Writes predicted central film thickness over a speed sweep in the interferometry CSV format.  The reduced
    radius is the ball radius of the configuration, on a flat disc.
    """
    try:
        config = formats.ContactConfig.from_file(config_path)
        inputs = EhdInputs(config.ball_radius_m, 1.0, viscosity_pa_s, config.reduced_modulus_pa,
                           pressure_viscosity_per_pa, config.load_n, k)
        if temperature_c is None:
            temperature_c = config.temperature_c
        rows = film_thickness_table(inputs, speeds_mm_s, temperature_c, factor)
        formats.write_utfi(output_path, rows)
        return 0
    except EisException as e:
        return handle_eis_exception(e)
