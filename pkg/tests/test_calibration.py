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
import collections
import math
import unittest

import numpy as np

from eisfilm.impedance import DomainError, JoinError, EmptyJoinError, ModelBuildError, OPEN_CIRCUIT
from eisfilm.impedance.circuit import FrequencyGrid, parallel_rc, synth_spectrum
from eisfilm.impedance.contact import EPSILON_0, BallOnDiscModel
from eisfilm.impedance.calibration import OperatingPoint, JoinTolerance, CalibrationRecord, ThicknessModel, \
    merge_datasets, build_thickness_model, thickness_from_rc, model_response_family
from eisfilm.impedance.ehd import material_conversion_factor
from eisfilm.impedance.fitting import ModelKind, FitResult, Regime, fit_model

SPEEDS = [2500.0, 2000.0, 1300.0, 1000.0, 700.0, 500.0, 200.0, 100.0]


def relative(a, b):
    return abs(a - b) / abs(b)


def contact(alpha=0.0):
    return BallOnDiscModel(2.2 * EPSILON_0, 1.362e-4, 9.525e-3, 100e-9, alpha)


def fit(r, c):
    return FitResult(ModelKind.PARALLEL_RC, collections.OrderedDict([('R1_ohm', r), ('C1_farad', c)]), 0.0, 5,
                     True, {})


def forward_records(h_values, temperature_c=40.0):
    geometry = contact()
    return [CalibrationRecord(OperatingPoint(temperature_c, u, 20.0), OPEN_CIRCUIT,
                              geometry.with_film(h).capacitance(), h) for u, h in zip(SPEEDS, h_values)]


class TestOperatingPoint(unittest.TestCase):
    def test_tolerance(self):
        tolerance = JoinTolerance()
        self.assertTrue(tolerance.matches(OperatingPoint(40, 2500, 20), OperatingPoint(40.4, 2510, 20.1)))
        self.assertFalse(tolerance.matches(OperatingPoint(40, 2500, 20), OperatingPoint(41, 2500, 20)))
        self.assertFalse(tolerance.matches(OperatingPoint(40, 2500, 20), OperatingPoint(40, 2400, 20)))
        self.assertFalse(tolerance.matches(OperatingPoint(None, 2500, 20), OperatingPoint(40, 2500, 20)))

    def test_domain(self):
        self.assertRaises(DomainError, OperatingPoint, 40, -1, 20)
        self.assertRaises(DomainError, OperatingPoint, 40, 10, 0)


class TestMerge(unittest.TestCase):
    def test_matched(self):
        fits = [(OperatingPoint(40, u, 20), fit(1e6, 1e-11 * (i + 1))) for i, u in enumerate([2500, 2000, 1300])]
        utfi = [(OperatingPoint(40, u, 20), h) for u, h in [(2500, 100e-9), (2000, 80e-9), (1300, 60e-9)]]
        merged = merge_datasets(fits, utfi, 0.9468)
        self.assertEqual(len(merged), 3)
        self.assertEqual([rec.h_m for rec in merged], [0.9468 * 100e-9, 0.9468 * 80e-9, 0.9468 * 60e-9])
        self.assertEqual(merged.unmatched_fits, [])
        self.assertEqual(merged.unmatched_utfi, [])

    def test_unit_factor(self):
        merged = merge_datasets([(OperatingPoint(40, 100, 20), fit(1e6, 1e-11))],
                                [(OperatingPoint(40, 100, 20), 55e-9)], 1.0)
        self.assertEqual(merged.records[0].h_m, 55e-9)

    def test_unmatched(self):
        fits = [(OperatingPoint(40, 2400, 20), fit(1e6, 1e-11)), (OperatingPoint(40, 1300, 20), fit(1e6, 2e-11))]
        utfi = [(OperatingPoint(40, 2500, 20), 100e-9), (OperatingPoint(40, 1300, 20), 60e-9)]
        with self.assertLogs('eisfilm.impedance.calibration', level='WARNING'):
            merged = merge_datasets(fits, utfi, 1.0)
        self.assertEqual(len(merged), 1)
        self.assertEqual(merged.unmatched_fits, [OperatingPoint(40, 2400, 20)])
        self.assertEqual(merged.unmatched_utfi, [OperatingPoint(40, 2500, 20)])
        self.assertLessEqual(len(merged), min(len(fits), len(utfi)))

    def test_ambiguous(self):
        fits = [(OperatingPoint(40, 1002, 20), fit(1e6, 1e-11))]
        utfi = [(OperatingPoint(40, 1000, 20), 100e-9), (OperatingPoint(40, 1005, 20), 99e-9)]
        with self.assertRaises(JoinError) as cm:
            merge_datasets(fits, utfi, 1.0)
        self.assertEqual(len(cm.exception.collisions), 2)

    def test_shared_row(self):
        fits = [(OperatingPoint(40, 1000, 20), fit(1e6, 1e-11)), (OperatingPoint(40, 1004, 20), fit(1e6, 1e-11))]
        utfi = [(OperatingPoint(40, 1002, 20), 100e-9)]
        self.assertRaises(JoinError, merge_datasets, fits, utfi, 1.0)

    def test_empty(self):
        fits = [(OperatingPoint(40, 100, 20), fit(1e6, 1e-11))]
        utfi = [(OperatingPoint(80, 100, 20), 100e-9)]
        self.assertRaises(EmptyJoinError, merge_datasets, fits, utfi, 1.0)

    def test_boundary_lower_bound(self):
        merged = merge_datasets([(OperatingPoint(40, 100, 20), fit(12.0, 1e-10))],
                                [(OperatingPoint(40, 100, 20), 5e-9)], 1.0, r0=10.0)
        self.assertTrue(merged.records[0].h_is_lower_bound)


class TestThicknessModel(unittest.TestCase):
    def setUp(self):
        self.h_values = [300e-9, 100e-9, 30e-9, 10e-9]
        self.records = forward_records(self.h_values)
        self.model = build_thickness_model(self.records, 10.0)

    def test_knots(self):
        self.assertEqual(len(self.model), 4)
        self.assertTrue(np.all(np.diff(self.model.log_c) > 0))
        self.assertTrue(np.all(np.diff(self.model.log_h) < 0))

    def test_interpolates_knots(self):
        for rec in self.records:
            h, extrapolated = self.model.thickness(rec.c_farad)
            self.assertLess(relative(h, rec.h_m), 1e-9)
            self.assertFalse(extrapolated)

    def test_capacitance_at_knots(self):
        for rec in self.records:
            self.assertLess(relative(self.model.capacitance(rec.h_m), rec.c_farad), 1e-9)

    def test_capacitance_inverts_thickness(self):
        for h in np.logspace(math.log10(11e-9), math.log10(290e-9), 25):
            h_back, extrapolated = self.model.thickness(self.model.capacitance(h))
            self.assertFalse(extrapolated)
            self.assertLess(relative(h_back, h), 1e-9)

    def test_capacitance_outside_knots(self):
        self.assertRaises(DomainError, self.model.capacitance, 1e-6)
        self.assertRaises(DomainError, self.model.capacitance, 1e-9)

    def test_between_knots(self):
        c_low = self.records[0].c_farad
        c_high = self.records[1].c_farad
        h, extrapolated = self.model.thickness(math.sqrt(c_low * c_high))
        self.assertFalse(extrapolated)
        self.assertTrue(100e-9 < h < 300e-9)

    def test_extrapolation(self):
        h, extrapolated = self.model.thickness(2 * self.records[-1].c_farad)
        self.assertTrue(extrapolated)
        self.assertLess(h, 10e-9)
        h, extrapolated = self.model.thickness(0.5 * self.records[0].c_farad)
        self.assertTrue(extrapolated)
        self.assertGreater(h, 300e-9)

    def test_temperature_collapse(self):
        both = forward_records(self.h_values, 40.0) + forward_records(self.h_values, 100.0)
        merged = build_thickness_model(both, 10.0)
        self.assertEqual(merged.knots, self.model.knots)

    def test_near_duplicates(self):
        extra = CalibrationRecord(OperatingPoint(60, 10, 20), OPEN_CIRCUIT, self.records[1].c_farad * 1.001,
                                  self.records[1].h_m * 0.99)
        model = build_thickness_model(self.records + [extra], 10.0)
        self.assertEqual(len(model), 4)
        h, _ = model.thickness(10 ** model.log_c[1])
        self.assertLess(relative(h, math.sqrt(self.records[1].h_m * extra.h_m)), 1e-9)

    def test_non_monotone(self):
        records = forward_records(self.h_values)
        records[1].h_m = 500e-9
        with self.assertRaises(ModelBuildError) as cm:
            build_thickness_model(records, 10.0)
        self.assertTrue(cm.exception.offending)

    def test_too_few(self):
        self.assertRaises(ModelBuildError, build_thickness_model, self.records[:2], 10.0)

    def test_boundary_records_left_out(self):
        boundary = CalibrationRecord(OperatingPoint(40, 1, 20), 20.0, 1e-9, 1e-9)
        model = build_thickness_model(self.records + [boundary], 10.0)
        self.assertEqual(len(model), 4)

    def test_bad_knots(self):
        self.assertRaises(ModelBuildError, ThicknessModel, [1, 2, 3], [3, 4, 5], 100.0)


class TestThicknessFromRc(unittest.TestCase):
    def setUp(self):
        self.records = forward_records([300e-9, 100e-9, 30e-9, 10e-9])
        self.model = build_thickness_model(self.records, 10.0)

    def test_knot(self):
        estimate = thickness_from_rc(self.model, 1e8, self.records[1].c_farad)
        self.assertLess(relative(estimate.h_m, 100e-9), 1e-9)
        self.assertEqual(estimate.regime, Regime.FULL_FILM)
        self.assertFalse(estimate.extrapolated)

    def test_boundary(self):
        estimate = thickness_from_rc(self.model, 10.0, self.records[1].c_farad)
        self.assertEqual(estimate.regime, Regime.BOUNDARY)
        self.assertTrue(estimate.extrapolated)
        self.assertEqual(estimate.h_m, self.model.h_min_m)

    def test_mixed(self):
        self.assertEqual(thickness_from_rc(self.model, 1e3, self.records[1].c_farad).regime, Regime.MIXED)

    def test_out_of_range(self):
        self.assertTrue(thickness_from_rc(self.model, 1e8, 10 * self.records[-1].c_farad).extrapolated)

    def test_open_circuit(self):
        self.assertEqual(thickness_from_rc(self.model, OPEN_CIRCUIT, self.records[0].c_farad).regime,
                         Regime.FULL_FILM)

    def test_monotone(self):
        rng = np.random.default_rng(9)
        c = np.sort(10 ** rng.uniform(math.log10(self.records[0].c_farad) - 0.5,
                                      math.log10(self.records[-1].c_farad) + 0.5, 1000))
        h = [thickness_from_rc(self.model, 1e8, value).h_m for value in c]
        self.assertTrue(np.all(np.diff(h) <= 0))

    def test_domain(self):
        self.assertRaises(DomainError, thickness_from_rc, self.model, 1e8, 0.0)


class TestFamily(unittest.TestCase):
    def setUp(self):
        self.model = build_thickness_model(forward_records([300e-9, 100e-9, 30e-9, 10e-9]), 10.0)
        self.grid = FrequencyGrid.default()

    def test_magnitude_monotone(self):
        h_grid = np.logspace(math.log10(0.1e-9), math.log10(1000e-9), 5)
        family = model_response_family(self.model, contact(), h_grid, self.grid, alpha=1e-6)
        self.assertEqual(len(family), 5)
        magnitudes = [abs(member.spectrum.z[30]) for member in family]
        self.assertTrue(np.all(np.diff(magnitudes) > 0))
        self.assertEqual([member.calibrated for member in family], [False, False, True, True, False])

    def test_empty(self):
        self.assertEqual(model_response_family(self.model, contact(), [], self.grid), [])

    def test_knot_round_trip(self):
        # knots carry 5 pF of stray capacitance the geometry knows nothing about
        records = forward_records([300e-9, 100e-9, 30e-9, 10e-9])
        stray = [CalibrationRecord(rec.op, rec.r_ohm, rec.c_farad + 5e-12, rec.h_m) for rec in records]
        model = build_thickness_model(stray, 10.0)
        family = model_response_family(model, contact(), [100e-9], self.grid, alpha=1e-6)
        self.assertTrue(family[0].calibrated)
        self.assertLess(relative(family[0].capacitance_farad, stray[1].c_farad), 1e-9)
        result = fit_model(family[0].spectrum)
        self.assertLess(relative(result.c1, stray[1].c_farad), 1e-3)

    def test_noisy_round_trip(self):
        h_values = [200e-9, 60e-9, 20e-9]
        family = model_response_family(self.model, contact(), h_values, self.grid, alpha=1e-6)
        for i, member in enumerate(family):
            self.assertTrue(member.calibrated)
            s = synth_spectrum(parallel_rc(member.resistance_ohm, member.capacitance_farad), self.grid, 0.01, i)
            result = fit_model(s)
            self.assertTrue(result.converged)
            self.assertLess(relative(result.r1, member.resistance_ohm), 0.02)
            self.assertLess(relative(result.c1, member.capacitance_farad), 0.02)
            self.assertLess(relative(thickness_from_rc(self.model, result.r1, result.c1).h_m, member.h_m), 0.05)

    def test_geometry_outside_knots(self):
        family = model_response_family(self.model, contact(), [1000e-9], self.grid, alpha=1e-6)
        self.assertFalse(family[0].calibrated)
        self.assertLess(relative(family[0].capacitance_farad, contact().with_film(1000e-9).capacitance()), 1e-12)

    def test_alpha_function(self):
        family = model_response_family(None, contact(), [10e-9, 100e-9], self.grid,
                                       alpha=lambda h: 1e-3 if h < 50e-9 else 1e-6)
        self.assertLess(relative(family[0].resistance_ohm, 1e4), 1e-12)
        self.assertLess(relative(family[1].resistance_ohm, 1e7), 1e-12)

    def test_invalid_member(self):
        family = model_response_family(None, contact(), [10e-9, -1.0, 100e-9], self.grid)
        self.assertIsNotNone(family[1].error)
        self.assertIsNone(family[1].spectrum)
        self.assertIsNotNone(family[2].spectrum)


class TestPipeline(unittest.TestCase):
    """Synthetic spectra at known film thickness, fitted, joined, calibrated and read back."""

    def test_end_to_end(self):
        factor = material_conversion_factor()
        geometry = contact(alpha=1e-6)
        h_values = np.logspace(math.log10(20e-9), math.log10(500e-9), 8)[::-1]
        grid = FrequencyGrid.default()
        fits = []
        utfi = []
        for i, (u, h) in enumerate(zip(SPEEDS, h_values)):
            op = OperatingPoint(40.0, u, 20.0)
            s = synth_spectrum(geometry.with_film(h).network(), grid, 0.001, i, op)
            result = fit_model(s)
            self.assertTrue(result.converged)
            fits.append((op, result))
            utfi.append((op, h / factor))
        merged = merge_datasets(fits, utfi, factor, r0=10.0)
        self.assertEqual(len(merged), 8)
        model = build_thickness_model(merged.records, 10.0)
        self.assertEqual(len(model), 8)
        for (op, result), h in zip(fits, h_values):
            estimate = thickness_from_rc(model, result.r1, result.c1)
            self.assertEqual(estimate.regime, Regime.FULL_FILM)
            self.assertLess(relative(estimate.h_m, h), 5e-3)
        for h_low, h_high in zip(h_values[1:], h_values[:-1]):
            h = math.sqrt(h_low * h_high)
            c = geometry.with_film(h).capacitance()
            estimate = thickness_from_rc(model, 1e7, c)
            self.assertFalse(estimate.extrapolated)
            self.assertLess(relative(estimate.h_m, h), 0.05)


if __name__ == '__main__':
    unittest.main()
