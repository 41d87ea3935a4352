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
import json
import math
import unittest

import numpy as np

from eisfilm.impedance import DomainError, ModelValidityError, NoSolutionError, OPEN_CIRCUIT, DIVERGENT, \
    is_open_circuit
from eisfilm.impedance.circuit import Element, Parallel
from eisfilm.impedance.contact import EPSILON_0, HertzContact, BallOnDiscModel, SurroundForm, CylinderModel, \
    hertz_radius, capacitance_hertz_zone, capacitance_surround, total_capacitance, breakdown_resistance, \
    cylinder_capacitance, invert_ball_on_disc

BALL_RADIUS = 9.525e-3
HERTZ_RADIUS = 1.362e-4


def relative(a, b):
    return abs(a - b) / abs(b)


def mtm_model(h=100e-9, alpha=0.0, form=SurroundForm.GAP_INTEGRAL):
    return BallOnDiscModel(2.2 * EPSILON_0, HERTZ_RADIUS, BALL_RADIUS, h, alpha, surround_form=form)


class TestHertz(unittest.TestCase):
    def test_radius(self):
        self.assertLess(relative(hertz_radius(20, 9.525e-3, 2.26e11), 1.362e-4), 1e-3)

    def test_cube_root_scaling(self):
        self.assertAlmostEqual(hertz_radius(160, 9.525e-3, 2.26e11) / hertz_radius(20, 9.525e-3, 2.26e11), 2.0)

    def test_small_load(self):
        self.assertLess(hertz_radius(1e-12, 9.525e-3, 2.26e11), 1e-7)

    def test_domain(self):
        for args in [(0, 1e-2, 2e11), (20, -1e-2, 2e11), (20, 1e-2, 0)]:
            self.assertRaises(DomainError, hertz_radius, *args)

    def test_contact(self):
        contact = HertzContact(20, 9.525e-3, 2.26e11)
        self.assertEqual(contact.hertz_radius_m, hertz_radius(20, 9.525e-3, 2.26e11))


class TestBallOnDisc(unittest.TestCase):
    def test_hertz_zone(self):
        self.assertLess(relative(capacitance_hertz_zone(mtm_model()), 1.135e-11), 1e-3)

    def test_hertz_zone_broken_down(self):
        self.assertEqual(capacitance_hertz_zone(mtm_model(alpha=1.0)), 0.0)

    def test_hertz_zone_halving(self):
        self.assertAlmostEqual(capacitance_hertz_zone(mtm_model(h=50e-9)) / capacitance_hertz_zone(mtm_model()),
                               2.0, places=12)

    def test_surround_sensitivity(self):
        c = capacitance_surround(mtm_model())
        c_plus = capacitance_surround(mtm_model(h=101e-9))
        self.assertGreater(c, 0)
        self.assertLess(relative(c_plus, c), 1e-3)

    def test_surround_deterministic(self):
        self.assertEqual(capacitance_surround(mtm_model()), capacitance_surround(mtm_model()))

    def test_printed_form_out_of_domain(self):
        self.assertRaises(ModelValidityError, capacitance_surround, mtm_model(form=SurroundForm.PRINTED))

    def test_printed_form_near_full_contact(self):
        model = BallOnDiscModel(2.2 * EPSILON_0, 0.999 * BALL_RADIUS, BALL_RADIUS, 1e-9,
                                surround_form=SurroundForm.PRINTED)
        self.assertGreater(capacitance_surround(model), 0)

    def test_hertz_radius_must_be_inside_ball(self):
        self.assertRaises(ModelValidityError, BallOnDiscModel, 2.2 * EPSILON_0, BALL_RADIUS, BALL_RADIUS)

    def test_total_is_sum(self):
        model = mtm_model()
        self.assertEqual(total_capacitance(model), capacitance_hertz_zone(model) + capacitance_surround(model))
        broken = mtm_model(alpha=1.0)
        self.assertEqual(total_capacitance(broken), capacitance_surround(broken))

    def test_monotone_in_thickness(self):
        values = [total_capacitance(mtm_model(h=h)) for h in np.logspace(-9, -6, 1000)]
        self.assertTrue(np.all(np.diff(values) < 0))

    def test_monotone_in_alpha(self):
        values = [total_capacitance(mtm_model(alpha=a)) for a in np.linspace(0, 1, 1000)]
        self.assertTrue(np.all(np.diff(values) < 0))

    def test_network(self):
        self.assertIsInstance(mtm_model().network(), Element)
        self.assertIsInstance(mtm_model(alpha=0.5).network(), Parallel)

    def test_bad_alpha(self):
        self.assertRaises(DomainError, mtm_model, alpha=1.5)

    def test_with_film(self):
        model = mtm_model().with_film(50e-9, 0.2)
        self.assertEqual(model.film_thickness_m, 50e-9)
        self.assertEqual(model.breakdown_ratio, 0.2)
        self.assertAlmostEqual(model.epsilon_r, 2.2)


class TestBreakdown(unittest.TestCase):
    def test_values(self):
        self.assertEqual(breakdown_resistance(10.0, 1.0), 10.0)
        self.assertEqual(breakdown_resistance(10.0, 0.5), 20.0)

    def test_open_circuit(self):
        r = breakdown_resistance(10.0, 0)
        self.assertIs(r, OPEN_CIRCUIT)
        self.assertTrue(is_open_circuit(r))
        self.assertEqual(repr(r), "OPEN_CIRCUIT")

    def test_inverse(self):
        for alpha in np.linspace(0.01, 1.0, 50):
            self.assertAlmostEqual(breakdown_resistance(10.0, alpha) * alpha, 10.0, places=12)

    def test_domain(self):
        self.assertRaises(DomainError, breakdown_resistance, 10.0, -0.1)
        self.assertRaises(DomainError, breakdown_resistance, 0.0, 0.5)


class TestCylinder(unittest.TestCase):
    def cylinders(self, d):
        return CylinderModel(5e-3, 5.1e-3, d, 10e-3, 2.2 * EPSILON_0)

    def test_concentric(self):
        expected = 2 * math.pi * 2.2 * EPSILON_0 * 10e-3 / math.log(5.1e-3 / 5e-3)
        self.assertLess(relative(cylinder_capacitance(self.cylinders(0.0)), expected), 1e-12)

    def test_eccentric(self):
        eccentric = cylinder_capacitance(self.cylinders(0.05e-3))
        self.assertTrue(math.isfinite(eccentric))
        self.assertGreater(eccentric, cylinder_capacitance(self.cylinders(0.0)))

    def test_touching(self):
        self.assertIs(cylinder_capacitance(self.cylinders(5.1e-3 - 5e-3)), DIVERGENT)
        self.assertRaises(ModelValidityError, self.cylinders(5.1e-3 - 5e-3).network)

    def test_beyond_clearance(self):
        self.assertRaises(ModelValidityError, cylinder_capacitance, self.cylinders(0.2e-3))

    def test_network(self):
        self.assertIsInstance(self.cylinders(0.0).network(), Element)
        self.assertIsInstance(self.cylinders(0.0).network(10.0, 0.1), Parallel)


class TestInversion(unittest.TestCase):
    def test_round_trip(self):
        geometry = mtm_model()
        model = mtm_model(h=100e-9, alpha=0.3)
        h, alpha = invert_ball_on_disc(model.resistance(), model.capacitance(), 10.0, geometry)
        self.assertLess(relative(h, 100e-9), 1e-6)
        self.assertLess(relative(alpha, 0.3), 1e-6)

    def test_round_trip_grid(self):
        geometry = mtm_model()
        for h_true in np.logspace(-9, -6, 20):
            for alpha_true in np.logspace(-2, 0, 20):
                model = mtm_model(h=h_true, alpha=alpha_true)
                result = invert_ball_on_disc(model.resistance(), model.capacitance(), 10.0, geometry)
                self.assertLess(relative(result.film_thickness_m, h_true), 1e-6)
                self.assertLess(relative(result.alpha, alpha_true), 1e-6)
                self.assertFalse(result.saturated)

    def test_open_circuit(self):
        model = mtm_model(h=200e-9)
        result = invert_ball_on_disc(OPEN_CIRCUIT, model.capacitance(), 10.0, mtm_model())
        self.assertEqual(result.alpha, 0.0)
        self.assertLess(relative(result.film_thickness_m, 200e-9), 1e-6)

    def test_saturated(self):
        model = mtm_model(h=200e-9, alpha=1.0)
        result = invert_ball_on_disc(5.0, model.capacitance(), 10.0, mtm_model())
        self.assertTrue(result.saturated)
        self.assertEqual(result.alpha, 1.0)

    def test_unreachable(self):
        geometry = mtm_model()
        c_max = total_capacitance(geometry.with_film(1e-11))
        with self.assertRaises(NoSolutionError) as cm:
            invert_ball_on_disc(OPEN_CIRCUIT, 10 * c_max, 10.0, geometry)
        low, high = cm.exception.attainable_range
        self.assertLess(low, high)
        report = json.loads(cm.exception.to_json())
        self.assertEqual(report['exception_class'], 'NoSolutionError')
        self.assertEqual(len(report['attainable_range']), 2)


if __name__ == '__main__':
    unittest.main()
