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
import io
import os
import shutil
import tempfile
import unittest
from unittest import mock
from xml.etree import ElementTree

from eisfilm import formats
from eisfilm.cli import main
from eisfilm.impedance.calibration import OperatingPoint, ThicknessModel
from eisfilm.impedance.circuit import FrequencyGrid, parallel_rc, synth_spectrum, to_nyquist
from eisfilm.impedance.contact import EPSILON_0, BallOnDiscModel
from eisfilm.impedance.ehd import material_conversion_factor
from eisfilm.impedance.fitting import ModelKind, FitResult, Regime, fit_report_row

CONFIG = """ball_radius_m = 9.525e-3
load_n = 20
reduced_modulus_pa = 2.26e11
epsilon_r = 2.2
r0_ohm = 10
temperature_c = 40
speed_mm_s = 100
"""

SPEEDS = [2500.0, 1300.0, 700.0, 200.0, 50.0]
THICKNESS = [300e-9, 150e-9, 75e-9, 40e-9, 20e-9]


class CommandTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.config = self.write('contact.cfg', CONFIG)

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def path(self, name):
        return os.path.join(self.tmp, name)

    def write(self, name, text):
        with io.open(self.path(name), 'w', encoding='utf-8') as f:
            f.write(text)
        return self.path(name)

    def read(self, name):
        with io.open(self.path(name), encoding='utf-8') as f:
            return f.read()

    def run_main(self, *argv):
        """Runs the command line, returning the exit status, standard output and standard error."""
        with mock.patch('sys.stdout', new_callable=io.StringIO) as out, \
                mock.patch('sys.stderr', new_callable=io.StringIO) as err:
            status = main([str(a) for a in argv])
        return status, out.getvalue(), err.getvalue()


class TestSimulate(CommandTestCase):
    def test_simulate(self):
        status, _, _ = self.run_main('simulate', self.config, self.path('s.csv'))
        self.assertEqual(status, 0)
        self.assertTrue(self.read('s.csv').startswith("freq_hz,z_real_ohm,z_imag_ohm\n"))
        s = formats.read_spectrum(self.path('s.csv'))
        self.assertEqual(len(s), 61)
        self.assertIsNone(s.meta)

    def test_metadata(self):
        status, _, _ = self.run_main('simulate', self.config, self.path('s.csv'), '--metadata')
        self.assertEqual(status, 0)
        self.assertEqual(formats.read_spectrum(self.path('s.csv')).meta, OperatingPoint(40, 100, 20))

    def test_deterministic(self):
        for name in ['a.csv', 'b.csv']:
            status, _, _ = self.run_main('simulate', self.config, self.path(name), '--noise', 0.01, '--seed', 7)
            self.assertEqual(status, 0)
        self.assertEqual(self.read('a.csv'), self.read('b.csv'))

    def test_missing_key(self):
        config = self.write('bad.cfg', CONFIG.replace("epsilon_r = 2.2\n", ""))
        status, _, err = self.run_main('simulate', config, self.path('s.csv'))
        self.assertEqual(status, 2)
        self.assertIn('epsilon_r', err)
        self.assertFalse(os.path.exists(self.path('s.csv')))

    def test_grid(self):
        status, _, _ = self.run_main('simulate', self.config, self.path('s.csv'), '--grid', '1,1000,5')
        self.assertEqual(status, 0)
        self.assertEqual(len(formats.read_spectrum(self.path('s.csv'))), 16)


class TestFit(CommandTestCase):
    def setUp(self):
        super(TestFit, self).setUp()
        self.spectra = []
        for i, r in enumerate([1e3, 1e5]):
            s = synth_spectrum(parallel_rc(r, 1e-3 / r), FrequencyGrid.default(), 0.01, i,
                               OperatingPoint(40, 100 * (i + 1), 20))
            path = self.path('s%d.csv' % i)
            formats.write_spectrum(path, s, metadata=True)
            self.spectra.append(path)
        self.corrupt = self.write('corrupt.csv', "freq_hz,z_real_ohm,z_imag_ohm\n1,oops,2\n")

    def test_partial_failure(self):
        status, _, _ = self.run_main('fit', self.spectra[0], self.corrupt, self.spectra[1], '-o', self.path('r.csv'),
                                     '--points', self.path('p.csv'))
        self.assertEqual(status, 0)
        entries = formats.read_fit_report(self.path('r.csv'))
        self.assertEqual([e[0] for e in entries], ['s0.csv', 'corrupt.csv', 's1.csv'])
        self.assertIsNone(entries[1][1])
        self.assertTrue(entries[0][1].converged)
        points = formats.read_operating_points(self.path('p.csv'))
        self.assertEqual(list(points.keys()), ['s0.csv', 's1.csv'])
        self.assertEqual(points['s1.csv'], OperatingPoint(40, 200, 20))

    def test_all_failed(self):
        status, _, err = self.run_main('fit', self.corrupt, '-o', self.path('r.csv'))
        self.assertEqual(status, 1)
        self.assertIn('failed', err)

    def test_series_r(self):
        status, _, _ = self.run_main('fit', self.spectra[0], '--model', 'rc+r', '-o', self.path('r.csv'))
        self.assertEqual(status, 0)
        fit = formats.read_fit_report(self.path('r.csv'))[0][1]
        self.assertEqual(fit.model, ModelKind.PARALLEL_RC_SERIES_R)
        self.assertEqual(len(fit.params), 3)

    def test_workers(self):
        args = ['fit', self.spectra[0], self.corrupt, self.spectra[1]]
        self.assertEqual(self.run_main(*(args + ['-o', self.path('one.csv')]))[0], 0)
        self.assertEqual(self.run_main(*(args + ['-o', self.path('two.csv'), '--jobs', 2]))[0], 0)
        self.assertEqual(self.read('one.csv'), self.read('two.csv'))


class TestTables(CommandTestCase):
    def setUp(self):
        super(TestTables, self).setUp()
        self.spectrum = self.path('s.csv')
        formats.write_spectrum(self.spectrum, synth_spectrum(parallel_rc(1e3, 1e-6), FrequencyGrid.default(), 0, 0))

    def test_bode(self):
        status, _, _ = self.run_main('bode', self.spectrum, self.path('b.csv'))
        self.assertEqual(status, 0)
        lines = self.read('b.csv').splitlines()
        self.assertEqual(lines[0], "freq_hz,z_mag_ohm,z_phase_deg")
        self.assertEqual(len(lines), 62)

    def test_nyquist(self):
        status, _, _ = self.run_main('nyquist', self.spectrum, self.path('n.csv'))
        self.assertEqual(status, 0)
        lines = self.read('n.csv').splitlines()
        self.assertEqual(lines[0], "freq_hz,z_real_ohm,z_neg_imag_ohm")
        table = to_nyquist(formats.read_spectrum(self.spectrum))
        rows = [[float(v) for v in line.split(',')] for line in lines[1:]]
        self.assertEqual([r[0] for r in rows], table.frequency_hz.tolist())
        self.assertEqual([tuple(r[1:]) for r in rows], table.rows())

    def test_svg(self):
        for command in ['bode', 'nyquist']:
            status, _, _ = self.run_main(command, self.spectrum, self.path('%s.csv' % command), '--svg')
            self.assertEqual(status, 0)
            root = ElementTree.parse(self.path('%s.svg' % command)).getroot()
            self.assertTrue(root.tag.endswith('svg'))


class TestCalibrate(CommandTestCase):
    def setUp(self):
        super(TestCalibrate, self).setUp()
        self.geometry = BallOnDiscModel(2.2 * EPSILON_0, 1.362e-4, 9.525e-3, 100e-9, 1e-6)
        self.capacitance = [self.geometry.with_film(h).capacitance() for h in THICKNESS]

    def report(self, speeds=SPEEDS):
        rows = []
        points = []
        for u, c in zip(speeds, self.capacitance):
            fit = FitResult(ModelKind.PARALLEL_RC, collections.OrderedDict([('R1_ohm', 1e7), ('C1_farad', c)]),
                            1e-3, 6, True, {})
            rows.append(fit_report_row('u%g.csv' % u, fit, Regime(Regime.FULL_FILM)))
            points.append(('u%g.csv' % u, OperatingPoint(40, u, 20)))
        formats.write_fit_report(self.path('report.csv'), rows)
        formats.write_operating_points(self.path('points.csv'), points)
        return self.path('report.csv')

    def utfi(self, thickness=THICKNESS):
        factor = material_conversion_factor()
        rows = [(OperatingPoint(40, u, 20), h / factor) for u, h in zip(SPEEDS, thickness)]
        formats.write_utfi(self.path('utfi.csv'), rows)
        return self.path('utfi.csv')

    def test_calibrate_and_query(self):
        status, out, _ = self.run_main('calibrate', self.report(), self.utfi(), self.path('model.txt'),
                                       '--points', self.path('points.csv'), '--dataset', self.path('dataset.csv'))
        self.assertEqual(status, 0)
        self.assertIn("matched=5 unmatched_fits=0 unmatched_utfi=0", out)
        self.assertIn("knots=5", out)
        self.assertEqual(len(formats.read_dataset(self.path('dataset.csv'))), 5)

        status, out, _ = self.run_main('thickness', self.path('model.txt'), '--r', 1e8, '--c',
                                       repr(self.capacitance[2]))
        self.assertEqual(status, 0)
        h_nm, regime, extrapolated = out.strip().split(',')
        self.assertAlmostEqual(float(h_nm) / 75.0, 1.0, places=6)
        self.assertEqual(regime, 'FullFilm')
        self.assertEqual(extrapolated, 'false')

        status, out, _ = self.run_main('thickness', self.path('model.txt'), '--r', 10, '--c', self.capacitance[2])
        self.assertEqual(out.strip().split(',')[1], 'Boundary')

        status, out, _ = self.run_main('thickness', self.path('model.txt'), '--r', 1e8, '--c',
                                       10 * self.capacitance[-1])
        self.assertEqual(out.strip().split(',')[2], 'true')

    def test_no_matches(self):
        status, _, err = self.run_main('calibrate', self.report([u * 2 for u in SPEEDS]), self.utfi(),
                                       self.path('model.txt'), '--points', self.path('points.csv'))
        self.assertEqual(status, 3)
        self.assertIn("No joinable operating points", err)

    def test_non_monotone(self):
        thickness = list(THICKNESS)
        thickness[1], thickness[2] = thickness[2], thickness[1]
        status, _, err = self.run_main('calibrate', self.report(), self.utfi(thickness), self.path('model.txt'),
                                       '--points', self.path('points.csv'))
        self.assertEqual(status, 4)
        self.assertIn("offending", err)
        self.assertFalse(os.path.exists(self.path('model.txt')))


class TestFamily(CommandTestCase):
    def test_family(self):
        model = self.path('model.txt')
        formats.write_model(model, ThicknessModel([-11.0, -10.8, -10.6], [-6.6, -7.0, -7.5], 100.0, 1e5))
        status, _, _ = self.run_main('family', model, self.config, self.path('out'), '--svg')
        self.assertEqual(status, 0)
        for i in range(5):
            self.assertEqual(len(formats.read_spectrum(os.path.join(self.path('out'), 'family_%02d.csv' % i))), 61)
        index = self.read(os.path.join('out', 'family.csv')).splitlines()
        self.assertEqual(index[0], "h_nm,r_ohm,c_farad,calibrated,file,error")
        self.assertEqual(len(index), 6)
        ElementTree.parse(os.path.join(self.path('out'), 'family_bode.svg'))


class TestFilm(CommandTestCase):
    def test_film(self):
        status, _, _ = self.run_main('film', self.config, self.path('h.csv'), '--viscosity', 0.01,
                                     '--pressure-viscosity', 2e-8)
        self.assertEqual(status, 0)
        rows = formats.read_utfi(self.path('h.csv'))
        self.assertEqual(len(rows), 11)
        self.assertEqual(rows[0][0], OperatingPoint(40, 2500, 20))

    def test_bad_flag(self):
        status, _, err = self.run_main('film', self.config, self.path('h.csv'), '--viscosity', -1,
                                       '--pressure-viscosity', 2e-8)
        self.assertEqual(status, 2)
        self.assertIn('viscosity_pa_s', err)


if __name__ == '__main__':
    unittest.main()
