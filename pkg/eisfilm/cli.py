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
Command line entry point.  Each command registers its arguments with ``build_<name>`` and runs through the
matching handler in :py:mod:`eisfilm.commands`.
"""
import argparse
import logging
import sys

from eisfilm import __version__, commands
from eisfilm.impedance.circuit import FrequencyGrid
from eisfilm.impedance.contact import DEFAULT_R0_OHM
from eisfilm.impedance.ehd import DEFAULT_ELLIPTICITY, DEFAULT_SPEEDS_MM_S, E_REDUCED_STEEL_GLASS, \
    E_REDUCED_STEEL_STEEL
from eisfilm.impedance import EisException

log = logging.getLogger(__name__)


def float_list(text, count=None):
    try:
        values = [float(v) for v in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated numbers: %r" % text)
    if count is not None and len(values) != count:
        raise argparse.ArgumentTypeError("expected %d comma separated numbers: %r" % (count, text))
    return values


def grid_argument(text):
    """``lo,hi,pts_per_decade`` as a descending logarithmic grid."""
    lo, hi, per_decade = float_list(text, 3)
    try:
        return FrequencyGrid.logarithmic(lo, hi, per_decade, descending=True)
    except EisException as e:
        raise argparse.ArgumentTypeError(e.message)


def h_grid_argument(text):
    lo, hi, count = float_list(text, 3)
    return lo, hi, int(count)


def build_simulate(parser):
    parser.add_argument('config', help='contact configuration file')
    parser.add_argument('output', help='spectrum CSV to write')
    parser.add_argument('--noise', type=float, default=0.0, help='relative noise sigma')
    parser.add_argument('--seed', type=int, default=0, help='noise seed')
    parser.add_argument('--grid', type=grid_argument, help='lo,hi,pts_per_decade in Hz')
    parser.add_argument('--metadata', action='store_true',
                        help='write the operating point as comment lines before the header')


def action_simulate(args):
    return commands.cmd_simulate(args.config, args.output, args.noise, args.seed, args.grid,
                                 args.metadata)


def _add_regime_arguments(parser):
    parser.add_argument('--r0', type=float, default=DEFAULT_R0_OHM,
                        help='stationary contact resistance in ohms (default %(default)s)')
    parser.add_argument('--threshold-ohm', type=float,
                        help='boundary lubrication below this resistance (default 10 x r0)')


def build_fit(parser):
    parser.add_argument('spectra', nargs='+', help='spectrum CSV files')
    parser.add_argument('-o', '--output', required=True, help='fit report CSV to write')
    parser.add_argument('--model', default='rc', choices=['rc', 'rc+r', 'rc+w', 'rc+r+w', 'auto'])
    parser.add_argument('--weighting', default='modulus', choices=['modulus', 'proportional', 'unit'])
    parser.add_argument('--jobs', type=int, default=1, help='worker processes')
    parser.add_argument('--points', help='operating point CSV to write, file,temperature_c,speed_mm_s,load_n')
    _add_regime_arguments(parser)


def action_fit(args):
    return commands.cmd_fit(args.spectra, args.output, args.model, args.weighting, args.r0, args.threshold_ohm,
                            args.jobs, args.points)


def build_table(parser):
    parser.add_argument('spectrum', help='spectrum CSV file')
    parser.add_argument('output', help='table CSV to write')
    parser.add_argument('--svg', action='store_true', help='also write an SVG plot beside the table')


def action_bode(args):
    return commands.cmd_bode(args.spectrum, args.output, args.svg)


def action_nyquist(args):
    return commands.cmd_nyquist(args.spectrum, args.output, args.svg)


def build_calibrate(parser):
    parser.add_argument('report', help='fit report CSV')
    parser.add_argument('utfi', help='interferometry film thickness CSV')
    parser.add_argument('model', help='thickness model file to write')
    parser.add_argument('--points', required=True, help='operating point CSV of the fitted spectra')
    parser.add_argument('--factor', type=float,
                        help="material conversion factor (default (%g/%g)^-0.083)" % (E_REDUCED_STEEL_STEEL,
                                                                                      E_REDUCED_STEEL_GLASS))
    parser.add_argument('--dataset', help='calibration dataset CSV to write')
    _add_regime_arguments(parser)


def action_calibrate(args):
    return commands.cmd_calibrate(args.report, args.utfi, args.model, args.points, args.r0, args.factor,
                                  args.threshold_ohm, args.dataset)


def build_thickness(parser):
    parser.add_argument('model', help='thickness model file')
    parser.add_argument('--r', type=float, required=True, help='resistance in ohms')
    parser.add_argument('--c', type=float, required=True, help='capacitance in farads')


def action_thickness(args):
    return commands.cmd_thickness(args.model, args.r, args.c)


def build_family(parser):
    parser.add_argument('model', help='thickness model file')
    parser.add_argument('config', help='contact configuration file')
    parser.add_argument('output_dir', help='directory for the spectra')
    parser.add_argument('--h-grid', type=h_grid_argument, default=(0.1, 1000.0, 5),
                        help='lo_nm,hi_nm,count (default 0.1,1000,5)')
    parser.add_argument('--alpha', type=float, help='breakdown ratio (default from the configuration)')
    parser.add_argument('--grid', type=grid_argument, help='lo,hi,pts_per_decade in Hz')
    parser.add_argument('--svg', action='store_true', help='also write overlaid Bode and Nyquist plots')


def action_family(args):
    return commands.cmd_family(args.model, args.config, args.output_dir, args.h_grid, args.alpha, args.grid,
                               args.svg)


def build_film(parser):
    parser.add_argument('config', help='contact configuration file')
    parser.add_argument('output', help='film thickness CSV to write')
    parser.add_argument('--viscosity', type=float, required=True, help='dynamic viscosity in Pa s')
    parser.add_argument('--pressure-viscosity', type=float, required=True,
                        help='pressure viscosity coefficient in 1/Pa')
    parser.add_argument('--k', type=float, default=DEFAULT_ELLIPTICITY, help='geometry factor (default %(default)s)')
    parser.add_argument('--temperature', type=float, help='temperature label in C')
    parser.add_argument('--speeds', type=float_list, default=list(DEFAULT_SPEEDS_MM_S),
                        help='entrainment speeds in mm/s, comma separated')
    parser.add_argument('--factor', type=float, default=1.0, help='material conversion factor')


def action_film(args):
    return commands.cmd_film(args.config, args.output, args.viscosity, args.pressure_viscosity, args.k,
                             args.temperature, args.speeds, args.factor)


COMMANDS = [
    ('simulate', 'spectrum of a ball on disc contact', build_simulate, action_simulate),
    ('fit', 'fit equivalent circuits to spectra', build_fit, action_fit),
    ('bode', 'Bode table of a spectrum', build_table, action_bode),
    ('nyquist', 'Nyquist table of a spectrum', build_table, action_nyquist),
    ('calibrate', 'build a thickness model from fits and film thickness', build_calibrate, action_calibrate),
    ('thickness', 'film thickness from resistance and capacitance', build_thickness, action_thickness),
    ('family', 'spectra of the contact over a range of film thickness', build_family, action_family),
    ('film', 'predicted central film thickness over a speed sweep', build_film, action_film),
]


def build_parser():
    parser = argparse.ArgumentParser(prog='eisfilm', description='Lubricant film thickness from impedance spectra')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for progress, -vv for debug')
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    for name, help_text, build, action in COMMANDS:
        sub = subparsers.add_parser(name, help=help_text)
        build(sub)
        sub.set_defaults(action=action)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)
    return args.action(args)


if __name__ == '__main__':
    sys.exit(main())
