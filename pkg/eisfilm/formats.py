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
Reading and writing the files used by the command line tools: spectra, Bode and Nyquist tables, fit reports,
interferometry film thickness, calibration datasets, thickness models and contact configuration.

Floating point values are written with 17 significant digits so that a file read back gives the same doubles.
"""
import collections
import csv
import decimal
import io
import logging
import math

import numpy as np

from eisfilm.impedance import EisException, ConfigError, SpectrumFormatError, OPEN_CIRCUIT
from eisfilm.impedance.calibration import OperatingPoint, CalibrationRecord, ThicknessModel
from eisfilm.impedance.circuit import Spectrum, LINEAR_AMPLITUDE_MV
from eisfilm.impedance.contact import HertzContact, BallOnDiscModel
from eisfilm.impedance.fitting import ModelKind, FitResult, REPORT_COLUMNS

log = logging.getLogger(__name__)

SPECTRUM_HEADER = ['freq_hz', 'z_real_ohm', 'z_imag_ohm']
POLAR_HEADER = ['freq_hz', 'z_mag_ohm', 'z_phase_deg']
BODE_HEADER = POLAR_HEADER
NYQUIST_HEADER = ['freq_hz', 'z_real_ohm', 'z_neg_imag_ohm']
UTFI_HEADER = ['temperature_c', 'speed_mm_s', 'load_n', 'h_nm']
DATASET_HEADER = ['temperature_c', 'speed_mm_s', 'load_n', 'r_ohm', 'c_farad', 'h_nm']
POINTS_HEADER = ['file', 'temperature_c', 'speed_mm_s', 'load_n']
MODEL_MAGIC = "eis-thickness-model v1"
META_KEYS = ['temperature_c', 'speed_mm_s', 'load_n', 'amplitude_mv']


def format_float(value):
    """Text of a float with 17 significant digits, empty for None, ``inf`` for an open circuit."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return "%.17g" % value


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return u"%s" % value


def _parse_float(text, path, line, column):
    try:
        return float(text)
    except (TypeError, ValueError):
        raise SpectrumFormatError("%s line %d: %s is not a number: %r" % (path, line, column, text), path=path,
                                  line=line)


def nanometres_text(h_m):
    """
    Film thickness in metres as nanometre text.  The decimal exponent of the shortest repr is shifted, so
    :py:func:`metres_from_nanometres` gives back the same float.
    """
    return format(decimal.Decimal(repr(float(h_m))).scaleb(9), "f")


def metres_from_nanometres(text, path=None, line=0, column="h_nm"):
    try:
        return float(decimal.Decimal(text.strip()).scaleb(-9))
    except (AttributeError, decimal.InvalidOperation):
        raise SpectrumFormatError("%s line %d: %s is not a number: %r" % (path, line, column, text), path=path,
                                  line=line)


def _parse_optional(text, path, line, column):
    text = text.strip()
    if not text:
        return None
    return _parse_float(text, path, line, column)


def _read_lines(path):
    try:
        with io.open(path, 'r', encoding='utf-8') as f:
            return f.read().splitlines()
    except (IOError, OSError, UnicodeDecodeError) as e:
        raise SpectrumFormatError("Cannot read %s: %s" % (path, e), path=path)


def write_rows(path, header, rows, comments=()):
    with io.open(path, 'w', encoding='utf-8', newline='') as f:
        for comment in comments:
            f.write(u"# %s\n" % comment)
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])


def _csv_body(path, lines):
    """Splits a file into its comment lines, its header and its numbered data rows."""
    comments = []
    body = []
    header = None
    for number, text in enumerate(lines, 1):
        stripped = text.strip()
        if not stripped:
            continue
        if stripped.startswith('#'):
            if header is None:
                comments.append(stripped[1:].strip())
            continue
        if header is None:
            header = [c.strip() for c in next(csv.reader([stripped]))]
            continue
        body.append((number, [c.strip() for c in next(csv.reader([stripped]))]))
    if header is None:
        raise SpectrumFormatError("%s has no header line" % path, path=path)
    return comments, header, body


def _expect_header(path, header, expected):
    if header != expected:
        raise SpectrumFormatError("%s: expected header %s, found %s" % (path, ",".join(expected), ",".join(header)),
                                  path=path, line=1)


def spectrum_metadata(spectrum):
    """Metadata lines for a spectrum, ``key: value`` for each known field."""
    lines = []
    op = spectrum.meta
    if op is not None:
        if op.temperature_c is not None:
            lines.append("temperature_c: %s" % format_float(op.temperature_c))
        lines.append("speed_mm_s: %s" % format_float(op.speed_mm_s))
        lines.append("load_n: %s" % format_float(op.load_n))
    if spectrum.amplitude_mv is not None:
        lines.append("amplitude_mv: %s" % format_float(spectrum.amplitude_mv))
    return lines


def write_spectrum(path, spectrum, metadata=False):
    """
    Writes a spectrum as ``freq_hz,z_real_ohm,z_imag_ohm`` rows.  With ``metadata`` the header is preceded by
    ``# key: value`` lines for the operating point and amplitude when they are known.
    """
    rows = [(f, z.real, z.imag) for f, z in spectrum.samples()]
    write_rows(path, SPECTRUM_HEADER, rows, spectrum_metadata(spectrum) if metadata else ())


def read_spectrum(path):
    """
    Reads a spectrum in cartesian or polar form.

    :param path: file name
    :return: :py:class:`Spectrum`, with an :py:class:`OperatingPoint` when speed and load are in the metadata
    :raises SpectrumFormatError: When the file cannot be read or is not a spectrum

    """
    comments, header, body = _csv_body(path, _read_lines(path))
    if header not in (SPECTRUM_HEADER, POLAR_HEADER):
        raise SpectrumFormatError("%s: expected header %s or %s" % (path, ",".join(SPECTRUM_HEADER),
                                                                    ",".join(POLAR_HEADER)), path=path)
    meta = {}
    for comment in comments:
        key, sep, value = comment.partition(':')
        key = key.strip()
        if sep and key in META_KEYS:
            meta[key] = _parse_float(value.strip(), path, 0, key)
        else:
            log.debug("Ignoring comment in %s: %s", path, comment)
    f = []
    a = []
    b = []
    for number, row in body:
        if len(row) != 3:
            raise SpectrumFormatError("%s line %d: expected 3 fields, got %d" % (path, number, len(row)),
                                      path=path, line=number)
        f.append(_parse_float(row[0], path, number, header[0]))
        a.append(_parse_float(row[1], path, number, header[1]))
        b.append(_parse_float(row[2], path, number, header[2]))
    if not f:
        raise SpectrumFormatError("%s has no samples" % path, path=path)
    a = np.array(a)
    b = np.array(b)
    if header == POLAR_HEADER:
        z = a * np.exp(1j * np.radians(b))
    else:
        z = a + 1j * b
    try:
        op = None
        if 'speed_mm_s' in meta and 'load_n' in meta:
            op = OperatingPoint(meta.get('temperature_c'), meta['speed_mm_s'], meta['load_n'])
        return Spectrum(f, z, op, meta.get('amplitude_mv'))
    except EisException as e:
        raise SpectrumFormatError("%s: %s" % (path, e.message), path=path)


def write_bode(path, bode):
    write_rows(path, BODE_HEADER, bode.rows())


def write_nyquist(path, nyquist):
    rows = zip(nyquist.frequency_hz.tolist(), nyquist.real_ohm.tolist(), nyquist.neg_imag_ohm.tolist())
    write_rows(path, NYQUIST_HEADER, rows)


def write_fit_report(path, rows):
    """
    Writes fit report rows, each a mapping of column name to value as made by
    :py:func:`eisfilm.impedance.fitting.fit_report_row`.
    """
    write_rows(path, REPORT_COLUMNS, [[row.get(c) for c in REPORT_COLUMNS] for row in rows])


def error_report_row(name, model_name, message):
    row = collections.OrderedDict((c, None) for c in REPORT_COLUMNS)
    row['file'] = name
    row['model'] = model_name
    row['converged'] = False
    row['regime'] = "error: %s" % message
    return row


def read_fit_report(path):
    """
    Reads a fit report.

    :return: list of (file name, :py:class:`FitResult` or None, regime text), the fit is None on error rows

    """
    _, header, body = _csv_body(path, _read_lines(path))
    _expect_header(path, header, REPORT_COLUMNS)
    entries = []
    for number, row in body:
        if len(row) != len(REPORT_COLUMNS):
            raise SpectrumFormatError("%s line %d: expected %d fields" % (path, number, len(REPORT_COLUMNS)),
                                      path=path, line=number)
        fields = dict(zip(REPORT_COLUMNS, row))
        if fields['regime'].startswith('error'):
            entries.append((fields['file'], None, fields['regime']))
            continue
        try:
            kind = ModelKind.from_name(fields['model'])
        except EisException:
            raise SpectrumFormatError("%s line %d: unknown model %r" % (path, number, fields['model']), path=path,
                                      line=number)
        params = collections.OrderedDict()
        for name, column in (('R1_ohm', 'r1_ohm'), ('C1_farad', 'c1_farad'), ('R2_ohm', 'r2_ohm'), ('Aw', 'aw')):
            value = _parse_optional(fields[column], path, number, column)
            if value is not None:
                params[name] = value
        missing = [p for p in kind.parameter_names if p not in params]
        if missing:
            raise SpectrumFormatError("%s line %d: missing %s" % (path, number, ", ".join(missing)), path=path,
                                      line=number)
        residual = _parse_optional(fields['residual_norm'], path, number, 'residual_norm')
        iterations = int(_parse_optional(fields['iterations'], path, number, 'iterations') or 0)
        fit = FitResult(kind, params, residual, iterations, fields['converged'].lower() == 'true', {})
        entries.append((fields['file'], fit, fields['regime']))
    return entries


def write_operating_points(path, rows):
    """Writes ``file,temperature_c,speed_mm_s,load_n`` rows from (file name, :py:class:`OperatingPoint`) pairs."""
    write_rows(path, POINTS_HEADER, [(name, op.temperature_c, op.speed_mm_s, op.load_n) for name, op in rows])


def read_operating_points(path):
    """
    Reads the operating point of each spectrum file.

    :return: OrderedDict of file name to :py:class:`OperatingPoint`
    :raises SpectrumFormatError: When a file name is listed twice

    """
    _, header, body = _csv_body(path, _read_lines(path))
    _expect_header(path, header, POINTS_HEADER)
    points = collections.OrderedDict()
    for number, row in body:
        if len(row) != len(POINTS_HEADER):
            raise SpectrumFormatError("%s line %d: expected %d fields" % (path, number, len(POINTS_HEADER)),
                                      path=path, line=number)
        if row[0] in points:
            raise SpectrumFormatError("%s line %d: %s listed twice" % (path, number, row[0]), path=path, line=number)
        t = _parse_optional(row[1], path, number, 'temperature_c')
        u, w = [_parse_float(v, path, number, c) for v, c in zip(row[2:], POINTS_HEADER[2:])]
        try:
            points[row[0]] = OperatingPoint(t, u, w)
        except EisException as e:
            raise SpectrumFormatError("%s line %d: %s" % (path, number, e.message), path=path, line=number)
    return points


def read_utfi(path):
    """
    Reads interferometry film thickness rows.

    :return: list of (:py:class:`OperatingPoint`, h in metres)

    """
    _, header, body = _csv_body(path, _read_lines(path))
    _expect_header(path, header, UTFI_HEADER)
    rows = []
    for number, row in body:
        if len(row) != len(UTFI_HEADER):
            raise SpectrumFormatError("%s line %d: expected %d fields" % (path, number, len(UTFI_HEADER)),
                                      path=path, line=number)
        t = _parse_optional(row[0], path, number, 'temperature_c')
        u, w = [_parse_float(v, path, number, c) for v, c in zip(row[1:3], UTFI_HEADER[1:3])]
        rows.append((OperatingPoint(t, u, w), metres_from_nanometres(row[3], path, number)))
    return rows


def write_utfi(path, rows):
    write_rows(path, UTFI_HEADER,
               [(op.temperature_c, op.speed_mm_s, op.load_n, nanometres_text(h)) for op, h in rows])


def write_dataset(path, records):
    """Writes calibration records as ``temperature_c,speed_mm_s,load_n,r_ohm,c_farad,h_nm`` rows."""
    write_rows(path, DATASET_HEADER, [(rec.op.temperature_c, rec.op.speed_mm_s, rec.op.load_n, float(rec.r_ohm),
                                        rec.c_farad, nanometres_text(rec.h_m)) for rec in records])


def read_dataset(path):
    _, header, body = _csv_body(path, _read_lines(path))
    _expect_header(path, header, DATASET_HEADER)
    records = []
    for number, row in body:
        if len(row) != len(DATASET_HEADER):
            raise SpectrumFormatError("%s line %d: expected %d fields" % (path, number, len(DATASET_HEADER)),
                                      path=path, line=number)
        t = _parse_optional(row[0], path, number, 'temperature_c')
        u, w, r, c = [_parse_float(v, path, number, col) for v, col in zip(row[1:5], DATASET_HEADER[1:5])]
        if math.isinf(r):
            r = OPEN_CIRCUIT
        h = metres_from_nanometres(row[5], path, number)
        records.append(CalibrationRecord(OperatingPoint(t, u, w), r, c, h))
    return records


def write_model(path, model):
    with io.open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(u"%s\n" % MODEL_MAGIC)
        f.write(u"thresholds_ohm,%s,%s\n" % (format_float(model.breakdown_r_threshold_ohm),
                                             format_float(model.full_film_r_threshold_ohm)))
        for log_c, log_h in model.knots:
            f.write(u"%s,%s\n" % (format_float(log_c), format_float(log_h)))


def read_model(path):
    """
    Reads a thickness model file.

    :raises SpectrumFormatError: When the file is not a version 1 thickness model

    """
    lines = [line.strip() for line in _read_lines(path)]
    lines = [line for line in lines if line and not line.startswith('#')]
    if not lines or lines[0] != MODEL_MAGIC:
        raise SpectrumFormatError("%s is not a thickness model, expected %r" % (path, MODEL_MAGIC), path=path,
                                  line=1)
    if len(lines) < 2 or not lines[1].startswith("thresholds_ohm,"):
        raise SpectrumFormatError("%s: missing thresholds_ohm line" % path, path=path, line=2)
    thresholds = lines[1].split(',')[1:]
    if len(thresholds) != 2:
        raise SpectrumFormatError("%s: thresholds_ohm needs two values" % path, path=path, line=2)
    breakdown, full_film = [_parse_float(v, path, 2, 'thresholds_ohm') for v in thresholds]
    log_c = []
    log_h = []
    for number, line in enumerate(lines[2:], 3):
        fields = line.split(',')
        if len(fields) != 2:
            raise SpectrumFormatError("%s line %d: expected log10_c_farad,log10_h_m" % (path, number), path=path,
                                      line=number)
        log_c.append(_parse_float(fields[0], path, number, 'log10_c_farad'))
        log_h.append(_parse_float(fields[1], path, number, 'log10_h_m'))
    return ThicknessModel(log_c, log_h, breakdown, full_film)


class ContactConfig(object):
    """
    Contact configuration read from a ``key = value`` file.

    Example::

        ball_radius_m = 9.525e-3
        load_n = 20
        reduced_modulus_pa = 2.26e11
        epsilon_r = 2.2
        r0_ohm = 10

    """
    REQUIRED = ['ball_radius_m', 'load_n', 'reduced_modulus_pa', 'epsilon_r', 'r0_ohm']
    OPTIONAL = collections.OrderedDict([
        ('film_thickness_m', 100e-9),
        ('breakdown_ratio', 1e-6),
        ('temperature_c', None),
        ('speed_mm_s', None),
        ('amplitude_mv', LINEAR_AMPLITUDE_MV),
    ])

    def __init__(self, values):
        unknown = [k for k in values if k not in self.REQUIRED and k not in self.OPTIONAL]
        if unknown:
            raise ConfigError("Unknown configuration key %s" % unknown[0], key=unknown[0])
        for key in self.REQUIRED:
            if key not in values:
                raise ConfigError("Missing configuration key %s" % key, key=key)
        settings = dict(self.OPTIONAL)
        settings.update(values)
        for key, value in settings.items():
            setattr(self, key, value)

    @classmethod
    def from_file(cls, path):
        """
        Parses a configuration file, ``#`` starts a comment and ``:`` may be used in place of ``=``.

        :raises ConfigError: On unreadable files, malformed lines, unknown or missing keys

        """
        try:
            with io.open(path, 'r', encoding='utf-8') as f:
                lines = f.read().splitlines()
        except (IOError, OSError, UnicodeDecodeError) as e:
            raise ConfigError("Cannot read configuration %s: %s" % (path, e), path=path)
        values = collections.OrderedDict()
        for number, text in enumerate(lines, 1):
            text = text.split('#', 1)[0].strip()
            if not text:
                continue
            if '=' in text:
                key, _, value = text.partition('=')
            elif ':' in text:
                key, _, value = text.partition(':')
            else:
                raise ConfigError("%s line %d: expected key = value" % (path, number), path=path, line=number)
            key = key.strip()
            if key in values:
                raise ConfigError("%s line %d: duplicate key %s" % (path, number, key), key=key, line=number)
            try:
                values[key] = float(value.strip())
            except ValueError:
                raise ConfigError("%s line %d: %s is not a number: %r" % (path, number, key, value.strip()),
                                  key=key, line=number)
        log.debug("Configuration %s: %s", path, dict(values))
        return cls(values)

    def hertz_contact(self):
        """Hertz contact of the ball on a flat disc, the reduced radius is the ball radius."""
        return HertzContact(self.load_n, self.ball_radius_m, self.reduced_modulus_pa)

    def ball_on_disc(self):
        return BallOnDiscModel.from_contact(self.hertz_contact(), self.ball_radius_m, self.epsilon_r,
                                            film_thickness_m=self.film_thickness_m,
                                            breakdown_ratio=self.breakdown_ratio,
                                            stationary_resistance_ohm=self.r0_ohm)

    def operating_point(self):
        if self.speed_mm_s is None:
            return None
        return OperatingPoint(self.temperature_c, self.speed_mm_s, self.load_n)
