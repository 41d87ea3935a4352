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
Equivalent circuits built from resistors, capacitors, inductors and Warburg elements, their complex
impedance over frequency, and the Bode and Nyquist representations of the resulting spectra.
"""
import logging
import math

import numpy as np

from eisfilm.impedance import NumericStatus, NetworkBase, DomainError, SingularNetworkError

log = logging.getLogger(__name__)

DEFAULT_LIMITS_HZ = (1e-5, 2e6)
"""Frequency range of the potentiostat, 10 uHz to 2 MHz"""

LINEAR_AMPLITUDE_MV = 10.0
"""Largest excitation amplitude that does not disturb the film"""


class ElementKind(NumericStatus):
    """
    The kind of a circuit element.  The value of an element is given in ohms for a resistor, farads for a
    capacitor, henries for an inductor, and as the Warburg coefficient in ohm s^-1/2 for a Warburg element.
    """
    RESISTOR = 0
    CAPACITOR = 1
    INDUCTOR = 2
    WARBURG = 3
    states = {
        0: {'name': 'RESISTOR', 'friendly': 'Resistor', 'symbol': 'R', 'unit': 'ohm',
            'description': 'Frequency independent resistance, Z = R'},
        1: {'name': 'CAPACITOR', 'friendly': 'Capacitor', 'symbol': 'C', 'unit': 'F',
            'description': 'Ideal capacitor, Z = 1/(j w C)'},
        2: {'name': 'INDUCTOR', 'friendly': 'Inductor', 'symbol': 'L', 'unit': 'H',
            'description': 'Ideal inductor, Z = j w L'},
        3: {'name': 'WARBURG', 'friendly': 'Warburg', 'symbol': 'W', 'unit': 'ohm s^-1/2',
            'description': 'Semi-infinite diffusion, Z = Aw/sqrt(w) + Aw/(j sqrt(w))'},
    }

    @property
    def symbol(self):
        return self.states[self._status]['symbol']

    @property
    def unit(self):
        return self.states[self._status]['unit']


class GridSpacing(NumericStatus):
    LOGARITHMIC = 0
    LINEAR = 1
    EXPLICIT = 2
    states = {
        0: {'name': 'LOGARITHMIC', 'friendly': 'Logarithmic'},
        1: {'name': 'LINEAR', 'friendly': 'Linear'},
        2: {'name': 'EXPLICIT', 'friendly': 'Explicit'},
    }


def _omega_array(omega):
    w = np.asarray(omega, dtype=float)
    if w.size == 0 or not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise DomainError("Angular frequency must be positive and finite: %s" % (omega,), omega=omega)
    return w


def _result(z, omega):
    if np.ndim(omega) == 0:
        return complex(z)
    return z


def element_impedance(e, omega):
    """
    Complex impedance of a single element.

    Example::

        >>> element_impedance(Element(ElementKind.WARBURG, 10.0), 4.0)
        (5-5j)

    :param e: :py:class:`Element`
    :param omega: angular frequency in rad/s, scalar or array
    :return: impedance in ohms, complex for a scalar omega, complex array otherwise
    :raises DomainError: When omega is not positive

    """
    w = _omega_array(omega)
    kind = e.kind.status
    if kind == ElementKind.RESISTOR:
        z = np.full(w.shape, e.value, dtype=complex)
    elif kind == ElementKind.CAPACITOR:
        z = -1j / (w * e.value)
    elif kind == ElementKind.INDUCTOR:
        z = 1j * w * e.value
    else:
        root = np.sqrt(w)
        z = e.value / root - 1j * e.value / root
    return _result(z, omega)


def network_impedance(n, omega):
    """
    Complex impedance of a network, series children add their impedances, parallel children add their
    admittances.

    :param n: network, an :py:class:`Element`, :py:class:`Series` or :py:class:`Parallel`
    :param omega: angular frequency in rad/s, scalar or array
    :return: impedance in ohms
    :raises DomainError: When omega is not positive
    :raises SingularNetworkError: When a parallel branch has zero total admittance

    """
    return n.impedance(omega)


class Element(NetworkBase):
    """
    A single circuit element, the leaf of a network tree.

    .. py:attribute:: kind

        :py:class:`ElementKind` of the element.

    .. py:attribute:: value

        Positive value of the element, in the unit given by the kind.

    """

    def __init__(self, kind, value):
        self._kind = ElementKind(kind)
        value = float(value)
        if not value > 0 or math.isinf(value):
            raise DomainError("%s value must be positive and finite: %s" % (self._kind, value), value=value)
        self._value = value

    @property
    def kind(self):
        return self._kind

    @property
    def value(self):
        return self._value

    def impedance(self, omega):
        return element_impedance(self, omega)

    def elements(self):
        return [self]

    def __str__(self):
        return "%s%g" % (self._kind.symbol, self._value)

    def __eq__(self, other):
        return isinstance(other, Element) and other.kind == self._kind and other.value == self._value

    def __hash__(self):
        return hash((self._kind.status, self._value))


class _Combination(NetworkBase):
    separator = ""

    def __init__(self, *children):
        if len(children) == 1 and isinstance(children[0], (list, tuple)):
            children = children[0]
        if len(children) < 2:
            raise DomainError("%s needs at least two children" % self.__class__.__name__)
        for child in children:
            if not isinstance(child, NetworkBase):
                raise DomainError("%r is not a circuit network" % (child,))
        self._children = tuple(children)

    @property
    def children(self):
        return self._children

    def elements(self):
        found = []
        for child in self._children:
            found.extend(child.elements())
        return found

    def _child_impedances(self, omega):
        return [np.asarray(child.impedance(omega), dtype=complex) for child in self._children]


class Series(_Combination):
    """Children connected in series, the impedances add."""
    separator = "-"

    def impedance(self, omega):
        _omega_array(omega)
        total = 0
        for z in self._child_impedances(omega):
            total = total + z
        return _result(total, omega)

    def __str__(self):
        return self.separator.join("%s" % child for child in self._children)


class Parallel(_Combination):
    """Children connected in parallel, the admittances add."""
    separator = "|"

    def impedance(self, omega):
        _omega_array(omega)
        admittance = 0
        with np.errstate(divide='ignore', invalid='ignore'):
            for z in self._child_impedances(omega):
                admittance = admittance + 1.0 / z
        admittance = np.asarray(admittance)
        if np.any(admittance == 0) or not np.all(np.isfinite(admittance)):
            raise SingularNetworkError("Parallel combination %s has a singular admittance" % self)
        return _result(1.0 / admittance, omega)

    def __str__(self):
        return "(%s)" % self.separator.join("%s" % child for child in self._children)


def parallel_rc(r, c):
    """The RC model, a resistor in parallel with a capacitor."""
    return Parallel(Element(ElementKind.RESISTOR, r), Element(ElementKind.CAPACITOR, c))


def randles(r, c, aw):
    """A capacitor in parallel with a resistor and Warburg element in series."""
    return Parallel(Element(ElementKind.CAPACITOR, c),
                    Series(Element(ElementKind.RESISTOR, r), Element(ElementKind.WARBURG, aw)))


def rc_impedance(r, c, omega):
    """Closed form of the RC model, R/(1 + j w R C)."""
    w = _omega_array(omega)
    return _result(r / (1 + 1j * w * r * c), omega)


def rc_series_r_impedance(r1, c1, r2, omega):
    """Closed form of the RC model in series with R2, (R1 + R2 + j w R1 R2 C1)/(1 + j w R1 C1)."""
    w = _omega_array(omega)
    return _result((r1 + r2 + 1j * w * r1 * r2 * c1) / (1 + 1j * w * r1 * c1), omega)


def cutoff_frequency(r, c):
    """
    The -3 dB frequency of a parallel RC, f = 1/(2 pi R C), where the magnitude has fallen to R/sqrt(2).

    Example::

        >>> round(cutoff_frequency(1e3, 1e-6), 3)
        159.155

    :param r: resistance in ohms
    :param c: capacitance in farads
    :return: frequency in hertz
    :raises DomainError: When r or c is not positive

    """
    if not r > 0 or not c > 0:
        raise DomainError("Resistance and capacitance must be positive: r=%s c=%s" % (r, c))
    return 1.0 / (2 * math.pi * r * c)


class FrequencyGrid(object):
    """
    An ordered list of frequencies in hertz.  Points must be positive and strictly increasing or strictly
    decreasing.  Unless ``limits`` is None, every point must lie within the limits, which default to the
    potentiostat range of 10 uHz to 2 MHz.
    """

    def __init__(self, points, spacing=GridSpacing.EXPLICIT, limits=DEFAULT_LIMITS_HZ):
        points = np.array(points, dtype=float).ravel()
        if points.size and (not np.all(np.isfinite(points)) or np.any(points <= 0)):
            raise DomainError("Frequencies must be positive and finite")
        if points.size > 1:
            steps = np.diff(points)
            if not (np.all(steps > 0) or np.all(steps < 0)):
                raise DomainError("Frequencies must be strictly monotone without duplicates")
        if limits is not None and points.size:
            lo, hi = limits
            # relative slack for points produced by logspace
            if points.min() < lo * (1 - 1e-12) or points.max() > hi * (1 + 1e-12):
                raise DomainError("Frequencies must lie within [%g, %g] Hz" % (lo, hi), limits=limits)
        points.setflags(write=False)
        self._points = points
        self._spacing = GridSpacing(spacing)
        self._limits = limits

    @classmethod
    def logarithmic(cls, lo, hi, points_per_decade=10, descending=False, limits=DEFAULT_LIMITS_HZ):
        """
        Log spaced grid from lo to hi hertz inclusive, with the given number of points per decade.

        Example::

            >>> len(FrequencyGrid.logarithmic(1, 1e6, 10))
            61

        """
        if not lo > 0 or not hi > lo:
            raise DomainError("Grid needs 0 < lo < hi: lo=%s hi=%s" % (lo, hi))
        if not points_per_decade > 0:
            raise DomainError("Points per decade must be positive")
        count = int(round(math.log10(float(hi) / lo) * points_per_decade)) + 1
        points = np.logspace(math.log10(lo), math.log10(hi), max(count, 2))
        if descending:
            points = points[::-1]
        return cls(points, GridSpacing.LOGARITHMIC, limits)

    @classmethod
    def linear(cls, lo, hi, count, limits=DEFAULT_LIMITS_HZ):
        if not lo > 0 or not hi > lo or count < 2:
            raise DomainError("Grid needs 0 < lo < hi and two or more points")
        return cls(np.linspace(lo, hi, int(count)), GridSpacing.LINEAR, limits)

    @classmethod
    def explicit(cls, points, limits=DEFAULT_LIMITS_HZ):
        return cls(points, GridSpacing.EXPLICIT, limits)

    @classmethod
    def default(cls):
        """1 MHz down to 1 Hz, ten points per decade, in the order the potentiostat sweeps."""
        return cls.logarithmic(1.0, 1e6, 10, descending=True)

    @property
    def points(self):
        return self._points

    @property
    def omega(self):
        return 2 * math.pi * self._points

    @property
    def spacing(self):
        return self._spacing

    @property
    def limits(self):
        return self._limits

    def __len__(self):
        return len(self._points)

    def __str__(self):
        if not len(self):
            return "empty grid"
        return "%s grid %g-%g Hz (%d points)" % (self._spacing, self._points.min(), self._points.max(),
                                                 len(self))

    def __repr__(self):
        return self.__str__()


class Spectrum(object):
    """
    Impedance samples ordered by frequency.

    .. py:attribute:: frequency_hz

        Frequencies in hertz, strictly monotone.

    .. py:attribute:: z

        Complex impedance in ohms, one per frequency.

    .. py:attribute:: meta

        Optional operating point the spectrum was measured at.

    .. py:attribute:: amplitude_mv

        Optional amplitude of the excitation in millivolts.

    """

    def __init__(self, frequency_hz, z, meta=None, amplitude_mv=None):
        f = np.array(frequency_hz, dtype=float).ravel()
        z = np.array(z, dtype=complex).ravel()
        if f.size == 0:
            raise DomainError("A spectrum needs at least one sample")
        if f.shape != z.shape:
            raise DomainError("Got %d frequencies for %d impedances" % (f.size, z.size))
        if not np.all(np.isfinite(f)) or np.any(f <= 0):
            raise DomainError("Frequencies must be positive and finite")
        if f.size > 1:
            steps = np.diff(f)
            if not (np.all(steps > 0) or np.all(steps < 0)):
                raise DomainError("Frequencies must be strictly monotone without duplicates")
        if amplitude_mv is not None:
            amplitude_mv = float(amplitude_mv)
            if not amplitude_mv > 0:
                raise DomainError("Amplitude must be positive: %s" % amplitude_mv)
            if amplitude_mv > LINEAR_AMPLITUDE_MV:
                log.warning("Excitation amplitude %g mV is above %g mV, the response may not be linear",
                            amplitude_mv, LINEAR_AMPLITUDE_MV)
        f.setflags(write=False)
        z.setflags(write=False)
        self._frequency_hz = f
        self._z = z
        self._meta = meta
        self._amplitude_mv = amplitude_mv

    @property
    def frequency_hz(self):
        return self._frequency_hz

    @property
    def omega(self):
        return 2 * math.pi * self._frequency_hz

    @property
    def z(self):
        return self._z

    @property
    def meta(self):
        return self._meta

    @property
    def amplitude_mv(self):
        return self._amplitude_mv

    def samples(self):
        """List of (frequency_hz, z) tuples in order"""
        return list(zip(self._frequency_hz.tolist(), self._z.tolist()))

    def scaled(self, factor):
        """Copy of the spectrum with every impedance multiplied by factor"""
        return Spectrum(self._frequency_hz, self._z * factor, self._meta, self._amplitude_mv)

    def with_impedance(self, z):
        return Spectrum(self._frequency_hz, z, self._meta, self._amplitude_mv)

    def __len__(self):
        return len(self._frequency_hz)

    def __str__(self):
        return "Spectrum of %d samples, %g-%g Hz" % (len(self), self._frequency_hz.min(),
                                                    self._frequency_hz.max())

    def __repr__(self):
        return self.__str__()


def sweep(n, grid, meta=None, amplitude_mv=None):
    """
    Evaluates the network at every point of the grid.

    :param n: network
    :param grid: :py:class:`FrequencyGrid`
    :return: :py:class:`Spectrum` with one sample per grid point, in grid order
    :raises DomainError: When the grid is empty

    """
    if not len(grid):
        raise DomainError("Cannot sweep an empty frequency grid")
    z = np.asarray(network_impedance(n, grid.omega), dtype=complex)
    return Spectrum(grid.points, z, meta, amplitude_mv)


class NoiseSpec(object):
    """Multiplicative complex noise of relative size sigma."""

    def __init__(self, sigma=0.0):
        sigma = float(sigma)
        if not sigma >= 0:
            raise DomainError("Noise sigma must be zero or positive: %s" % sigma)
        self._sigma = sigma

    @property
    def sigma(self):
        return self._sigma

    def __str__(self):
        return "sigma=%g" % self._sigma


def synth_spectrum(n, grid, noise, seed, meta=None, amplitude_mv=None):
    """
    Sweeps the network and perturbs each sample as z (1 + sigma (g1 + j g2)), where g1 and g2 are unit normal
    draws from a generator seeded with seed.  The same inputs always give the same spectrum.

    :param n: network
    :param grid: :py:class:`FrequencyGrid`
    :param noise: :py:class:`NoiseSpec` or a bare sigma
    :param seed: integer seed
    :return: :py:class:`Spectrum`

    """
    if not isinstance(noise, NoiseSpec):
        noise = NoiseSpec(noise)
    clean = sweep(n, grid, meta, amplitude_mv)
    if noise.sigma == 0:
        return clean
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((len(clean), 2))
    return clean.with_impedance(clean.z * (1 + noise.sigma * (g[:, 0] + 1j * g[:, 1])))


class BodeDiagram(object):
    """Magnitude and phase against frequency."""

    def __init__(self, frequency_hz, magnitude_ohm, phase_deg):
        self.frequency_hz = frequency_hz
        self.magnitude_ohm = magnitude_ohm
        self.phase_deg = phase_deg

    def rows(self):
        return list(zip(self.frequency_hz.tolist(), self.magnitude_ohm.tolist(), self.phase_deg.tolist()))

    def to_spectrum(self):
        """Rebuilds the spectrum as magnitude e^(j phase)"""
        z = self.magnitude_ohm * np.exp(1j * np.radians(self.phase_deg))
        return Spectrum(self.frequency_hz, z)

    def __len__(self):
        return len(self.frequency_hz)


class NyquistDiagram(object):
    """Real part against negative imaginary part, in sample order."""

    def __init__(self, real_ohm, neg_imag_ohm, frequency_hz=None):
        self.real_ohm = real_ohm
        self.neg_imag_ohm = neg_imag_ohm
        self.frequency_hz = frequency_hz

    def rows(self):
        return list(zip(self.real_ohm.tolist(), self.neg_imag_ohm.tolist()))

    def __len__(self):
        return len(self.real_ohm)


def phase_degrees(z):
    """Phase of z in degrees, in the range (-180, 180]"""
    phase = np.degrees(np.angle(z))
    return np.where(phase <= -180.0, phase + 360.0, phase)


def to_bode(s):
    """
    Bode table of a spectrum, magnitude is abs(z) and phase is in degrees, capacitive samples having a
    negative phase.

    Example::

        >>> b = to_bode(Spectrum([1.0], [500 - 500j]))
        >>> round(b.magnitude_ohm[0], 3), round(b.phase_deg[0], 6)
        (707.107, -45.0)

    """
    if not len(s):
        raise DomainError("Cannot build a Bode table from an empty spectrum")
    return BodeDiagram(np.array(s.frequency_hz), np.abs(s.z), phase_degrees(s.z))


def to_nyquist(s):
    """Nyquist table of a spectrum, (Re z, -Im z) per sample in order."""
    if not len(s):
        raise DomainError("Cannot build a Nyquist table from an empty spectrum")
    return NyquistDiagram(np.real(s.z).copy(), -np.imag(s.z), np.array(s.frequency_hz))
