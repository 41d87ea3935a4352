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
Elastohydrodynamic central film thickness and the conversion of film thickness measured on a steel ball against
a glass disc to the same contact between two steel bodies.
"""
import logging
import math

from eisfilm.impedance import DomainError
from eisfilm.impedance.calibration import OperatingPoint

log = logging.getLogger(__name__)

SPEED_EXPONENT = 0.68
PRESSURE_VISCOSITY_EXPONENT = 0.53
LOAD_EXPONENT = -0.067
MATERIAL_EXPONENT = -0.083
"""Net exponent of E' in the central film thickness, -0.68 + 0.53 + 0.067"""

E_REDUCED_STEEL_STEEL = 2.26e11
E_REDUCED_STEEL_GLASS = 1.17e11
DEFAULT_ELLIPTICITY = 1.9
"""Geometry factor k for a circular point contact"""

DEFAULT_SPEEDS_MM_S = (2500, 2000, 1300, 1000, 700, 500, 200, 100, 50, 10, 1)
"""Entrainment speeds of a Stribeck sweep, fast to slow"""


def _positive(name, value):
    value = float(value)
    if not value > 0 or math.isinf(value):
        raise DomainError("%s must be positive and finite: %s" % (name, value), key=name)
    return value


class MaterialPair(object):
    """
    Elastic constants of two bodies in contact.  A modulus may be ``float('inf')`` for a rigid body.
    """

    def __init__(self, e1_pa, e2_pa, nu1, nu2):
        for name, value in (("e1_pa", e1_pa), ("e2_pa", e2_pa)):
            if not float(value) > 0:
                raise DomainError("%s must be positive: %s" % (name, value), key=name)
        for name, value in (("nu1", nu1), ("nu2", nu2)):
            if not 0.0 < float(value) < 0.5:
                raise DomainError("%s must lie in (0, 0.5): %s" % (name, value), key=name)
        self.e1_pa = float(e1_pa)
        self.e2_pa = float(e2_pa)
        self.nu1 = float(nu1)
        self.nu2 = float(nu2)

    @classmethod
    def steel_steel(cls):
        return cls(210e9, 210e9, 0.3, 0.3)

    def __str__(self):
        return "E1=%gPa nu1=%g, E2=%gPa nu2=%g" % (self.e1_pa, self.nu1, self.e2_pa, self.nu2)


def reduced_modulus(m):
    """
    Reduced modulus under the lubrication convention, 2/E' = (1 - nu1^2)/E1 + (1 - nu2^2)/E2.

    Example::

        >>> round(reduced_modulus(MaterialPair(210e9, 210e9, 0.3, 0.3)) / 1e11, 4)
        2.3077

    :param m: :py:class:`MaterialPair`
    :return: E' in pascals

    """
    compliance = (1.0 - m.nu1 ** 2) / m.e1_pa + (1.0 - m.nu2 ** 2) / m.e2_pa
    return 2.0 / compliance


class EhdInputs(object):
    """
    Inputs of the central film thickness formula.

    .. py:attribute:: pressure_viscosity_coeff_per_pa

        Pressure viscosity coefficient of the lubricant, not to be confused with the breakdown ratio.

    """

    @staticmethod
    def json_attributes():
        return ['k_ellipticity', 'reduced_radius_m', 'entrainment_speed_m_s', 'viscosity_pa_s',
                'reduced_modulus_pa', 'pressure_viscosity_coeff_per_pa', 'load_n']

    def __init__(self, reduced_radius_m, entrainment_speed_m_s, viscosity_pa_s, reduced_modulus_pa,
                 pressure_viscosity_coeff_per_pa, load_n, k_ellipticity=DEFAULT_ELLIPTICITY):
        self.reduced_radius_m = _positive("reduced_radius_m", reduced_radius_m)
        self.entrainment_speed_m_s = _positive("entrainment_speed_m_s", entrainment_speed_m_s)
        self.viscosity_pa_s = _positive("viscosity_pa_s", viscosity_pa_s)
        self.reduced_modulus_pa = _positive("reduced_modulus_pa", reduced_modulus_pa)
        self.pressure_viscosity_coeff_per_pa = _positive("pressure_viscosity_coeff_per_pa",
                                                         pressure_viscosity_coeff_per_pa)
        self.load_n = _positive("load_n", load_n)
        self.k_ellipticity = _positive("k_ellipticity", k_ellipticity)

    def _replace(self, **kwargs):
        fields = dict((k, getattr(self, k)) for k in self.json_attributes())
        fields.update(kwargs)
        return EhdInputs(**fields)

    def with_speed(self, entrainment_speed_m_s):
        return self._replace(entrainment_speed_m_s=entrainment_speed_m_s)

    def with_load(self, load_n):
        return self._replace(load_n=load_n)

    def with_modulus(self, reduced_modulus_pa):
        return self._replace(reduced_modulus_pa=reduced_modulus_pa)

    def __str__(self):
        return "U=%gm/s eta=%gPa.s E'=%gPa alpha=%g/Pa W=%gN" % (
            self.entrainment_speed_m_s, self.viscosity_pa_s, self.reduced_modulus_pa,
            self.pressure_viscosity_coeff_per_pa, self.load_n)


def dowson_hamrock_hc(inputs):
    """
    Central film thickness,
    h_c = k R' (U eta/(E' R'))^0.68 (alpha E')^0.53 (W/(E' R'^2))^-0.067.

    :param inputs: :py:class:`EhdInputs`
    :return: film thickness in metres

    """
    r = inputs.reduced_radius_m
    e = inputs.reduced_modulus_pa
    speed = inputs.entrainment_speed_m_s * inputs.viscosity_pa_s / (e * r)
    material = inputs.pressure_viscosity_coeff_per_pa * e
    load = inputs.load_n / (e * r * r)
    return (inputs.k_ellipticity * r * speed ** SPEED_EXPONENT * material ** PRESSURE_VISCOSITY_EXPONENT *
            load ** LOAD_EXPONENT)


def material_conversion_factor(e_ss=E_REDUCED_STEEL_STEEL, e_sg=E_REDUCED_STEEL_GLASS):
    """
    Ratio of film thickness on the steel pair to film thickness on the steel and glass pair at the same
    operating point, (E'ss/E'sg)^-0.083.

    Example::

        >>> round(material_conversion_factor(2.26e11, 1.17e11), 4)
        0.9468

    """
    e_ss = _positive("e_ss", e_ss)
    e_sg = _positive("e_sg", e_sg)
    return (e_ss / e_sg) ** MATERIAL_EXPONENT


def convert_utfi_to_mtm(h_utfi, factor):
    """Film thickness measured by interferometry scaled to the steel pair."""
    return _positive("h_utfi", h_utfi) * _positive("factor", factor)


def film_thickness_table(inputs, speeds_mm_s=DEFAULT_SPEEDS_MM_S, temperature_c=None, factor=1.0):
    """
    Predicted central film thickness over a speed sweep, in the form of interferometry rows.

    :param inputs: :py:class:`EhdInputs`, its speed is replaced by each sweep speed
    :param speeds_mm_s: entrainment speeds in mm/s
    :param temperature_c: temperature label of the rows
    :param factor: material conversion applied to each thickness
    :return: list of (:py:class:`OperatingPoint`, h_m)

    """
    rows = []
    for speed in speeds_mm_s:
        h = dowson_hamrock_hc(inputs.with_speed(speed / 1000.0)) * factor
        log.debug("Speed %g mm/s, h_c %g m", speed, h)
        rows.append((OperatingPoint(temperature_c, speed, inputs.load_n), h))
    return rows
