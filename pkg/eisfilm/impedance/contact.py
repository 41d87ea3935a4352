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
Circuit models of lubricated contacts.  A loaded ball on a disc is modelled as the plate capacitor of the
Hertz zone in parallel with the capacitor of the surrounding gap, shunted by the resistance of the broken down
part of the Hertz zone.  Two eccentric cylinders, a journal bearing, are modelled as a single capacitor.

All lengths are in metres, capacitances in farads and resistances in ohms.
"""
import logging
import math

from scipy import optimize

from eisfilm.impedance import NumericStatus, DomainError, ModelValidityError, NoSolutionError, DIVERGENT, \
    OPEN_CIRCUIT, is_open_circuit
from eisfilm.impedance.circuit import Element, ElementKind, parallel_rc

log = logging.getLogger(__name__)

EPSILON_0 = 8.8541878128e-12
"""Permittivity of free space, F/m"""

DEFAULT_R0_OHM = 10.0
"""Contact resistance of a stationary, fully broken down contact"""

H_BRACKET_M = (1e-11, 1e-4)
"""Film thickness search bracket used by the inversion"""

INVERSION_RTOL = 1e-10


def _positive(name, value):
    value = float(value)
    if not value > 0 or math.isinf(value):
        raise DomainError("%s must be positive and finite: %s" % (name, value), key=name)
    return value


def hertz_radius(load_n, reduced_radius_m, reduced_modulus_pa):
    """
    Radius of the Hertz contact circle, a = (3 W R'/E')^(1/3).

    Example::

        >>> round(hertz_radius(20, 9.525e-3, 2.26e11) * 1e6, 1)
        136.2

    :param load_n: normal load W in newtons
    :param reduced_radius_m: reduced radius of curvature R' in metres
    :param reduced_modulus_pa: reduced modulus E' in pascals
    :return: contact radius in metres
    :raises DomainError: When any input is not positive

    """
    w = _positive("load_n", load_n)
    r = _positive("reduced_radius_m", reduced_radius_m)
    e = _positive("reduced_modulus_pa", reduced_modulus_pa)
    return (3.0 * w * r / e) ** (1.0 / 3.0)


class HertzContact(object):
    """
    Elastic point contact of a loaded ball.  The contact radius is derived from the other three fields.
    """

    def __init__(self, load_n, reduced_radius_m, reduced_modulus_pa):
        self._load_n = _positive("load_n", load_n)
        self._reduced_radius_m = _positive("reduced_radius_m", reduced_radius_m)
        self._reduced_modulus_pa = _positive("reduced_modulus_pa", reduced_modulus_pa)
        self._hertz_radius_m = hertz_radius(self._load_n, self._reduced_radius_m, self._reduced_modulus_pa)

    @property
    def load_n(self):
        return self._load_n

    @property
    def reduced_radius_m(self):
        return self._reduced_radius_m

    @property
    def reduced_modulus_pa(self):
        return self._reduced_modulus_pa

    @property
    def hertz_radius_m(self):
        return self._hertz_radius_m

    def __str__(self):
        return "Hertz contact W=%gN R'=%gm E'=%gPa a=%gm" % (self._load_n, self._reduced_radius_m,
                                                         self._reduced_modulus_pa, self._hertz_radius_m)

    def __repr__(self):
        return self.__str__()


class SurroundForm(NumericStatus):
    """
    Expression used for the capacitance of the gap around the Hertz zone.
    """
    GAP_INTEGRAL = 0
    PRINTED = 1
    states = {
        0: {
            'name': 'GAP_INTEGRAL',
            'friendly': 'Gap integral',
            'description': "2 pi eps [(h + r) ln((h + r)/(h + d)) - sqrt(r^2 - a^2)], d = r - sqrt(r^2 - a^2), "
                           "the sphere over flat gap integrated from the Hertz radius to the ball radius",
        },
        1: {
            'name': 'PRINTED',
            'friendly': 'Printed',
            'description': "2 pi eps (h + sqrt(r^2 - a^2)) [ln(r/(h + sqrt(r^2 - a^2))) - 1], only positive when "
                           "the contact radius is close to the ball radius",
        },
    }


class BallOnDiscModel(object):
    """
    Ball on disc contact.

    .. py:attribute:: permittivity_f_per_m

        Absolute permittivity of the lubricant, eps_r * eps_0.

    .. py:attribute:: hertz_radius_m

        Radius a of the Hertz contact zone.

    .. py:attribute:: ball_radius_m

        Radius r of the ball.

    .. py:attribute:: film_thickness_m

        Central film thickness h_c.

    .. py:attribute:: breakdown_ratio

        Fraction alpha of the Hertz zone in metallic contact, 0 to 1.

    .. py:attribute:: stationary_resistance_ohm

        Resistance R0 of the contact when the whole Hertz zone is broken down.

    """

    def __init__(self, permittivity_f_per_m, hertz_radius_m, ball_radius_m, film_thickness_m=100e-9,
                 breakdown_ratio=0.0, stationary_resistance_ohm=DEFAULT_R0_OHM,
                 surround_form=SurroundForm.GAP_INTEGRAL):
        self._permittivity = _positive("permittivity_f_per_m", permittivity_f_per_m)
        self._hertz_radius_m = _positive("hertz_radius_m", hertz_radius_m)
        self._ball_radius_m = _positive("ball_radius_m", ball_radius_m)
        self._film_thickness_m = _positive("film_thickness_m", film_thickness_m)
        self._stationary_resistance_ohm = _positive("stationary_resistance_ohm", stationary_resistance_ohm)
        alpha = float(breakdown_ratio)
        if not 0.0 <= alpha <= 1.0:
            raise DomainError("Breakdown ratio must lie in [0, 1]: %s" % alpha, key="breakdown_ratio")
        self._breakdown_ratio = alpha
        if not self._hertz_radius_m < self._ball_radius_m:
            raise ModelValidityError("Hertz radius %g m must be smaller than the ball radius %g m" % (
                self._hertz_radius_m, self._ball_radius_m))
        self._surround_form = SurroundForm(surround_form)

    @classmethod
    def from_contact(cls, contact, ball_radius_m, epsilon_r, **kwargs):
        """Model for a :py:class:`HertzContact` and a lubricant of relative permittivity epsilon_r"""
        return cls(_positive("epsilon_r", epsilon_r) * EPSILON_0, contact.hertz_radius_m, ball_radius_m,
                   **kwargs)

    def with_film(self, film_thickness_m, breakdown_ratio=None):
        """
        Copy of this model with a new film thickness, and optionally a new breakdown ratio.

        :param film_thickness_m: central film thickness
        :param breakdown_ratio: breakdown ratio, unchanged when None
        :return: :py:class:`BallOnDiscModel`

        """
        if breakdown_ratio is None:
            breakdown_ratio = self._breakdown_ratio
        return BallOnDiscModel(self._permittivity, self._hertz_radius_m, self._ball_radius_m, film_thickness_m,
                               breakdown_ratio, self._stationary_resistance_ohm, self._surround_form)

    @property
    def permittivity_f_per_m(self):
        return self._permittivity

    @property
    def epsilon_r(self):
        return self._permittivity / EPSILON_0

    @property
    def hertz_radius_m(self):
        return self._hertz_radius_m

    @property
    def ball_radius_m(self):
        return self._ball_radius_m

    @property
    def film_thickness_m(self):
        return self._film_thickness_m

    @property
    def breakdown_ratio(self):
        return self._breakdown_ratio

    @property
    def stationary_resistance_ohm(self):
        return self._stationary_resistance_ohm

    @property
    def surround_form(self):
        return self._surround_form

    def resistance(self):
        """Resistance of the broken down zone, OPEN_CIRCUIT when alpha is zero"""
        return breakdown_resistance(self._stationary_resistance_ohm, self._breakdown_ratio)

    def capacitance(self):
        return total_capacitance(self)

    def network(self):
        """
        The equivalent circuit, R1 in parallel with C1 + C2, or the capacitor alone when the resistance is an
        open circuit.
        """
        r = self.resistance()
        c = self.capacitance()
        if is_open_circuit(r):
            return Element(ElementKind.CAPACITOR, c)
        return parallel_rc(r, c)

    def __str__(self):
        return "Ball on disc eps_r=%g a=%gm r=%gm h=%gm alpha=%g R0=%gohm" % (
            self.epsilon_r, self._hertz_radius_m, self._ball_radius_m, self._film_thickness_m,
            self._breakdown_ratio, self._stationary_resistance_ohm)

    def __repr__(self):
        return self.__str__()


def capacitance_hertz_zone(model):
    """
    Plate capacitor of the intact part of the Hertz zone, C1 = eps pi a^2 (1 - alpha)/h_c.

    :param model: :py:class:`BallOnDiscModel`
    :return: capacitance in farads, zero when alpha is one

    """
    h = model.film_thickness_m
    if not h > 0:
        raise DomainError("Film thickness must be positive: %s" % h)
    a = model.hertz_radius_m
    return model.permittivity_f_per_m * math.pi * a * a * (1.0 - model.breakdown_ratio) / h


def capacitance_surround(model):
    """
    Capacitance of the gap between the ball and the disc outside the Hertz zone.  The expression is chosen by
    ``model.surround_form``.

    :param model: :py:class:`BallOnDiscModel`
    :return: capacitance in farads
    :raises ModelValidityError: When the expression is not positive for the geometry

    """
    h = model.film_thickness_m
    r = model.ball_radius_m
    a = model.hertz_radius_m
    eps = model.permittivity_f_per_m
    s = math.sqrt((r - a) * (r + a))
    if model.surround_form == SurroundForm.GAP_INTEGRAL:
        # ball height above the flat at the edge of the Hertz zone, r - s without cancellation
        delta = a * a / (r + s)
        c2 = 2 * math.pi * eps * ((h + r) * math.log((h + r) / (h + delta)) - s)
    else:
        c2 = 2 * math.pi * eps * (h + s) * (math.log(r / (h + s)) - 1.0)
    if not c2 > 0 or math.isinf(c2):
        raise ModelValidityError(
            "%s surround capacitance is %g F for a=%g m, r=%g m, h=%g m, outside the domain of the expression" % (
                model.surround_form, c2, a, r, h), surround_form=model.surround_form.name)
    return c2


def total_capacitance(model):
    """C1 + C2 of the ball on disc contact."""
    return capacitance_hertz_zone(model) + capacitance_surround(model)


def breakdown_resistance(r0_ohm, alpha):
    """
    Resistance of the broken down zone, R1 = R0/alpha.

    Example::

        >>> breakdown_resistance(10.0, 0.5)
        20.0
        >>> breakdown_resistance(10.0, 0)
        OPEN_CIRCUIT

    :param r0_ohm: stationary contact resistance
    :param alpha: breakdown ratio in [0, 1]
    :return: resistance in ohms, or OPEN_CIRCUIT when alpha is zero

    """
    r0 = _positive("r0_ohm", r0_ohm)
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError("Breakdown ratio must lie in [0, 1]: %s" % alpha, key="breakdown_ratio")
    if alpha == 0.0:
        return OPEN_CIRCUIT
    return r0 / alpha


class CylinderModel(object):
    """
    Two eccentric cylinders separated by lubricant, the inner of radius r1 inside the outer of radius r2, with
    their axes a distance d apart.
    """

    def __init__(self, inner_radius_m, outer_radius_m, eccentricity_m, length_m, permittivity_f_per_m):
        self._inner = _positive("inner_radius_m", inner_radius_m)
        self._outer = _positive("outer_radius_m", outer_radius_m)
        if not self._inner < self._outer:
            raise DomainError("Inner radius %g m must be smaller than outer radius %g m" % (self._inner,
                                                                                        self._outer))
        self._eccentricity = float(eccentricity_m)
        if not self._eccentricity >= 0:
            raise DomainError("Eccentricity must not be negative: %s" % self._eccentricity, key="eccentricity_m")
        self._length = _positive("length_m", length_m)
        self._permittivity = _positive("permittivity_f_per_m", permittivity_f_per_m)

    @property
    def inner_radius_m(self):
        return self._inner

    @property
    def outer_radius_m(self):
        return self._outer

    @property
    def eccentricity_m(self):
        return self._eccentricity

    @property
    def length_m(self):
        return self._length

    @property
    def permittivity_f_per_m(self):
        return self._permittivity

    @property
    def clearance_m(self):
        return self._outer - self._inner

    def network(self, r0_ohm=DEFAULT_R0_OHM, alpha=0.0):
        """
        Equivalent circuit of the bearing, R3 in parallel with C3.  R3 is set by the breakdown area exactly as
        for the ball on disc, the capacitor alone when alpha is zero.
        """
        c = cylinder_capacitance(self)
        if c is DIVERGENT:
            raise ModelValidityError("Touching cylinders have no finite capacitance")
        r = breakdown_resistance(r0_ohm, alpha)
        if is_open_circuit(r):
            return Element(ElementKind.CAPACITOR, c)
        return parallel_rc(r, c)

    def __str__(self):
        return "Cylinders r1=%gm r2=%gm d=%gm L=%gm" % (self._inner, self._outer, self._eccentricity, self._length)


def cylinder_capacitance(m):
    """
    Capacitance of eccentric cylinders, C3 = 2 pi eps L / arcosh((r1^2 + r2^2 - d^2)/(2 r1 r2)).  At d = 0
    this is the coaxial value 2 pi eps L / ln(r2/r1).

    :param m: :py:class:`CylinderModel`
    :return: capacitance in farads, DIVERGENT when the cylinders touch
    :raises ModelValidityError: When the eccentricity exceeds the clearance

    """
    r1, r2, d = m.inner_radius_m, m.outer_radius_m, m.eccentricity_m
    clearance = r2 - r1
    # arcosh argument minus one, (clearance^2 - d^2)/(2 r1 r2)
    t = (clearance - d) * (clearance + d) / (2.0 * r1 * r2)
    if t < 0:
        raise ModelValidityError("Eccentricity %g m exceeds the clearance %g m" % (d, clearance))
    if t == 0:
        return DIVERGENT
    return 2 * math.pi * m.permittivity_f_per_m * m.length_m / math.log1p(t + math.sqrt(t * (t + 2.0)))


class Inversion(object):
    """
    Film thickness and breakdown ratio recovered from a measured resistance and capacitance.

    .. py:attribute:: saturated

        True when the measured resistance was below R0 and alpha was clamped to one.

    .. py:attribute:: residual

        Relative capacitance error |C(h) - C|/C at the returned thickness.

    """

    def __init__(self, film_thickness_m, alpha, saturated=False, residual=0.0):
        self.film_thickness_m = film_thickness_m
        self.alpha = alpha
        self.saturated = saturated
        self.residual = residual

    def __iter__(self):
        return iter((self.film_thickness_m, self.alpha))

    def __str__(self):
        flag = " (saturated)" if self.saturated else ""
        return "h=%gm alpha=%g%s" % (self.film_thickness_m, self.alpha, flag)

    def __repr__(self):
        return self.__str__()


def invert_ball_on_disc(r_meas, c_meas, r0, geometry, bracket=H_BRACKET_M):
    """
    Recovers the film thickness and breakdown ratio of a ball on disc contact from its measured resistance and
    capacitance.  Alpha follows from R0/R, clamped to [0, 1], then the film thickness is found by bisection of
    the total capacitance, which falls monotonically with thickness, in log10 h over the bracket.

    :param r_meas: measured resistance in ohms, or OPEN_CIRCUIT
    :param c_meas: measured capacitance in farads
    :param r0: stationary contact resistance
    :param geometry: :py:class:`BallOnDiscModel` supplying permittivity, Hertz radius and ball radius
    :param bracket: (low, high) film thickness bracket in metres
    :return: :py:class:`Inversion`
    :raises NoSolutionError: When c_meas is not attainable over the bracket

    """
    r0 = _positive("r0", r0)
    if not c_meas > 0:
        raise DomainError("Measured capacitance must be positive: %s" % c_meas)
    saturated = False
    if is_open_circuit(r_meas):
        alpha = 0.0
    else:
        if not r_meas > 0:
            raise DomainError("Measured resistance must be positive: %s" % r_meas)
        alpha = r0 / float(r_meas)
        if alpha > 1.0:
            log.warning("Measured resistance %g ohm is below R0 %g ohm, breakdown ratio clamped to 1", r_meas, r0)
            alpha = 1.0
            saturated = True

    def model_at(x):
        return geometry.with_film(10.0 ** x, alpha)

    def relative_error(x):
        return total_capacitance(model_at(x)) / c_meas - 1.0

    lo, hi = math.log10(bracket[0]), math.log10(bracket[1])
    c_max = total_capacitance(model_at(lo))
    c_min = total_capacitance(model_at(hi))
    if not c_min <= c_meas <= c_max:
        raise NoSolutionError("Capacitance %g F is outside the attainable range [%g, %g] F for alpha=%g" % (
            c_meas, c_min, c_max, alpha), attainable_range=(c_min, c_max))
    x = optimize.bisect(relative_error, lo, hi, xtol=1e-15, maxiter=200)
    h = 10.0 ** x
    residual = abs(relative_error(x))
    log.debug("Inverted R=%s C=%g to h=%g alpha=%g in bracket [%g, %g], residual %g", r_meas, c_meas, h, alpha,
              bracket[0], bracket[1], residual)
    if residual > INVERSION_RTOL:
        log.warning("Inversion residual %g exceeds %g", residual, INVERSION_RTOL)
    return Inversion(h, alpha, saturated, residual)
