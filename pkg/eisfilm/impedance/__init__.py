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
Shared base classes, status tables and exceptions used by the impedance
modules.  Concrete implementations live in the sibling modules
:py:mod:`circuit`, :py:mod:`contact`, :py:mod:`ehd`, :py:mod:`fitting` and
:py:mod:`calibration`.
"""
import json


class Status(object):
    pass


class NumericStatus(Status):
    """
    A value taken from a fixed table of states.  Each child class defines ``states``, a dictionary keyed by
    the numeric code, holding the ``name``, ``friendly`` name and ``description`` of the state.  The constants
    for each code are defined as class attributes so that callers can write ``Regime(Regime.BOUNDARY)``.

    Statuses compare equal to other statuses of the same class with the same code, and to the bare integer
    code.

    Example::

        >>> from eisfilm.impedance.fitting import Regime
        >>> r = Regime(Regime.BOUNDARY)
        >>> r.name
        'BOUNDARY'
        >>> str(r)
        'Boundary'
        >>> r == Regime.BOUNDARY
        True

    """
    states = {}
    """
    Dictionary of possible states, will be reimplemented by each child class
    """

    def __init__(self, status):
        if isinstance(status, NumericStatus):
            status = status.status
        if status not in self.states:
            raise DomainError("%s is not a valid %s" % (status, self.__class__.__name__))
        self._status = status

    def __repr__(self):
        return '%s' % self.states[self._status]['name']

    def __str__(self):
        return '%s' % self.states[self._status]['friendly']

    def __int__(self):
        return self._status

    def __eq__(self, other):
        if isinstance(other, NumericStatus):
            return other.__class__ is self.__class__ and other.status == self._status
        if isinstance(other, int):
            return other == self._status
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.__class__.__name__, self._status))

    @property
    def name(self):
        """
        Gets the name of the status, this is the name of the class constant.

        :return: Status Name
        :rtype: str

        """
        return u"%s" % self.states[self._status]['name']

    @property
    def description(self):
        """
        Human readable description of the status.

        :return: Description of the status.
        :rtype: str

        """
        return u'%s' % self.states[self._status].get('description', '')

    @property
    def status(self):
        """
        Returns the numeric code of the status.

        :return: The status code
        :rtype: int

        """
        return self._status

    @property
    def friendly(self):
        """
        A friendly name for the status, this is a short, human readable name.

        :return: Human readable status name
        :rtype: str

        """
        return u"%s" % self.states[self._status]['friendly']

    @classmethod
    def get_status_list(cls):
        """
        Returns one instance of every status in the table, ordered by code.

        :return: List of statuses
        :rtype: list

        """
        return [cls(key) for key in sorted(cls.states.keys())]

    @classmethod
    def from_name(cls, text):
        """
        Looks up a status by its name, friendly name or any of its ``aliases``, ignoring case.

        :param text: Name to look up
        :return: Matching status
        :raises DomainError: When no state matches

        """
        wanted = u"%s" % text
        wanted = wanted.strip().lower()
        for key, state in cls.states.items():
            names = [state['name'], state['friendly']] + list(state.get('aliases', []))
            if wanted in [n.lower() for n in names]:
                return cls(key)
        raise DomainError("%s is not a valid %s" % (text, cls.__name__))


class InfiniteValue(float):
    """
    A distinguished infinite result.  Behaves as ``float('inf')`` in arithmetic and comparisons, but can be
    recognised with ``isinstance`` so that a deliberate open circuit is never confused with a numeric
    overflow.
    """

    def __new__(cls, reason):
        ob = float.__new__(cls, float('inf'))
        ob.reason = reason
        return ob

    def __repr__(self):
        return self.reason.upper().replace("-", "_")

    def __str__(self):
        return self.reason

    def __reduce__(self):
        return InfiniteValue, (self.reason,)


OPEN_CIRCUIT = InfiniteValue("open-circuit")
DIVERGENT = InfiniteValue("divergent")


def is_open_circuit(value):
    """True when value is the open-circuit marker or an infinite resistance."""
    return isinstance(value, InfiniteValue) or value == float('inf')


class NetworkBase(object):
    """
    Base class for anything that has an impedance.  Subclasses implement :py:meth:`impedance` and
    :py:meth:`__str__`.
    """

    def impedance(self, omega):
        """Complex impedance in ohms at the angular frequency omega (rad/s)"""
        raise NotImplementedError

    def elements(self):
        """List of the leaf elements in the network, depth first"""
        raise NotImplementedError

    def __repr__(self):
        return self.__str__()


class EisException(Exception):
    """
    Base class for exceptions raised by eisfilm.

    Any keyword arguments given when the exception is created are stored as attributes and included when the
    exception is serialized, for example the offending configuration key, or the attainable capacitance range
    of a failed inversion.

    .. py:attribute:: exit_status

        Process exit status used by the command line tools when the exception escapes a command.

    """

    exit_status = 1

    @property
    def message(self):
        return u"%s" % self.args[0]

    def to_json(self):
        fields = {
            'status': 'Fail',
            'type': "Exception",
            'exception_class': self.__class__.__name__,
            'message': self.message,
        }
        for f in self._extras:
            fields[f] = getattr(self, f)
        return json.dumps(fields, sort_keys=True, indent=4, default=str)

    def __init__(self, message, **kwargs):
        Exception.__init__(self, message)
        self._extras = []
        for k, v in kwargs.items():
            self._extras.append(k)
            setattr(self, k, v)


class DomainError(EisException, ValueError):
    """
    Raised when an argument lies outside the domain of an operation, for example a non-positive angular
    frequency, resistance or capacitance, an empty frequency grid, or a spectrum with too few samples.
    """
    exit_status = 2


class SingularNetworkError(EisException):
    """
    Raised when a parallel combination has zero total admittance.
    """
    exit_status = 4


class ModelValidityError(EisException):
    """
    Raised when a closed-form contact model is evaluated outside the geometry it was derived for, rather than
    returning a negative or complex capacitance.
    """
    exit_status = 4


class NoSolutionError(EisException):
    """
    Raised when an inversion target cannot be reached inside the search bracket.  The ``attainable_range``
    attribute holds the (low, high) values that could be reached.
    """
    exit_status = 4


class ConfigError(EisException):
    """
    Raised when a configuration file or command line flag is missing, unknown or malformed.  The ``key``
    attribute names the key at fault where there is one.
    """
    exit_status = 2


class SpectrumFormatError(EisException):
    """
    Raised when a spectrum, report, dataset or model file cannot be read.
    """
    exit_status = 1


class JoinError(EisException):
    """
    Raised when merging datasets finds more than one candidate for an operating point.  The ``collisions``
    attribute lists the competing rows.
    """
    exit_status = 3


class EmptyJoinError(EisException):
    """
    Raised when no operating points could be joined between two datasets.
    """
    exit_status = 3


class ModelBuildError(EisException):
    """
    Raised when a thickness model cannot be built from the calibration records, the ``offending`` attribute
    lists the records that break monotonicity.
    """
    exit_status = 4


__all__ = ['Status', 'NumericStatus', 'InfiniteValue', 'OPEN_CIRCUIT', 'DIVERGENT', 'NetworkBase', 'EisException',
           'DomainError', 'SingularNetworkError', 'ModelValidityError', 'NoSolutionError', 'ConfigError',
           'SpectrumFormatError', 'JoinError', 'EmptyJoinError', 'ModelBuildError']
