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
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU
# General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with eisfilm. If not, see <http://www.gnu.org/licenses/>.
import os

from setuptools import setup


README = open(os.path.join(os.path.dirname(__file__), 'README.rst')).read()

setup(
    name='eisfilm',
    version='1.0',
    packages=['eisfilm', 'eisfilm.impedance'],
    include_package_data=True,
    license="GPL 3",
    description="eisfilm fits equivalent circuits to impedance spectra of lubricated contacts, and calibrates \
    a model of oil film thickness against the fitted resistance and capacitance.",
    long_description=README,
    install_requires=['numpy', 'scipy', 'matplotlib'],
    entry_points={
        'console_scripts': ['eisfilm = eisfilm.cli:main'],
    },
    test_suite='tests',
    classifiers=[
        'Environment :: Console',
        'Programming Language :: Python',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Physics',
        'Topic :: Scientific/Engineering :: Information Analysis',
    ],
)
