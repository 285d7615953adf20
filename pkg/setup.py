# -*- coding: utf-8 -*-
#
# Copyright (C) 2024 pvdisagg developers
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.
#
"""
pvdisagg, behind-the-meter PV disaggregation from net load and irradiance.
"""
import os
import re
import io

from setuptools import setup, find_packages

ROOT = os.path.dirname(__file__)
VERSION_RE = re.compile(r'''__version__ = ['"]([a-zA-Z0-9.]+)['"]''')


def get_version():
    init = open(os.path.join(ROOT, 'pvdisagg', '__init__.py')).read()
    return VERSION_RE.search(init).group(1)

# reading description from README.rst
with io.open(os.path.join(ROOT, 'README.rst'), encoding='utf-8') as f:
    long_description = f.read()


setup(
    name='pvdisagg',
    version=get_version(),
    license='GPLv3',
    author='pvdisagg developers',
    description='Estimates the PV generation hidden in a prosumer\'s net load from the net load and local irradiance.',
    long_description=long_description,
    packages=find_packages(exclude=['tests*']),
    package_data={'pvdisagg': ['files/*.yml', 'files/*.py']},
    include_package_data=True,
    zip_safe=False,
    python_requires='>=3.8',
    install_requires=[
        "blaster>=0.3.0",
        'Click>=6.7',
        'Jinja2>=2.10',
        'pykwalify>=1.6.0',
        'ruamel.yaml>=0.15.64',
        'numpy>=1.22',
        'pandas>=1.3',
        'scikit-learn>=1.0'
    ],
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
    ],
    entry_points={
        'console_scripts': ['pvdisagg=pvdisagg.cli:pvdisagg']
    }
)
