#!/usr/bin/env python3

from setuptools import setup, find_packages

setup(name='dkhybrid',
      version='0.1.0',
      description='dkhybrid - particle, fluctuating-hydrodynamics and adaptive hybrid simulations of the '
                  'Dean-Kawasaki equation',
      author='dkhybrid developers',
      scripts=['./start_endpoint.sh'],
      packages=find_packages(exclude=['docs', 'tests', 'examples', 'examples.*']),
      install_requires=["numpy>=1.22",
                        "scipy>=1.8",
                        "flask>=2.0.2"],
      extras_require={'test': ['pytest>=7.0']},
      entry_points={'console_scripts': ['dkh=dkhybrid.runner.cli:main_entry']},
      python_requires='>=3.8',
      include_package_data=True,
      license='GNU/GPL v2'
      )
