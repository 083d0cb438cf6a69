#!/usr/bin/env python

from setuptools import setup, find_packages

with open("README.md", 'r') as f:
    long_description = f.read()
packages = find_packages(exclude=['tests', 'examples', 'examples.*'])
setup(
    name='forked-tl-toolkit',
    version='1.0',
    description=('Temperley-Lieb string algebras, forked projections and angles '
        'between intermediate subfactors'),
    license='LGPLv3',
    long_description=long_description,
    long_description_content_type='text/markdown',
    classifiers=[
            # Full list: https://pypi.python.org/pypi?%3Aaction=list_classifiers
            "License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)",
            'Programming Language :: Python',
            'Programming Language :: Python :: 3.7',
            'Topic :: Scientific/Engineering :: Mathematics',
    ],
    packages=packages,
    package_data={'src': ['cli.jsonc']},
    entry_points={
        'console_scripts': ['forkedtl = src.forkedtl:main']
    },
    install_requires=[
        'numpy>=1.17',
        'scipy',
        'networkx',
        'six'
    ],
    tests_require=['mock'],
    test_suite='tests'
)
