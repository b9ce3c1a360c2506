"""Hodgewalk package."""
from setuptools import find_packages, setup


def read(filename):
    """Read the contents of `filename`."""
    with open(filename) as file:
        return file.read()


setup(
    name='hodgewalk',
    version='0.1.0',
    license='Apache Software License',
    keywords=('simplicial-complex '
              'high-dimensional-expander '
              'random-walk '
              'spectral-gap '
              'markov-chain-monte-carlo '
              'matroid '
              'independent-set '),
    setup_requires=[
        'pytest-runner',
    ],
    tests_require=[
        'hypothesis[numpy]',
        'pytest',
        'pytest-cov',
    ],
    install_requires=[
        'netCDF4',
        'networkx',
        'numpy',
        'scipy',
    ],
    extras_require={
        'dev': [
            'hypothesis[numpy]',
            'isort',
            'pycodestyle',
            'pyflakes',
            'prospector[with_pyroma]',
            'pytest',
            'pytest-cov',
            'sphinx',
            'sphinx_rtd_theme',
            'yamllint',
            'yapf',
        ],
    },
    entry_points={
        'console_scripts': [
            'hodgewalk=hodgewalk.cli:main',
        ],
    },
    description=('Spectral analysis and down-up walk sampling on weighted '
                 'simplicial complexes.'),
    long_description=read('README.rst'),
    packages=find_packages(exclude=['test', 'test.*']),
    include_package_data=True,
    zip_safe=False,
    platforms='any',
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Libraries :: Python Modules',
    ])
