#!/usr/bin/env python
''' Installation script for hmmfdr package '''

import os

from setuptools import setup

# Get version and release info, which is all stored in hmmfdr/info.py
ver_file = os.path.join('hmmfdr', 'info.py')
# Use exec so that setup.py does not import hmmfdr
exec(open(ver_file).read())

extra_setuptools_args = dict(
    install_requires=['numpy>=%s' % NUMPY_MIN_VERSION,
                      'scipy>=%s' % SCIPY_MIN_VERSION,
                      'mpmath>=%s' % MPMATH_MIN_VERSION],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['hmmfdr = hmmfdr.cli:main']},
    python_requires='>=3.6',
)


def main(**extra_args):
    setup(name=NAME,
          maintainer=MAINTAINER,
          maintainer_email=MAINTAINER_EMAIL,
          description=DESCRIPTION,
          long_description=LONG_DESCRIPTION,
          url=URL,
          download_url=DOWNLOAD_URL,
          license=LICENSE,
          classifiers=CLASSIFIERS,
          author=AUTHOR,
          author_email=AUTHOR_EMAIL,
          platforms=PLATFORMS,
          version=VERSION,
          provides=PROVIDES,
          packages     = ['hmmfdr',
                          'hmmfdr.chains',
                          'hmmfdr.chains.tests',
                          'hmmfdr.models',
                          'hmmfdr.models.tests',
                          'hmmfdr.likelihood',
                          'hmmfdr.likelihood.tests',
                          'hmmfdr.expansions',
                          'hmmfdr.expansions.tests',
                          'hmmfdr.fdr',
                          'hmmfdr.fdr.tests',
                          'hmmfdr.diagnostics',
                          'hmmfdr.diagnostics.tests',
                          'hmmfdr.utils',
                          'hmmfdr.utils.tests',
                          'hmmfdr.tests'
                          ],
          package_data = {'hmmfdr': ['configs/*.json']},
          **extra_args
         )

#simple way to test what setup will do
#python setup.py install --prefix=/tmp
if __name__ == "__main__":
    main(**extra_setuptools_args)
