""" This file contains defines parameters for hmmfdr that we use to fill
settings in setup.py and the hmmfdr top-level docstring.
In setup.py in particular, we exec this file, so it cannot import hmmfdr
"""

# hmmfdr version information.  An empty _version_extra corresponds to a
# full release.  '.dev' as a _version_extra string means this is a development
# version
_version_major = 0
_version_minor = 1
_version_micro = 0
_version_extra = '.dev'

# Format expected by setup.py: string of form "X.Y.Z"
__version__ = "%s.%s.%s%s" % (_version_major,
                              _version_minor,
                              _version_micro,
                              _version_extra)

CLASSIFIERS = ["Development Status :: 3 - Alpha",
               "Environment :: Console",
               "Intended Audience :: Science/Research",
               "License :: OSI Approved :: BSD License",
               "Operating System :: OS Independent",
               "Programming Language :: Python",
               "Topic :: Scientific/Engineering"]

description  = 'Full-likelihood multiple testing in hidden Markov models'

# Note: this long_description is a copy/paste from the top-level
# README.md, so please remember to edit it only in one place and sync it
# correctly.
long_description = \
"""
======
hmmfdr
======

Likelihood ratios, weak-signal expansions and contraction diagnostics
for multiple testing when the hypotheses are the hidden states of a
Markov chain, together with the oracle FDR procedure that consumes the
resulting q-values.
"""

# versions
NUMPY_MIN_VERSION = '1.17'
SCIPY_MIN_VERSION = '1.4'
MPMATH_MIN_VERSION = "0.18"

NAME                = 'hmmfdr'
MAINTAINER          = "hmmfdr developers"
MAINTAINER_EMAIL    = ""
DESCRIPTION         = description
LONG_DESCRIPTION    = long_description
URL                 = ""
DOWNLOAD_URL        = ""
LICENSE             = "BSD license"
CLASSIFIERS         = CLASSIFIERS
AUTHOR              = "hmmfdr developers"
AUTHOR_EMAIL        = ""
PLATFORMS           = "OS Independent"
MAJOR               = _version_major
MINOR               = _version_minor
MICRO               = _version_micro
ISRELEASE           = _version_extra == ''
VERSION             = __version__
STATUS              = 'alpha'
PROVIDES            = ["hmmfdr"]
REQUIRES            = ["numpy (>=%s)" % NUMPY_MIN_VERSION,
                       "scipy (>=%s)" % SCIPY_MIN_VERSION,
                       "mpmath (>=%s)" % MPMATH_MIN_VERSION]
