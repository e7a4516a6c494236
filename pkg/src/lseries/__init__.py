"""High-precision Dirichlet series evaluation by repeated Abel summation.

Subpackage map:

- ``qseries``       exact truncated q-series arithmetic
- ``quadratic``     real quadratic fields, fundamental units
- ``coefficients``  Dirichlet coefficient generators for the built-in families
- ``model``         completed-L-function descriptions (gamma data, parity)
- ``gamma_phase``   log-gamma, phase function, completed values
- ``abel``          the repeated-summation evaluator and its error gauge
- ``zeros``         critical-line scans, rectangle counts, off-line zeros
- ``explicit``      prime-sum vs zero-sum comparison at the central point
- ``cli``           command-line entry points
"""

__version__ = "0.1.0"
