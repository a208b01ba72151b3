"""Fourier-multiplier solutions of the wave equation with weak dissipation

    v_tt - Laplace(v) + mu / (1 + t) v_t = 0

built from Bessel and Hankel functions, together with decay-rate predictors
and the numerical experiments that check them.
"""

__version__ = "0.1.0"
