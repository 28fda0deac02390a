"""Gauss hypergeometric series and complete elliptic integrals.

Conventions follow the parameter (not modulus) form of the elliptic
integrals: K(x) = int_0^{pi/2} (1 - x sin^2 t)^{-1/2} dt, and likewise
for E.  hyp2f1 accepts real parameters or a complex-conjugate pair
(A, B); the returned value is real in both cases.
"""

import cmath
import math

from .errors import DegenerateC, DomainError, NoConvergence

_SERIES_CAP = 100_000
_SERIES_EPS = 1e-16

# Lanczos approximation, g = 7, n = 9 (Godfrey coefficients).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _gamma(z):
    """Gamma function for complex argument (Lanczos, reflection for Re z < 1/2)."""
    if isinstance(z, (int, float)) and z == int(z) and z <= 0:
        raise ZeroDivisionError("gamma pole at non-positive integer")
    z = complex(z)
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * _gamma(1.0 - z))
    z -= 1.0
    x = _LANCZOS_C[0]
    for i in range(1, 9):
        x += _LANCZOS_C[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


def _rgamma(z):
    """Reciprocal gamma; zero at the poles of gamma."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        return 0.0
    return 1.0 / _gamma(z)


def _is_nonpositive_int(c, tol=1e-12):
    return c <= 0.5 and abs(c - round(c)) < tol


def _series_2f1(a, b, c, z):
    """Direct Gauss series, summed in complex arithmetic.

    Truncates when the term magnitude stays below _SERIES_EPS times the
    partial sum for 3 consecutive terms.
    """
    total = complex(1.0)
    term = complex(1.0)
    small = 0
    for n in range(_SERIES_CAP):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if abs(term) < _SERIES_EPS * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise NoConvergence(
        f"2F1 series did not converge at z={z!r} within {_SERIES_CAP} terms"
    )


def hyp2f1(a, b, c, z):
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z in [0, 1).

    a, b may be a complex-conjugate pair (c is always real).  Direct
    series for z <= 0.5; the z -> 1-z linear transformation is used for
    z > 0.5 when c-a-b is not an integer, otherwise the direct series
    is retained (it converges for all z < 1, just more slowly).
    """
    c = float(c)
    if _is_nonpositive_int(c):
        raise DegenerateC(f"C={c} is a non-positive integer")
    if not 0.0 <= z < 1.0:
        raise DomainError(f"z={z} outside [0, 1)")
    if z == 0.0:
        return 1.0

    a = complex(a)
    b = complex(b)
    if z <= 0.5:
        val = _series_2f1(a, b, c, z)
    else:
        s = c - (a + b).real  # c-a-b is real for conjugate (a, b)
        if abs(s - round(s)) > 1e-8 and abs((a + b).imag) < 1e-13:
            g_c = _gamma(c)
            coef1 = g_c * _gamma(s) * _rgamma(c - a) * _rgamma(c - b)
            coef2 = g_c * _gamma(-s) * _rgamma(a) * _rgamma(b)
            val = coef1 * _series_2f1(a, b, a + b - c + 1.0, 1.0 - z)
            val += (1.0 - z) ** s * coef2 * _series_2f1(
                c - a, c - b, s + 1.0, 1.0 - z
            )
        else:
            # Degenerate (integer c-a-b) transformation needs log terms;
            # fall back to the direct series.
            val = _series_2f1(a, b, c, z)

    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise NoConvergence(
            f"2F1 produced non-negligible imaginary part {val.imag} "
            f"for (a={a}, b={b}, c={c}, z={z})"
        )
    return val.real


def hyp2f1_deriv(a, b, c, z):
    """d/dz 2F1(a, b; c; z) via the contiguous identity."""
    c = float(c)
    if _is_nonpositive_int(c):
        raise DegenerateC(f"C={c} is a non-positive integer")
    ab_over_c = complex(a) * complex(b) / c
    if abs(ab_over_c.imag) > 1e-12 * max(1.0, abs(ab_over_c)):
        raise DomainError("a*b must be real (conjugate-pair invariant)")
    return ab_over_c.real * hyp2f1(
        complex(a) + 1.0, complex(b) + 1.0, c + 1.0, z
    )


def _agm_with_c(a0, b0, c0):
    """AGM iteration; returns (agm, sum of 2^(n-1) c_n^2 for n >= 0)."""
    a, b, cn = a0, b0, c0
    csum = 0.5 * cn * cn
    pow2 = 0.5
    for _ in range(60):
        a, b, cn = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        pow2 *= 2.0
        csum += pow2 * cn * cn
        if abs(cn) < 1e-18 * a:
            break
    return a, csum


def ellip_k(x):
    """Complete elliptic integral of the first kind, parameter convention."""
    if not 0.0 <= x < 1.0:
        raise DomainError(f"K parameter {x} outside [0, 1)")
    agm, _ = _agm_with_c(1.0, math.sqrt(1.0 - x), math.sqrt(x))
    return 0.5 * math.pi / agm


def ellip_e(x):
    """Complete elliptic integral of the second kind, parameter convention."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"E parameter {x} outside [0, 1]")
    if x == 1.0:
        return 1.0
    agm, csum = _agm_with_c(1.0, math.sqrt(1.0 - x), math.sqrt(x))
    return 0.5 * math.pi / agm * (1.0 - csum)
