"""Special functions used by the closed-form capacity analysis.

Everything here is scalar, pure and dependency free (``math`` only):

* :func:`bessel_j0` -- Bessel function of the first kind, order zero.
* :func:`exp_e1` and :func:`exp_scaled_e1` -- exponential integral
  :math:`E_1(x)` and the overflow-safe product :math:`e^x E_1(x)`.
* :func:`phi` -- :math:`\\varphi(a, b) = \\int_0^\\infty \\ln(x + a) e^{-bx} dx`.
* :func:`theta` -- the triangular double integral
  :math:`\\Theta(a, m, n) = \\int_0^\\infty \\int_0^y \\ln(y + a)
  e^{-m(y - x)} e^{-nx} dx dy`.
"""

import math

EULER_GAMMA = 0.57721566490153286060651209008240243

# |m - n| <= THETA_BRANCH_RTOL * max(m, n) selects the coincident-rate branch.
THETA_BRANCH_RTOL = 1e-9

_SERIES_MAX = 8.0
_MILLER_MAX = 25.0
_EPS = 2.220446049250313e-16


class SpecialFunctionDomainError(ValueError):
    """Argument outside the domain of a special function."""


def _check_finite(name, x):
    if not math.isfinite(x):
        raise SpecialFunctionDomainError(f"{name}: argument must be finite, got {x!r}")


def _j0_series(x):
    # sum_k (-1)^k (x/2)^(2k) / (k!)^2
    q = -0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * k)
        total += term
        if abs(term) < 1e-17 * max(abs(total), 1e-300):
            return total


def _j0_miller(x):
    # Backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalised with
    # J_0 + 2 sum_{k>=1} J_{2k} = 1.
    start = 2 * ((int(x) + 40 + int(math.sqrt(60.0 * x))) // 2)
    j_next = 0.0
    j_cur = 1e-300
    norm = 0.0
    j0 = 0.0
    for k in range(start, 0, -1):
        j_prev = (2.0 * k / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if abs(j_cur) > 1e250:
            j_cur *= 1e-250
            j_next *= 1e-250
            norm *= 1e-250
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j_cur
        if k - 1 == 0:
            j0 = j_cur
    norm += j0
    return j0 / norm


def _j0_hankel(x):
    # Hankel asymptotic expansion, truncated at the smallest term.
    mu = 0.0
    p = 0.0
    q = 0.0
    term = 1.0
    k = 0
    while True:
        if k % 2 == 0:
            p += term if (k // 2) % 2 == 0 else -term
        else:
            q += term if (k // 2) % 2 == 0 else -term
        k += 1
        nxt = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(nxt) >= abs(term) or abs(nxt) < 1e-18:
            break
        term = nxt
    chi = x - 0.25 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


def bessel_j0(x):
    """Bessel function of the first kind of order zero.

    Power series for ``|x| <= 8``, Miller backward recurrence up to 25 and
    the Hankel asymptotic expansion beyond. Absolute error is below 1e-13
    on ``[0, 50]``.

    Raises
    ------
    SpecialFunctionDomainError
        If `x` is not finite.
    """
    x = float(x)
    _check_finite("bessel_j0", x)
    ax = abs(x)
    if ax <= _SERIES_MAX:
        return _j0_series(ax)
    if ax <= _MILLER_MAX:
        return _j0_miller(ax)
    return _j0_hankel(ax)


def _e1_series(x):
    # E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    total = 0.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= -x / k
        contrib = term / k
        total += contrib
        if abs(contrib) < 1e-17 * abs(total):
            break
    return -EULER_GAMMA - math.log(x) - total


def _scaled_e1_cf(x):
    # Modified Lentz evaluation of e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))).
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    i = 0
    while True:
        i += 1
        an = -float(i * i)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS or i > 10000:
            return h


def exp_e1(x):
    """Exponential integral ``E1(x) = int_x^inf exp(-t)/t dt`` for ``x > 0``.

    Underflows gracefully to 0.0 for very large `x`; use
    :func:`exp_scaled_e1` when the product with ``exp(x)`` is wanted.
    """
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise SpecialFunctionDomainError(f"exp_e1: requires finite x > 0, got {x!r}")
    if x <= 1.0:
        return _e1_series(x)
    return _scaled_e1_cf(x) * math.exp(-x)


def exp_scaled_e1(x):
    """Return ``exp(x) * E1(x)`` without overflow."""
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise SpecialFunctionDomainError(f"exp_scaled_e1: requires finite x > 0, got {x!r}")
    if x <= 1.0:
        return math.exp(x) * _e1_series(x)
    return _scaled_e1_cf(x)


def phi(a, b):
    """``int_0^inf ln(x + a) exp(-b x) dx = (ln a + e^{ab} E1(ab)) / b``."""
    a = float(a)
    b = float(b)
    if not (a > 0.0 and b > 0.0) or not (math.isfinite(a) and math.isfinite(b)):
        raise SpecialFunctionDomainError(f"phi: requires a > 0 and b > 0, got a={a!r}, b={b!r}")
    return (math.log(a) + exp_scaled_e1(a * b)) / b


def theta(a, m, n):
    """Closed form of the triangular double integral with log kernel.

    ``Theta(a, m, n) = int_0^inf int_0^y ln(y + a) exp(-m (y - x)) exp(-n x) dx dy``

    Parameters
    ----------
    a, m, n : float
        Strictly positive shift and decay rates.

    Returns
    -------
    float
        ``(phi(a, n) - phi(a, m)) / (m - n)`` for distinct rates, otherwise
        the coincident-rate limit ``(1 - a m e^{am} E1(am) + m phi(a, m)) / m^2``.
    """
    a = float(a)
    m = float(m)
    n = float(n)
    if not (a > 0.0 and m > 0.0 and n > 0.0):
        raise SpecialFunctionDomainError(
            f"theta: requires a, m, n > 0, got a={a!r}, m={m!r}, n={n!r}"
        )
    if abs(m - n) <= THETA_BRANCH_RTOL * max(m, n):
        am = a * m
        return (1.0 - am * exp_scaled_e1(am) + m * phi(a, m)) / (m * m)
    return (phi(a, n) - phi(a, m)) / (m - n)
