"""Adams operations and plethystic Exp / Log / Pow on truncated series.

All routines take and return :class:`~modbetti.algebra.Series`; the Adams
operation on a coefficient comes from the series' ring descriptor and is
combined with the degree dilation ``x^k -> x^(mk)``.
"""

from fractions import Fraction
from functools import lru_cache

from .algebra import RatFunc, Series, series_mul

__all__ = [
    "moebius",
    "adams",
    "formal_exp",
    "formal_log",
    "formal_pow",
    "plethystic_exp",
    "plethystic_log",
    "plethystic_pow",
    "plethystic_pow_product",
    "gk_sequence",
    "heine_series",
]


@lru_cache(maxsize=None)
def moebius(n):
    if n < 1:
        raise ValueError("moebius is defined for positive integers")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def adams(f, m):
    """``psi_m``: coefficient Adams operation plus ``x^k -> x^(mk)``."""
    if m < 1:
        raise ValueError("Adams operations are indexed by positive integers")
    ring = f.ring
    out = [ring.zero] * (f.order + 1)
    for k in range(0, f.order // m + 1):
        out[k * m] = ring.adams(f.coeffs[k], m)
    return f._like(out)


def _require_constant(f, value, what):
    c0 = f.coeffs[0]
    ring = f.ring
    ok = ring.is_zero(c0 - value) if value is not None else ring.is_zero(c0)
    if not ok:
        raise ValueError(f"{what}: constant term must be {'0' if value is None else '1'}")


def formal_exp(f):
    """``exp(f)`` for ``f`` without constant term, via ``k E_k = sum i f_i E_(k-i)``."""
    _require_constant(f, None, "exp")
    ring = f.ring
    E = [ring.one]
    for k in range(1, f.order + 1):
        acc = ring.zero
        for i in range(1, k + 1):
            if not ring.is_zero(f.coeffs[i]):
                acc = acc + f.coeffs[i] * E[k - i] * i
        E.append(acc * Fraction(1, k))
    return f._like(E)


def formal_log(f):
    """``log(f)`` for ``f`` with constant term 1."""
    _require_constant(f, f.ring.one, "log")
    ring = f.ring
    L = [ring.zero]
    for k in range(1, f.order + 1):
        acc = ring.zero
        for i in range(1, k):
            if not ring.is_zero(L[i]) and not ring.is_zero(f.coeffs[k - i]):
                acc = acc + L[i] * f.coeffs[k - i] * i
        L.append(f.coeffs[k] - acc * Fraction(1, k))
    return f._like(L)


def formal_pow(f, g):
    """The ordinary power ``f^g = exp(g log f)`` with ``g`` a coefficient."""
    return formal_exp(formal_log(f).scale(g))


def plethystic_exp(f):
    """``Exp(f) = exp(sum_k psi_k(f) / k)``."""
    _require_constant(f, None, "Exp")
    ring = f.ring
    acc = f._like([ring.zero] * (f.order + 1))
    for k in range(1, f.order + 1):
        acc = acc + adams(f, k).scale(Fraction(1, k))
    return formal_exp(acc)


def plethystic_log(f):
    """``Log(f) = sum_k mu(k)/k psi_k(log f)``, inverse of :func:`plethystic_exp`."""
    _require_constant(f, f.ring.one, "Log")
    lg = formal_log(f)
    ring = f.ring
    acc = f._like([ring.zero] * (f.order + 1))
    for k in range(1, f.order + 1):
        mu = moebius(k)
        if mu:
            acc = acc + adams(lg, k).scale(Fraction(mu, k))
    return acc


def gk_sequence(g, m_max, ring):
    """``g_1 .. g_m_max`` with ``sum_{k | n} k g_k = psi_n(g)``."""
    out = []
    for n in range(1, m_max + 1):
        acc = ring.adams(g, n)
        for k in _divisors(n)[:-1]:
            acc = acc - out[k - 1] * k
        out.append(acc * Fraction(1, n))
    return out


def plethystic_pow(f, g):
    """``Pow(f, g) = Exp(g Log f)``."""
    _require_constant(f, f.ring.one, "Pow")
    return plethystic_exp(plethystic_log(f).scale(g))


def plethystic_pow_product(f, g):
    """``Pow(f, g)`` computed as ``prod_k psi_k(f)^(g_k)``.

    Independent of :func:`plethystic_pow`; the two agree by the power lemma.
    """
    _require_constant(f, f.ring.one, "Pow")
    ring = f.ring
    gks = gk_sequence(g, f.order, ring)
    result = f._like([ring.one] + [ring.zero] * f.order)
    for k in range(1, f.order + 1):
        if ring.is_zero(gks[k - 1]):
            continue
        result = series_mul(result, formal_pow(adams(f, k), gks[k - 1]))
    return result


def heine_series(order):
    """``sum_m x^m / prod_{i<=m} (1 - v^i)``, the expansion of ``Exp(x/(1-v))``."""
    from .algebra import RATFUNC

    coeffs = [RatFunc(1)]
    for m in range(1, order + 1):
        coeffs.append(RatFunc(1, {i: 1 for i in range(1, m + 1)}))
    return Series(coeffs, RATFUNC)
