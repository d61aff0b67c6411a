"""Stable invariants from semistable ones on a fixed slope ray.

On the ray through a primitive character ``gamma`` the twisted product is
``x^k o x^l = T^{(g-1) n_gamma^2 k l} x^{k+l}`` with ``T`` the Lefschetz
unit of the coefficient ring (``v^2``, ``uv`` or ``(q^j)_j``). The generating
series ``r = 1 + sum_k r_{k gamma} x^k`` and the stable series ``A`` satisfy

    r o Exp(A / (1 - T)) = 1,

so ``A = (1 - T) * Log(r^{o -1})``: twisted inverse, then the ordinary
plethystic logarithm.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import RATFUNC, RATFUNC2, RatFunc, RatFunc2, Series
from .hnzagier import CharPair, hodge_r, poincare_r
from .lambda_ring import adams, moebius, plethystic_exp, plethystic_log

__all__ = [
    "SlopeRay",
    "TwistedSeries",
    "twisted_mul",
    "twisted_inv",
    "twisted_exp",
    "twisted_log",
    "twisted_product_log",
    "build_r_series",
    "extract_stable",
    "extract_stable_by_recursion",
    "stable_series",
    "stable_poincare",
    "stable_hodge",
    "semistable_poincare",
    "virtual_poincare",
    "virtual_hodge",
    "as_ray",
    "HodgeResult",
    "NonPolynomialError",
]


class NonPolynomialError(ArithmeticError):
    """An extracted virtual Poincare function is not a polynomial."""


@dataclass(frozen=True)
class SlopeRay:
    """The characters ``k * gamma`` (k >= 1) for a primitive ``gamma``, at genus g."""

    gamma: CharPair
    g: int

    def __post_init__(self):
        if not isinstance(self.gamma, CharPair):
            object.__setattr__(self, "gamma", CharPair(*self.gamma))
        if self.gamma.primitive()[1] != 1:
            raise ValueError(f"{self.gamma} is not primitive")
        if self.g < 0:
            raise ValueError("genus must be >= 0")

    @classmethod
    def through(cls, alpha, g):
        """``(ray, k)`` with ``alpha = k * ray.gamma``."""
        alpha = alpha if isinstance(alpha, CharPair) else CharPair(*alpha)
        gamma, k = alpha.primitive()
        return cls(gamma, g), k

    @property
    def twist_exponent(self):
        """``-<gamma, gamma> = (g - 1) n_gamma^2``."""
        return (self.g - 1) * self.gamma.n ** 2

    def char(self, k):
        return self.gamma * k


class TwistedSeries(Series):
    """A ray series with product ``x^k o x^l = unit^(exponent*k*l) x^(k+l)``."""

    __slots__ = ("unit", "exponent")

    def __init__(self, coeffs, ring, unit, exponent, order=None):
        super().__init__(coeffs, ring, order)
        self.unit = unit
        self.exponent = exponent

    def _like(self, coeffs):
        return TwistedSeries(coeffs, self.ring, self.unit, self.exponent)

    def plain(self):
        return Series(self.coeffs, self.ring)

    def __mul__(self, other):
        if isinstance(other, Series):
            return twisted_mul(self, other)
        return self.scale(other)

    def __repr__(self):
        return f"TwistedSeries({list(self.coeffs)!r}, exponent={self.exponent})"


def _twist(a, k):
    if not k:
        return None
    return a.unit ** k


def twisted_mul(a, b):
    K = min(a.order, b.order)
    ring = a.ring
    out = []
    for k in range(K + 1):
        acc = ring.zero
        for i in range(k + 1):
            x, y = a.coeffs[i], b.coeffs[k - i]
            if ring.is_zero(x) or ring.is_zero(y):
                continue
            term = x * y
            tw = _twist(a, a.exponent * i * (k - i))
            acc = acc + (term * tw if tw is not None else term)
        out.append(acc)
    return a._like(out)


def twisted_inv(a):
    """Order-by-order inverse for the twisted product; needs ``c_0 = 1``."""
    ring = a.ring
    if not ring.is_zero(a.coeffs[0] - ring.one):
        raise ValueError("twisted inverse needs constant term 1")
    out = [ring.one]
    for k in range(1, a.order + 1):
        acc = ring.zero
        for i in range(1, k + 1):
            x = a.coeffs[i]
            if ring.is_zero(x):
                continue
            term = x * out[k - i]
            tw = _twist(a, a.exponent * i * (k - i))
            acc = acc + (term * tw if tw is not None else term)
        out.append(-acc)
    return a._like(out)


def twisted_exp(f):
    """Plethystic Exp on the ray; exp and the Adams dilations are the plain ones."""
    return f._like(plethystic_exp(f.plain()).coeffs)


def twisted_log(f):
    """Inverse of :func:`twisted_exp`."""
    return f._like(plethystic_log(f.plain()).coeffs)


def twisted_product_log(f):
    """Plethystic Log whose formal logarithm uses the twisted product.

    Kept as a diagnostic: it is *not* the logarithm that inverts the relation
    with semistable counts (its output is not integral from rank 2 on when
    ``g >= 2``).
    """
    ring = f.ring
    h = f._like([ring.zero] + list(f.coeffs[1:]))
    power = f._like([ring.one] + [ring.zero] * f.order)
    log = f._like([ring.zero] * (f.order + 1))
    for m in range(1, f.order + 1):
        power = twisted_mul(power, h)
        log = log + power.scale(Fraction((-1) ** (m + 1), m))
    acc = Series([ring.zero] * (f.order + 1), ring)
    for k in range(1, f.order + 1):
        mu = moebius(k)
        if mu:
            acc = acc + adams(log.plain(), k).scale(Fraction(mu, k))
    return f._like(acc.coeffs)


def _flavor(flavor):
    if flavor == "poincare":
        return RATFUNC, RatFunc.v(2), poincare_r
    if flavor == "hodge":
        return RATFUNC2, RatFunc2.monomial(1, 1), hodge_r
    raise ValueError(f"unknown flavor {flavor!r}")


def as_ray(ray, g=None):
    """Accept a :class:`SlopeRay` or a primitive character plus genus."""
    if isinstance(ray, SlopeRay):
        if g is not None and g != ray.g:
            raise ValueError(f"genus {g} conflicts with the ray's genus {ray.g}")
        return ray
    if g is None:
        raise ValueError("a bare character needs a genus")
    return SlopeRay(ray if isinstance(ray, CharPair) else CharPair(*ray), g)


def build_r_series(ray, K, flavor="poincare", g=None, mapper=map):
    """``1 + sum_{k<=K} R_{k gamma} x^k`` as a twisted series.

    ``mapper`` evaluates the independent coefficients; pass an executor's
    ``map`` to spread them over processes.
    """
    ray = as_ray(ray, g)
    if K < 1:
        raise ValueError("truncation order must be >= 1")
    ring, unit, coeff = _flavor(flavor)
    chars = [ray.char(k) for k in range(1, K + 1)]
    coeffs = [ring.one] + list(mapper(coeff, chars, [ray.g] * K))
    return TwistedSeries(coeffs, ring, unit, ray.twist_exponent)


def extract_stable(r):
    """``A = (1 - T) Log(r^{o -1})``, returned as a plain series with ``A_0 = 0``."""
    log = twisted_log(twisted_inv(r))
    factor = r.ring.one - r.unit
    return Series([c * factor for c in log.coeffs], r.ring)


def extract_stable_by_recursion(r):
    """Solve ``r o Exp(B) = 1`` for ``B`` order by order and return ``(1 - T) B``.

    Shares no code with the Log route: at each order the known lower part of
    ``Exp(B)`` is expanded and the new coefficient read off.
    """
    ring = r.ring
    K = r.order
    B = [ring.zero] * (K + 1)
    E = [ring.one] + [ring.zero] * K
    for k in range(1, K + 1):
        # coefficient k of Exp(B) forced by the relation
        target = ring.zero
        for i in range(1, k + 1):
            x = r.coeffs[i]
            if ring.is_zero(x):
                continue
            term = x * E[k - i]
            tw = _twist(r, r.exponent * i * (k - i))
            target = target - (term * tw if tw is not None else term)
        known = plethystic_exp(Series(B[:k] + [ring.zero], ring)).coeffs[k]
        B[k] = target - known
        E[k] = target
    factor = ring.one - r.unit
    return Series([c * factor for c in B], ring)


@lru_cache(maxsize=None)
def _stable_series(ray, K, flavor):
    return extract_stable(build_r_series(ray, K, flavor))


def stable_series(ray, K, flavor="poincare", g=None, mapper=None):
    """``A = sum_k A_k x^k`` up to order K (unreduced; see :func:`stable_poincare`)."""
    ray = as_ray(ray, g)
    if mapper is None:
        return _stable_series(ray, K, flavor)
    return extract_stable(build_r_series(ray, K, flavor, mapper=mapper))


def stable_poincare(ray, k, g=None, mapper=None):
    """Virtual Poincare polynomial of the moduli space of stable bundles of character ``k*gamma``."""
    ray = as_ray(ray, g)
    if k < 1:
        raise ValueError("k must be >= 1")
    value = stable_series(ray, k, "poincare", mapper=mapper).coeffs[k]
    poly = value.as_poly()
    if poly is None:
        raise NonPolynomialError(f"P(M({ray.char(k).n},{ray.char(k).d})) at g={ray.g} is {value}")
    return poly


def virtual_poincare(n, d, g):
    ray, k = SlopeRay.through((n, d), g)
    return stable_poincare(ray, k)


def virtual_hodge(n, d, g):
    ray, k = SlopeRay.through((n, d), g)
    return stable_hodge(ray, k)


@dataclass(frozen=True)
class HodgeResult:
    value: object  # Poly2 when polynomial, RatFunc2 otherwise
    polynomial: bool
    conjectural: bool = True


def stable_hodge(ray, k, g=None, mapper=None):
    """Conjectural virtual Hodge polynomial; non-polynomial output only warns."""
    ray = as_ray(ray, g)
    if k < 1:
        raise ValueError("k must be >= 1")
    value = stable_series(ray, k, "hodge", mapper=mapper).coeffs[k]
    poly = value.as_poly()
    if poly is None:
        warnings.warn(f"Hodge extraction for {ray.char(k)} at g={ray.g} is not polynomial",
                      RuntimeWarning, stacklevel=2)
        return HodgeResult(value, False)
    return HodgeResult(poly, True)


def semistable_poincare(ray, k, g=None, mapper=None):
    """``[x^k] Exp(sum_j P(M(j gamma)) x^j)`` (plain, untwisted Exp)."""
    ray = as_ray(ray, g)
    if k < 1:
        raise ValueError("k must be >= 1")
    A = stable_series(ray, k, "poincare", mapper=mapper)
    for j in range(1, k + 1):
        if A.coeffs[j].as_poly() is None:
            raise NonPolynomialError(f"P(M({ray.char(j).n},{ray.char(j).d})) at g={ray.g} is {A.coeffs[j]}")
    stable = [RatFunc(0)] + list(A.coeffs[1:])
    return plethystic_exp(Series(stable, RATFUNC)).coeffs[k]
