"""Euler pairing, Zagier's kernels and the closed-form Poincare / Hodge
functions of semistable bundles, plus a solver for finite HN-type recursions.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd

from .algebra import Poly, Poly2, RatFunc, RatFunc2

__all__ = [
    "CharPair",
    "euler_pairing",
    "compositions",
    "psi_coeff",
    "phi_coeff",
    "poincare_mn",
    "poincare_r",
    "poincare_r_bruteforce",
    "hodge_pn",
    "hodge_r",
    "zagier_sum",
    "hn_forward",
    "solve_hn_finite",
    "HNEnumerationError",
]


@dataclass(frozen=True, order=True)
class CharPair:
    """Chern character ``(rank, degree)`` of a bundle on a curve."""

    n: int
    d: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"rank must be >= 1, got {self.n}")

    @property
    def slope(self):
        return Fraction(self.d, self.n)

    def pairing(self, other, g):
        return euler_pairing(self, other, g)

    def primitive(self):
        """``(gamma, k)`` with ``self = k * gamma`` and gamma coprime."""
        k = gcd(self.n, self.d)
        return CharPair(self.n // k, self.d // k), k

    def __mul__(self, k):
        return CharPair(self.n * k, self.d * k)

    __rmul__ = __mul__


def euler_pairing(a, b, g):
    """``<a, b> = n d' - d n' + (1 - g) n n'``."""
    return a.n * b.d - a.d * b.n + (1 - g) * a.n * b.n


@lru_cache(maxsize=None)
def compositions(n):
    """All compositions of ``n`` in lexicographic order."""
    if n < 1:
        raise ValueError("compositions are taken of positive integers")
    out = []

    def rec(rest, prefix):
        if not rest:
            out.append(tuple(prefix))
            return
        for first in range(1, rest + 1):
            prefix.append(first)
            rec(rest - first, prefix)
            prefix.pop()

    rec(n, [])
    return tuple(sorted(out))


def _frac(x):
    return x - floor(x)


def _kernel(nstar, d, plus):
    n = sum(nstar)
    exponent = Fraction(0)
    den = {}
    partial = 0
    for i in range(len(nstar) - 1):
        partial += nstar[i]
        x = Fraction(partial * d, n)
        f = _frac(x)
        if plus and f == 0:
            f = Fraction(1)
        w = nstar[i] + nstar[i + 1]
        exponent += w * f
        den[w] = den.get(w, 0) + 1
    if exponent.denominator != 1:
        raise ArithmeticError(f"non-integral kernel exponent {exponent} for {nstar}, d={d}")
    sign = -1 if plus and len(nstar) % 2 == 0 else 1
    return RatFunc(sign, den, int(exponent))


@lru_cache(maxsize=None)
def _psi_cached(nstar, dmod):
    return _kernel(nstar, dmod, plus=False)


def psi_coeff(nstar, d):
    """``Psi_{n*, d}(t)`` as a rational function in ``t``."""
    nstar = tuple(nstar)
    return _psi_cached(nstar, d % sum(nstar))


def phi_coeff(nstar, d):
    """``Phi_{n*, d}(t)``, with ``{x}_+`` equal to 1 on integers."""
    return _kernel(tuple(nstar), d, plus=True)


@lru_cache(maxsize=None)
def poincare_mn(n, g):
    """``(v^(2n) - 1) prod_i (1 - v^(2i-1))^(2g) / (1 - v^(2i))^2``."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    num = Poly([1])
    for i in range(1, n + 1):
        num = num.mul_one_minus(2 * i - 1, 2 * g)
    num = -num.mul_one_minus(2 * n)
    return RatFunc(num, {2 * i: 2 for i in range(1, n + 1)})


@lru_cache(maxsize=None)
def hodge_pn(n, g):
    """Two-variable analogue of :func:`poincare_mn`."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    num = Poly2({(0, 0): 1})
    for i in range(1, n + 1):
        num = num.mul_one_minus((i, i - 1), g).mul_one_minus((i - 1, i), g)
    num = -num.mul_one_minus((n, n))
    return RatFunc2(num, {(i, i): 2 for i in range(1, n + 1)})


def zagier_sum(n, d, g, *, t_pow, inv_one_minus_t, part, zero):
    """``sum_{n*} t^{(g-1) sum_{i<j} n_i n_j} Psi_{n*,d}(t) prod part(n_i)``.

    The sum over the ``2^(n-1)`` compositions is reorganised as a dynamic
    programme on (partial sum, last part): every factor of the summand only
    depends on two consecutive parts and the partial sum before them.

    ``t_pow(k)`` must return ``t^k`` for an integer ``k`` (possibly negative),
    ``inv_one_minus_t(a)`` the element ``1/(1 - t^a)``.

    Individual kernel factors can carry fractional powers of ``t``; the
    fractional part accumulated along a prefix is ``{N (N - last) d / n}``,
    so it is stripped into the state and restored exactly on transition.
    """
    if n < 1:
        raise ValueError("rank must be >= 1")

    def offset(N, last):
        return _frac(Fraction(N * (N - last) * d, n))

    states = {(k, k): part(k) for k in range(1, n + 1)}
    for N in range(1, n):
        for last in range(1, N + 1):
            val = states.get((N, last))
            if val is None:
                continue
            off = offset(N, last)
            step = _frac(Fraction(N * d, n))
            for nxt in range(1, n - N + 1):
                M = N + nxt
                x = (last + nxt) * step
                shift = off + x - offset(M, nxt)
                if shift.denominator != 1:
                    raise ArithmeticError("kernel exponents failed to clear denominators")
                k = int(shift) + (g - 1) * N * nxt
                term = val * inv_one_minus_t(last + nxt) * t_pow(k) * part(nxt)
                key = (M, nxt)
                states[key] = states[key] + term if key in states else term
    total = zero
    for last in range(1, n + 1):
        val = states.get((n, last))
        if val is not None:
            assert offset(n, last) == 0
            total = total + val
    return total


@lru_cache(maxsize=None)
def _poincare_r(n, dmod, g):
    return zagier_sum(
        n, dmod, g,
        t_pow=lambda k: RatFunc.v(2 * k),
        inv_one_minus_t=lambda a: RatFunc(1, {2 * a: 1}),
        part=lambda k: poincare_mn(k, g),
        zero=RatFunc(0))


def poincare_r(alpha, g):
    """Poincare function ``P(r_alpha, v)`` of semistable bundles of character alpha."""
    alpha = _as_char(alpha)
    return _poincare_r(alpha.n, alpha.d % alpha.n, g)


def poincare_r_bruteforce(alpha, g):
    """Literal sum over compositions; reference path for :func:`poincare_r`."""
    alpha = _as_char(alpha)
    total = RatFunc(0)
    for nstar in compositions(alpha.n):
        cross = sum(nstar[i] * nstar[j] for i in range(len(nstar)) for j in range(i + 1, len(nstar)))
        term = RatFunc.v(2 * (g - 1) * cross) * psi_coeff(nstar, alpha.d).adams(2)
        for part in nstar:
            term = term * poincare_mn(part, g)
        total = total + term
    return total


@lru_cache(maxsize=None)
def _hodge_r(n, dmod, g):
    return zagier_sum(
        n, dmod, g,
        t_pow=lambda k: RatFunc2.monomial(k, k),
        inv_one_minus_t=lambda a: RatFunc2(1, {(a, a): 1}),
        part=lambda k: hodge_pn(k, g),
        zero=RatFunc2(0))


def hodge_r(alpha, g):
    """``R_alpha(u, v)``: the Psi-sum with ``t = uv`` over :func:`hodge_pn`."""
    alpha = _as_char(alpha)
    return _hodge_r(alpha.n, alpha.d % alpha.n, g)


def _as_char(alpha):
    if isinstance(alpha, CharPair):
        return alpha
    return CharPair(*alpha)


# ---------------------------------------------------------------------------
# finite HN recursion
# ---------------------------------------------------------------------------

class HNEnumerationError(RuntimeError):
    """The decomposition set exceeded the enumeration cap."""


def _sequences(alpha, summands, cap):
    """All ordered sequences of semigroup elements summing to ``alpha``.

    ``summands(alpha)`` yields pairs ``(beta, rest)`` with ``beta + rest == alpha``;
    ``rest is None`` encodes ``beta == alpha``.
    """
    out = []

    def rec(a, prefix):
        for beta, rest in summands(a):
            prefix.append(beta)
            if rest is None:
                out.append(tuple(prefix))
                if len(out) > cap:
                    raise HNEnumerationError(f"more than {cap} decompositions of {alpha!r}")
            else:
                rec(rest, prefix)
            prefix.pop()

    rec(alpha, [])
    return out


def _product(values, seq, one):
    acc = one
    for x in seq:
        acc = acc * values[x]
    return acc


def hn_forward(a, alpha, *, summands, slope, one, cap=100_000):
    """``b_alpha = sum over strictly slope-increasing sequences of a_l1 ... a_lk``.

    Products keep left-to-right order, so ``a`` may take values in a
    noncommutative ring.
    """
    total = None
    for seq in _sequences(alpha, summands, cap):
        if all(slope(seq[i]) < slope(seq[i + 1]) for i in range(len(seq) - 1)):
            term = _product(a, seq, one)
            total = term if total is None else total + term
    return total


def solve_hn_finite(b, alpha, *, summands, slope, add, one, cap=100_000):
    """Inverse of :func:`hn_forward`: sum over stable sequences with sign ``(-1)^(k-1)``.

    A sequence is stable when every proper prefix sum has strictly smaller
    slope than the total. ``add(x, y)`` sums semigroup elements.
    """
    target = slope(alpha)
    total = None
    for seq in _sequences(alpha, summands, cap):
        prefix = None
        stable = True
        for x in seq[:-1]:
            prefix = x if prefix is None else add(prefix, x)
            if not slope(prefix) < target:
                stable = False
                break
        if not stable:
            continue
        term = _product(b, seq, one)
        if len(seq) % 2 == 0:
            term = -term
        total = term if total is None else total + term
    return total
