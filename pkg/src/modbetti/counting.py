"""Exact counts of absolutely stable bundles on a concrete curve over F_q.

The curve enters only through the numerator ``P(t)`` of its zeta function.
Everything is computed over all extensions ``F_{q^j}`` at once by using
vectors ``(s_1, ..., s_T)`` as coefficients; the Adams operation on such a
vector is the index dilation ``s_j -> s_{mj}``.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .algebra import Ring
from .extract import SlopeRay, TwistedSeries, as_ray, extract_stable
from .hnzagier import CharPair, zagier_sum
from .lambda_ring import moebius

__all__ = [
    "ZetaData",
    "ZetaError",
    "CapacityError",
    "IntegralityError",
    "CSeqVec",
    "cseq_ring",
    "power_sums",
    "point_counts",
    "m_value",
    "r_value",
    "stable_counts",
    "stable_count",
    "s_counts",
    "load_zeta",
]


class ZetaError(ValueError):
    """Zeta data violating the functional equation or basic shape rules."""


class CapacityError(ValueError):
    """Too few extensions were requested for the Adams dilations needed."""


class IntegralityError(ArithmeticError):
    """A count came out non-integral or negative."""


def _is_prime_power(q):
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


@dataclass(frozen=True)
class ZetaData:
    """``Z_X(t) = P(t) / ((1 - t)(1 - q t))`` with ``P = sum a_i t^i``, ``a_0 = 1``."""

    q: int
    g: int
    numerator: tuple

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(int(a) for a in self.numerator))

    def validate(self):
        a, q, g = self.numerator, self.q, self.g
        if not _is_prime_power(q):
            raise ZetaError(f"q={q} is not a prime power")
        if g < 0:
            raise ZetaError("genus must be >= 0")
        if len(a) != 2 * g + 1:
            raise ZetaError(f"numerator must have {2 * g + 1} coefficients, got {len(a)}")
        if a[0] != 1:
            raise ZetaError("numerator must have constant term 1")
        for i in range(g + 1):
            if a[2 * g - i] != q ** (g - i) * a[i]:
                raise ZetaError(f"functional equation fails at i={i}: "
                                f"a_{2 * g - i}={a[2 * g - i]} != q^{g - i}*a_{i}={q ** (g - i) * a[i]}")
        if sum(a) <= 0:
            raise ZetaError("P(1) must be positive")
        return self

    @classmethod
    def from_point_counts(cls, q, g, counts):
        """Numerator from ``N_1 .. N_g`` via Newton's identities and the functional equation."""
        counts = list(counts)
        if len(counts) < g:
            raise ZetaError(f"need {g} point counts, got {len(counts)}")
        p = [None] + [q ** j + 1 - counts[j - 1] for j in range(1, g + 1)]
        a = _coefficients_from_power_sums(p, g)
        for i in range(g + 1, 2 * g + 1):
            a.append(q ** (i - g) * a[2 * g - i])
        return cls(q, g, tuple(a)).validate()

    def extension(self, j):
        """Zeta data of the same curve over ``F_{q^j}``."""
        if j == 1:
            return self
        p = power_sums(self, 2 * self.g * j)
        dilated = [None] + [p[j * k] for k in range(1, 2 * self.g + 1)]
        return ZetaData(self.q ** j, self.g, tuple(_coefficients_from_power_sums(dilated, 2 * self.g)))

    def P(self, t):
        return sum((Fraction(a) * t ** i for i, a in enumerate(self.numerator)), Fraction(0))

    def Z(self, t):
        return self.P(t) / ((1 - t) * (1 - self.q * t))


def _coefficients_from_power_sums(p, n):
    """``a_0..a_n`` of ``prod (1 - w_i t)`` from power sums ``p_1..p_n``."""
    a = [Fraction(1)]
    for k in range(1, n + 1):
        acc = sum(p[i] * a[k - i] for i in range(1, k + 1))
        a.append(-Fraction(acc, k))
    if any(x.denominator != 1 for x in a):
        raise ZetaError("power sums do not come from an integral numerator")
    return [int(x) for x in a]


@lru_cache(maxsize=None)
def _power_sums(numerator, n):
    a = list(numerator)
    p = [None]
    for j in range(1, n + 1):
        aj = a[j] if j < len(a) else 0
        acc = -j * aj
        for i in range(1, j):
            if j - i < len(a):
                acc -= p[i] * a[j - i]
        p.append(acc)
    return tuple(p)


def power_sums(z, n):
    """``[None, p_1, ..., p_n]`` with ``p_j = sum_i w_i^j`` over the Frobenius eigenvalues."""
    return _power_sums(z.numerator, n)


def point_counts(z, T):
    """``#X(F_{q^j})`` for ``j = 1..T``."""
    p = power_sums(z, T)
    return CSeqVec(z.q, [z.q ** j + 1 - p[j] for j in range(1, T + 1)])


def load_zeta(source):
    """Read zeta data from a JSON file (or an already parsed dict)."""
    if isinstance(source, dict):
        data = source
    else:
        data = json.loads(Path(source).read_text())
    try:
        q, g = int(data["q"]), int(data["genus"])
    except KeyError as exc:
        raise ZetaError(f"missing field {exc.args[0]!r}") from None
    if "zeta_numerator" in data:
        return ZetaData(q, g, tuple(data["zeta_numerator"])).validate()
    if "point_counts" in data:
        return ZetaData.from_point_counts(q, g, data["point_counts"])
    raise ZetaError("need either 'zeta_numerator' or 'point_counts'")


# ---------------------------------------------------------------------------
# extension-indexed vectors
# ---------------------------------------------------------------------------

class CSeqVec:
    """``(s_1, ..., s_T)``, entry ``j`` read over ``F_{q^j}``; ring operations entrywise."""

    __slots__ = ("q", "s")

    def __init__(self, q, entries):
        self.q = q
        self.s = tuple(Fraction(x) for x in entries)

    @classmethod
    def lefschetz(cls, q, T):
        return cls(q, [q ** j for j in range(1, T + 1)])

    def __len__(self):
        return len(self.s)

    def __getitem__(self, j):
        """1-based access: ``self[j]`` is the value over ``F_{q^j}``."""
        if j < 1:
            raise IndexError("extensions are numbered from 1")
        return self.s[j - 1]

    def entries(self):
        return list(self.s)

    def _zip(self, other, op):
        if isinstance(other, CSeqVec):
            return CSeqVec._fast(self.q, [op(x, y) for x, y in zip(self.s, other.s)])
        return CSeqVec._fast(self.q, [op(x, other) for x in self.s])

    @classmethod
    def _fast(cls, q, entries):
        v = cls.__new__(cls)
        v.q = q
        v.s = tuple(entries)
        return v

    def __add__(self, other):
        return self._zip(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._zip(other, lambda x, y: y - x)

    def __mul__(self, other):
        return self._zip(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __neg__(self):
        return CSeqVec._fast(self.q, [-x for x in self.s])

    def __pow__(self, n):
        return CSeqVec._fast(self.q, [x ** n for x in self.s])

    def inverse(self):
        return CSeqVec._fast(self.q, [1 / x for x in self.s])

    def is_zero(self):
        return not any(self.s)

    def adams(self, m):
        """``psi_m(s)_j = s_{mj}``; the vector shortens to ``T // m`` entries."""
        return CSeqVec._fast(self.q, self.s[m - 1::m])

    def __eq__(self, other):
        if isinstance(other, CSeqVec):
            n = min(len(self), len(other))
            return self.s[:n] == other.s[:n]
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"CSeqVec(q={self.q}, {[str(x) for x in self.s]})"


def cseq_ring(q, T):
    return Ring(f"S(F_{q})[{T}]", CSeqVec(q, [0] * T), CSeqVec(q, [1] * T),
                lambda c, m: c.adams(m))


# ---------------------------------------------------------------------------
# semistable and stable counts
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _m_value(z, n, j):
    ext = z.extension(j)
    Q = Fraction(ext.q)
    val = ext.P(Fraction(1)) / (Q - 1) * Q ** ((n * n - 1) * (z.g - 1))
    for k in range(2, n + 1):
        val *= ext.Z(Q ** -k)
    return val


def m_value(n, z, j=1):
    """``m_n(F_{q^j})``: sum of ``1/#Aut`` over all bundles of rank n and fixed degree."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    return _m_value(z, n, j)


@lru_cache(maxsize=None)
def _r_value(z, n, dmod, j):
    Q = Fraction(z.q ** j)
    return zagier_sum(
        n, dmod, z.g,
        t_pow=lambda k: Q ** k,
        inv_one_minus_t=lambda a: 1 / (1 - Q ** a),
        part=lambda k: _m_value(z, k, j),
        zero=Fraction(0))


def r_value(alpha, z, j=1):
    """``r_alpha(F_{q^j})``: sum of ``1/#Aut`` over semistable bundles of character alpha."""
    alpha = alpha if isinstance(alpha, CharPair) else CharPair(*alpha)
    return _r_value(z, alpha.n, alpha.d % alpha.n, j)


def _r_series(ray, z, K, T, mapper=map):
    ring = cseq_ring(z.q, T)
    jobs = [(ray.char(k), j) for k in range(1, K + 1) for j in range(1, T + 1)]
    values = list(mapper(r_value, [a for a, _ in jobs], [z] * len(jobs), [j for _, j in jobs]))
    coeffs = [ring.one] + [CSeqVec._fast(z.q, values[(k - 1) * T:k * T]) for k in range(1, K + 1)]
    return TwistedSeries(coeffs, ring, CSeqVec.lefschetz(z.q, T), ray.twist_exponent)


def stable_counts(ray, z, K, T, mapper=map):
    """``{(k, j): a_{k gamma}(F_{q^j})}`` for ``k <= K`` and ``j <= T // K``.

    The coefficient at ``x^k`` needs entries up to index ``k j``, hence the
    capacity rule ``T >= K * j``.
    """
    ray = as_ray(ray, z.g)
    if K < 1:
        raise ValueError("K must be >= 1")
    if T < K:
        raise CapacityError(f"T={T} extensions cannot serve order K={K}; need T >= K")
    A = extract_stable(_r_series(ray, z, K, T, mapper))
    jmax = T // K
    table = {}
    for k in range(1, K + 1):
        vec = A.coeffs[k]
        if len(vec) < jmax:
            raise CapacityError(f"coefficient {k} only known for {len(vec)} extensions")
        for j in range(1, jmax + 1):
            x = vec[j]
            if x.denominator != 1 or x < 0:
                raise IntegralityError(f"a_{ray.char(k)}(F_{z.q}^{j}) = {x}")
            table[(k, j)] = int(x)
    return table


def stable_count(alpha, z, j=1):
    """``a_alpha(F_{q^j})`` for a single character."""
    ray, k = SlopeRay.through(alpha, z.g)
    return stable_counts(ray, z, k, k * j)[(k, j)]


def s_counts(alpha, r, z):
    """Number of stable bundles of character alpha over F_q with endomorphism field F_{q^r}.

    Moebius inversion of ``a_beta(F_{q^n}) = sum_{r | n} r s_{r beta, r}(F_q)``
    with ``beta = alpha / r``; zero when ``alpha / r`` is not integral.
    """
    alpha = alpha if isinstance(alpha, CharPair) else CharPair(*alpha)
    if r < 1:
        raise ValueError("r must be >= 1")
    if alpha.n % r or alpha.d % r:
        return 0
    beta = CharPair(alpha.n // r, alpha.d // r)
    ray, k = SlopeRay.through(beta, z.g)
    table = stable_counts(ray, z, k, k * r)
    total = sum(moebius(r // e) * table[(k, e)] for e in range(1, r + 1) if r % e == 0)
    if total % r or total < 0:
        raise IntegralityError(f"{r} * s_{alpha},{r} = {total} is not a nonnegative multiple of {r}")
    return total // r

