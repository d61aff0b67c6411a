"""Exact arithmetic: dense polynomials, factored-denominator rational functions
in ``v`` and in ``(u, v)``, and truncated power series over a pluggable
coefficient ring.

Every denominator that shows up in the moduli computations is a product of
binomials ``1 - v^i`` (or ``1 - u^a v^b``), so rational functions keep their
denominator as a multiset of such factors instead of a general polynomial.
Cancellation only ever needs an exact-divisibility test by one binomial,
which is linear time.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "Poly",
    "RatFunc",
    "Poly2",
    "RatFunc2",
    "Ring",
    "QQ",
    "RATFUNC",
    "RATFUNC2",
    "Series",
    "series_mul",
    "series_inv",
    "rf_normalize",
    "rf_arith",
    "rf_is_polynomial",
    "NotInvertibleError",
]


class NotInvertibleError(ArithmeticError):
    """Raised when an inverse does not exist in the representation at hand."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational scalar, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# integer polynomial kernels
# ---------------------------------------------------------------------------

_KRONECKER_MIN = 40


def _pack(coeffs, nbytes):
    return int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in coeffs), "little")


def _unpack(x, nbytes, n):
    raw = x.to_bytes(nbytes * n, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") for i in range(n)]


def _imul(a, b):
    """Product of two integer coefficient lists (no trailing zeros)."""
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if min(la, lb) < _KRONECKER_MIN:
        out = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    # Kronecker substitution on the nonnegative parts; no carries by choice of width.
    ap = [x if x > 0 else 0 for x in a]
    an = [-x if x < 0 else 0 for x in a]
    bp = [x if x > 0 else 0 for x in b]
    bn = [-x if x < 0 else 0 for x in b]
    ma = max(max(ap), max(an)).bit_length()
    mb = max(max(bp), max(bn)).bit_length()
    bits = ma + mb + min(la, lb).bit_length() + 2
    nbytes = (bits + 7) // 8
    n = la + lb - 1
    PA, NA, PB, NB = (_pack(c, nbytes) for c in (ap, an, bp, bn))
    pos = _unpack(PA * PB + NA * NB, nbytes, n)
    neg = _unpack(PA * NB + NA * PB, nbytes, n)
    return [x - y for x, y in zip(pos, neg)]


def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return c[:n] if n != len(c) else c


def _div_one_minus(c, i):
    """Exact quotient of ``c`` by ``1 - v^i`` or None."""
    n = len(c)
    if n <= i:
        return None
    q = list(c)
    for k in range(i, n):
        q[k] += q[k - i]
    if any(q[k] for k in range(n - i, n)):
        return None
    return q[:n - i]


def _mul_one_minus(c, i, m=1):
    for _ in range(m):
        out = list(c) + [0] * i
        for k, x in enumerate(c):
            out[k + i] -= x
        c = out
    return _trim(c)


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Dense polynomial in ``v`` with rational coefficients.

    Stored as integer coefficients over one positive common denominator.
    """

    __slots__ = ("c", "den")

    def __init__(self, coeffs=(), den=1):
        coeffs = list(coeffs)
        if any(not isinstance(x, int) for x in coeffs):
            fr = [_as_fraction(x) for x in coeffs]
            lcm = 1
            for x in fr:
                lcm = lcm * x.denominator // gcd(lcm, x.denominator)
            coeffs = [x.numerator * (lcm // x.denominator) for x in fr]
            den *= lcm
        coeffs = _trim(coeffs)
        if den < 0:
            coeffs, den = [-x for x in coeffs], -den
        if den != 1:
            g = den
            for x in coeffs:
                g = gcd(g, x)
                if g == 1:
                    break
            if not coeffs:
                g = den
            if g != 1:
                coeffs = [x // g for x in coeffs]
                den //= g
        self.c = tuple(coeffs)
        self.den = den

    @classmethod
    def _raw(cls, c, den=1):
        p = cls.__new__(cls)
        p.c = tuple(c)
        p.den = den
        return p

    @classmethod
    def monomial(cls, k, coeff=1):
        return cls([0] * k + [coeff])

    @classmethod
    def one_minus(cls, i, m=1):
        """``(1 - v^i)^m``."""
        return cls._raw(_mul_one_minus([1], i, m))

    # -- inspection ---------------------------------------------------------
    def is_zero(self):
        return not self.c

    @property
    def degree(self):
        return len(self.c) - 1

    def valuation(self):
        for k, x in enumerate(self.c):
            if x:
                return k
        return None

    def coefficients(self):
        return [Fraction(x, self.den) for x in self.c]

    def coeff(self, k):
        if 0 <= k < len(self.c):
            return Fraction(self.c[k], self.den)
        return Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc / self.den

    # -- arithmetic -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.c == other.c and self.den == other.den

    def __hash__(self):
        return hash((self.c, self.den))

    def __neg__(self):
        return Poly._raw([-x for x in self.c], self.den)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.c, other.c
        if self.den == other.den:
            da = db = 1
            den = self.den
        else:
            den = self.den * other.den // gcd(self.den, other.den)
            da, db = den // self.den, den // other.den
        if len(a) < len(b):
            a, b, da, db = b, a, db, da
        out = [x * da for x in a]
        for k, y in enumerate(b):
            out[k] += y * db
        return Poly(out, den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly([x * other for x in self.c], self.den)
        if isinstance(other, Fraction):
            return Poly([x * other.numerator for x in self.c], self.den * other.denominator)
        if not isinstance(other, Poly):
            return NotImplemented
        den = self.den * other.den
        out = _imul(list(self.c), list(other.c))
        if den == 1:
            return Poly._raw(out)
        return Poly(out, den)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by ``v^k`` (k >= 0) or divide by ``v^-k`` when exact."""
        if k >= 0:
            return Poly._raw([0] * k + list(self.c), self.den) if self.c else self
        if any(self.c[:-k]):
            raise ValueError("shift would drop nonzero terms")
        return Poly._raw(self.c[-k:], self.den)

    def mul_one_minus(self, i, m=1):
        return Poly._raw(_mul_one_minus(list(self.c), i, m), self.den)

    def div_one_minus(self, i):
        """Exact quotient by ``1 - v^i``, or None when not divisible."""
        q = _div_one_minus(self.c, i)
        if q is None:
            return None
        return Poly._raw(q, self.den)

    def divmod(self, other):
        """Euclidean division over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = self.coefficients()
        d = other.coefficients()
        lead = d[-1]
        q = [Fraction(0)] * max(len(r) - len(d) + 1, 0)
        for k in range(len(r) - len(d), -1, -1):
            t = r[k + len(d) - 1] / lead
            q[k] = t
            if t:
                for j, y in enumerate(d):
                    r[k + j] -= t * y
        return Poly(q), Poly(r)

    def subs_power(self, m):
        """``p(v^m)`` for m >= 1."""
        if m == 1 or len(self.c) <= 1:
            return self
        out = [0] * ((len(self.c) - 1) * m + 1)
        for k, x in enumerate(self.c):
            out[k * m] = x
        return Poly._raw(out, self.den)

    def __repr__(self):
        return f"Poly({self.coefficients()!r})"

    def __str__(self):
        return format_poly(self)


def format_poly(p, var="v"):
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coefficients()):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


@lru_cache(maxsize=None)
def cyclotomic(d):
    """The d-th cyclotomic polynomial."""
    p = Poly([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            p, r = p.divmod(cyclotomic(e))
            assert r.is_zero()
    return p


# ---------------------------------------------------------------------------
# univariate rational functions with (1 - v^i) denominators
# ---------------------------------------------------------------------------

def _merge_den(*dens):
    out = {}
    for den in dens:
        for i, m in den:
            out[i] = out.get(i, 0) + m
    return out


class RatFunc:
    """``v^e * N(v) / prod (1 - v^i)^m_i`` over the rationals.

    After normalisation ``N`` has a nonzero constant term and is not divisible
    by any ``1 - v^i`` still present in the denominator. The sign of the
    constant term is exposed as :attr:`sign`.

    Equality is equality of values; the normal form is not unique because
    e.g. ``(1 + v)/(1 - v^2)`` and ``1/(1 - v)`` are both normal.
    """

    __slots__ = ("num", "e", "den")

    def __init__(self, num=0, den=(), e=0):
        if isinstance(num, (int, Fraction)):
            num = Poly([num])
        elif not isinstance(num, Poly):
            num = Poly(num)
        if isinstance(den, dict):
            den = den.items()
        dd = {}
        for i, m in den:
            if i < 1 or m < 0:
                raise ValueError(f"bad denominator factor (1 - v^{i})^{m}")
            if m:
                dd[i] = dd.get(i, 0) + m
        self._normalize(num, dd, e)

    def _normalize(self, num, dd, e):
        if num.is_zero():
            self.num, self.e, self.den = num, 0, ()
            return
        val = num.valuation()
        if val:
            num = Poly._raw(num.c[val:], num.den)
            e += val
        for i in sorted(dd, reverse=True):
            m = dd[i]
            while m:
                q = num.div_one_minus(i)
                if q is None:
                    break
                num, m = q, m - 1
            dd[i] = m
        self.num = num
        self.e = e
        self.den = tuple(sorted((i, m) for i, m in dd.items() if m))

    @classmethod
    def _make(cls, num, dd, e):
        r = cls.__new__(cls)
        r._normalize(num, dd, e)
        return r

    @classmethod
    def v(cls, k=1):
        return cls(1, (), k)

    @classmethod
    def one_minus(cls, i, m=1):
        """``(1 - v^i)^m`` for any integer m."""
        if m >= 0:
            return cls(Poly.one_minus(i, m))
        return cls(1, {i: -m})

    # -- inspection -----------------------------------------------------------
    @property
    def sign(self):
        if self.num.is_zero():
            return 0
        return 1 if self.num.c[0] > 0 else -1

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return not self.den and (self.e >= 0 or self.num.is_zero())

    def as_poly(self):
        if not self.is_polynomial():
            return None
        return self.num.shift(self.e) if not self.num.is_zero() else self.num

    def __call__(self, x):
        x = _as_fraction(x)
        val = self.num(x) * x ** self.e
        for i, m in self.den:
            val /= (1 - x ** i) ** m
        return val

    # -- arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc(x)
        if isinstance(x, Poly):
            return RatFunc(x)
        return None

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.num, r.e, r.den = -self.num, self.e, self.den
        return r

    def __add__(self, other):
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        da, db = dict(self.den), dict(other.den)
        common = {i: max(da.get(i, 0), db.get(i, 0)) for i in set(da) | set(db)}
        e = min(self.e, other.e)
        na = self.num.shift(self.e - e)
        nb = other.num.shift(other.e - e)
        for i, m in common.items():
            if m - da.get(i, 0):
                na = na.mul_one_minus(i, m - da.get(i, 0))
            if m - db.get(i, 0):
                nb = nb.mul_one_minus(i, m - db.get(i, 0))
        return RatFunc._make(na + nb, common, e)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc()
            r = RatFunc.__new__(RatFunc)
            r.num, r.e, r.den = self.num * other, self.e, self.den
            return r
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc()
        return RatFunc._make(self.num * other.num, _merge_den(self.den, other.den), self.e + other.e)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        num, factors = _one_minus_cover(self.num)
        dd = dict(factors)
        out_num = num
        for i, m in self.den:
            out_num = out_num.mul_one_minus(i, m)
        return RatFunc._make(out_num, dd, -self.e)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other)
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = RatFunc(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = RatFunc._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(self(Fraction(2)))

    # -- substitutions ------------------------------------------------------
    def adams(self, m):
        """``f(v^m)``."""
        if m == 1:
            return self
        r = RatFunc.__new__(RatFunc)
        r.num = self.num.subs_power(m)
        r.e = self.e * m
        r.den = tuple((i * m, k) for i, k in self.den)
        return r

    def reciprocal_variable(self):
        """``f(1/v)``."""
        if self.is_zero():
            return self
        deg = self.num.degree
        num = Poly._raw(tuple(reversed(self.num.c)), self.num.den)
        e = -self.e - deg
        flips = 0
        for i, m in self.den:
            e += i * m
            flips += m
        if flips % 2:
            num = -num
        return RatFunc._make(num, dict(self.den), e)

    def numerator_poly(self):
        """Signed numerator ``v^e N`` (for e >= 0) and the factor list."""
        return self.num, self.e, self.den

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return format_ratfunc(self)


def _one_minus_cover(p):
    """Find Q, {i: m} with ``p * Q = c * prod (1 - v^i)^m``; return (Q/c, factors).

    The quotient ``Q/c`` is returned so that ``1/p = (Q/c) / prod(...)``.
    """
    work = p
    cofactor = Poly([1])
    factors = {}
    d = 1
    while work.degree > 0:
        bound = 2 * work.degree * work.degree + 2
        if d > bound:
            raise NotInvertibleError(
                "numerator has a non-cyclotomic factor; not invertible with (1 - v^i) denominators")
        phi = cyclotomic(d)
        if phi.degree <= work.degree:
            q, r = work.divmod(phi)
            if r.is_zero():
                work = q
                rest, rr = Poly.one_minus(d).divmod(phi)
                assert rr.is_zero()
                cofactor = cofactor * rest
                factors[d] = factors.get(d, 0) + 1
                continue
        d += 1
    c = work.coeff(0)
    return cofactor * (1 / c), factors


def _plain_factor(x, m):
    return f"({x})" + (f"^{m}" if m != 1 else "")


def _mono(var, k):
    return var if k == 1 else f"{var}^{k}"


def format_ratfunc(f, var="v"):
    """Plain text with the ``(1 - v^i)^m`` denominator kept factored."""
    if f.is_polynomial():
        return format_poly(f.as_poly(), var)
    num = f.num.shift(f.e) if f.e > 0 else f.num
    text = format_poly(num, var)
    if sum(1 for c in num.c if c) > 1:
        text = f"({text})"
    dens = [_plain_factor(f"1 - {_mono(var, i)}", m) for i, m in f.den]
    if f.e < 0:
        dens.insert(0, _mono(var, -f.e))
    den = "*".join(dens)
    return f"{text}/({den})" if len(dens) > 1 else f"{text}/{den}"


def rf_normalize(numerator, factors=()):
    """Canonical :class:`RatFunc` from a raw numerator and ``(i, m)`` factors."""
    return RatFunc(numerator, factors)


def rf_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_is_polynomial(a):
    """The polynomial value of ``a`` or None."""
    return a.as_poly()


# ---------------------------------------------------------------------------
# bivariate polynomials and rational functions in (u, v)
# ---------------------------------------------------------------------------

class Poly2:
    """Sparse polynomial in ``u, v``: ``{(i, j): int}`` over a common denominator."""

    __slots__ = ("t", "den")

    def __init__(self, terms=None, den=1):
        terms = dict(terms or {})
        if any(not isinstance(x, int) for x in terms.values()):
            fr = {k: _as_fraction(x) for k, x in terms.items()}
            lcm = 1
            for x in fr.values():
                lcm = lcm * x.denominator // gcd(lcm, x.denominator)
            terms = {k: x.numerator * (lcm // x.denominator) for k, x in fr.items()}
            den *= lcm
        terms = {k: x for k, x in terms.items() if x}
        if den != 1:
            g = den
            for x in terms.values():
                g = gcd(g, x)
                if g == 1:
                    break
            if not terms:
                g = den
            if g != 1:
                terms = {k: x // g for k, x in terms.items()}
                den //= g
        self.t = terms
        self.den = den

    @classmethod
    def _raw(cls, t, den=1):
        p = cls.__new__(cls)
        p.t = t
        p.den = den
        return p

    @classmethod
    def one_minus(cls, a, b, m=1):
        p = cls._raw({(0, 0): 1})
        return p.mul_one_minus((a, b), m)

    def is_zero(self):
        return not self.t

    def coeff(self, i, j):
        return Fraction(self.t.get((i, j), 0), self.den)

    def items(self):
        return sorted((k, Fraction(x, self.den)) for k, x in self.t.items())

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.t == other.t and self.den == other.den

    def __hash__(self):
        return hash((frozenset(self.t.items()), self.den))

    def __neg__(self):
        return Poly2._raw({k: -x for k, x in self.t.items()}, self.den)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly2({(0, 0): other})
        if not isinstance(other, Poly2):
            return NotImplemented
        den = self.den * other.den // gcd(self.den, other.den)
        da, db = den // self.den, den // other.den
        out = {k: x * da for k, x in self.t.items()}
        for k, y in other.t.items():
            out[k] = out.get(k, 0) + y * db
        return Poly2(out, den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly2({k: x * other for k, x in self.t.items()}, self.den)
        if isinstance(other, Fraction):
            return Poly2({k: x * other.numerator for k, x in self.t.items()},
                         self.den * other.denominator)
        if not isinstance(other, Poly2):
            return NotImplemented
        den = self.den * other.den
        out = _bimul(self.t, other.t)
        return Poly2(out, den) if den != 1 else Poly2._raw(out)

    __rmul__ = __mul__

    def shift(self, a, b):
        return Poly2._raw({(i + a, j + b): x for (i, j), x in self.t.items()}, self.den)

    def mul_one_minus(self, ab, m=1):
        a, b = ab
        t = self.t
        for _ in range(m):
            out = dict(t)
            for (i, j), x in t.items():
                k = (i + a, j + b)
                y = out.get(k, 0) - x
                if y:
                    out[k] = y
                else:
                    out.pop(k, None)
            t = out
        return Poly2._raw(t, self.den)

    def div_one_minus(self, ab):
        """Exact quotient by ``1 - u^a v^b`` or None.

        Along each line ``k0 + s*(a, b)`` the quotient coefficients are the
        running sums of the dividend; divisibility means every line sums to 0.
        """
        a, b = ab
        q = {}
        lines = {}
        for (i, j), x in self.t.items():
            if a and b:
                s = min(i // a, j // b)
            else:
                s = i // a if a else j // b
            lines.setdefault((i - s * a, j - s * b), []).append((s, x))
        for (i0, j0), pts in lines.items():
            if sum(x for _, x in pts):
                return None
            pts.sort()
            acc = 0
            for idx in range(len(pts) - 1):
                acc += pts[idx][1]
                if acc:
                    for r in range(pts[idx][0], pts[idx + 1][0]):
                        q[(i0 + r * a, j0 + r * b)] = acc
        return Poly2._raw(q, self.den)

    def subs_power(self, m):
        if m == 1:
            return self
        return Poly2._raw({(i * m, j * m): x for (i, j), x in self.t.items()}, self.den)

    def specialize(self):
        """Set ``u = v``."""
        out = {}
        for (i, j), x in self.t.items():
            out[i + j] = out.get(i + j, 0) + x
        top = max(out) if out else -1
        return Poly([out.get(k, 0) for k in range(top + 1)], self.den)

    def min_exponents(self):
        return min(i for i, _ in self.t), min(j for _, j in self.t)

    def __call__(self, u, w):
        u, w = _as_fraction(u), _as_fraction(w)
        return sum((x * u ** i * w ** j for (i, j), x in self.t.items()), Fraction(0)) / self.den

    def __repr__(self):
        return f"Poly2({format_poly2(self)})"

    def __str__(self):
        return format_poly2(self)


def _bimul(a, b):
    if len(a) * len(b) < 4000:
        out = {}
        for (i, j), x in a.items():
            for (k, l), y in b.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + x * y
        return {k: x for k, x in out.items() if x}
    # Kronecker: (i, j) -> i*W + j turns the product into a univariate one.
    W = max(j for _, j in a) + max(j for _, j in b) + 1
    ia = max(i for i, _ in a) * W + W
    ib = max(i for i, _ in b) * W + W
    la = [0] * ia
    lb = [0] * ib
    for (i, j), x in a.items():
        la[i * W + j] = x
    for (i, j), x in b.items():
        lb[i * W + j] = x
    prod = _imul(_trim(la), _trim(lb))
    return {(k // W, k % W): x for k, x in enumerate(prod) if x}


def format_poly2(p, vars=("u", "v")):
    if p.is_zero():
        return "0"
    u, w = vars
    parts = []
    for (i, j), c in sorted(p.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0])):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "*".join(
            s for s in ((u if i == 1 else f"{u}^{i}") if i else "",
                        (w if j == 1 else f"{w}^{j}") if j else "") if s)
        if not mono:
            body = str(a)
        else:
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class RatFunc2:
    """``u^a v^b * N(u, v) / prod (1 - u^i v^j)^m`` over the rationals."""

    __slots__ = ("num", "e", "den")

    def __init__(self, num=0, den=(), e=(0, 0)):
        if isinstance(num, (int, Fraction)):
            num = Poly2({(0, 0): num})
        elif not isinstance(num, Poly2):
            num = Poly2(num)
        if isinstance(den, dict):
            den = den.items()
        dd = {}
        for ab, m in den:
            if m < 0 or ab[0] < 0 or ab[1] < 0 or ab == (0, 0):
                raise ValueError(f"bad denominator factor {ab!r}^{m}")
            if m:
                dd[tuple(ab)] = dd.get(tuple(ab), 0) + m
        self._normalize(num, dd, tuple(e))

    def _normalize(self, num, dd, e):
        if num.is_zero():
            self.num, self.e, self.den = num, (0, 0), ()
            return
        a, b = num.min_exponents()
        if a or b:
            num = num.shift(-a, -b)
            e = (e[0] + a, e[1] + b)
        for ab in sorted(dd, reverse=True):
            m = dd[ab]
            while m:
                q = num.div_one_minus(ab)
                if q is None:
                    break
                num, m = q, m - 1
            dd[ab] = m
        self.num = num
        self.e = e
        self.den = tuple(sorted((ab, m) for ab, m in dd.items() if m))

    @classmethod
    def _make(cls, num, dd, e):
        r = cls.__new__(cls)
        r._normalize(num, dd, e)
        return r

    @classmethod
    def monomial(cls, a, b, coeff=1):
        return cls(coeff, (), (a, b))

    @property
    def sign(self):
        if self.num.is_zero():
            return 0
        return 1 if self.num.t[min(self.num.t)] > 0 else -1

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return not self.den and (self.is_zero() or (self.e[0] >= 0 and self.e[1] >= 0))

    def as_poly(self):
        if not self.is_polynomial():
            return None
        return self.num.shift(*self.e)

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunc2):
            return x
        if isinstance(x, (int, Fraction, Poly2)):
            return RatFunc2(x)
        return None

    def __neg__(self):
        r = RatFunc2.__new__(RatFunc2)
        r.num, r.e, r.den = -self.num, self.e, self.den
        return r

    def __add__(self, other):
        other = RatFunc2._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        da, db = dict(self.den), dict(other.den)
        common = {k: max(da.get(k, 0), db.get(k, 0)) for k in set(da) | set(db)}
        e = (min(self.e[0], other.e[0]), min(self.e[1], other.e[1]))
        na = self.num.shift(self.e[0] - e[0], self.e[1] - e[1])
        nb = other.num.shift(other.e[0] - e[0], other.e[1] - e[1])
        for k, m in common.items():
            if m - da.get(k, 0):
                na = na.mul_one_minus(k, m - da.get(k, 0))
            if m - db.get(k, 0):
                nb = nb.mul_one_minus(k, m - db.get(k, 0))
        return RatFunc2._make(na + nb, common, e)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatFunc2._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc2()
            r = RatFunc2.__new__(RatFunc2)
            r.num, r.e, r.den = self.num * other, self.e, self.den
            return r
        other = RatFunc2._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc2()
        return RatFunc2._make(self.num * other.num, _merge_den(self.den, other.den),
                              (self.e[0] + other.e[0], self.e[1] + other.e[1]))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if len(self.num.t) != 1:
            raise NotInvertibleError("only monomial numerators are invertible here")
        (k, x), = self.num.t.items()
        num = Poly2({(0, 0): Fraction(self.num.den, x)})
        for ab, m in self.den:
            num = num.mul_one_minus(ab, m)
        return RatFunc2._make(num, {}, (-self.e[0] - k[0], -self.e[1] - k[1]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        other = RatFunc2._coerce(other)
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = RatFunc2(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = RatFunc2._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(self(Fraction(2), Fraction(3)))

    def __call__(self, u, w):
        u, w = _as_fraction(u), _as_fraction(w)
        val = self.num(u, w) * u ** self.e[0] * w ** self.e[1]
        for (a, b), m in self.den:
            val /= (1 - u ** a * w ** b) ** m
        return val

    def adams(self, m):
        if m == 1:
            return self
        r = RatFunc2.__new__(RatFunc2)
        r.num = self.num.subs_power(m)
        r.e = (self.e[0] * m, self.e[1] * m)
        r.den = tuple(((a * m, b * m), k) for (a, b), k in self.den)
        return r

    def specialize(self):
        """Set ``u = v``; the result is a :class:`RatFunc`."""
        return RatFunc(self.num.specialize(), [(a + b, m) for (a, b), m in self.den],
                       self.e[0] + self.e[1])

    def __repr__(self):
        return f"RatFunc2({self})"

    def __str__(self):
        return format_ratfunc2(self)


def format_ratfunc2(f, vars=("u", "v")):
    if f.is_polynomial():
        return format_poly2(f.as_poly(), vars)
    a, b = f.e
    num = f.num.shift(max(a, 0), max(b, 0))
    text = format_poly2(num, vars)
    if len(num.items()) > 1:
        text = f"({text})"
    u, w = vars
    dens = []
    neg = "*".join(s for s in (_mono(u, -a) if a < 0 else "", _mono(w, -b) if b < 0 else "") if s)
    if neg:
        dens.append(neg)
    for (i, j), m in f.den:
        mono = "*".join(s for s in (_mono(u, i) if i else "", _mono(w, j) if j else "") if s)
        dens.append(_plain_factor(f"1 - {mono}", m))
    den = "*".join(dens)
    return f"{text}/({den})" if len(dens) > 1 else f"{text}/{den}"


# ---------------------------------------------------------------------------
# truncated power series over a coefficient ring
# ---------------------------------------------------------------------------

class Ring:
    """Coefficient ring descriptor: zero, one and the Adams operations.

    Elements must support ``+``, ``-``, ``*`` among themselves and ``*`` by
    :class:`fractions.Fraction`.
    """

    def __init__(self, name, zero, one, adams=None):
        self.name = name
        self.zero = zero
        self.one = one
        self._adams = adams

    def adams(self, c, m):
        if m == 1 or self._adams is None:
            return c
        return self._adams(c, m)

    def is_zero(self, c):
        z = getattr(c, "is_zero", None)
        return z() if callable(z) else not c

    def __repr__(self):
        return f"Ring({self.name})"


QQ = Ring("QQ", Fraction(0), Fraction(1))
RATFUNC = Ring("Q(v)", RatFunc(0), RatFunc(1), lambda c, m: c.adams(m))
RATFUNC2 = Ring("Q(u,v)", RatFunc2(0), RatFunc2(1), lambda c, m: c.adams(m))


class Series:
    """``c_0 + c_1 x + ... + c_K x^K`` truncated at order ``K``."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs, ring=QQ, order=None):
        coeffs = list(coeffs)
        if order is not None:
            coeffs = coeffs[:order + 1] + [ring.zero] * (order + 1 - len(coeffs))
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = tuple(coeffs)
        self.ring = ring

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def _like(self, coeffs):
        return Series(coeffs, self.ring)

    def __add__(self, other):
        K = min(self.order, other.order)
        return self._like([self.coeffs[k] + other.coeffs[k] for k in range(K + 1)])

    def __sub__(self, other):
        K = min(self.order, other.order)
        return self._like([self.coeffs[k] - other.coeffs[k] for k in range(K + 1)])

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def scale(self, c):
        return self._like([x * c for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Series):
            return series_mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        K = min(self.order, other.order)
        return all(self.ring.is_zero(self.coeffs[k] - other.coeffs[k]) for k in range(K + 1))

    __hash__ = None

    def __repr__(self):
        return f"Series({list(self.coeffs)!r}, order={self.order})"


def series_mul(a, b):
    K = min(a.order, b.order)
    ring = a.ring
    out = []
    for k in range(K + 1):
        acc = ring.zero
        for i in range(k + 1):
            x, y = a.coeffs[i], b.coeffs[k - i]
            if ring.is_zero(x) or ring.is_zero(y):
                continue
            acc = acc + x * y
        out.append(acc)
    return a._like(out)


def series_inv(a):
    """Order-by-order inverse; the constant term must be invertible."""
    c0 = a.coeffs[0]
    ring = a.ring
    if ring.is_zero(c0):
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = c0.inverse() if hasattr(c0, "inverse") else Fraction(1) / c0
    out = [inv0]
    for k in range(1, a.order + 1):
        acc = ring.zero
        for i in range(1, k + 1):
            if not ring.is_zero(a.coeffs[i]):
                acc = acc + a.coeffs[i] * out[k - i]
        out.append(-(acc * inv0))
    return a._like(out)
