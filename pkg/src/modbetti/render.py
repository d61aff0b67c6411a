"""Text, LaTeX, CSV and JSON renderings of results.

JSON encodings round-trip through :func:`decode`, which is what lets the
result cache store plain JSON.
"""

import csv
import io
from fractions import Fraction

from .algebra import Poly, Poly2, RatFunc, RatFunc2, format_poly, format_poly2, format_ratfunc

__all__ = ["encode", "decode", "plain", "latex", "csv_rows", "to_csv"]


def _q(x):
    return str(Fraction(x))


def encode(obj):
    if isinstance(obj, Poly):
        return {"type": "polynomial", "vars": ["v"], "coeffs": [_q(c) for c in obj.coefficients()],
                "text": format_poly(obj)}
    if isinstance(obj, Poly2):
        return {"type": "polynomial2", "vars": ["u", "v"],
                "terms": [[i, j, _q(c)] for (i, j), c in obj.items()],
                "text": format_poly2(obj)}
    if isinstance(obj, RatFunc):
        if obj.is_polynomial():
            return encode(obj.as_poly())
        return {"type": "rational", "vars": ["v"],
                "numerator": [_q(c) for c in obj.num.coefficients()],
                "shift": obj.e,
                "denominator": [[i, m] for i, m in obj.den],
                "text": format_ratfunc(obj)}
    if isinstance(obj, RatFunc2):
        if obj.is_polynomial():
            return encode(obj.as_poly())
        return {"type": "rational2", "vars": ["u", "v"],
                "numerator": [[i, j, _q(c)] for (i, j), c in obj.num.items()],
                "shift": list(obj.e),
                "denominator": [[i, j, m] for (i, j), m in obj.den],
                "text": str(obj)}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(data):
    kind = data["type"]
    if kind == "polynomial":
        return Poly([Fraction(c) for c in data["coeffs"]])
    if kind == "polynomial2":
        return Poly2({(i, j): Fraction(c) for i, j, c in data["terms"]})
    if kind == "rational":
        return RatFunc(Poly([Fraction(c) for c in data["numerator"]]),
                       [tuple(x) for x in data["denominator"]], data["shift"])
    if kind == "rational2":
        num = Poly2({(i, j): Fraction(c) for i, j, c in data["numerator"]})
        return RatFunc2(num, {(i, j): m for i, j, m in data["denominator"]}, tuple(data["shift"]))
    raise ValueError(f"unknown encoded type {kind!r}")


def plain(obj):
    return encode(obj)["text"]


# ---------------------------------------------------------------------------
# LaTeX
# ---------------------------------------------------------------------------

def _tex_coeff(a, bare):
    """``a`` is positive; ``bare`` means no monomial follows."""
    if a == 1 and not bare:
        return ""
    if a.denominator == 1:
        return str(a.numerator)
    return rf"\frac{{{a.numerator}}}{{{a.denominator}}}"


def _tex_mono(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{{{k}}}"


def _tex_terms(terms):
    """``terms``: list of (coefficient, monomial string)."""
    out = ""
    for idx, (c, mono) in enumerate(terms):
        c = Fraction(c)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        body = _tex_coeff(abs(c), not mono) + (" " if mono and abs(c) != 1 else "") + mono
        if not out:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out or "0"


def _tex_poly(p):
    return _tex_terms([(c, _tex_mono("v", k)) for k, c in enumerate(p.coefficients())])


def _tex_poly2(p):
    items = sorted(p.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]))
    return _tex_terms([(c, " ".join(s for s in (_tex_mono("u", i), _tex_mono("v", j)) if s))
                       for (i, j), c in items])


def _tex_factor(mono, m):
    base = f"(1 - {mono})"
    return base if m == 1 else f"{base}^{{{m}}}"


def latex(obj):
    if isinstance(obj, RatFunc) and obj.is_polynomial():
        obj = obj.as_poly()
    if isinstance(obj, RatFunc2) and obj.is_polynomial():
        obj = obj.as_poly()
    if isinstance(obj, Poly):
        return _tex_poly(obj)
    if isinstance(obj, Poly2):
        return _tex_poly2(obj)
    if isinstance(obj, RatFunc):
        num = _tex_poly(obj.num.shift(obj.e) if obj.e > 0 else obj.num)
        dens = [_tex_mono("v", -obj.e)] if obj.e < 0 else []
        dens += [_tex_factor(_tex_mono("v", i), m) for i, m in obj.den]
        return rf"\frac{{{num}}}{{{' '.join(dens)}}}"
    if isinstance(obj, RatFunc2):
        a, b = obj.e
        num = _tex_poly2(obj.num.shift(max(a, 0), max(b, 0)))
        neg = " ".join(s for s in (_tex_mono("u", -a) if a < 0 else "",
                                   _tex_mono("v", -b) if b < 0 else "") if s)
        dens = [neg] if neg else []
        dens += [_tex_factor(" ".join(s for s in (_tex_mono("u", i), _tex_mono("v", j)) if s), m)
                 for (i, j), m in obj.den]
        return rf"\frac{{{num}}}{{{' '.join(dens)}}}"
    raise TypeError(f"cannot render {type(obj).__name__}")


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def csv_rows(obj):
    if isinstance(obj, (RatFunc, RatFunc2)) and obj.is_polynomial():
        obj = obj.as_poly()
    if isinstance(obj, Poly):
        return [["exponent", "coefficient"]] + [
            [k, _q(c)] for k, c in enumerate(obj.coefficients()) if c]
    if isinstance(obj, Poly2):
        return [["u_exponent", "v_exponent", "coefficient"]] + [
            [i, j, _q(c)] for (i, j), c in obj.items()]
    return [["expression"], [plain(obj)]]


def to_csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()
