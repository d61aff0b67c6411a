"""Virtual Poincare and Hodge polynomials of moduli of stable bundles on curves,
and exact counts of absolutely stable bundles over finite fields."""

__version__ = "0.1.0"

from .algebra import Poly, Poly2, RatFunc, RatFunc2, Series, cyclotomic
from .counting import (CapacityError, CSeqVec, IntegralityError, ZetaData, ZetaError,
                       load_zeta, m_value, point_counts, r_value, s_counts, stable_count,
                       stable_counts)
from .extract import (HodgeResult, NonPolynomialError, SlopeRay, TwistedSeries,
                      build_r_series, extract_stable, semistable_poincare, stable_hodge,
                      stable_poincare, twisted_exp, twisted_inv, twisted_log, twisted_mul,
                      virtual_hodge, virtual_poincare)
from .hnzagier import (CharPair, compositions, euler_pairing, hn_forward, hodge_pn, hodge_r,
                       phi_coeff, poincare_mn, poincare_r, psi_coeff, solve_hn_finite)
from .lambda_ring import plethystic_exp, plethystic_log, plethystic_pow


def clear_caches():
    """Drop every memo table (for cold timings and memory release)."""
    from . import counting, extract, hnzagier
    from .algebra import cyclotomic

    for fn in (hnzagier.compositions, hnzagier._psi_cached, hnzagier.poincare_mn,
               hnzagier.hodge_pn, hnzagier._poincare_r, hnzagier._hodge_r,
               extract._stable_series, counting._power_sums, counting._m_value,
               counting._r_value, cyclotomic):
        fn.cache_clear()
