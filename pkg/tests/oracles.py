"""Independent reference computations used by the tests.

None of these touch the package; they rebuild the answers from scratch with
plain fractions, lists and the decimal module.
"""

from decimal import Decimal, localcontext
from fractions import Fraction


def middle_cantor_intervals(eps, depth, hull=(Fraction(0), Fraction(1))):
    """Stage-``depth`` construction intervals of the middle-eps set."""
    eps = Fraction(eps)
    ivs = [hull]
    for _ in range(depth):
        nxt = []
        for a, b in ivs:
            side = (b - a) * (1 - eps) / 2
            nxt.append((a, a + side))
            nxt.append((b - side, b))
        ivs = nxt
    return ivs


def middle_cantor_gaps(eps, depth):
    """Gaps of stages 1..depth as (left, right) pairs."""
    eps = Fraction(eps)
    gaps = []
    ivs = [(Fraction(0), Fraction(1))]
    for _ in range(depth):
        nxt = []
        for a, b in ivs:
            side = (b - a) * (1 - eps) / 2
            gaps.append((a + side, b - side))
            nxt += [(a, a + side), (b - side, b)]
        ivs = nxt
    return gaps


def in_middle_thirds(x):
    """Membership in the middle-thirds set via ternary digits.

    Eventually periodic digit streams are detected by revisiting a state.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        return False
    seen = set()
    while x not in seen:
        if x in (0, 1, Fraction(1, 3), Fraction(2, 3)):
            return True
        seen.add(x)
        if x < Fraction(1, 3):
            x = 3 * x
        elif x > Fraction(2, 3):
            x = 3 * x - 2
        else:
            return False
    return True


def sequential_thickness(hull, gaps):
    """Thickness by removing ``gaps`` one by one in the given order.

    The order must be non-increasing in length; any such order is allowed.
    """
    comps = [tuple(hull)]
    best = None
    for a, b in gaps:
        (k, (lo, hi)), = [(i, c) for i, c in enumerate(comps) if c[0] <= a and b <= c[1]]
        ratio = min(a - lo, hi - b) / (b - a)
        best = ratio if best is None else min(best, ratio)
        comps[k:k + 1] = [(lo, a), (b, hi)]
    return best


def capacity_decimal(tau, digits=40):
    """floor(ln 4 / (4e * 720^2) * tau / ln tau) with the decimal module."""
    with localcontext() as ctx:
        ctx.prec = digits
        t = Decimal(tau)
        e = Decimal(1).exp()
        val = Decimal(4).ln() / (4 * e * 720**2) * t / t.ln()
        return int(val.to_integral_value(rounding="ROUND_FLOOR"))


def condition_decimal(n, tau, digits=40):
    """n * alpha^c <= (1 - beta^(1-c)) / 720^2 with alpha = 4/tau, beta = 1/4."""
    with localcontext() as ctx:
        ctx.prec = digits
        alpha = Decimal(4) / Decimal(tau)
        c = 1 - 1 / (1 / alpha).ln()
        lhs = n * (c * alpha.ln()).exp()
        rhs = (1 - ((1 - c) * Decimal(0.25).ln()).exp()) / 720**2
        return lhs <= rhs
