"""Growth functions tied to 0-generacy thresholds.

varphi_int(n) is the integer quantity max over 0 < k < n of
(k^(n-k) - 1)/(k - 1), with the k = 1 term read as its limit n - 1.
phi_real(n) is the same maximum taken over real arguments in the open
interval (1, n); for n >= 4 the maximum is interior, for n <= 3 the
supremum n - 1 sits at the left boundary and is not attained.

The asymptotics of both run through the Lambert W function.  psi_max
describes the peak of x^(n-x), whose maximizer is n/W(ne), and
phi_asymptotic_bounds sandwiches ln varphi_int(n+1) between explicit
Lambert expressions (valid once n is large enough; below that the
interval is still computed but flagged).

The weight machinery assigns a vector f the value sum of lam^i times
the i-th largest entry, the minimum over all orderings when lam > 1.
weight_params computes the distinguished base lam (the interior
maximizer of phi for that n), the slope constant c_lam, and the
geometric sum it is dominated by; crucial_inequality_check evaluates
the family of inequalities that make the weight method close.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp

_DPS = 60


def varphi_int(n):
    """max over 0 < k < n of (k^(n-k) - 1)/(k - 1); 0 when n <= 1."""
    if n <= 1:
        return 0
    best = n - 1                      # the k = 1 term, read as a limit
    for k in range(2, n):
        best = max(best, (k ** (n - k) - 1) // (k - 1))
    return best


def varphi_int_argmax(n):
    """The smallest k attaining varphi_int(n)."""
    if n <= 1:
        raise ValueError("no terms for n <= 1")
    best, arg = n - 1, 1
    for k in range(2, n):
        v = (k ** (n - k) - 1) // (k - 1)
        if v > best:
            best, arg = v, k
    return arg


# ---------------------------------------------------------------------------
# the real maximum


@dataclass
class PhiEval:
    n: int
    x: float           # maximizer, or 1.0 for the boundary supremum
    ln_value: float
    value: float       # None when it overflows a float
    boundary: bool


def _phi_term(x, n):
    return (x ** (n - x) - 1) / (x - 1)


def _phi_ln(x, n):
    return mp.log(mp.power(x, n - x) - 1) - mp.log(x - 1)


def _phi_dln(x, n):
    """Derivative of ln((x^(n-x) - 1)/(x - 1))."""
    p = mp.power(x, n - x)
    return p * ((n - x) / x - mp.log(x)) / (p - 1) - 1 / (x - 1)


@lru_cache(maxsize=None)
def _phi_mp(n):
    """(maximizer, ln value) of the real maximum, as mpmath numbers."""
    if n < 4:
        raise ValueError("interior maximum needs n >= 4")
    with mp.workdps(_DPS):
        lo = mp.mpf(1) + mp.mpf(1) / 10 ** 6
        hi = mp.mpf(n) - mp.mpf(1) / 10 ** 6
        grid = [lo + (hi - lo) * j / 256 for j in range(257)]
        vals = [_phi_ln(x, n) for x in grid]
        j = max(range(len(grid)), key=lambda t: vals[t])
        a = grid[max(j - 1, 0)]
        b = grid[min(j + 1, len(grid) - 1)]
        if _phi_dln(a, n) > 0 > _phi_dln(b, n):
            for _ in range(200):
                mid = (a + b) / 2
                if b - a < mp.mpf(10) ** -40 * mid:
                    break
                if _phi_dln(mid, n) > 0:
                    a = mid
                else:
                    b = mid
            x = (a + b) / 2
        else:
            # golden section; the derivative bracket failed, which for
            # n >= 4 indicates a grid artifact rather than a boundary max
            g = (mp.sqrt(5) - 1) / 2
            c, d = b - g * (b - a), a + g * (b - a)
            for _ in range(300):
                if _phi_ln(c, n) >= _phi_ln(d, n):
                    b, d = d, c
                    c = b - g * (b - a)
                else:
                    a, c = c, d
                    d = a + g * (b - a)
                if b - a < mp.mpf(10) ** -40:
                    break
            x = (a + b) / 2
        return x, _phi_ln(x, n)


def phi_real(n):
    """The supremum of (x^(n-x) - 1)/(x - 1) over 1 < x <= n."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return PhiEval(n=1, x=1.0, ln_value=float("-inf"), value=0.0,
                       boundary=True)
    if n <= 3:
        # the function increases towards the left boundary; the supremum
        # is the limit n - 1 at x -> 1+ and is not attained
        return PhiEval(n=n, x=1.0, ln_value=math.log(n - 1), value=float(n - 1),
                       boundary=True)
    x, lnv = _phi_mp(n)
    with mp.workdps(_DPS):
        value = float(mp.e ** lnv) if lnv < 700 else None
    return PhiEval(n=n, x=float(x), ln_value=float(lnv), value=value,
                   boundary=False)


def phi_floor(n):
    """floor of the real supremum phi_real(n).value (exact for n <= 3)."""
    if n <= 3:
        return max(n - 1, 0)
    x, lnv = _phi_mp(n)
    with mp.workdps(_DPS):
        v = mp.e ** lnv
        f = int(mp.floor(v))
        # an interior maximum this close to an integer would need far
        # more working precision to floor honestly
        if abs(v - f) < mp.mpf(10) ** -30 or abs(v - (f + 1)) < mp.mpf(10) ** -30:
            raise ArithmeticError("phi(%d) is too close to an integer to floor"
                                  % n)
        return f


# ---------------------------------------------------------------------------
# Lambert W


def lambert_w(x):
    """The principal branch on x > 0, by Halley iteration."""
    if x <= 0:
        raise ValueError("need x > 0")
    if x > math.e:
        lx = math.log(x)
        w = lx - math.log(lx)
    else:
        w = x / (1.0 + x)
    for _ in range(100):
        ew = math.exp(w)
        err = w * ew - x
        if abs(err) <= 1e-12 * max(x, 1.0):
            break
        d = ew * (w + 1) - (w + 2) * err / (2 * w + 2)
        w -= err / d
    return w


def lambert_w_series(x):
    """Asymptotic expansion in L = ln x, l = ln ln x (for large x)."""
    if x <= math.e:
        raise ValueError("the expansion needs x > e")
    big = math.log(x)
    lo = math.log(big)
    return (big - lo
            + lo / big
            + lo * (-2 + lo) / (2 * big ** 2)
            + lo * (6 - 9 * lo + 2 * lo ** 2) / (6 * big ** 3)
            + lo * (-12 + 36 * lo - 22 * lo ** 2 + 3 * lo ** 3) / (12 * big ** 4))


def lambert_w_bounds(x):
    """ln x - ln ln x < W(x) < ln x, valid for x > e."""
    if x <= math.e:
        raise ValueError("the bounds need x > e")
    return math.log(x) - math.log(math.log(x)), math.log(x)


# ---------------------------------------------------------------------------
# the peak of x^(n-x) and asymptotic bounds


@dataclass
class PsiMax:
    n: int
    x: float
    ln_value: float


def psi_max(n):
    """Maximizer and log-maximum of x^(n-x) on (1, n)."""
    if n < 2:
        raise ValueError("need n >= 2")
    w = lambert_w(n * math.e)
    return PsiMax(n=n, x=n / w, ln_value=n * w - 2 * n + n / w)


@dataclass
class BoundInterval:
    n: int
    lower: float
    upper: float
    x_lo: float        # bracket for the maximizer of the (n+1)-term
    x_hi: float
    small_n: bool      # True when n is below the proven range


def phi_asymptotic_bounds(n):
    """Explicit bounds on ln of the real supremum phi_real(n + 1).

    Proven for n >= 51.  The integer maximum varphi_int(n + 1) sits below
    the same upper bound but can fall under the lower one, since the
    lattice points need not come close to the real maximizer.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    w = lambert_w(n * math.e)
    core = n * w - 2 * n + n / w
    lower = core + w / n
    upper = lower + math.log(math.log(n * math.e)) / n
    return BoundInterval(n=n, lower=lower, upper=upper,
                         x_lo=n / math.log(n) + 1, x_hi=n / w,
                         small_n=n < 51)


def ln_factorial_bounds(n):
    """Stirling with Robbins' error brackets: lower < ln n! < upper."""
    if n < 1:
        raise ValueError("need n >= 1")
    base = n * math.log(n) - n + 0.5 * math.log(2 * math.pi * n)
    return base + 1.0 / (12 * n + 1), base + 1.0 / (12 * n)


# ---------------------------------------------------------------------------
# weights


def weight(f, lam):
    """Minimal value of sum lam^i * f(sigma(i)) over orderings, lam > 1.

    With increasing powers the minimum pairs the largest entries with the
    smallest powers, so it is the dot product against f sorted descending.
    """
    if not lam > 1:
        raise ValueError("need lam > 1")
    return sum(v * lam ** i for i, v in enumerate(sorted(f, reverse=True)))


@dataclass
class WeightParams:
    n: int
    lam: float
    c_lam: float
    geo: float         # (lam^(n-1) - 1)/(lam - 1)
    phi_value: float   # the real maximum of the n-term, attained at lam
    anomaly: bool
    note: str = None


def weight_params(n):
    """The distinguished weight base for n and its derived constants.

    For n >= 4 the base is the interior maximizer of the real maximum.
    For n = 3 no interior maximizer exists (the supremum 2 sits at the
    boundary x -> 1+), so no base is defined and the result says so.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if n == 3:
        return WeightParams(n=3, lam=1.0, c_lam=None, geo=None, phi_value=2.0,
                            anomaly=True,
                            note="supremum at the boundary; no usable base")
    with mp.workdps(_DPS):
        lam, lnv = _phi_mp(n)
        c_lam = mp.power(lam, n - lam) * mp.log(lam) / (lam - 1)
        geo = (mp.power(lam, n - 1) - 1) / (lam - 1)
        return WeightParams(n=n, lam=float(lam), c_lam=float(c_lam),
                            geo=float(geo), phi_value=float(mp.e ** lnv),
                            anomaly=False)


def xi(x, c, n, lam):
    """(x - lam) c + (lam^(n-x) - 1)/(lam - 1)."""
    return (x - lam) * c + (lam ** (n - x) - 1) / (lam - 1)


def x_crit(c, n, lam):
    """The stationary point of xi(., c, n, lam)."""
    return n + (math.log(math.log(lam)) - math.log(lam - 1) - math.log(c)) \
        / math.log(lam)


def zeta(c, n, lam):
    return xi(x_crit(c, n, lam), c, n, lam)


@dataclass
class CrucialReport:
    n: int
    lam: float
    c_lam: float
    phi_value: float
    x_at_c: float          # stationary point at c = c_lam; equals lam
    zeta_at_c: float       # xi there; equals phi_value
    margins: dict          # k -> (k - lam) c_lam + geo_k - phi_value
    margins_scaled: dict   # k -> (geo_k + k c_lam - phi_value)/lam - c_lam
    ok: bool


def crucial_inequality_check(n):
    """Check (k - lam) c_lam + (lam^(n-k) - 1)/(lam - 1) >= phi for 1 < k < n."""
    p = weight_params(n)
    if p.anomaly:
        raise ValueError("no weight base for n = 3")
    lam, c_lam, phi = p.lam, p.c_lam, p.phi_value
    margins = {}
    scaled = {}
    for k in range(2, n):
        geo_k = (lam ** (n - k) - 1) / (lam - 1)
        margins[k] = (k - lam) * c_lam + geo_k - phi
        scaled[k] = (-phi + geo_k + k * c_lam) / lam - c_lam
    ok = all(v >= -1e-9 for v in margins.values())
    return CrucialReport(n=n, lam=lam, c_lam=c_lam, phi_value=phi,
                         x_at_c=x_crit(c_lam, n, lam),
                         zeta_at_c=zeta(c_lam, n, lam),
                         margins=margins, margins_scaled=scaled, ok=ok)
