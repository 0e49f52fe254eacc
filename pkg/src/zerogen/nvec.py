"""Small helpers for integer vectors represented as plain tuples.

Vectors live in omega^n (nonnegative integer entries).  The partial order
is coordinatewise; "strictly below" means strict in every coordinate.
"""

import itertools
from fractions import Fraction


def zero(n):
    return (0,) * n


def unit(n, i):
    """The i-th unit vector of length n."""
    return (0,) * i + (1,) + (0,) * (n - i - 1)


def tail_indicator(n, k):
    """The vector with zeros at coordinates 0..k-1 and ones at k..n-1."""
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    return (0,) * k + (1,) * (n - k)


def vec_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def dominates(x, y):
    """True iff x >= y in every coordinate."""
    return all(a >= b for a, b in zip(x, y))


def strictly_below(x, bound):
    """True iff x < bound in every coordinate."""
    return all(a < b for a, b in zip(x, bound))


def sorted_form(x):
    """Ascending rearrangement; canonical representative of the orbit of x."""
    return tuple(sorted(x))


def orbit(x):
    """All coordinate permutations of x, as a set."""
    return set(itertools.permutations(x))


def apply_perm(x, sigma):
    """The vector x o sigma, i.e. i -> x(sigma(i))."""
    return tuple(x[sigma[i]] for i in range(len(x)))


def zero_last(x):
    """x with its last coordinate replaced by 0."""
    return x[:-1] + (0,)


def const_production_rep(x):
    """Sorted form of x after zeroing the last coordinate.

    This is the canonical representative of everything the constant
    recursion produces from the cell x.
    """
    return tuple(sorted(x[:-1] + (0,)))


def harmonic_mean(x):
    """Exact harmonic mean M_{-1}(x); zero when any entry is zero."""
    if not x:
        raise ValueError("empty vector")
    if any(v == 0 for v in x):
        return Fraction(0)
    return Fraction(len(x)) / sum(Fraction(1, v) for v in x)


def arithmetic_mean(x):
    if not x:
        raise ValueError("empty vector")
    return Fraction(sum(x), len(x))


def parse_vector(text):
    """Parse a comma separated vector literal such as "2,3,7"."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError("malformed vector literal: %r" % text)
    out = []
    for p in parts:
        try:
            v = int(p)
        except ValueError:
            raise ValueError("non-integer entry %r in vector literal" % p)
        if v < 0:
            raise ValueError("negative entry %d in vector literal" % v)
        out.append(v)
    return tuple(out)


def format_vector(x):
    return ",".join(str(v) for v in x)


def parse_rational(text):
    """Parse "5", "450/49" or the mixed form "9 9/49" into a Fraction."""
    s = text.strip()
    if " " in s:
        whole, frac = s.split(None, 1)
        q = Fraction(frac)
        if q < 0 or q >= 1:
            raise ValueError("mixed rational %r needs a proper fraction part" % text)
        w = int(whole)
        if w < 0:
            raise ValueError("negative rationals are not used here")
        return w + q
    return Fraction(s)


def format_rational(q, mixed=False):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    if mixed and q.numerator > q.denominator:
        whole, rem = divmod(q.numerator, q.denominator)
        return "%d %d/%d" % (whole, rem, q.denominator)
    return "%d/%d" % (q.numerator, q.denominator)
