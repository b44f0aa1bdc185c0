"""Univariate rational functions and truncated Laurent windows over Scalar.

The spectral-variable layer: rational functions are stored as Laurent
numerator/denominator dicts with Scalar coefficients; windows are finite
Laurent expansions carrying their interval of validity.  Rational
reconstruction (a Pade-style exact linear solve) recovers a rational
function from a long enough window and is the analytic-continuation device
used to compare operator products expanded in opposite regions.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import ONE, ZERO, Scalar

Frac = Fraction


class ReconstructionError(ValueError):
    """No rational function of the allowed degree matches the window."""


# ---------------------------------------------------------------------------
# Laurent-dict helpers ({Fraction exponent: Scalar})

def lp_norm(d):
    return {e: c for e, c in d.items() if not c.is_zero()}


def lp_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, ZERO) + c
        if s.is_zero():
            out.pop(e, None)
        else:
            out[e] = s
    return out


def lp_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, ZERO) + ca * cb
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
    return out


def lp_scale(a, c):
    if c.is_zero():
        return {}
    return {e: ce * c for e, ce in a.items()}


def lp_shift(a, delta):
    if not delta:
        return dict(a)
    return {e + delta: c for e, c in a.items()}


def lp_eval(a, point):
    """Evaluate at a Scalar point (integer exponents only)."""
    total = ZERO
    for e, c in a.items():
        if Frac(e).denominator != 1:
            raise ValueError("cannot evaluate fractional exponent %s" % e)
        total = total + c * _scalar_pow(point, int(e))
    return total


def _scalar_pow(s, n):
    if n == 0:
        return ONE
    if n < 0:
        return _scalar_pow(s.inverse(), -n)
    out = ONE
    base = s
    while n:
        if n & 1:
            out = out * base
        base = base * base
        n >>= 1
    return out


class RationalFunction:
    """num/den with Laurent-dict entries; den normalized and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = lp_norm(num)
        den = lp_norm(den if den is not None else {Frac(0): ONE})
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            # shift den to start at exponent 0 with leading coefficient one
            dmin = min(den)
            c0 = den[dmin]
            den = {e - dmin: c / c0 for e, c in den.items()}
            num = {e - dmin: c / c0 for e, c in num.items()}
        else:
            den = {Frac(0): ONE}
        self.num = num
        self.den = den

    @staticmethod
    def from_scalar(c):
        return RationalFunction({Frac(0): c})

    @staticmethod
    def z_power(e, coeff=ONE):
        return RationalFunction({Frac(e): coeff})

    def is_zero(self):
        return not self.num

    def __add__(self, other):
        if self.den == other.den:
            return RationalFunction(lp_add(self.num, other.num), dict(self.den))
        return RationalFunction(
            lp_add(lp_mul(self.num, other.den), lp_mul(other.num, self.den)),
            lp_mul(self.den, other.den),
        )

    def __neg__(self):
        return RationalFunction(
            {e: -c for e, c in self.num.items()}, dict(self.den)
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return RationalFunction(lp_scale(self.num, other), dict(self.den))
        return RationalFunction(
            lp_mul(self.num, other.num), lp_mul(self.den, other.den)
        )

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            return RationalFunction(lp_scale(self.num, other.inverse()), dict(self.den))
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(
            lp_mul(self.num, other.den), lp_mul(self.den, other.num)
        )

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverting zero")
        return RationalFunction(dict(self.den), dict(self.num))

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return lp_mul(self.num, other.den) == lp_mul(other.num, self.den)

    def __repr__(self):
        def side(d):
            return " + ".join(
                "(%r)*z^(%s)" % (c, e) for e, c in sorted(d.items())
            ) or "0"

        if self.den == {Frac(0): ONE}:
            return side(self.num)
        return "[%s] / [%s]" % (side(self.num), side(self.den))

    def substitute_inverse(self):
        """Return f(1/z) as a rational function."""
        return RationalFunction(
            {-e: c for e, c in self.num.items()},
            {-e: c for e, c in self.den.items()},
        )

    def substitute_scaled(self, factor, power=1):
        """Return f(factor * z^power) for Scalar factor and integer power."""
        num = {e * power: c * _scalar_pow(factor, int(e)) for e, c in self.num.items()}
        den = {e * power: c * _scalar_pow(factor, int(e)) for e, c in self.den.items()}
        return RationalFunction(num, den)

    def evaluate(self, point):
        d = lp_eval(self.den, point)
        if d.is_zero():
            raise ZeroDivisionError("pole at evaluation point")
        return lp_eval(self.num, point) / d


class LaurentWindow:
    """Finite Laurent expansion valid exactly on [lo, hi] (inclusive)."""

    __slots__ = ("terms", "lo", "hi")

    def __init__(self, terms, lo, hi):
        lo, hi = Frac(lo), Frac(hi)
        self.terms = {e: c for e, c in terms.items()
                      if lo <= e <= hi and not c.is_zero()}
        self.lo, self.hi = lo, hi

    def coeff(self, e):
        e = Frac(e)
        if not (self.lo <= e <= self.hi):
            raise KeyError("exponent %s outside window [%s, %s]" % (e, self.lo, self.hi))
        return self.terms.get(e, ZERO)

    def __add__(self, other):
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if hi < lo:
            raise ValueError("window intersection is empty")
        return LaurentWindow(lp_add(self.terms, other.terms), lo, hi)

    def __neg__(self):
        return LaurentWindow({e: -c for e, c in self.terms.items()}, self.lo, self.hi)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return LaurentWindow(lp_scale(self.terms, other), self.lo, self.hi)
        lo = self.lo + other.lo
        hi = min(self.hi + other.lo, self.lo + other.hi)
        if hi < lo:
            raise ValueError("window product is empty")
        return LaurentWindow(lp_mul(self.terms, other.terms), lo, hi)

    def shifted(self, delta):
        return LaurentWindow(lp_shift(self.terms, Frac(delta)),
                             self.lo + Frac(delta), self.hi + Frac(delta))

    def clipped(self, lo, hi):
        return LaurentWindow(self.terms, max(self.lo, Frac(lo)), min(self.hi, Frac(hi)))

    def is_zero(self):
        return not self.terms

    def same_on_overlap(self, other):
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if hi < lo:
            raise ValueError("windows do not overlap")
        for e in set(self.terms) | set(other.terms):
            if lo <= e <= hi:
                if not (self.terms.get(e, ZERO) - other.terms.get(e, ZERO)).is_zero():
                    return False
        return True

    def __repr__(self):
        body = " + ".join("(%r)*z^(%s)" % (c, e) for e, c in sorted(self.terms.items()))
        return "Window[%s, %s](%s)" % (self.lo, self.hi, body or "0")


# ---------------------------------------------------------------------------
# series expansion of rational functions

def expand_rational(f, direction, order):
    """Geometric-series expansion of f to `order` terms past the edge.

    ascending:  exponents v .. v+order where v is the valuation of f;
    descending: exponents t-order .. t where t is the top exponent.
    The extreme denominator coefficient in the chosen direction must be
    invertible (it always is over the scalar field unless den is zero).
    """
    if f.is_zero():
        return LaurentWindow({}, 0, order)
    num, den = f.num, f.den
    if direction == "ascending":
        dv = min(den)
        edge = den[dv]
        rest = {e - dv: -c / edge for e, c in den.items() if e != dv}
        nv = min(num)
    elif direction == "descending":
        dv = max(den)
        edge = den[dv]
        rest = {e - dv: -c / edge for e, c in den.items() if e != dv}
        nv = max(num)
    else:
        raise ValueError("direction must be ascending or descending")

    # 1/den = (1/edge) z^-dv * sum_k rest^k, rest has strictly one-signed exps
    v = nv - dv  # valuation (resp. top) of the result
    window = order
    inv = {Frac(0): ONE / edge}
    power = {Frac(0): ONE / edge}
    for _ in range(window):
        power = lp_mul(power, rest)
        power = {e: c for e, c in power.items() if abs(e) <= window}
        if not power:
            break
        inv = lp_add(inv, power)
    series = lp_mul({e - dv: c for e, c in num.items()}, inv)
    if direction == "ascending":
        out = {e: c for e, c in series.items() if e <= v + order}
        return LaurentWindow(out, v, v + order)
    out = {e: c for e, c in series.items() if e >= v - order}
    return LaurentWindow(out, v - order, v)


# ---------------------------------------------------------------------------
# rational reconstruction (exact Pade solve over the Scalar field)

def _solve_nullspace(rows, ncols):
    """One nonzero nullspace vector of the Scalar matrix, or None."""
    rows = [list(r) for r in rows]
    pivots = {}
    r = 0
    for col in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if not rows[i][col].is_zero():
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][col]
        rows[r] = [c / piv for c in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots[col] = r
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    vec = [ZERO] * ncols
    vec[fc] = ONE
    for col, rw in pivots.items():
        vec[col] = -rows[rw][fc]
    return vec


def rational_reconstruct(window, max_deg):
    """Unique rational function (num/den degree <= max_deg) matching window.

    The window exponents must lie on an integer lattice above window.lo;
    the result carries the lattice offset in its numerator.  Raises
    ReconstructionError when no consistent rational function exists, which
    signals either a too-short window or a falsified identity upstream.
    """
    length = window.hi - window.lo + 1
    if length.denominator != 1:
        raise ValueError("window span must be an integer")
    length = int(length)
    if length < 2 * max_deg + 2:
        raise ValueError("window too short: need >= %d coefficients" % (2 * max_deg + 2))
    coeffs = [ZERO] * length
    for e, c in window.terms.items():
        k = e - window.lo
        if k.denominator != 1:
            raise ValueError("window terms must sit on an integer lattice")
        coeffs[int(k)] = c
    if all(c.is_zero() for c in coeffs):
        return RationalFunction({}, {Frac(0): ONE})

    for deg in range(max_deg + 1):
        q = _try_degree(coeffs, deg)
        if q is not None:
            pcoeffs, qcoeffs = q
            num = {window.lo + j: c for j, c in enumerate(pcoeffs) if not c.is_zero()}
            den = {Frac(j): c for j, c in enumerate(qcoeffs) if not c.is_zero()}
            return RationalFunction(num, den)
    raise ReconstructionError(
        "no rational function of degree <= %d matches the window" % max_deg
    )


def _try_degree(coeffs, deg):
    length = len(coeffs)
    # unknowns q_0..q_deg; equations (c*q)_m = 0 for m = deg+1 .. length-1
    rows = []
    for m in range(deg + 1, length):
        rows.append([coeffs[m - j] if 0 <= m - j < length else ZERO
                     for j in range(deg + 1)])
    if rows:
        qvec = _solve_nullspace(rows, deg + 1)
        if qvec is None:
            return None
    else:
        qvec = [ONE] + [ZERO] * deg
    if all(c.is_zero() for c in qvec):
        return None
    # numerator = (c * q) truncated to degree deg; verify the tail vanishes
    prod = [ZERO] * length
    for m in range(length):
        s = ZERO
        for j in range(min(m, deg) + 1):
            s = s + qvec[j] * coeffs[m - j]
        prod[m] = s
    if any(not prod[m].is_zero() for m in range(deg + 1, length)):
        return None
    p = prod[: deg + 1]
    # normalize so den has nonzero constant term
    if qvec[0].is_zero():
        # denominator with q(0)=0 means a spurious z factor; reject, the
        # shifted-window caller handles offsets itself
        return None
    inv = qvec[0].inverse()
    return [c * inv for c in p], [c * inv for c in qvec]


def reconstruct_and_check(window, max_deg, spare=2):
    """Reconstruct from a shortened window, check against the full one.

    Uses all but `spare` coefficients for the solve and verifies the
    reconstruction reproduces the spare tail as well; this is the
    stability handshake used by the verification suites.
    """
    f = rational_reconstruct(window, max_deg)
    re = expand_window(f, window.lo, window.hi)
    if not re.same_on_overlap(window):
        raise ReconstructionError("reconstruction does not reproduce the window")
    return f


def expand_window(f, lo, hi):
    """Ascending expansion of f covering exponents [lo, hi]."""
    lo, hi = Frac(lo), Frac(hi)
    if f.is_zero():
        return LaurentWindow({}, lo, hi)
    v = min(f.num) - min(f.den)
    order = hi - v
    if order < 0:
        return LaurentWindow({}, lo, hi)
    w = expand_rational(f, "ascending", int(order))
    return LaurentWindow({e: c for e, c in w.terms.items() if lo <= e <= hi}, lo, hi)


# ---------------------------------------------------------------------------
# bivariate polynomials (used by the Yang-Baxter identity check)

class BiPoly:
    """Sparse polynomial in two variables with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    @staticmethod
    def const(c):
        return BiPoly({(0, 0): c})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return BiPoly(out)

    def __sub__(self, other):
        return self + BiPoly({k: -c for k, c in other.terms.items()})

    def __mul__(self, other):
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                s = out.get(k, ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return BiPoly(out)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(
            "(%r)*z^%d*w^%d" % (c, a, b) for (a, b), c in sorted(self.terms.items())
        )
        return body or "0"
