"""Exact coefficient arithmetic.

Every quantity in this package is an element of the fraction field of
finite q-monomial sums: maps {rational exponent -> rational coefficient}
standing for sums of c * q^e with exact rationals c, e.  The field is
extended by integer powers of one formal unimodular unit u (it stands for
exp(i*pi*alpha) with alpha the lattice parameter of the run); u is never
expanded, and adding values that sit in different u-sectors is a hard
error, because every identity we verify is homogeneous in u.

Internally a Scalar is kept canonical as

    content * u^phase * N(t) / D(t),        t = q^(1/lat),

with N, D primitive coprime integer Laurent polynomials, D starting at
t^0 with positive lowest coefficient, N with positive lowest coefficient,
and the exponent lattice `lat` minimal.  Equality is structural.  There is
no floating point anywhere; numeric evaluation substitutes an exact
rational square for q so that q^(1/2) stays rational.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

Frac = Fraction
F0 = Fraction(0)
F1 = Fraction(1)


class PhaseMismatchError(ValueError):
    """Raised when adding values from different formal-phase sectors."""


# ---------------------------------------------------------------------------
# integer Laurent dict helpers ({int exponent: int coefficient})

def _iconv(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _icontent(d):
    g = 0
    for c in d.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g or 1


def _dense(d):
    lo = min(d)
    hi = max(d)
    out = [0] * (hi - lo + 1)
    for e, c in d.items():
        out[e - lo] = c
    return out, lo


def _int_strip(p):
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return p[:n]


def _int_primitive(p):
    g = 0
    for c in p:
        g = gcd(g, c)
        if g == 1:
            return list(p)
    g = g or 1
    return [c // g for c in p]


def _int_pseudo_rem(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while a and len(a) - 1 >= db:
        la = a[-1]
        a = [c * lb for c in a]
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[i + shift] -= la * c
        a = _int_strip(a)
    return a


_GCD_MEMO = {}


def _int_poly_gcd(a, b):
    a, b = _int_strip(a), _int_strip(b)
    if not a:
        return _int_primitive(b)
    if not b:
        return _int_primitive(a)
    key = (tuple(a), tuple(b))
    hit = _GCD_MEMO.get(key)
    if hit is not None:
        return list(hit)
    a2, b2 = _int_primitive(a), _int_primitive(b)
    if len(a2) < len(b2):
        a2, b2 = b2, a2
    while b2:
        r = _int_pseudo_rem(a2, b2)
        a2, b2 = b2, _int_primitive(r)
    if a2 and a2[-1] < 0:
        a2 = [-c for c in a2]
    if len(_GCD_MEMO) > 200000:
        _GCD_MEMO.clear()
    _GCD_MEMO[key] = tuple(a2)
    return a2


def _int_poly_exact_div(a, b):
    """a / b for integer lists with exact division (Gauss lemma cases)."""
    out = [0] * (len(a) - len(b) + 1)
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    for i in range(len(out) - 1, -1, -1):
        da = db + i
        c = a[da]
        if c % lb:
            raise ArithmeticError("non-exact polynomial division")
        c //= lb
        out[i] = c
        if c:
            for j, bc in enumerate(b):
                a[i + j] -= c * bc
    return out


def _rescale_keys(d, factor):
    if factor == 1:
        return d
    return {e * factor: c for e, c in d.items()}


# ---------------------------------------------------------------------------


class QMonomialSum:
    """A finite sum of c*q^e terms times an integer power of the unit u.

    Exponents and coefficients are exact rationals; no zero coefficients
    are stored, and addition across phase sectors is rejected.
    """

    __slots__ = ("terms", "phase_exponent")

    def __init__(self, terms=None, phase_exponent=0):
        self.terms = {Frac(e): Frac(c) for e, c in (terms or {}).items() if c}
        self.phase_exponent = 0 if not self.terms else phase_exponent

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.phase_exponent != other.phase_exponent:
            raise PhaseMismatchError(
                "adding phase sectors u^%d and u^%d"
                % (self.phase_exponent, other.phase_exponent)
            )
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, F0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return QMonomialSum(out, self.phase_exponent)

    def __neg__(self):
        return QMonomialSum(
            {e: -c for e, c in self.terms.items()}, self.phase_exponent
        )

    def __mul__(self, other):
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                s = out.get(e, F0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return QMonomialSum(out, self.phase_exponent + other.phase_exponent)

    def __eq__(self, other):
        return (
            isinstance(other, QMonomialSum)
            and self.terms == other.terms
            and self.phase_exponent == other.phase_exponent
        )

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.phase_exponent))

    def __repr__(self):
        return _format_terms(self.terms, self.phase_exponent)


def _format_terms(terms, phase=0):
    if not terms:
        return "0"
    bits = []
    for e in sorted(terms):
        c = terms[e]
        if e == 0:
            bits.append(str(c))
        elif c == 1:
            bits.append("q^(%s)" % e)
        else:
            bits.append("%s*q^(%s)" % (c, e))
    s = " + ".join(bits).replace("+ -", "- ")
    if phase:
        s = "u^%d*(%s)" % (phase, s)
    return s


class Scalar:
    """Element of the fraction field of q-monomial sums, times u^phase."""

    __slots__ = ("lat", "inum", "iden", "content", "phase")

    def __init__(self, num=None, den=None, phase=0, _raw=None):
        if _raw is not None:
            self.lat, self.inum, self.iden, self.content, self.phase = _raw
            return
        # public constructor: num/den as {rational exponent: rational coeff}
        if isinstance(num, (int, Fraction)):
            num = {F0: Frac(num)} if num else {}
        if den is None:
            den = {F0: F1}
        elif isinstance(den, (int, Fraction)):
            if not den:
                raise ZeroDivisionError("zero denominator")
            den = {F0: Frac(den)}
        num = {Frac(e): Frac(c) for e, c in num.items() if c}
        den = {Frac(e): Frac(c) for e, c in den.items() if c}
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.lat, self.inum, self.iden = 1, {}, {0: 1}
            self.content, self.phase = F0, 0
            return
        lat = 1
        for e in num:
            lat = lat * e.denominator // gcd(lat, e.denominator)
        for e in den:
            lat = lat * e.denominator // gcd(lat, e.denominator)
        lcn = 1
        for c in num.values():
            lcn = lcn * c.denominator // gcd(lcn, c.denominator)
        lcd = 1
        for c in den.values():
            lcd = lcd * c.denominator // gcd(lcd, c.denominator)
        inum = {int(e * lat): int(c * lcn) for e, c in num.items()}
        iden = {int(e * lat): int(c * lcd) for e, c in den.items()}
        self.lat, self.inum, self.iden, self.content, self.phase = _canonical(
            lat, inum, iden, Frac(lcd, lcn), phase
        )

    # -- constructors -------------------------------------------------------

    @staticmethod
    def _make(lat, inum, iden, content, phase):
        s = Scalar(_raw=_canonical(lat, inum, iden, content, phase))
        return s

    @staticmethod
    def from_fraction(c):
        return Scalar(c)

    @staticmethod
    def q_power(e):
        e = Frac(e)
        return Scalar._make(e.denominator, {e.numerator: 1}, {0: 1}, F1, 0)

    @staticmethod
    def phase_unit(k=1):
        return Scalar._make(1, {0: 1}, {0: 1}, F1, k)

    # -- views ---------------------------------------------------------------

    @property
    def num(self):
        """Numerator as {Fraction exponent: Fraction coefficient}."""
        return {Frac(e, self.lat): Frac(c) * self.content
                for e, c in self.inum.items()}

    @property
    def den(self):
        return {Frac(e, self.lat): Frac(c) for e, c in self.iden.items()}

    def numerator_qsum(self):
        return QMonomialSum(self.num, self.phase)

    def denominator_qsum(self):
        return QMonomialSum(self.den, 0)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.inum

    def is_one(self):
        return (
            self.phase == 0 and self.content == 1
            and self.inum == {0: 1} and self.iden == {0: 1}
        )

    def is_rational(self):
        if self.phase or self.iden != {0: 1}:
            return None
        if not self.inum:
            return F0
        if self.inum == {0: 1}:
            return self.content
        if len(self.inum) == 1 and 0 in self.inum:
            return self.content * self.inum[0]
        return None

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.phase != other.phase:
            raise PhaseMismatchError(
                "adding phase sectors u^%d and u^%d" % (self.phase, other.phase)
            )
        L = self.lat * other.lat // gcd(self.lat, other.lat)
        ka, kb = L // self.lat, L // other.lat
        na = _rescale_keys(self.inum, ka)
        nb = _rescale_keys(other.inum, kb)
        da = _rescale_keys(self.iden, ka)
        db = _rescale_keys(other.iden, kb)
        ca, cb = self.content, other.content
        q = ca.denominator * cb.denominator // gcd(ca.denominator, cb.denominator)
        A = ca.numerator * (q // ca.denominator)
        B = cb.numerator * (q // cb.denominator)
        if da == db:
            out = {e: A * c for e, c in na.items()}
            for e, c in nb.items():
                s = out.get(e, 0) + B * c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
            return Scalar._make(L, out, da, Frac(1, q), self.phase)
        n1 = _iconv(na, db)
        n2 = _iconv(nb, da)
        out = {e: A * c for e, c in n1.items()}
        for e, c in n2.items():
            s = out.get(e, 0) + B * c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Scalar._make(L, out, _iconv(da, db), Frac(1, q), self.phase)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        if self.is_zero():
            return self
        return Scalar(
            _raw=(self.lat, self.inum, self.iden, -self.content, self.phase)
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            if self.is_zero():
                return ZERO
            return Scalar(
                _raw=(self.lat, self.inum, self.iden,
                      self.content * Frac(other), self.phase)
            )
        if self.is_zero() or other.is_zero():
            return ZERO
        L = self.lat * other.lat // gcd(self.lat, other.lat)
        ka, kb = L // self.lat, L // other.lat
        return Scalar._make(
            L,
            _iconv(_rescale_keys(self.inum, ka), _rescale_keys(other.inum, kb)),
            _iconv(_rescale_keys(self.iden, ka), _rescale_keys(other.iden, kb)),
            self.content * other.content,
            self.phase + other.phase,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * Frac(1, 1) * Frac(Frac(other).denominator,
                                            Frac(other).numerator)
        return self * other.inverse()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverting zero")
        return Scalar._make(
            self.lat, dict(self.iden), dict(self.inum), 1 / self.content,
            -self.phase,
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        return (
            isinstance(other, Scalar)
            and self.phase == other.phase
            and self.content == other.content
            and self.lat == other.lat
            and self.inum == other.inum
            and self.iden == other.iden
        )

    def __hash__(self):
        return hash(
            (
                self.lat,
                frozenset(self.inum.items()),
                frozenset(self.iden.items()),
                self.content,
                self.phase,
            )
        )

    def __repr__(self):
        n = _format_terms(self.num, self.phase)
        if self.iden == {0: 1}:
            return n
        return "(%s)/(%s)" % (n, _format_terms(self.den))

    # -- substitutions -------------------------------------------------------

    def bar(self):
        """Substitute q -> q^(-1) (and u -> u^(-1))."""
        if self.is_zero():
            return self
        return Scalar._make(
            self.lat,
            {-e: c for e, c in self.inum.items()},
            {-e: c for e, c in self.iden.items()},
            self.content,
            -self.phase,
        )

    def evaluate_numeric(self, q_value):
        """Evaluate at q = c^2 for rational c; exponents must lie in (1/2)Z.

        The result is an exact Fraction.  Raises on formal-phase content,
        on exponents with denominator > 2, and on a vanishing denominator.
        """
        if self.phase:
            raise ValueError("cannot numerically evaluate a formal phase")
        c = _rational_sqrt(Frac(q_value))
        if c is None:
            raise ValueError("q_value must be the square of a rational")
        if c in (0, 1, -1):
            raise ValueError("q_value must be a square c^2 with c not in {0,1,-1}")
        num = _eval_int_terms(self.inum, self.lat, c)
        den = _eval_int_terms(self.iden, self.lat, c)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at q=%s" % q_value)
        return self.content * num / den


def _eval_int_terms(terms, lat, c):
    total = F0
    for k, coef in terms.items():
        e2 = Frac(2 * k, lat)
        if e2.denominator != 1:
            raise ValueError("exponent %s not in (1/2)Z" % Frac(k, lat))
        total += coef * c ** int(e2)
    return total


def _rational_sqrt(x):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Frac(rn, rd)


# ---------------------------------------------------------------------------
# canonicalization of the raw integer representation

def _canonical(lat, inum, iden, content, phase):
    inum = {e: c for e, c in inum.items() if c}
    iden = {e: c for e, c in iden.items() if c}
    if not iden:
        raise ZeroDivisionError("zero denominator")
    if not inum or not content:
        return (1, {}, {0: 1}, F0, 0)

    # primitive parts into the content
    gn = _icontent(inum)
    gd = _icontent(iden)
    if gn > 1:
        inum = {e: c // gn for e, c in inum.items()}
    if gd > 1:
        iden = {e: c // gd for e, c in iden.items()}
    content = content * Frac(gn, gd)

    # monomial denominator: shift into the numerator
    if len(iden) == 1:
        (ed, cd), = iden.items()
        if cd < 0:
            cd = -cd
            content = -content
        if cd != 1:
            content = content / cd
        if ed:
            inum = {e - ed: c for e, c in inum.items()}
        iden = {0: 1}
    else:
        # cancel the common polynomial factor
        nl, nlo = _dense(inum)
        dl, dlo = _dense(iden)
        g = _int_poly_gcd(nl, dl)
        if len(g) > 1:
            nl = _int_poly_exact_div(nl, g)
            dl = _int_poly_exact_div(dl, g)
            inum = {nlo + i: c for i, c in enumerate(nl) if c}
            iden = {dlo + i: c for i, c in enumerate(dl) if c}
        dlo = min(iden)
        if dlo:
            inum = {e - dlo: c for e, c in inum.items()}
            iden = {e - dlo: c for e, c in iden.items()}
        gn = _icontent(inum)
        gd = _icontent(iden)
        if gn > 1:
            inum = {e: c // gn for e, c in inum.items()}
        if gd > 1:
            iden = {e: c // gd for e, c in iden.items()}
        content = content * Frac(gn, gd)
        if iden[0] < 0:
            iden = {e: -c for e, c in iden.items()}
            content = -content

    # sign convention: numerator lowest coefficient positive
    if inum[min(inum)] < 0:
        inum = {e: -c for e, c in inum.items()}
        content = -content

    # minimal exponent lattice
    if lat > 1:
        g = lat
        for e in inum:
            g = gcd(g, e)
            if g == 1:
                break
        if g > 1:
            for e in iden:
                g = gcd(g, e)
                if g == 1:
                    break
        if g > 1:
            inum = {e // g: c for e, c in inum.items()}
            iden = {e // g: c for e, c in iden.items()}
            lat //= g
    return (lat, inum, iden, content, phase)


# ---------------------------------------------------------------------------
# public values and operations

ZERO = Scalar(0)
ONE = Scalar(1)
Q = Scalar.q_power(1)
QINV = Scalar.q_power(-1)


def qnum(c):
    """Scalar from an int or Fraction."""
    return Scalar(c)


_QPOW_CACHE = {}


def qpow(e):
    """q^e for an exact rational e."""
    e = Frac(e)
    hit = _QPOW_CACHE.get(e)
    if hit is None:
        hit = Scalar.q_power(e)
        if len(_QPOW_CACHE) > 100000:
            _QPOW_CACHE.clear()
        _QPOW_CACHE[e] = hit
    return hit


_QINT_CACHE = {}


def qint(n):
    """The symmetric q-integer [n]_q = (q^n - q^(-n)) / (q - q^(-1))."""
    n = int(n)
    hit = _QINT_CACHE.get(n)
    if hit is not None:
        return hit
    if n == 0:
        val = ZERO
    else:
        sign = 1 if n > 0 else -1
        m = abs(n)
        val = Scalar._make(
            1, {(m - 1 - 2 * k): sign for k in range(m)}, {0: 1}, F1, 0
        )
    _QINT_CACHE[n] = val
    return val


def scalar_arith(a, b, op):
    """Field arithmetic dispatch; op in {'add','sub','mul','div'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def evaluate_numeric(a, q_value):
    return a.evaluate_numeric(q_value)


Q_MINUS_QINV = Q - QINV
