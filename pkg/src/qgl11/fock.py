"""Graded Fock modules in the PBW basis.

States are lattice vectors (labelled by three zero-mode eigenvalues) hit
by creation-mode monomials of the three oscillator families A1, A2, c.
The A-family basis is used throughout because the bosonized grading
operator is diagonal on it: A1 pairs only with A2 and c only with c, so
PBW monomials are exact eigenvectors of the degree-counting charge.  The
elementary a-oscillator presentation appears only inside the unit-test
oracle for the pairing table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalars import ONE, ZERO, PhaseMismatchError, Scalar, qint, qpow

Frac = Fraction

A1, A2, C = 0, 1, 2
FAMILY_NAMES = ("A1", "A2", "c")
PARTNER = {A1: A2, A2: A1, C: C}


# ---------------------------------------------------------------------------
# pairing table: [X_n, Y_{-n}] for the three families

@lru_cache(maxsize=None)
def pairing(family_a, family_b, n):
    """Contraction value [X_n, Y_{-n}] in the A-basis, n >= 1."""
    if n < 1:
        raise ValueError("pairing needs n >= 1")
    if {family_a, family_b} == {A1, A2}:
        return (qpow(n) + qpow(-n)) * qint(n) * qint(n) / n
    if family_a == family_b == C:
        return qint(n) * qint(n) / n
    return ZERO


# ---------------------------------------------------------------------------
# module parameters and lattice sites

@dataclass(frozen=True)
class ModuleParams:
    alpha: Fraction
    beta: Fraction

    def __init__(self, alpha, beta):
        object.__setattr__(self, "alpha", Frac(alpha))
        object.__setattr__(self, "beta", Frac(beta))

    @property
    def alpha_integral(self):
        return self.alpha.denominator == 1


class LatticeSite:
    """Zero-mode eigenvalue triple (lam1, lam2, lam3); immutable.

    The zero-mode charges evaluate as A1_0 -> lam1+lam2, A2_0 -> lam1-lam2,
    c_0 -> lam3.  Sites produced by vertex operators may carry half-integer
    offsets in lam1, lam2; lam3 moves by integers only.
    """

    __slots__ = ("lam1", "lam2", "lam3", "_hash")

    def __init__(self, lam1, lam2, lam3):
        self.lam1 = Frac(lam1)
        self.lam2 = Frac(lam2)
        self.lam3 = Frac(lam3)
        self._hash = hash((self.lam1, self.lam2, self.lam3))

    def zero_mode(self, family):
        if family == A1:
            return self.lam1 + self.lam2
        if family == A2:
            return self.lam1 - self.lam2
        return self.lam3

    def shifted(self, d1, d2, d3):
        return LatticeSite(self.lam1 + d1, self.lam2 + d2, self.lam3 + d3)

    def __eq__(self, other):
        return (
            self is other
            or (isinstance(other, LatticeSite)
                and self.lam1 == other.lam1
                and self.lam2 == other.lam2
                and self.lam3 == other.lam3)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "|%s,%s;%s>" % (self.lam1, self.lam2, self.lam3)


def base_site(params, i=0, l=0):
    """The lattice site with indices (i, l): |beta-alpha+i, -beta-i; alpha+i+l>."""
    a, b = params.alpha, params.beta
    return LatticeSite(b - a + i, -b - i, a + i + l)


def identify_site(params, site):
    """Return (i, l) if the site lies on the (alpha; beta) lattice, else None."""
    i = -params.beta - site.lam2
    l = site.lam3 - params.alpha - i
    if i.denominator != 1 or l.denominator != 1:
        return None
    if site.lam1 != params.beta - params.alpha + i:
        return None
    return (int(i), int(l))


# ---------------------------------------------------------------------------
# PBW monomials: per family a sorted tuple of (mode, multiplicity)

EMPTY_MONO = ((), (), ())


def mono_from_dict(d):
    fams = [[], [], []]
    for (fam, n), m in d.items():
        if m:
            fams[fam].append((n, m))
    return tuple(tuple(sorted(f)) for f in fams)


def mono_to_dict(mono):
    return {(fam, n): m for fam in (A1, A2, C) for n, m in mono[fam]}


def mono_degree(mono):
    return sum(n * m for fam in mono for n, m in fam)


def mono_mult(mono, fam, n):
    for nn, m in mono[fam]:
        if nn == n:
            return m
    return 0


def mono_add(mono, fam, n, k=1):
    d = mono_to_dict(mono)
    d[(fam, n)] = d.get((fam, n), 0) + k
    if d[(fam, n)] < 0:
        raise ValueError("negative multiplicity")
    return mono_from_dict(d)


def mono_str(mono):
    bits = []
    for fam in (A1, A2, C):
        for n, m in mono[fam]:
            tag = "%s(-%d)" % (FAMILY_NAMES[fam], n)
            bits.append(tag if m == 1 else tag + "^%d" % m)
    return "*".join(bits) or "1"


# ---------------------------------------------------------------------------
# states and vectors

class FockState:
    """An immutable (site, PBW monomial) pair."""

    __slots__ = ("site", "mono", "_hash", "_degree")

    def __init__(self, site, mono):
        self.site = site
        self.mono = mono
        self._hash = hash((site._hash, mono))
        self._degree = mono_degree(mono)

    def degree(self):
        return self._degree

    def __eq__(self, other):
        return self is other or (
            isinstance(other, FockState)
            and self.mono == other.mono
            and self.site == other.site
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "%s%r" % (
            "" if self.mono == EMPTY_MONO else mono_str(self.mono) + " ", self.site
        )


class FockVector:
    """Finite Scalar-linear combination of FockStates."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {s: c for s, c in (terms or {}).items() if not c.is_zero()}

    @staticmethod
    def unit(state, coeff=ONE):
        return FockVector({state: coeff})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for s, c in other.terms.items():
            t = out.get(s, ZERO) + c
            if t.is_zero():
                out.pop(s, None)
            else:
                out[s] = t
        return FockVector(out)

    def __sub__(self, other):
        return self + other.scaled(-ONE)

    def scaled(self, c):
        if isinstance(c, int):
            c = Scalar(c)
        if c.is_zero():
            return FockVector()
        return FockVector({s: cc * c for s, cc in self.terms.items()})

    def coeff(self, state):
        return self.terms.get(state, ZERO)

    def map_coeffs(self, fn):
        return FockVector({s: fn(s, c) for s, c in self.terms.items()})

    def max_degree(self):
        return max((s.degree() for s in self.terms), default=0)

    def add_into(self, state, coeff):
        """In-place accumulation used by the kernel engine."""
        cur = self.terms.get(state)
        if cur is None:
            if not coeff.is_zero():
                self.terms[state] = coeff
        else:
            t = cur + coeff
            if t.is_zero():
                del self.terms[state]
            else:
                self.terms[state] = t

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.terms == other.terms

    def __repr__(self):
        body = "  +  ".join("(%r) %r" % (c, s) for s, c in self.terms.items())
        return body or "0"


def vacuum(params, i=0, l=0):
    return FockState(base_site(params, i, l), EMPTY_MONO)


# ---------------------------------------------------------------------------
# basis enumeration

def _partitions_multi(degree, max_mode, nfam):
    """All nfam-colored multisets of positive integers of total `degree`."""
    if degree == 0:
        yield {}
        return
    for n in range(min(degree, max_mode), 0, -1):
        # choose multiplicities of mode n per family, then recurse below n
        yield from _mode_block(degree, n, nfam)


def _mode_block(degree, n, nfam):
    max_total = degree // n
    for total in range(max_total, -1, -1):
        if total == 0:
            if n > 1:
                yield from _mode_block(degree, n - 1, nfam)
            elif degree == 0:
                yield {}
            continue
        for split in _compositions(total, nfam):
            rest = degree - n * total
            if rest == 0:
                yield {(fam, n): m for fam, m in enumerate(split) if m}
            elif n > 1:
                for tail in _mode_block(rest, n - 1, nfam):
                    out = {(fam, n): m for fam, m in enumerate(split) if m}
                    out.update(tail)
                    yield out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_monomials(degree):
    """All PBW monomials of exact total degree, deterministic order."""
    out = [mono_from_dict(d) for d in _mode_block(degree, degree, 3)] if degree else [EMPTY_MONO]
    return sorted(set(out))


def enumerate_basis(site, degree):
    """All FockStates of exact degree at the given site."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    return [FockState(site, m) for m in enumerate_monomials(degree)]


def basis_up_to(site, degree):
    out = []
    for d in range(degree + 1):
        out.extend(enumerate_basis(site, d))
    return out


# ---------------------------------------------------------------------------
# diagonal data

def d_exponent(state):
    """Exponent E with q^{-d} state = q^E state."""
    site = state.site
    a1 = site.lam1 + site.lam2
    a2 = site.lam1 - site.lam2
    c0 = site.lam3
    return mono_degree(state.mono) + Frac(1, 2) * (a1 * a2 + c0 * (c0 + 1))


def weight_eigenvalues(state):
    """(h1, h2) weights; creation modes carry no h-weight."""
    site = state.site
    return (site.lam1 + site.lam2, site.lam1 - site.lam2)


def parity_offset(params, site):
    """Integer k with lam3 = alpha + k; raises if the site is off-lattice."""
    k = site.lam3 - params.alpha
    if k.denominator != 1:
        raise ValueError("site %r not in the alpha lattice" % (site,))
    return int(k)


def relative_parity(params, state):
    """Z2 parity relative to the lattice base (base site declared even)."""
    return parity_offset(params, state.site) % 2


def fermion_number_sign(params, site):
    """Eigenvalue of (-1)^{N_f} = (-1)^{c_0} as a Scalar.

    For integral alpha this is a plain sign; otherwise the formal unit u
    (standing for exp(i*pi*alpha)) carries the fractional part.
    """
    k = parity_offset(params, site)
    sign = -1 if k % 2 else 1
    if params.alpha_integral:
        if int(params.alpha) % 2:
            sign = -sign
        return Scalar(sign)
    return Scalar({Frac(0): Frac(sign)}, phase=1)
