"""Generic engine for normal-ordered exponential operators.

An ExpKernel is the declarative normal form

    prefactor * exp(sum_n gamma_{f,n} z^n f_{-n})          (creation side)
               * e^{shift.Q} * z^{z_form} q^{q_form} u^{phase_form}
               * exp(sum_n a_{f,n} z^{-n} f_n)              (annihilation side)

with all zero-mode forms evaluated on the eigenvalues of the site the
operator is applied to, before the lattice shift (e^Q factors stand to the
left of the zero-mode exponentials).  Applying a kernel to a state is a
finite Wick expansion: the annihilation exponential contracts against the
state's creation modes through fock.pairing, the zero modes contribute
site-dependent scalars and the shift, and the creation exponential is
expanded up to the requested degree or z-window.

Operator products are never normal-ordered symbolically; compositions act
through states (compose_apply), and every identity check ultimately runs
through this module.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import ceil, comb, factorial, floor

from .fock import (
    A1,
    A2,
    C,
    FockState,
    FockVector,
    PARTNER,
    mono_degree,
    mono_from_dict,
    mono_to_dict,
    pairing,
)
from .scalars import ONE, ZERO, Scalar, qint, qpow

Frac = Fraction

_uid_counter = itertools.count()


class ModeOffsetError(ValueError):
    """A mode extraction needs a non-integer creation degree at a site."""


class TruncationError(ValueError):
    """Window and truncation requests are inconsistent."""


class AffineForm:
    """c1*A1_0 + c2*A2_0 + cc*c_0 + const with exact rational coefficients."""

    __slots__ = ("c1", "c2", "cc", "const")

    def __init__(self, c1=0, c2=0, cc=0, const=0):
        self.c1, self.c2 = Frac(c1), Frac(c2)
        self.cc, self.const = Frac(cc), Frac(const)

    def __add__(self, other):
        return AffineForm(
            self.c1 + other.c1, self.c2 + other.c2,
            self.cc + other.cc, self.const + other.const,
        )

    def scaled(self, s):
        s = Frac(s)
        return AffineForm(self.c1 * s, self.c2 * s, self.cc * s, self.const * s)

    def value(self, site):
        return (
            self.c1 * site.zero_mode(A1)
            + self.c2 * site.zero_mode(A2)
            + self.cc * site.zero_mode(C)
            + self.const
        )

    def is_zero(self):
        return not (self.c1 or self.c2 or self.cc or self.const)


def phase_eval(params, site, form):
    """Scalar value of exp(i*pi*form(site)).

    The c_0 coefficient of the form must be an integer p; the value is
    u^p * (-1)^k with u the formal unit exp(i*pi*alpha), and collapses to a
    plain sign when alpha is an integer.
    """
    if form.is_zero():
        return ONE
    if form.c1 or form.c2:
        raise ValueError("phase forms may involve c_0 only")
    p = form.cc
    if p.denominator != 1:
        raise ValueError("phase form with non-integer c_0 coefficient")
    p = int(p)
    v = form.value(site)
    w = v - p * params.alpha
    if w.denominator != 1:
        raise ValueError("phase %s not integral over the lattice" % v)
    sign = -1 if int(w) % 2 else 1
    if params.alpha_integral:
        if (p * int(params.alpha)) % 2:
            sign = -sign
        return Scalar(sign)
    return Scalar({Frac(0): Frac(sign)}, phase=p)


class ExpKernel:
    """One normal-ordered exponential operator; built from factor specs."""

    __slots__ = (
        "uid", "creation", "annihilation", "shift_q", "z_form", "q_form",
        "phase_form", "prefactor", "parity", "_ap_cache", "_cre_cache",
        "_cre_by_deg", "label",
    )

    def __init__(self, creation, annihilation, shift_q, z_form, q_form,
                 phase_form, prefactor=ONE, parity=0, label=""):
        self.uid = next(_uid_counter)
        self.creation = creation          # {family: coeff_fn(n) -> Scalar}
        self.annihilation = annihilation  # {family: coeff_fn(n) -> Scalar}
        self.shift_q = shift_q            # (dQ_A1, dQ_A2, dQ_c)
        self.z_form = z_form
        self.q_form = q_form
        self.phase_form = phase_form
        self.prefactor = prefactor
        self.parity = parity
        self.label = label
        self._ap_cache = {}
        self._cre_cache = {}
        self._cre_by_deg = {}

    # lattice shift in (lam1, lam2, lam3) induced by the Q translation
    def site_shift(self):
        d1, d2, dc = self.shift_q
        return (d1 + d2, -d1 + d2, dc)

    def shifted_site(self, site):
        s1, s2, s3 = self.site_shift()
        return site.shifted(s1, s2, s3)

    def creation_coeff(self, fam, n):
        key = (0, fam, n)
        c = self._cre_cache.get(key)
        if c is None:
            fn = self.creation.get(fam)
            c = fn(n) if fn else ZERO
            self._cre_cache[key] = c
        return c

    def annihilation_coeff(self, fam, n):
        key = (1, fam, n)
        c = self._cre_cache.get(key)
        if c is None:
            fn = self.annihilation.get(fam)
            c = fn(n) if fn else ZERO
            self._cre_cache[key] = c
        return c

    def contraction_factor(self, fam, n):
        """a_{partner(fam),n} * pairing(partner(fam), fam, n): the weight of
        removing one (fam, n) quantum from a state."""
        key = (fam, n)
        c = self._ap_cache.get(key)
        if c is None:
            p = PARTNER[fam]
            a = self.annihilation_coeff(p, n)
            c = ZERO if a.is_zero() else a * pairing(p, fam, n)
            self._ap_cache[key] = c
        return c

    def creation_terms(self, degree):
        """All creation multisets of exact degree with their weights.

        Returns a list of (mono_additions_dict, Scalar weight); cached.
        """
        hit = self._cre_by_deg.get(degree)
        if hit is not None:
            return hit
        out = []

        def rec(n, remaining, current, weight):
            if remaining == 0:
                out.append((dict(current), weight))
                return
            if n == 0:
                return
            rec(n - 1, remaining, current, weight)
            coeffs = {}
            for fam in (A1, A2, C):
                c = self.creation_coeff(fam, n)
                if not c.is_zero():
                    coeffs[fam] = c
            if not coeffs:
                return
            maxk = remaining // n
            fams = sorted(coeffs)
            for total in range(1, maxk + 1):
                for split in _compositions(total, len(fams)):
                    w = weight
                    cur = dict(current)
                    for fam, k in zip(fams, split):
                        if k:
                            w = w * _pow_scalar(coeffs[fam], k) * Frac(1, factorial(k))
                            cur[(fam, n)] = k
                    rec(n - 1, remaining - n * total, cur, w)

        rec(degree, degree, {}, ONE)
        self._cre_by_deg[degree] = out
        return out

    def __repr__(self):
        return "ExpKernel(%s)" % (self.label or self.uid)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _pow_scalar(s, k):
    out = ONE
    for _ in range(k):
        out = out * s
    return out


class KernelSum:
    """Scalar-weighted sum of kernels sharing grading and lattice shift."""

    __slots__ = ("terms", "parity", "label", "uid")

    def __init__(self, terms, label=""):
        # terms: list of (coeff Scalar, z_offset Fraction, ExpKernel)
        self.terms = [(c, Frac(z), k) for c, z, k in terms]
        parities = {k.parity for _, _, k in self.terms}
        shifts = {k.shift_q for _, _, k in self.terms}
        if len(parities) != 1 or len(shifts) != 1:
            raise ValueError("kernel sum terms must share grading and shift")
        self.parity = parities.pop()
        self.label = label
        self.uid = next(_uid_counter)

    @staticmethod
    def single(kernel, coeff=ONE, z_offset=0, label=""):
        return KernelSum([(coeff, z_offset, kernel)], label or kernel.label)

    def site_shift(self):
        return self.terms[0][2].site_shift()

    def scaled(self, c):
        return KernelSum([(c * c0, z, k) for c0, z, k in self.terms], self.label)

    def __repr__(self):
        return "KernelSum(%s)" % (self.label or len(self.terms))


# ---------------------------------------------------------------------------
# contraction enumeration against a state's monomial

def contraction_patterns(kernel, mono):
    """All Wick contraction submultisets of `mono` for this kernel.

    Yields (removed_dict, weight, removed_degree); the weight collects
    binomial(m, t) * (a*p)^t over the touched slots.
    """
    slots = []
    for fam in (A1, A2, C):
        for n, m in mono[fam]:
            ap = kernel.contraction_factor(fam, n)
            if not ap.is_zero():
                slots.append(((fam, n), m, ap))
    results = [({}, ONE, 0)]
    for (fam, n), m, ap in slots:
        new = []
        powers = [ONE]
        for _ in range(m):
            powers.append(powers[-1] * ap)
        for removed, w, deg in results:
            for t in range(m + 1):
                if t == 0:
                    new.append((removed, w, deg))
                else:
                    r2 = dict(removed)
                    r2[(fam, n)] = t
                    new.append((r2, w * comb(m, t) * powers[t], deg + n * t))
        results = new
    return results


def _merge_mono(base_dict, *adds):
    d = dict(base_dict)
    for add in adds:
        for k, v in add.items():
            d[k] = d.get(k, 0) + v
    return mono_from_dict(d)


def _remove_from(mono, removed):
    d = mono_to_dict(mono)
    for k, t in removed.items():
        d[k] -= t
        if d[k] == 0:
            del d[k]
    return d


# ---------------------------------------------------------------------------
# application

def apply_kernelsum(params, ksum, vec, D=None, window=None):
    """Apply a KernelSum to a FockVector.

    Returns {z_exponent (Fraction): FockVector}.  At least one of D (final
    degree cap) or window = (lo, hi) must be given; with a window the
    creation side is expanded exactly as far as the window requires.
    """
    if D is None and window is None:
        raise TruncationError("need a degree cap or a z-window")
    if window is not None:
        lo, hi = Frac(window[0]), Frac(window[1])
        if hi < lo:
            raise TruncationError("empty window")
    out = {}
    for coeff0, z_off, kernel in ksum.terms:
        for state, cin in vec.terms.items():
            site = state.site
            zf = kernel.z_form.value(site) + z_off
            zero = coeff0 * cin * kernel.prefactor
            qv = kernel.q_form.value(site)
            if qv:
                zero = zero * qpow(qv)
            if not kernel.phase_form.is_zero():
                zero = zero * phase_eval(params, site, kernel.phase_form)
            if zero.is_zero():
                continue
            new_site = kernel.shifted_site(site)
            base_deg = state.degree()
            for removed, w_t, deg_t in contraction_patterns(kernel, state.mono):
                residual = _remove_from(state.mono, removed)
                res_deg = base_deg - deg_t
                cw = zero * w_t
                # allowed creation degrees (integers)
                if window is not None:
                    start = max(0, ceil(lo - zf + deg_t))
                    stop = floor(hi - zf + deg_t)
                else:
                    start, stop = 0, D - res_deg
                if D is not None:
                    stop = min(stop, D - res_deg)
                if stop < start:
                    continue
                for u_deg in range(start, stop + 1):
                    if window is not None:
                        e = zf + u_deg - deg_t
                        if not (lo <= e <= hi):
                            continue
                    else:
                        e = zf + u_deg - deg_t
                    for u_add, w_u in kernel.creation_terms(u_deg):
                        new_mono = _merge_mono(residual, u_add)
                        tgt = out.setdefault(e, FockVector())
                        tgt.add_into(FockState(new_site, new_mono), cw * w_u)
    return {e: v for e, v in out.items() if not v.is_zero()}


def extract_mode(params, ksum, convention, n, vec, D=None):
    """Coefficient of z^{-n-1} (convention 'n_plus_1') or z^{-n} ('n').

    The extraction is done per source site: the creation degree needed to
    land on the requested power must be a nonnegative integer relative to
    the site's zero-mode z-exponent; a fractional offset raises
    ModeOffsetError (modes of this operator are undefined on that lattice).
    """
    if convention == "n_plus_1":
        target = Frac(-n - 1)
    elif convention == "n":
        target = Frac(-n)
    else:
        raise ValueError("unknown mode convention %r" % convention)
    out = FockVector()
    for state, cin in vec.terms.items():
        # feasibility: offset must be integral for at least the site lattice
        for _, z_off, kernel in ksum.terms:
            zf = kernel.z_form.value(state.site) + z_off
            if (target - zf).denominator != 1:
                raise ModeOffsetError(
                    "mode at z^%s undefined on site %r (offset %s)"
                    % (target, state.site, target - zf)
                )
        res = apply_kernelsum(
            params, ksum, FockVector({state: cin}), D=D, window=(target, target)
        )
        if target in res:
            out = out + res[target]
    return out


def compose_apply(params, stages, vec, D, D_int, windows):
    """Apply stages right to left; stages[i] pairs with windows[i].

    stages: sequence of KernelSum (leftmost first, as written on paper);
    windows: matching sequence of (lo, hi) exponent windows.  Intermediate
    vectors are truncated at D_int, the final one at D.  Returns a map
    {(e_1, ..., e_k): FockVector} with exponents ordered like stages.
    """
    if D_int < D:
        raise TruncationError("D_int must be >= D")
    if len(stages) != len(windows):
        raise TruncationError("need one window per stage")
    current = {(): vec}
    for idx in range(len(stages) - 1, -1, -1):
        ksum = stages[idx]
        win = windows[idx]
        cap = D if idx == 0 else D_int
        new = {}
        for exps, v in current.items():
            res = apply_kernelsum(params, ksum, v, D=cap, window=win)
            for e, w in res.items():
                key = (e,) + exps
                if key in new:
                    new[key] = new[key] + w
                else:
                    new[key] = w
        current = {k: v for k, v in new.items() if not v.is_zero()}
    return current


# ---------------------------------------------------------------------------
# single-mode ladder operators (the Drinfeld H^j_n act as plain modes)

def apply_creation_mode(fam, n, vec):
    out = FockVector()
    for state, c in vec.terms.items():
        d = mono_to_dict(state.mono)
        d[(fam, n)] = d.get((fam, n), 0) + 1
        out.add_into(FockState(state.site, mono_from_dict(d)), c)
    return out


def apply_annihilation_mode(fam, n, vec):
    out = FockVector()
    p = PARTNER[fam]
    for state, c in vec.terms.items():
        m = 0
        for nn, mm in state.mono[p]:
            if nn == n:
                m = mm
                break
        if not m:
            continue
        d = mono_to_dict(state.mono)
        d[(p, n)] -= 1
        if d[(p, n)] == 0:
            del d[(p, n)]
        out.add_into(
            FockState(state.site, mono_from_dict(d)), c * pairing(fam, p, n) * m
        )
    return out


def apply_h_mode(fam, n, vec):
    """A^j_n / c_n for n != 0: creation for n < 0, annihilation for n > 0."""
    if n == 0:
        raise ValueError("zero modes act diagonally; use site eigenvalues")
    if n < 0:
        return apply_creation_mode(fam, -n, vec)
    return apply_annihilation_mode(fam, n, vec)


# ---------------------------------------------------------------------------
# kernel construction from boson-factor specs

def boson_factor(fam, sign, kappa=0, arg_power=0, dual=False):
    """Factor spec for sign * H-type current of one family.

    fam: oscillator family the modes belong to; sign: +1/-1 multiplying the
    whole current; kappa: the q^{kappa n} regularization; arg_power j: the
    argument is q^j z; dual: use the starred normalization (modes divided
    by q^n + q^-n, zero modes halved).
    """
    return {
        "fam": fam, "sign": Frac(sign), "kappa": Frac(kappa),
        "arg": Frac(arg_power), "dual": bool(dual),
    }


def plus_minus_tail(fam, updown):
    """Annihilation (updown=+1) or creation (updown=-1) tail of psi-type."""
    return {"fam": fam, "tail": updown}


def build_kernel(factors, tails=(), phase_c0=0, prefactor=ONE, parity=0, label=""):
    """Assemble an ExpKernel from boson factors and psi tails."""
    cre_specs = {A1: [], A2: [], C: []}
    ann_specs = {A1: [], A2: [], C: []}
    shift = [Frac(0), Frac(0), Frac(0)]
    zf = AffineForm()
    qf = AffineForm()
    for f in factors:
        fam, s, kappa, arg, dual = f["fam"], f["sign"], f["kappa"], f["arg"], f["dual"]
        scale = Frac(1, 2) if dual else Frac(1)
        shift[fam] += s * scale
        sel = {A1: AffineForm(c1=1), A2: AffineForm(c2=1), C: AffineForm(cc=1)}[fam]
        zf = zf + sel.scaled(s * scale)
        if arg:
            qf = qf + sel.scaled(s * scale * arg)
        cre_specs[fam].append((s, kappa, arg, dual))
        ann_specs[fam].append((s, kappa, arg, dual))
    for t in tails:
        fam, ud = t["fam"], t["tail"]
        sel = {A1: AffineForm(c1=1), A2: AffineForm(c2=1), C: AffineForm(cc=1)}[fam]
        qf = qf + sel.scaled(ud)
        if ud > 0:
            ann_specs[fam].append(("tail+",))
        else:
            cre_specs[fam].append(("tail-",))

    def make_cre(fam):
        specs = cre_specs[fam]
        if not specs:
            return None

        def fn(n, specs=specs, fam=fam):
            total = ZERO
            for sp in specs:
                if sp[0] == "tail-":
                    total = total - (qpow(1) - qpow(-1))
                else:
                    s, kappa, arg, dual = sp
                    c = qpow(kappa * n + arg * n) / qint(n)
                    if dual:
                        c = c / (qpow(n) + qpow(-n))
                    total = total + c * s
            return total

        return fn

    def make_ann(fam):
        specs = ann_specs[fam]
        if not specs:
            return None

        def fn(n, specs=specs, fam=fam):
            total = ZERO
            for sp in specs:
                if sp[0] == "tail+":
                    total = total + (qpow(1) - qpow(-1))
                else:
                    s, kappa, arg, dual = sp
                    c = qpow(kappa * n - arg * n) / qint(n)
                    if dual:
                        c = c / (qpow(n) + qpow(-n))
                    total = total - c * s
            return total

        return fn

    creation = {}
    annihilation = {}
    for f in (A1, A2, C):
        fn = make_cre(f)
        if fn is not None:
            creation[f] = fn
        fn = make_ann(f)
        if fn is not None:
            annihilation[f] = fn
    return ExpKernel(
        creation, annihilation, tuple(shift), zf, qf,
        AffineForm(cc=phase_c0), prefactor, parity, label,
    )
