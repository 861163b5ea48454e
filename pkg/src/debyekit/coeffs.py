"""Exact generation of the two Debye coefficient families.

U_n(x) is the degree-3n polynomial family entering the oblique (x > 1)
expansions through U_n(i cot beta); d_{2n} is the scalar family entering the
turning-point (x = 1) expansions. Every value is produced by exact rational
arithmetic (fractions.Fraction) through several genuinely independent
algorithms:

  U_n:  derivative/antiderivative recurrence, the u_{n,k} two-term
        recurrence of Meijer type, Bell polynomial form, Potential
        polynomial form (also reachable through Comtet's complex-parameter
        reduction).
  d_2n: Lauwerier's linear recurrence (P_n polynomials, with the Laplace
        integral reduced in closed form), Bell polynomial form, and the
        generalised Bernoulli polynomial route.

Floats appear only at evaluation time, via a PrecisionContext. Each d_{2n}
is an exact rational times 6^(j/3), j in {0,1,2}, and is stored that way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath as mp

from .precision import PrecisionContext, PoleError, working

__all__ = [
    "UPolynomial",
    "DCoefficient",
    "SeriesCoeffs",
    "PolyTables",
    "u_poly",
    "u_coeff_meijer",
    "u_eval",
    "u_abs_eval",
    "u_via_bell",
    "u_via_potential",
    "comtet_potential",
    "d_coeff",
    "d_abs_eval",
    "d_via_bell",
    "d_via_bernoulli",
    "generalized_bernoulli",
]


# ----------------------------------------------------------------------
# small exact-polynomial helper (coefficients in Q, one variable)

def _padd(p, q):
    r = dict(p)
    for e, c in q.items():
        r[e] = r.get(e, Fraction(0)) + c
        if r[e] == 0:
            del r[e]
    return r


def _pmul(p, q):
    r = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            r[e] = r.get(e, Fraction(0)) + c1 * c2
    return {e: c for e, c in r.items() if c != 0}


def _pscale(p, s):
    s = Fraction(s)
    if s == 0:
        return {}
    return {e: c * s for e, c in p.items()}


def _peval(p, x):
    # straight power evaluation; polynomials here are short and sparse
    acc = mp.mpf(0) * x if p else mp.mpf(0)
    acc = mp.mpc(0)
    for e, c in p.items():
        acc += (mp.mpf(c.numerator) / c.denominator) * x ** e
    return acc


@dataclass(frozen=True)
class UPolynomial:
    """U_n as an exact polynomial: terms maps exponent -> Fraction.

    Only exponents with the parity of n occur, the lowest is n and the
    highest is 3n (for n >= 1).
    """

    n: int
    terms: dict = field(default_factory=dict)

    def __call__(self, x):
        """Evaluate at an mpmath scalar using exact coefficients."""
        ks = sorted(self.terms)
        if not ks:
            return mp.mpc(0)
        # Horner in y = x^2 over the common factor x^low
        low, top = ks[0], ks[-1]
        y = x * x
        acc = mp.mpc(0)
        e = top
        while e >= low:
            c = self.terms.get(e, Fraction(0))
            acc = acc * y + mp.mpf(c.numerator) / c.denominator
            e -= 2
        return acc * x ** low

    @property
    def degree(self):
        return max(self.terms) if self.terms else 0


@dataclass(frozen=True)
class DCoefficient:
    """d_{2n} stored exactly as rat * 6^(j/3) with j = (2n+1) mod 3."""

    n: int
    rat: Fraction
    j: int

    def value(self, ctx: PrecisionContext):
        with working(ctx):
            v = mp.mpf(self.rat.numerator) / self.rat.denominator
            if self.j:
                v *= mp.mpf(6) ** (mp.mpf(self.j) / 3)
            return +v

    def __repr__(self):
        if self.j == 0:
            return "DCoefficient(n=%d, %s)" % (self.n, self.rat)
        return "DCoefficient(n=%d, %s * 6^(%d/3))" % (self.n, self.rat, self.j)


@dataclass(frozen=True)
class SeriesCoeffs:
    """The two Maclaurin coefficient sequences feeding the Bell/Potential
    machinery.

    kind "a": x(t - sinh t) + cosh t - 1 = sum a_k t^(k+2),
              a_{2k} = 1/(2k+2)!, a_{2k+1} = -x/(2k+3)!  (polynomials in x)
    kind "b": sinh t - t = sum b_k t^(k+3),
              b_{2k} = 1/(2k+3)!, b_{2k+1} = 0           (pure rationals)

    values[k] is a {exponent: Fraction} dict in x for kind "a" and a plain
    Fraction for kind "b".
    """

    kind: str
    values: tuple

    @staticmethod
    def a_series(count: int) -> "SeriesCoeffs":
        vals = []
        for k in range(count):
            if k % 2 == 0:
                vals.append({0: Fraction(1, factorial(k + 2))})
            else:
                vals.append({1: Fraction(-1, factorial(k + 2))})
        return SeriesCoeffs("a", tuple(vals))

    @staticmethod
    def b_series(count: int) -> "SeriesCoeffs":
        vals = []
        for k in range(count):
            vals.append(Fraction(1, factorial(k + 3)) if k % 2 == 0 else Fraction(0))
        return SeriesCoeffs("b", tuple(vals))


@dataclass(frozen=True)
class PolyTables:
    """Bell table B_{n,k} and Potential table A_{k,n} for one series kind."""

    kind: str
    bell: dict
    potential: dict


# ----------------------------------------------------------------------
# U_n by the derivative/antiderivative recurrence

@lru_cache(maxsize=None)
def u_poly(n: int) -> UPolynomial:
    """U_n(x) by U_n = x^2(1-x^2)/2 * U'_{n-1} + 1/8 int_0^x (1-5t^2) U_{n-1} dt."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return UPolynomial(0, {0: Fraction(1)})
    prev = u_poly(n - 1).terms
    # derivative part: x^2/2 (1 - x^2) U'
    dpart = {}
    for e, c in prev.items():
        if e == 0:
            continue
        dc = c * e
        dpart[e + 1] = dpart.get(e + 1, Fraction(0)) + dc / 2
        dpart[e + 3] = dpart.get(e + 3, Fraction(0)) - dc / 2
    # integral part: 1/8 int (1 - 5 t^2) U dt
    ipart = {}
    for e, c in prev.items():
        ipart[e + 1] = ipart.get(e + 1, Fraction(0)) + c / (8 * (e + 1))
        ipart[e + 3] = ipart.get(e + 3, Fraction(0)) - 5 * c / (8 * (e + 3))
    terms = _padd(dpart, ipart)
    return UPolynomial(n, terms)


@lru_cache(maxsize=None)
def u_coeff_meijer(n_max: int):
    """Table u_{n,k}, 0 <= k <= n <= n_max, from the two-term recurrence.

    U_n(x) = (2n)!/(2^(2n) n!) x^n sum_k u_{n,k} x^(2k).
    """
    u = {(0, 0): Fraction(1)}
    for n in range(1, n_max + 1):
        for k in range(0, n + 1):
            t1 = u.get((n - 1, k), Fraction(0))
            t2 = u.get((n - 1, k - 1), Fraction(0))
            c = Fraction(2 * n + 4 * k - 1, 4 * (2 * n - 1) * (n + 2 * k))
            u[(n, k)] = c * ((2 * n + 4 * k - 1) * t1 - (2 * n + 4 * k - 5) * t2)
    return u


def u_from_meijer(n: int) -> UPolynomial:
    """Reconstruct the exact polynomial from the u_{n,k} table."""
    tab = u_coeff_meijer(n)
    pref = Fraction(factorial(2 * n), 2 ** (2 * n) * factorial(n))
    terms = {}
    for k in range(0, n + 1):
        c = pref * tab[(n, k)]
        if c != 0:
            terms[n + 2 * k] = c
    return UPolynomial(n, terms)


def u_eval(n: int, x, ctx: PrecisionContext):
    """U_n evaluated at an mpmath scalar x at context precision.

    On the imaginary axis the terms alternate and can tower over the
    value by tens of orders once n reaches a few dozen, so the sum
    watches its own cancellation and reruns with the lost digits
    restored before rounding to the requested precision.
    """
    poly = u_poly(n)
    ks = sorted(poly.terms)
    extra = 12
    val = mp.mpc(0)
    for _ in range(4):
        with working(ctx, extra=extra):
            xv = mp.mpmathify(x)
            if not ks:
                val = mp.mpc(0)
                break
            low, top = ks[0], ks[-1]
            y = xv * xv
            cur = xv**low
            val = mp.mpc(0)
            peak = mp.mpf(0)
            for e in range(low, top + 1, 2):
                c = poly.terms.get(e)
                if c is not None:
                    term = mp.mpf(c.numerator) / c.denominator * cur
                    val += term
                    peak = max(peak, abs(term))
                cur *= y
            if val == 0 or peak == 0:
                break
            loss = float(mp.log10(peak / abs(val)))
            if loss <= extra - 8:
                break
        extra = int(loss) + 15
    with working(ctx):
        return +mp.mpc(val)


def u_abs_eval(n: int, beta, ctx: PrecisionContext):
    """|U_n(i cot beta)| for real 0 < beta < pi/2 at context precision.

    U_n(i cot beta) = i^n * (real), so the modulus is just abs of the
    cancellation-compensated evaluation on the imaginary axis.
    """
    with working(ctx, extra=5):
        x = mp.mpc(0, 1) * mp.cot(mp.mpf(beta))
        inner = u_eval(n, x, ctx.bumped(5))
    with working(ctx):
        return +abs(inner)


# ----------------------------------------------------------------------
# Bell / Potential tables

@lru_cache(maxsize=None)
def _tables(kind: str, n_max: int) -> PolyTables:
    """Bell B_{n,k} and Potential A_{k,n} up to index n_max, memoized.

    For kind "a" entries are {exponent: Fraction} polynomials in x, for
    kind "b" they are Fractions. The recurrences are
        B_{n,k} = sum_{j=1}^{n-k+1} c_j B_{n-j,k-1}
        A_{k,n} = sum_{j=0}^{n} (c_j/c_0) A_{k-1,n-j}
    with c the series coefficients.
    """
    series = SeriesCoeffs.a_series(n_max + 1) if kind == "a" else SeriesCoeffs.b_series(n_max + 1)
    if kind == "a":
        one, zero = {0: Fraction(1)}, {}
        def mul(p, q):
            return _pmul(p, q)
        def add(p, q):
            return _padd(p, q)
        def scale(p, s):
            return _pscale(p, s)
        c0_inv = Fraction(1, 1) / series.values[0][0]  # 1/a_0 = 2
        def over_c0(p):
            return _pscale(p, c0_inv)
    else:
        one, zero = Fraction(1), Fraction(0)
        def mul(p, q):
            return p * q
        def add(p, q):
            return p + q
        def scale(p, s):
            return p * s
        c0_inv = 1 / series.values[0]  # 1/b_0 = 6
        def over_c0(p):
            return p * c0_inv

    cs = series.values
    B = {(0, 0): one}
    for nn in range(1, n_max + 1):
        B[(nn, 0)] = zero
    for k in range(1, n_max + 1):
        for nn in range(k, n_max + 1):
            acc = zero
            for j in range(1, nn - k + 2):
                prev = B.get((nn - j, k - 1), zero)
                acc = add(acc, mul_or_scale(kind, cs[j], prev, mul, scale))
            B[(nn, k)] = acc

    A = {(0, 0): one}
    for nn in range(1, n_max + 1):
        A[(0, nn)] = zero
    for k in range(1, n_max + 1):
        for nn in range(0, n_max + 1):
            acc = zero
            for j in range(0, nn + 1):
                prev = A.get((k - 1, nn - j), zero)
                if j == 0:
                    acc = add(acc, prev)
                else:
                    acc = add(acc, mul_or_scale(kind, over_c0(cs[j]), prev, mul, scale))
            A[(k, nn)] = acc
    return PolyTables(kind, B, A)


def mul_or_scale(kind, coeff, entry, mul, scale):
    # both tables multiply a series coefficient into a table entry; for the
    # "a" kind the coefficient is itself a polynomial in x
    if kind == "a":
        return mul(coeff, entry)
    return scale(entry, coeff)


def _poch_half(start: Fraction, count: int) -> Fraction:
    """Rising product start(start+1)...(start+count-1) as an exact Fraction."""
    acc = Fraction(1)
    v = Fraction(start)
    for _ in range(count):
        acc *= v
        v += 1
    return acc


def u_bell_exact(n: int) -> UPolynomial:
    """Bell-polynomial closed form of U_n, reduced to an exact polynomial.

    U_n(x) = (-1)^n (2x)^n sum_{k=0}^{2n} (-1)^k 2^k Gamma(n+k+1/2)
             / (sqrt(pi) k!) B_{2n,k},
    where Gamma(n+k+1/2)/Gamma(1/2) is the exact rising product
    (1/2)(3/2)...(n+k-1/2).
    """
    tabs = _tables("a", 2 * n)
    acc = {}
    for k in range(0, 2 * n + 1):
        g = _poch_half(Fraction(1, 2), n + k)
        c = Fraction((-1) ** k * 2 ** k, factorial(k)) * g
        acc = _padd(acc, _pscale(tabs.bell.get((2 * n, k), {}), c))
    pref = {n: Fraction((-1) ** n * 2 ** n)}
    return UPolynomial(n, _pmul(pref, acc))


def u_potential_exact(n: int) -> UPolynomial:
    """Potential-polynomial closed form of U_n as an exact polynomial."""
    tabs = _tables("a", 2 * n)
    acc = {}
    for k in range(0, 2 * n + 1):
        c = Fraction((-1) ** k * comb(2 * n, k), 2 * n + 2 * k + 1)
        acc = _padd(acc, _pscale(tabs.potential.get((k, 2 * n), {}), c))
    g = 2 * _poch_half(Fraction(1, 2), 3 * n + 1)  # 2 Gamma(3n+3/2)/sqrt(pi)
    pref = {n: Fraction((-1) ** n * 2 ** n) * g / factorial(2 * n)}
    return UPolynomial(n, _pmul(pref, acc))


def u_via_bell(n: int, x, ctx: PrecisionContext):
    with working(ctx):
        return +(u_bell_exact(n)(mp.mpmathify(x)))


def u_via_potential(n: int, x, ctx: PrecisionContext):
    with working(ctx):
        return +(u_potential_exact(n)(mp.mpmathify(x)))


def comtet_potential(rho: Fraction, k: int, kind: str = "b"):
    """A_{rho,k} for rational rho from the integer-parameter potentials:

    A_{rho,k} = Gamma(-rho+k+1)/(k! Gamma(-rho))
                * sum_{j=0}^k (-1)^j/(-rho+j) C(k,j) A_{j,k}

    The Gamma ratio is the exact product prod_{i=0}^{k} (-rho+i). Returns a
    Fraction for the "b" series and an {exponent: Fraction} polynomial in x
    for the "a" series. Raises PoleError when rho is a nonnegative integer
    <= k (Gamma(-rho) pole makes the reduction meaningless there).
    """
    rho = Fraction(rho)
    if rho.denominator == 1 and 0 <= rho.numerator <= k:
        raise PoleError("comtet reduction undefined for integer rho=%s <= k" % (rho,))
    tabs = _tables(kind, k)
    ratio = Fraction(1)
    for i in range(0, k + 1):
        ratio *= -rho + i
    ratio /= factorial(k)
    if kind == "b":
        acc = Fraction(0)
        for j in range(0, k + 1):
            acc += Fraction((-1) ** j * comb(k, j), 1) / (-rho + j) * tabs.potential[(j, k)]
        return ratio * acc
    acc = {}
    for j in range(0, k + 1):
        c = Fraction((-1) ** j * comb(k, j), 1) / (-rho + j)
        acc = _padd(acc, _pscale(tabs.potential[(j, k)], c))
    return _pscale(acc, ratio)


# ----------------------------------------------------------------------
# d_{2n}: Lauwerier route (source of record), Bell and Bernoulli routes

@lru_cache(maxsize=None)
def _lauwerier_poly(n: int):
    """P_n from P_n = - sum_{k=1}^n 1/(2k+3)! int_0^x P_{n-k}; P_0 = 1.

    Returned as {exponent: Fraction}. Degree of P_n is n.
    """
    if n == 0:
        return {0: Fraction(1)}
    acc = {}
    for k in range(1, n + 1):
        prev = _lauwerier_poly(n - k)
        integ = {e + 1: c / (e + 1) for e, c in prev.items()}
        acc = _padd(acc, _pscale(integ, Fraction(-1, factorial(2 * k + 3))))
    return acc


@lru_cache(maxsize=None)
def d_coeff(n: int) -> DCoefficient:
    """d_{2n}, exactly, through Lauwerier's recurrence.

    The Laplace integral int_0^inf t^((2n-2)/3) e^(-t/6) P_n(t) dt is read
    off termwise: each t^j coefficient contributes
    Gamma((2n+1)/3 + j) 6^((2n+1)/3 + j), and the Gamma ratio against the
    normalizing Gamma((2n+1)/3) is an exact rising product. The surviving
    6^((2n+1)/3) splits into 6^q * 6^(j/3) with j = (2n+1) mod 3.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    w = Fraction(2 * n + 1, 3)
    acc = Fraction(0)
    for e, c in _lauwerier_poly(n).items():
        acc += c * Fraction(6) ** e * _poch_half(w, e)
    q, r = divmod(2 * n + 1, 3)
    return DCoefficient(n, acc * Fraction(6) ** q, r)


def d_abs_eval(n: int, ctx: PrecisionContext):
    """|d_{2n}| at context precision."""
    return abs(d_coeff(n).value(ctx))


def d_bell_exact(n: int) -> DCoefficient:
    """Bell-polynomial closed form of d_{2n}, exact.

    d_{2n} = 6^((2n+1)/3)/Gamma((2n+1)/3)
             sum_k (-1)^k 6^k Gamma((2n+1)/3+k)/k! B_{2n,k}   (b-series).
    """
    tabs = _tables("b", 2 * n)
    w = Fraction(2 * n + 1, 3)
    acc = Fraction(0)
    for k in range(0, 2 * n + 1):
        acc += Fraction((-1) ** k * 6 ** k, factorial(k)) * _poch_half(w, k) * tabs.bell[(2 * n, k)]
    q, r = divmod(2 * n + 1, 3)
    return DCoefficient(n, acc * Fraction(6) ** q, r)


def d_via_bell(n: int, ctx: PrecisionContext):
    return d_bell_exact(n).value(ctx)


@lru_cache(maxsize=None)
def _sinh_half_pow(j: int, half_order: int):
    """Even series (2 sinh(z/2)/z)^j to z^(2*half_order), exact.

    Entry m is the z^(2m) coefficient. Since
    ((e^z - 1)/z)^j e^(-jz/2) = (2 sinh(z/2)/z)^j this generates
    B_{2m}^(-j)(-j/2)/(2m)!. Recursion on j makes repeated powers at the
    same truncation order cheap.
    """
    if j == 0:
        return (Fraction(1),) + (Fraction(0),) * half_order
    prev = _sinh_half_pow(j - 1, half_order)
    out = [Fraction(0)] * (half_order + 1)
    for a in range(half_order + 1):
        pa = prev[a]
        if pa == 0:
            continue
        for b in range(half_order + 1 - a):
            out[a + b] += pa * Fraction(1, 4 ** b * factorial(2 * b + 1))
    return tuple(out)


def generalized_bernoulli(m: int, kappa: int, lam) -> Fraction:
    """B_m^(kappa)(lambda) by exact series convolution.

    Generating function (z/(e^z - 1))^kappa e^(lambda z). Positive kappa
    goes through one series reciprocal; nonpositive kappa needs none.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    lam = Fraction(lam)
    order = m
    E = [Fraction(1, factorial(i + 1)) for i in range(order + 1)]
    if kappa >= 0:
        # R = 1/E by the standard reciprocal recurrence, then R^kappa
        R = [Fraction(1)] + [Fraction(0)] * order
        for i in range(1, order + 1):
            s = Fraction(0)
            for j in range(1, i + 1):
                s += E[j] * R[i - j]
            R[i] = -s
        base, power = R, kappa
    else:
        base, power = E, -kappa
    acc = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(power):
        nxt = [Fraction(0)] * (order + 1)
        for a in range(order + 1):
            if acc[a] == 0:
                continue
            for b in range(order + 1 - a):
                nxt[a + b] += acc[a] * base[b]
        acc = nxt
    val = Fraction(0)
    for a in range(order + 1):
        b = order - a
        val += acc[a] * lam ** b / factorial(b)
    return val * factorial(m)


def d_bernoulli_exact(n: int) -> DCoefficient:
    """d_{2n} through generalised Bernoulli polynomials, exact.

    A_{k,2n} = sum_j (-1)^(k-j) C(k,j) 2^(2n+2k) 6^k / (2n+2k)!
               * B_{2n+2k}^(-j)(-j/2),
    then the Potential closed form
    d_{2n} = 6^((2n+1)/3)/(2n)! * 3 Gamma(4(2n+1)/3)/Gamma((2n+1)/3)
             * sum_k (-1)^k/(2n+3k+1) C(2n,k) A_{k,2n}.
    """
    w = Fraction(2 * n + 1, 3)
    acc = Fraction(0)
    H = 3 * n  # largest half order needed: (2n + 2k)/2 at k = 2n
    for k in range(0, 2 * n + 1):
        order = 2 * n + 2 * k
        A = Fraction(0)
        for j in range(0, k + 1):
            Bval = _sinh_half_pow(j, H)[order // 2] * factorial(order)  # B_order^(-j)(-j/2)
            A += Fraction((-1) ** (k - j) * comb(k, j), 1) * Fraction(2 ** order * 6 ** k, factorial(order)) * Bval
        acc += Fraction((-1) ** k * comb(2 * n, k), 2 * n + 3 * k + 1) * A
    gratio = 3 * _poch_half(w, 2 * n + 1)  # 3 Gamma(4w)/Gamma(w), 4w - w = 2n+1
    q, r = divmod(2 * n + 1, 3)
    return DCoefficient(n, acc * gratio / factorial(2 * n) * Fraction(6) ** q, r)


def d_via_bernoulli(n: int, ctx: PrecisionContext):
    return d_bernoulli_exact(n).value(ctx)


if __name__ == "__main__":
    for n in range(4):
        print("U_%d =" % n, dict(sorted(u_poly(n).terms.items())))
    for n in range(6):
        print(d_coeff(n))
