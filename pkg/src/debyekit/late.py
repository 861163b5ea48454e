"""Late-index behavior of the expansion coefficients.

The coefficients U_n(i cot beta) and d_{2n} grow factorially, and their
growth is governed by the early coefficients of the same family through
inverse-factorial series: each term trades one power of the singulant
for one Gamma-ratio step down. Truncating such a series at index M
leaves a remainder that is bounded by the first omitted shape, which
makes the approximation self-validating.

For U_n two singulant scales contribute, 2(tan beta - beta) and
2(tan beta - beta + pi). The second is exponentially small in n for
most beta but takes over near beta = pi/2, where tan beta - beta
crosses pi. Keeping only the first series recovers the classical
formal expansion (u_late_dingle); keeping both gives a convergent-in-
practice approximation with a computable bound (u_late).

For d_{2n} a single series in thirds-of-Gamma steps applies, and the
bound's shape depends on M mod 3 because every third weight vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from . import coeffs
from .precision import (
    CpxHP,
    PrecisionContext,
    RealHP,
    default_context,
    working,
)

__all__ = [
    "LatePrediction",
    "beta0_constant",
    "d_late",
    "format_mantissa",
    "meissel_lambda",
    "optimal_M",
    "table1_rows",
    "table2_rows",
    "u_late",
    "u_late_dingle",
]


def _beta_value(beta):
    """Angle as an mpf at the current precision.

    A Fraction is read as that multiple of pi, so callers can hand over
    'pi/6' exactly and every retry pass rebuilds it at its own dps.
    """
    if isinstance(beta, Fraction):
        return mp.pi * beta.numerator / beta.denominator
    return mp.mpf(beta)


@dataclass(frozen=True)
class LatePrediction:
    """Inverse-factorial approximation to a late coefficient.

    first_part and second_part are the two singulant contributions
    (second_part is zero for the turning-point family); err_bound
    dominates |value - exact| by construction of the remainder.
    """

    n: int
    M: int
    value: CpxHP
    err_bound: RealHP
    first_part: CpxHP
    second_part: CpxHP


def _gamma_ratio_chain(n: int, M: int):
    """[Gamma(n - m)/Gamma(n) for m = 0..M], by downward recurrence.

    Division step by step instead of Gamma quotients; the quotients
    themselves would juggle 10^100-scale intermediates at n = 50.
    """
    g = [mp.mpf(1)]
    for m in range(M):
        g.append(g[-1] / (n - m - 1))
    return g


def u_late(n: int, beta, M: int, ctx: PrecisionContext | None = None) -> LatePrediction:
    """Two-singulant inverse-factorial approximation to U_n(i cot beta)."""
    ctx = ctx or default_context()
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= M <= n - 1:
        raise ValueError("need 0 <= M <= n - 1")
    # The series terms are real with alternating sign (each i^m from the
    # coefficient meets an i^m from the singulant power), so they cancel;
    # rerun with the measured loss restored before trusting the sum.
    extra = 12
    for _ in range(4):
        with working(ctx, extra=extra):
            b = _beta_value(beta)
            if not (0 < b < mp.pi / 2):
                raise ValueError("beta must lie in (0, pi/2)")
            s = mp.tan(b) - b
            ic = 1j / mp.tan(b)
            g = _gamma_ratio_chain(n, M)
            wctx = ctx.bumped(extra - 8) if extra > 8 else ctx
            uv = [coeffs.u_eval(m, ic, wctx) for m in range(M)]
            uM = coeffs.u_abs_eval(M, b, ctx)
            gam_n = mp.gamma(n)

            z1 = 2j * s
            z2 = 2j * (s + mp.pi)
            ser1 = mp.mpc(0)
            ser2 = mp.mpc(0)
            peak = mp.mpf(0)
            for m in range(M):
                t1 = z1**m * uv[m] * g[m]
                t2 = z2**m * uv[m] * g[m]
                ser1 += t1
                ser2 += t2
                peak = max(peak, abs(t1), abs(t2))
            small = min(abs(ser1), abs(ser2))
            loss = (
                float(mp.log10(peak / small)) if peak > 0 and small > 0 else 0.0
            )
            if loss <= extra - 8:
                pass
            else:
                extra = int(loss) + 15
                continue
            sign = mp.mpf(-1) ** n
            part1 = sign * gam_n / (2 * mp.pi * z1**n) * ser1
            part2 = sign * gam_n / (2 * mp.pi * z2**n) * ser2
            bound1 = gam_n / (2 * mp.pi * (2 * s) ** n) * (2 * s) ** M * uM * g[M]
            bound2 = (
                gam_n
                / (2 * mp.pi * (2 * (s + mp.pi)) ** n)
                * (2 * (s + mp.pi)) ** M
                * uM
                * g[M]
            )
            break
    with working(ctx, extra=10):
        return LatePrediction(
            n=n,
            M=M,
            value=+(part1 + part2),
            err_bound=+(bound1 + bound2),
            first_part=+part1,
            second_part=+part2,
        )


def u_late_dingle(n: int, beta, M: int, ctx: PrecisionContext | None = None) -> CpxHP:
    """First-singulant series alone, the classical formal expansion."""
    ctx = ctx or default_context()
    p = u_late(n, beta, M, ctx)
    return +p.first_part


def d_late(n: int, M: int, ctx: PrecisionContext | None = None) -> LatePrediction:
    """Inverse-factorial approximation to d_{2n} in thirds-of-Gamma steps.

    The error bound keeps whichever of the M-th and (M+1)-st shapes
    survive: both for M = 0 mod 3, only the second for M = 1 mod 3
    (the M-th weight vanishes), only the first for M = 2 mod 3 (the
    next weight vanishes).
    """
    ctx = ctx or default_context()
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 <= M <= n - 2:
        raise ValueError("need 0 <= M <= n - 2")
    with working(ctx, extra=10):
        two_pi = 2 * mp.pi
        gam_top = mp.gamma((2 * n + mp.mpf(1)) / 3)
        ser = mp.mpf(0)
        for m in range(M):
            w = mp.sin((2 * m + 1) * mp.pi / 3)
            if w == 0:
                continue
            ser += (
                mp.mpf(-1) ** m
                * (2 * mp.sqrt(3) / 3)
                * two_pi ** (mp.mpf(2 * m) / 3)
                * coeffs.d_coeff(m).value(ctx)
                * w
                * mp.gamma((2 * m + mp.mpf(1)) / 3)
                * mp.gamma(mp.mpf(2 * (n - m)) / 3)
                / gam_top
            )
        outer = mp.mpf(-1) ** n / (mp.sqrt(3) * mp.pi * two_pi ** (mp.mpf(2 * n) / 3))
        value = outer * ser

        termA = (
            two_pi ** (mp.mpf(2 * M) / 3)
            * coeffs.d_abs_eval(M, ctx)
            * mp.gamma((2 * M + mp.mpf(1)) / 3)
            * mp.gamma(mp.mpf(2 * (n - M)) / 3)
            / gam_top
        )
        termB = (
            two_pi ** (mp.mpf(2 * M + 2) / 3)
            * coeffs.d_abs_eval(M + 1, ctx)
            * mp.gamma((2 * M + mp.mpf(3)) / 3)
            * mp.gamma(mp.mpf(2 * (n - M - 1)) / 3)
            / gam_top
        )
        r = M % 3
        if r == 0:
            abound = termA + termB
        elif r == 1:
            abound = termB
        else:
            abound = termA
        return LatePrediction(
            n=n,
            M=M,
            value=+mp.mpc(value),
            err_bound=+(abs(outer) * abound),
            first_part=+mp.mpc(value),
            second_part=mp.mpc(0),
        )


def beta0_constant(ctx: PrecisionContext | None = None) -> RealHP:
    """6^(1/3) Gamma(5/3) / (4 Gamma(1/3)), about 0.1530827453."""
    ctx = ctx or default_context()
    with working(ctx):
        return +(
            mp.mpf(6) ** (mp.mpf(1) / 3)
            * mp.gamma(mp.mpf(5) / 3)
            / (4 * mp.gamma(mp.mpf(1) / 3))
        )


def meissel_lambda(n: int, ctx: PrecisionContext | None = None):
    """(exact, asymptotic) for (-1)^n 6^(-(2n+1)/3) d_{2n} / (2n + 1)."""
    ctx = ctx or default_context()
    if n < 1:
        raise ValueError("n must be >= 1")
    with working(ctx, extra=5):
        exact = (
            mp.mpf(-1) ** n
            * mp.mpf(6) ** (-(2 * n + mp.mpf(1)) / 3)
            * coeffs.d_coeff(n).value(ctx)
            / (2 * n + 1)
        )
        asym = 1 / (
            mp.mpf(18) ** (mp.mpf(1) / 3)
            * mp.gamma(mp.mpf(2) / 3)
            * (n + mp.mpf(1) / 3) ** (mp.mpf(4) / 3)
            * (12 * mp.pi) ** (mp.mpf(2 * n) / 3)
        )
        return +exact, +asym


def optimal_M(n: int, regime: str, beta=None, ctx: PrecisionContext | None = None) -> int:
    """Index of the least computable bound, close to n/2 for large n."""
    ctx = ctx or default_context()
    if regime == "oblique":
        if beta is None:
            raise ValueError("oblique optimum needs beta")
        if n < 2:
            raise ValueError("n must be >= 2")
        best, best_m = None, 0
        for M in range(0, n):
            bnd = u_late(n, beta, M, ctx).err_bound
            if best is None or bnd < best:
                best, best_m = bnd, M
        return best_m
    if regime != "turning":
        raise ValueError("regime must be oblique or turning")
    if n < 2:
        raise ValueError("n must be >= 2")
    best, best_m = None, 0
    for M in range(0, n - 1):
        bnd = d_late(n, M, ctx).err_bound
        if best is None or bnd < best:
            best, best_m = bnd, M
    return best_m


def format_mantissa(value, sig: int = 23) -> str:
    """Scientific string with the mantissa in [0.1, 1): '-0.d...d*10^E'.

    The mantissa is truncated toward zero at the sig-th digit, not
    rounded; that is the convention the reference tables follow, and
    it keeps every printed digit a true digit of the value.
    """
    with mp.workdps(sig + 15):
        v = mp.mpf(value) if not isinstance(value, mp.mpc) else mp.mpf(value.real)
        if v == 0:
            return "0." + "0" * sig + "*10^0"
        neg = v < 0
        a = abs(v)
        e = int(mp.floor(mp.log10(a))) + 1
        d = int(mp.floor(a * mp.mpf(10) ** (sig - e)))
        if d >= 10**sig:
            d //= 10
            e += 1
        body = str(d).zfill(sig)
        return "%s0.%s*10^%d" % ("-" if neg else "", body, e)


# Angles kept as exact fractions of pi; the mpf value is built inside
# the working context so no import-time rounding leaks in.
_TABLE1_BETAS = (
    ("pi/6", Fraction(1, 6)),
    ("pi/3", Fraction(1, 3)),
    ("6pi/13", Fraction(6, 13)),
    ("7pi/15", Fraction(7, 15)),
)


def table1_rows(ctx: PrecisionContext | None = None, n: int = 50, M: int = 25):
    """Late-coefficient showcase for U_n(i cot beta) at four angles.

    Each row carries the exact value, the one-series and two-series
    approximations, their signed errors (exact minus approximation),
    and the computable bound.
    """
    ctx = ctx or default_context()
    rows = []
    for label, frac in _TABLE1_BETAS:
        # The exact column cancels by roughly 10^(n/2), which amplifies
        # any rounding already sitting in the angle; build the argument
        # with that many digits of cushion before evaluating.
        with working(ctx, extra=12 + n):
            b = mp.pi * frac.numerator / frac.denominator
            exact = coeffs.u_eval(n, 1j / mp.tan(b), ctx.bumped(6))
        with working(ctx, extra=10):
            pred = u_late(n, frac, M, ctx)
            one = pred.first_part
            rows.append(
                {
                    "beta": label,
                    "n": n,
                    "M": M,
                    "exact": +exact,
                    "one_series": +one,
                    "one_series_error": +(exact - one),
                    "two_series": +pred.value,
                    "two_series_error": +(exact - pred.value),
                    "bound": +pred.err_bound,
                }
            )
    return rows


_TABLE2_CASES = ((5, 2), (10, 5), (25, 12), (50, 25))


def table2_rows(ctx: PrecisionContext | None = None):
    """Late-coefficient showcase for d_{2n} at four (n, M) pairs."""
    ctx = ctx or default_context()
    rows = []
    for n, M in _TABLE2_CASES:
        with working(ctx, extra=10):
            exact = coeffs.d_coeff(n).value(ctx)
            pred = d_late(n, M, ctx)
            rows.append(
                {
                    "n": n,
                    "M": M,
                    "exact": +mp.mpc(exact),
                    "approx": +pred.value,
                    "error": +(exact - pred.value),
                    "bound": +pred.err_bound,
                }
            )
    return rows
