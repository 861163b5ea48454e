"""Exponentially refined large-order expansions for H^(1) and the
smooth switch-on of the subdominant series.

The plain series truncated near its least term leaves a defect on the
scale of exp(-2|nu| g), g being the distance to the nearest singulant.
Re-expanding that defect as terminant-weighted sums over the early
coefficients pushes the floor down toward the next singulant, and the
terminant weights are what carry the error-function transition of the
recessive series as arg nu moves through -pi/2.

Two regimes are covered. Away from the turning point (argument
nu sec beta, 0 < beta < pi/2) the defect re-expands over two singulant
scales, 2(tan beta - beta) and 2(tan beta - beta + pi); the second one
drags in a modified coefficient family (tilde u below) whose integral
representation carries an extra exp(-2 pi t) damping. At the turning
point (argument exactly nu) both singulants sit at 2 pi and four
terminant sums appear, two per rotation direction.

All continued arguments follow the phase of nu itself: theta is the
continued arg nu, fractional powers of nu are taken as
|nu|^p exp(i p theta), and terminant arguments inherit theta - pi/2 or
theta + pi/2 without rewrapping.
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
    SectorError,
    default_context,
    exp_tail_cutoff,
    integrate_semiinfinite,
    working,
)
from .oracle import _kernel_ctx, ihankel_line
from .terminant import terminant

__all__ = [
    "TILDE_CAP",
    "ImprovedExpansion",
    "hankel1_improved_oblique",
    "hankel1_improved_turning",
    "improved_orders_oblique",
    "improved_orders_turning",
    "stokes_profile",
    "tilde_u",
    "u_split",
]

# The t^(m - 1/2) weight pushes the integrand's mass to t ~ m / (2(s+pi))
# and the quadrature cost grows with it; past this index the series terms
# are far below anything the remainder bounds can resolve anyway.
TILDE_CAP = 60

_TILDE_CACHE: dict = {}


def _beta_key(beta) -> float:
    return float(mp.mpf(beta))


def tilde_u(m: int, beta, ctx: PrecisionContext | None = None) -> CpxHP:
    """Modified coefficient tilde U_m(i cot beta), by quadrature.

    i^m / (2 sqrt(2 pi cot beta)) *
    int_0^inf t^(m - 1/2) e^(-t (tan beta - beta + 2 pi))
    i H^(1)_it(i t sec beta) dt.

    Same shape as the integral for U_m itself except that the weight
    keeps only the exp(-2 pi t) part, so |tilde U_m| <= |U_m| termwise
    and the two add up to |U_m| exactly (see u_split). Results are
    cached per (m, beta, digits). Capped at m <= TILDE_CAP.
    """
    ctx = ctx or default_context()
    if not 0 <= m <= TILDE_CAP:
        raise ValueError("tilde coefficients are capped at m <= %d" % TILDE_CAP)
    key = (m, _beta_key(beta), ctx.digits)
    hit = _TILDE_CACHE.get(key)
    if hit is not None:
        return +hit
    with working(ctx, extra=15):
        b = mp.mpf(beta)
        if not (0 < b < mp.pi / 2):
            raise ValueError("beta must lie in (0, pi/2)")
        x = 1 / mp.cos(b)
        s = mp.tan(b) - b
        pref = mp.mpc(1j) ** m / (2 * mp.sqrt(2 * mp.pi / mp.tan(b)))
        sf = float(s)
        weight = s + 2 * mp.pi
    rate = 2 * (sf + float(mp.pi))
    cut = exp_tail_cutoff(m + 0.5, rate, ctx.digits)

    def f(t):
        if float(t) > cut:
            return mp.mpf(0)
        ih = ihankel_line(t, x, _kernel_ctx(ctx), checked=False)
        return t ** (m - mp.mpf("0.5")) * mp.exp(-t * weight) * ih

    val = integrate_semiinfinite(
        f,
        rate,
        ctx,
        power_hint=max(m - 1, 0.0),
        singular_power=Fraction(-1, 2) if m == 0 else 0,
        panel_style="coarse",
    )
    with working(ctx, extra=15):
        out = +(mp.mpc(pref * val))
    _TILDE_CACHE[key] = out
    return +out


def u_split(m: int, beta, ctx: PrecisionContext | None = None):
    """(|U_m| - |tilde U_m|, |tilde U_m|) by separate quadratures.

    The first component integrates the plain e^(-t s) weight, the second
    the e^(-t (s + 2 pi)) weight; the kernel is positive so the split is
    additive in absolute value. Returns (main_abs, tail_abs).
    """
    ctx = ctx or default_context()
    if not 0 <= m <= TILDE_CAP:
        raise ValueError("split is capped at m <= %d" % TILDE_CAP)
    with working(ctx, extra=15):
        b = mp.mpf(beta)
        if not (0 < b < mp.pi / 2):
            raise ValueError("beta must lie in (0, pi/2)")
        x = 1 / mp.cos(b)
        s = mp.tan(b) - b
        scale = 1 / (2 * mp.sqrt(2 * mp.pi / mp.tan(b)))
        sf = float(s)
    cut = exp_tail_cutoff(m + 0.5, 2 * sf, ctx.digits)

    def f_main(t):
        if float(t) > cut:
            return mp.mpf(0)
        ih = ihankel_line(t, x, _kernel_ctx(ctx), checked=False)
        return t ** (m - mp.mpf("0.5")) * mp.exp(-t * s) * ih

    main = integrate_semiinfinite(
        f_main,
        2 * sf,
        ctx,
        power_hint=max(m - 1, 0.0),
        singular_power=Fraction(-1, 2) if m == 0 else 0,
        panel_style="coarse",
    )
    with working(ctx, extra=15):
        main_abs = +abs(mp.mpf(scale) * main)
        tail_abs = +abs(tilde_u(m, beta, ctx))
    return main_abs, tail_abs


def _round_half_up(x) -> int:
    n = int(mp.floor(mp.mpf(x) + mp.mpf("0.5")))
    return n


def improved_orders_oblique(nu_abs, beta) -> tuple:
    """Default truncation pair (N, M) at |nu|: the two least-term
    points 2|nu|(tan beta - beta) and 2|nu|(tan beta - beta + pi),
    ties rounded up."""
    b = mp.mpf(beta)
    s = mp.tan(b) - b
    N = max(_round_half_up(2 * mp.mpf(nu_abs) * s), 1)
    M = max(_round_half_up(2 * mp.mpf(nu_abs) * (s + mp.pi)), N)
    return N, M


def improved_orders_turning(nu_abs) -> tuple:
    """Default (N, M) at the turning point; both series stop near
    pi |nu|, ties rounded up."""
    N = max(_round_half_up(mp.pi * mp.mpf(nu_abs)), 1)
    return N, N


@dataclass(frozen=True)
class ImprovedExpansion:
    """A refined evaluation split into its bookkeeping parts.

    head and terminant_part live in the same units; for the oblique
    regime those are bracket units and the outer prefactor is recorded
    separately (prefactor = 1 at the turning point). est_remainder is
    the computable size estimate for what the kept sums leave behind,
    again in head units; sector records which estimate form applied.
    """

    regime: str
    nu: CpxHP
    theta: RealHP
    N: int
    M: int
    K: int
    L: int
    head: CpxHP
    terminant_part: CpxHP
    prefactor: CpxHP
    est_remainder: RealHP
    sector: str

    def value(self) -> CpxHP:
        return self.prefactor * (self.head + self.terminant_part)


def _theta_of(nu, theta) -> RealHP:
    if theta is not None:
        return mp.mpf(theta)
    return mp.arg(mp.mpc(nu))


def _cpow(mag, theta, p):
    """|mag|^p e^(i p theta) with the continued phase, never rewrapped."""
    return mp.mpf(mag) ** mp.mpf(p) * mp.exp(1j * mp.mpf(p) * mp.mpf(theta))


def _terminant_wound(p, z, a, ctx) -> CpxHP:
    """Terminant at a continued argument that may exceed pi.

    One extra turn upward unwinds through the same connection that
    defines the continuation downward."""
    if a > mp.pi:
        inner = _terminant_wound(p, z, a - 2 * mp.pi, ctx)
        return mp.exp(-2j * mp.pi * p) * inner + 1
    return terminant(p, z, ctx, arg=a).value


def hankel1_improved_oblique(
    nu,
    beta,
    K: int,
    L: int,
    ctx: PrecisionContext | None = None,
    *,
    theta=None,
    N: int | None = None,
    M: int | None = None,
) -> ImprovedExpansion:
    """H^(1)_nu(nu sec beta) with the truncation defect re-expanded.

    The bracket holds the plain alternating series to N terms, the
    modified (tilde) series from N to M, and two terminant sums of
    lengths K and L over the early coefficients. Valid for
    -3pi/2 <= theta <= 3pi/2; the remainder estimate switches form at
    theta = -pi/2.

    Tilde terms whose a-priori size sits far below the (K, L) remainder
    estimate are skipped and their estimated mass is folded into
    est_remainder instead; the same accounting covers indices past
    TILDE_CAP when M is large.
    """
    ctx = ctx or default_context()
    if K < 0 or L < 0:
        raise ValueError("K and L must be nonnegative")
    with working(ctx, extra=10):
        b = mp.mpf(beta)
        if not (0 < b < mp.pi / 2):
            raise ValueError("beta must lie in (0, pi/2)")
        th = _theta_of(nu, theta)
        if not (-3 * mp.pi / 2 <= th <= 3 * mp.pi / 2):
            raise SectorError("theta must lie in [-3pi/2, 3pi/2]")
        mag = abs(mp.mpc(nu))
        nuv = mag * mp.exp(1j * th)
        s = mp.tan(b) - b
        dN, dM = improved_orders_oblique(mag, b)
        Nn = dN if N is None else int(N)
        Mm = dM if M is None else int(M)
        if not 1 <= Nn <= Mm:
            raise ValueError("need 1 <= N <= M")
        if K >= Nn or L >= Mm:
            raise ValueError("K must stay below N and L below M")
        ic = 1j / mp.tan(b)

        uvals = [coeffs.u_eval(n, ic, ctx) for n in range(max(Nn, K, L))]
        head = mp.mpc(0)
        for n in range(Nn):
            head += (-1) ** n * uvals[n] / nuv**n

        # Remainder estimate first; it sets the resolution floor that
        # decides which tilde terms are worth their quadrature.
        uK = coeffs.u_abs_eval(K, b, ctx)
        uL = coeffs.u_abs_eval(L, b, ctx)
        if th >= -mp.pi / 2:
            sector = "upper"
            e1 = mp.exp(-2 * mag * s)
            e2 = mp.exp(-2 * mag * (s + mp.pi))
        else:
            sector = "lower"
            im = mag * mp.sin(th)
            e1 = mp.exp(2 * im * s)
            e2 = mp.exp(2 * im * (s + mp.pi))
        est = e1 * uK / mag**K + e2 * uL / mag**L

        floor = est / 100
        tilde_sum = mp.mpc(0)
        dropped = mp.mpf(0)
        for m in range(Nn, Mm):
            guess = mp.gamma(m) / (2 * mp.pi * (2 * (s + mp.pi)) ** m * mag**m)
            if m > TILDE_CAP or 3 * guess < floor:
                dropped += 3 * guess
                continue
            tilde_sum += (-1) ** m * tilde_u(m, b, ctx) / nuv**m
        est += dropped

        s1 = mp.mpc(0)
        z1 = -2j * nuv * s
        a1 = th - mp.pi / 2
        for k in range(K):
            tk = _terminant_wound(Nn - k, z1, a1, ctx)
            s1 += uvals[k] / nuv**k * tk
        s1 *= 1j * mp.exp(-2j * nuv * s)
        s2 = mp.mpc(0)
        z2 = -2j * nuv * (s + mp.pi)
        for el in range(L):
            tl = _terminant_wound(Mm - el, z2, a1, ctx)
            s2 += uvals[el] / nuv**el * tl
        s2 *= 1j * mp.exp(-2j * nuv * (s + mp.pi))

        pref = mp.exp(1j * nuv * s - 1j * mp.pi / 4) / mp.sqrt(
            mp.pi * mp.tan(b) / 2
        )
        pref /= _cpow(mag, th, mp.mpf("0.5"))
        return ImprovedExpansion(
            regime="oblique",
            nu=+nuv,
            theta=+th,
            N=Nn,
            M=Mm,
            K=K,
            L=L,
            head=+(head + tilde_sum),
            terminant_part=+(s1 + s2),
            prefactor=+pref,
            est_remainder=+est,
            sector=sector,
        )


def hankel1_improved_turning(
    nu,
    K: int,
    L: int,
    ctx: PrecisionContext | None = None,
    *,
    theta=None,
    N: int | None = None,
    M: int | None = None,
) -> ImprovedExpansion:
    """H^(1)_nu(nu) with the truncation defect re-expanded.

    Two head series (weights d_{6n} and d_{6m+4}) and four terminant
    sums, one pair per rotation direction of the singulant 2 pi i nu.
    K and L must be multiples of 3. Valid for -3pi/2 <= theta <= 3pi/2;
    the central remainder form holds for |theta| <= pi/2, extends to
    theta <= 3pi/2 when K = L, and an Im(nu)-exponent form covers the
    rest.
    """
    ctx = ctx or default_context()
    if K < 0 or L < 0 or K % 3 or L % 3:
        raise ValueError("K and L must be nonnegative multiples of 3")
    with working(ctx, extra=10):
        th = _theta_of(nu, theta)
        if not (-3 * mp.pi / 2 <= th <= 3 * mp.pi / 2):
            raise SectorError("theta must lie in [-3pi/2, 3pi/2]")
        mag = abs(mp.mpc(nu))
        nuv = mag * mp.exp(1j * th)
        dN, dM = improved_orders_turning(mag)
        Nn = dN if N is None else int(N)
        Mm = dM if M is None else int(M)
        if Nn < 1 or Mm < 1:
            raise ValueError("need N >= 1 and M >= 1")
        if K >= 2 * Nn or L >= 2 * Mm:
            raise ValueError("K must stay below 2N and L below 2M")

        head1 = mp.mpc(0)
        for n in range(Nn):
            head1 += (
                coeffs.d_coeff(3 * n).value(ctx)
                * mp.gamma(2 * n + mp.mpf(1) / 3)
                / nuv ** (2 * n)
            )
        head1 *= mp.exp(-1j * mp.pi / 3) / (
            mp.sqrt(3) * mp.pi * _cpow(mag, th, mp.mpf(1) / 3)
        )
        head2 = mp.mpc(0)
        for m in range(Mm):
            head2 += (
                coeffs.d_coeff(3 * m + 2).value(ctx)
                * mp.gamma(2 * m + mp.mpf(5) / 3)
                / nuv ** (2 * m)
            )
        head2 *= mp.exp(1j * mp.pi / 3) / (
            mp.sqrt(3) * mp.pi * _cpow(mag, th, mp.mpf(5) / 3)
        )
        head = head1 - head2

        zdn = -2j * mp.pi * nuv
        zup = 2j * mp.pi * nuv
        adn = th - mp.pi / 2
        aup = th + mp.pi / 2
        phase_dn = 1j * mp.exp(-2j * mp.pi * nuv) / mp.sqrt(3)
        phase_up = 1j * mp.exp(2j * mp.pi * nuv) / mp.sqrt(3)
        c23 = mp.mpf(2) / (3 * mp.pi)

        def weight(j):
            return (
                coeffs.d_coeff(j).value(ctx)
                * mp.sin((2 * j + 1) * mp.pi / 3)
                * mp.gamma((2 * j + mp.mpf(1)) / 3)
                / _cpow(mag, th, (2 * j + mp.mpf(1)) / 3)
            )

        tsum = mp.mpc(0)
        for k in range(K):
            w = weight(k)
            if w == 0:
                continue
            p = 2 * Nn - mp.mpf(2 * k) / 3
            tsum += (
                mp.exp(-1j * mp.pi / 3)
                * phase_dn
                * c23
                * w
                * _terminant_wound(p, zdn, adn, ctx)
            )
            tsum -= (
                phase_up
                * c23
                * w
                * mp.exp(2j * (2 * k + 1) * mp.pi / 3)
                * _terminant_wound(p, zup, aup, ctx)
            )
        for el in range(L):
            w = weight(el)
            if w == 0:
                continue
            p = 2 * Mm - mp.mpf(2 * el - 4) / 3
            tsum -= (
                mp.exp(1j * mp.pi / 3)
                * phase_dn
                * c23
                * w
                * _terminant_wound(p, zdn, adn, ctx)
            )
            tsum += (
                phase_up
                * c23
                * w
                * mp.exp(2j * (2 * el + 1) * mp.pi / 3)
                * _terminant_wound(p, zup, aup, ctx)
            )

        gK = coeffs.d_abs_eval(K, ctx) * mp.gamma((2 * K + mp.mpf(1)) / 3)
        gL = coeffs.d_abs_eval(L, ctx) * mp.gamma((2 * L + mp.mpf(1)) / 3)
        if abs(th) <= mp.pi / 2 or (K == L and th <= 3 * mp.pi / 2):
            sector = "central" if abs(th) <= mp.pi / 2 else "central-extended"
            e = mp.exp(-2 * mp.pi * mag)
            est = e * (gK / mag ** ((2 * K + mp.mpf(1)) / 3)
                       + gL / mag ** ((2 * L + mp.mpf(1)) / 3))
        else:
            sector = "upper" if th > 0 else "lower"
            e = mp.exp(-2 * mp.pi * mag * mp.sin(abs(th)))
            est = e * (gK / mag ** ((2 * K + mp.mpf(1)) / 3)
                       + gL / mag ** ((2 * L + mp.mpf(1)) / 3))
        return ImprovedExpansion(
            regime="turning",
            nu=+nuv,
            theta=+th,
            N=Nn,
            M=Mm,
            K=K,
            L=L,
            head=+head,
            terminant_part=+tsum,
            prefactor=mp.mpc(1),
            est_remainder=+est,
            sector=sector,
        )


def _profile_reference(nuv, x, wp) -> CpxHP:
    with mp.workdps(wp):
        return mp.hankel1(nuv, nuv * x)


def stokes_profile(
    regime: str,
    magnitude,
    theta_grid,
    ctx: PrecisionContext | None = None,
    *,
    beta=None,
):
    """Measured vs predicted switch-on of the recessive series.

    For each theta in the grid, evaluates the defect between a direct
    reference value and the truncated dominant series, normalizes by
    the first few recessive-series coefficients, and pairs that with
    the error-function profile -1/2 + erf((theta + pi/2) sqrt(r))/2,
    where r is |nu|(tan beta - beta) off the turning point and pi |nu|
    at it. Returns rows (theta, measured, predicted).

    The modified-coefficient series is omitted from the subtraction:
    its leading term sits below the defect's own scale by the second
    singulant's exponential and cannot move the measurement.
    """
    ctx = ctx or default_context()
    mag = mp.mpf(magnitude)
    rows = []
    if regime == "oblique":
        if beta is None:
            raise ValueError("oblique profile needs beta")
        b = mp.mpf(beta)
        s = mp.tan(b) - b
        x = float(1 / mp.cos(b))
        N, _ = improved_orders_oblique(mag, b)
        rate = mp.sqrt(mag * s)
        wp = ctx.digits + int(2 * float(mag * s) / 2.302) + 12
        with mp.workdps(wp):
            ic = 1j / mp.tan(b)
            wctx = PrecisionContext(digits=max(wp - 8, 15))
            uvals = [coeffs.u_eval(n, ic, wctx) for n in range(N)]
        for th_raw in theta_grid:
            with mp.workdps(wp):
                th = mp.mpf(th_raw)
                nuv = mag * mp.exp(1j * th)
                href = mp.hankel1(nuv, nuv / mp.cos(b))
                pref = mp.exp(1j * nuv * s - 1j * mp.pi / 4) / mp.sqrt(
                    mp.pi * mp.tan(b) / 2
                )
                pref /= _cpow(mag, th, mp.mpf("0.5"))
                headv = mp.mpc(0)
                for n in range(N):
                    headv += (-1) ** n * uvals[n] / nuv**n
                den = mp.mpc(0)
                for k in range(3):
                    den += uvals[k] / nuv**k
                den *= 1j * mp.exp(-2j * nuv * s)
                measured = (href / pref - headv) / den
                predicted = -mp.mpf("0.5") + mp.erf(
                    (th + mp.pi / 2) * rate
                ) / 2
                rows.append((+th, +mp.mpc(measured), +mp.mpf(predicted)))
        return rows
    if regime != "turning":
        raise ValueError("regime must be oblique or turning")
    N, _ = improved_orders_turning(mag)
    rate = mp.sqrt(mp.pi * mag)
    wp = ctx.digits + int(2 * float(mp.pi * mag) / 2.302) + 12
    with mp.workdps(wp):
        wctx = PrecisionContext(digits=max(wp - 8, 15))
        d6 = [coeffs.d_coeff(3 * n).value(wctx) for n in range(N)]
        d64 = [coeffs.d_coeff(3 * m + 2).value(wctx) for m in range(N)]
        g13 = [mp.gamma(2 * n + mp.mpf(1) / 3) for n in range(N)]
        g53 = [mp.gamma(2 * m + mp.mpf(5) / 3) for m in range(N)]
        dsm = [coeffs.d_coeff(j).value(wctx) for j in range(3)]
    for th_raw in theta_grid:
        with mp.workdps(wp):
            th = mp.mpf(th_raw)
            nuv = mag * mp.exp(1j * th)
            href = mp.hankel1(nuv, nuv)
            h1 = mp.mpc(0)
            for n in range(N):
                h1 += d6[n] * g13[n] / nuv ** (2 * n)
            h1 *= mp.exp(-1j * mp.pi / 3) / (
                mp.sqrt(3) * mp.pi * _cpow(mag, th, mp.mpf(1) / 3)
            )
            h2 = mp.mpc(0)
            for m in range(N):
                h2 += d64[m] * g53[m] / nuv ** (2 * m)
            h2 *= mp.exp(1j * mp.pi / 3) / (
                mp.sqrt(3) * mp.pi * _cpow(mag, th, mp.mpf(5) / 3)
            )
            c23 = mp.mpf(2) / (3 * mp.pi)
            outer = mp.exp(-2j * mp.pi * nuv) / mp.sqrt(3)
            den = mp.mpc(0)
            for j in range(3):
                wj = (
                    dsm[j]
                    * mp.exp(-2j * (2 * j + 1) * mp.pi / 3)
                    * mp.sin((2 * j + 1) * mp.pi / 3)
                    * mp.gamma((2 * j + mp.mpf(1)) / 3)
                    / _cpow(mag, th, (2 * j + mp.mpf(1)) / 3)
                )
                den += 1j * mp.exp(1j * mp.pi / 3) * outer * c23 * wj
                den -= 1j * mp.exp(-1j * mp.pi / 3) * outer * c23 * wj
            measured = (href - h1 + h2) / den
            predicted = -mp.mpf("0.5") + mp.erf((th + mp.pi / 2) * rate) / 2
            rows.append((+th, +mp.mpc(measured), +mp.mpf(predicted)))
    return rows
