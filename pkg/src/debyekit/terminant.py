"""Scaled terminant function and the error-function smoothing map.

The central object is

    T(p, z) = e^(i pi p) z^(1-p) e^(-z) / (2 pi i)
              * int_0^inf t^(p-1) e^(-t) / (z + t) dt

for p > 0 and |arg z| < pi, continued analytically down to arg z > -3 pi.
Because a bare complex number cannot carry an argument below -pi, every
entry point here takes the continued argument separately (keyword `arg`);
omitting it means the principal argument of `z` is intended.

Two independent routes are implemented. The quadrature route integrates
the defining Laplace integral along a ray, rotating the ray away from the
pole at t = -z when the pole crowds the positive axis, and subtracting
the winding constant once the argument has passed below -pi. The second
route reduces the integral to the upper incomplete gamma function. The
quadrature route is the source of record; the reduction is the cross
check, because its branch bookkeeping is the classic way to get this
function wrong.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .precision import (
    BranchAmbiguityError,
    CpxHP,
    PrecisionContext,
    RealHP,
    SectorError,
    default_context,
    exp_tail_cutoff,
    integrate_semiinfinite,
    upper_incomplete_gamma,
    working,
)

__all__ = [
    "TerminantEval",
    "SmoothingMap",
    "terminant",
    "terminant_via_incgamma",
    "c_of_phi",
    "smoothing_asymptotic",
]

# Sector margin used by the smoothing formula's callers and tests.
SMOOTHING_DELTA = 0.05 * math.pi

# Half-width of the wedge around the integration ray inside which the
# rational pole forces a contour rotation, and the rotation angle itself.
_POLE_WEDGE = 0.35
_ROTATION = 0.4


@dataclass(frozen=True)
class TerminantEval:
    """One evaluation of T(p, z) with its provenance.

    `arg` is the continued argument actually used; it may lie below -pi,
    in which case `z` alone does not determine the value. `est_err` is an
    accuracy scale derived from the quadrature agreement gate, not a
    certified bound.
    """

    p: RealHP
    z: CpxHP
    arg: RealHP
    value: CpxHP
    method: str
    est_err: RealHP


@dataclass(frozen=True)
class SmoothingMap:
    """The branch of c(phi) fixed by c(phi) ~ (phi - pi) near phi = pi."""

    phi: RealHP
    c: CpxHP


def _wrap(a):
    """Reduce an angle to (-pi, pi]."""
    tp = 2 * mp.pi
    w = mp.fmod(a, tp)
    if w > mp.pi:
        w -= tp
    elif w <= -mp.pi:
        w += tp
    return w


def _continued_parts(z, arg):
    """Return (z as a number, |z|, continued argument), validating `arg`.

    The continued argument must agree with the principal argument of z up
    to a whole number of turns; anything else means the caller built z and
    arg from different data.
    """
    zn = mp.mpc(z)
    if zn == 0:
        raise ValueError("z must be nonzero")
    principal = mp.arg(zn)
    if arg is None:
        a = principal
    else:
        a = mp.mpf(arg)
        if abs(_wrap(a - principal)) > mp.mpf("1e-9") * (1 + abs(a)):
            raise ValueError(
                "arg=%s is not the principal argument of z=%s plus a whole "
                "number of turns" % (a, zn)
            )
    return zn, abs(zn), a


def _ray_geometry(a):
    """Ray rotation and winding constant for continued argument `a`.

    The integrand's pole sits at angle off = a + pi (mod 2 pi) from the
    positive ray. When the pole crowds the ray the contour is rotated to
    the opposite side, which never crosses it, and the winding constant is
    chosen to match the unrotated canonical form valid on that side: no
    subtraction until the argument has passed a crossing, one e^(2 pi i p)
    after the first. At off exactly 0 the side is fixed by which crossing
    is in progress (a = -pi approaches from above, a = pi from below).

    Returns (gamma, subtract) with subtract a bool.
    """
    off = _wrap(a + mp.pi)
    if abs(off) >= _POLE_WEDGE:
        return 0.0, a < -mp.pi
    above = (off > 0) or (off == 0 and a < 0)
    if above:
        return -_ROTATION, a < -2 * mp.pi
    return _ROTATION, a < -mp.pi


def _pole_breaks(zn, gamma):
    """Panel breakpoints bracketing the pole's projection onto the ray."""
    u0 = -zn * mp.e ** (-1j * mp.mpf(gamma))
    uc = float(mp.re(u0))
    if uc <= 0:
        return ()
    d = max(abs(float(mp.im(u0))), 1e-3 * uc)
    near = [uc + j * d for j in (-4, -2, -1, 0, 1, 2, 4)]
    return tuple(b for b in near + [0.7 * uc, 1.3 * uc] if b > 0)


def _laplace_ray(p, zn, gamma, ctx):
    """int_0^(inf e^(i gamma)) t^(p-1) e^(-t) / (z + t) dt."""
    pf = mp.mpf(p)
    eig = mp.e ** (1j * mp.mpf(gamma))
    hint = max(float(p) - 1.0, 0.0)

    def g(u):
        return u ** (pf - 1) * mp.e ** (-u * eig) / (zn + u * eig)

    breaks = list(_pole_breaks(zn, gamma))
    if gamma:
        # A rotated ray carries the oscillation e^(-i u sin gamma); cutting
        # the tail into whole-period panels keeps every panel tame.
        period = 2 * math.pi / abs(math.sin(gamma))
        far = exp_tail_cutoff(hint, math.cos(gamma), ctx.digits)
        u = min(max(3 * (hint + 1), 8.0), far / 2)
        while u + period < far and len(breaks) < 80:
            u += period
            breaks.append(u)
    sing = Fraction(float(p) - 1).limit_denominator(10**6) if p < 1 else 0
    val = integrate_semiinfinite(
        g,
        math.cos(gamma),
        ctx,
        power_hint=hint,
        singular_power=sing,
        extra_breaks=tuple(breaks),
        panel_style="coarse",
    )
    return eig**pf * val


def terminant(p, z, ctx: PrecisionContext | None = None, *, arg=None,
              method: str = "auto") -> TerminantEval:
    """T(p, z) on -3 pi < arg z <= pi, arg z != pi unless approached from below.

    method "auto" integrates the defining representation (rotating the ray
    near the negative axis, subtracting the winding constant e^(2 pi i p)
    once arg z < -pi). "incgamma" delegates to the incomplete-gamma
    reduction; "erf-asymptotic" returns the error-function approximation
    lifted back from the normalised form (only sensible for p near |z|).
    """
    ctx = ctx or default_context()
    with working(ctx, extra=10):
        pf = mp.mpf(p)
        if not pf > 0:
            raise ValueError("p must be positive")
        zn, r, a = _continued_parts(z, arg)
        if not (-3 * mp.pi < a <= mp.pi):
            raise ValueError(
                "continued argument %s outside (-3 pi, pi]" % (a,)
            )

        if method == "incgamma":
            val = terminant_via_incgamma(p, zn, ctx, arg=a)
            return TerminantEval(
                p=+pf, z=+zn, arg=+a, value=+val, method="incgamma",
                est_err=+(abs(val) * mp.mpf(ctx.quad_rel_tol)),
            )
        if method == "erf-asymptotic":
            sm = smoothing_asymptotic(p, zn, ctx, arg=a)
            val = mp.e ** (2j * mp.pi * pf) * sm
            cc = c_of_phi(-a, ctx).c
            env = mp.e ** (-(r / 2) * mp.re(cc * cc)) / mp.sqrt(r)
            return TerminantEval(
                p=+pf, z=+zn, arg=+a, value=+val, method="erf-asymptotic",
                est_err=+env,
            )
        if method != "auto":
            raise ValueError("unknown method %r" % (method,))

        gamma, subtract = _ray_geometry(a)
        tag = "definition-quadrature" if a > -mp.pi else "continuation-quadrature"
        sub = mp.e ** (2j * mp.pi * pf) if subtract else mp.mpc(0)
        ival = _laplace_ray(pf, zn, gamma, ctx)
        pref = (
            mp.e ** (1j * mp.pi * pf)
            * mp.e ** ((1 - pf) * (mp.log(r) + 1j * a))
            * mp.e ** (-zn)
            / (2j * mp.pi)
        )
        val = pref * ival - sub
        scale = max(abs(val), abs(sub), abs(pref) * abs(ival))
        return TerminantEval(
            p=+pf, z=+zn, arg=+a, value=+val, method=tag,
            est_err=+(scale * mp.mpf(ctx.quad_rel_tol) * 10),
        )


def terminant_via_incgamma(p, z, ctx: PrecisionContext | None = None, *,
                           arg=None) -> CpxHP:
    """T(p, z) through T(p, z) = e^(i pi p) Gamma(p) Gamma(1-p, z) / (2 pi i).

    Below arg z = -pi the value is lifted with the winding relation
    T(p, z) = e^(2 pi i p) (T(p, z e^(2 pi i)) - 1), which lands the
    incomplete-gamma argument back on its principal sheet.
    """
    ctx = ctx or default_context()
    with working(ctx, extra=10):
        pf = mp.mpf(p)
        if not pf > 0:
            raise ValueError("p must be positive")
        zn, r, a = _continued_parts(z, arg)
        if not (-3 * mp.pi < a <= mp.pi):
            raise ValueError(
                "continued argument %s outside (-3 pi, pi]" % (a,)
            )
        side = "above" if (mp.im(zn) == 0 and mp.re(zn) < 0) else None
        try:
            g = upper_incomplete_gamma(1 - pf, zn, ctx, side=side)
        except (mp.libmp.NoConvergence, ZeroDivisionError) as exc:
            raise ValueError(
                "incomplete-gamma reduction degenerates at p=%s" % (pf,)
            ) from exc
        base = mp.e ** (1j * mp.pi * pf) * mp.gamma(pf) * g / (2j * mp.pi)
        if a <= -mp.pi:
            return +(mp.e ** (2j * mp.pi * pf) * (base - 1))
        return +base


def _c_series(s):
    """Four-term expansion of c at s = phi - pi = 0; seeds the Newton walk."""
    return s + 1j * s**2 / 6 - s**3 / 36 - 1j * s**4 / 270


def _half_c_sq_target(s):
    return 1 + 1j * s - mp.e ** (1j * s)


def c_of_phi(phi, ctx: PrecisionContext | None = None) -> SmoothingMap:
    """Solve (1/2) c(phi)^2 = 1 + i(phi - pi) - e^(i(phi - pi)).

    Of the two square roots the one growing like (phi - pi) near phi = pi
    is taken, and the solution is carried outward by continuation in phi
    with a Newton step at each stop; a jump between the two roots along
    the way raises BranchAmbiguityError.
    """
    ctx = ctx or default_context()
    with working(ctx, extra=10):
        ph = mp.mpf(phi)
        target = ph - mp.pi
        if not abs(target) < 2 * mp.pi:
            raise ValueError("phi must lie within 2 pi of pi")
        if target == 0:
            return SmoothingMap(phi=+ph, c=mp.mpc(0))
        step = mp.mpf("0.4")
        tolf = mp.mpf(10) ** (-(ctx.digits + 6))

        def refine(c, s):
            w = _half_c_sq_target(s)
            for _ in range(80):
                f = c * c / 2 - w
                if abs(f) <= tolf * max(abs(c) ** 2, mp.mpf("1e-30")):
                    return c
                c = c - f / c
            raise BranchAmbiguityError(
                "Newton failed to settle for phi=%s at s=%s" % (ph, s)
            )

        sgn = 1 if target > 0 else -1
        s = sgn * min(abs(target), step)
        c = refine(_c_series(s), s)
        while s != target:
            ds = sgn * min(abs(target - s), step)
            s_next = s + ds
            c_next = refine(c, s_next)
            if abs(c_next - c) > 4 * abs(ds):
                raise BranchAmbiguityError(
                    "continuation jumped roots between s=%s and s=%s" % (s, s_next)
                )
            s, c = s_next, c_next
        return SmoothingMap(phi=+ph, c=+c)


def smoothing_asymptotic(p, z, ctx: PrecisionContext | None = None, *,
                         arg=None) -> CpxHP:
    """Error-function approximation to the normalised value e^(-2 pi i p) T(p, z).

    Sharp when p is near |z|; the Stokes jump of T across arg z = -pi then
    shows up as a smooth erf transition. The argument must stay a margin
    of 0.05 pi inside (-3 pi, pi).
    """
    ctx = ctx or default_context()
    with working(ctx, extra=10):
        pf = mp.mpf(p)
        if not pf > 0:
            raise ValueError("p must be positive")
        zn, r, a = _continued_parts(z, arg)
        delta = mp.mpf(SMOOTHING_DELTA)
        if not (-3 * mp.pi + delta <= a <= mp.pi - delta):
            raise SectorError(
                "continued argument %s outside the smoothing sector" % (a,)
            )
        c = c_of_phi(-a, ctx).c
        return +(-mp.mpf(1) / 2
                 + mp.erf(-mp.conj(c) * mp.sqrt(r / 2)) / 2)
