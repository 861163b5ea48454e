"""Quadrature-backed reference values, independent of every series route.

Nothing in this module touches a Debye coefficient or an asymptotic
expansion. Values come from integral representations alone, so a
disagreement elsewhere in the package is a genuine finding rather than two
copies of the same bug.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .precision import (
    CpxHP,
    PrecisionContext,
    QuadratureError,
    RealHP,
    SectorError,
    default_context,
    exp_tail_cutoff,
    integrate_semiinfinite,
    tanh_sinh_panels,
    working,
)

__all__ = [
    "TURNING",
    "PhaseFunction",
    "RemainderQuery",
    "k_imag_order",
    "ihankel_line",
    "hankel1_reference",
    "hankel2_reference",
    "jy_reference",
    "remainder_quadrature",
    "u_coeff_integral",
    "d_coeff_integral",
]

TURNING = "turning"

# Past this t*x the e^(pi t/2) growth factor is only ever assembled from a
# split mantissa/exponent pair (ihankel_line returns one on request).
_SCALED_CUTOFF = 700.0

_EDGE = 1e-9


@dataclass(frozen=True)
class PhaseFunction:
    """Contour exponent w -> x sinh(w) - w with x = sec(beta), and x = 1
    at the turning configuration.

    beta holds the angle in (0, pi/2) or the TURNING marker. Methods
    evaluate at the ambient mpmath precision, so wrap calls in mp.workdps
    when more than double-precision inputs are in play.
    """

    beta: object = TURNING

    @property
    def is_turning(self) -> bool:
        return isinstance(self.beta, str)

    def _angle(self):
        if self.is_turning:
            if self.beta != TURNING:
                raise ValueError("unrecognized phase marker %r" % (self.beta,))
            return None
        b = mp.mpf(self.beta)
        if not (0 < b < mp.pi / 2):
            raise ValueError("beta must lie in (0, pi/2)")
        return b

    def argument(self) -> RealHP:
        """x = sec(beta), or 1 when turning."""
        b = self._angle()
        return mp.mpf(1) if b is None else 1 / mp.cos(b)

    def singulant_gap(self) -> RealHP:
        """tan(beta) - beta. Every decay rate in the oblique integrals is
        a multiple of this number; it collapses to 0 when turning."""
        b = self._angle()
        return mp.mpf(0) if b is None else mp.tan(b) - b

    def saddle(self) -> CpxHP:
        b = self._angle()
        return mp.mpc(0) if b is None else mp.mpc(0, b)

    def __call__(self, w) -> CpxHP:
        b = self._angle()
        x = mp.mpf(1) if b is None else 1 / mp.cos(b)
        return x * mp.sinh(mp.mpc(w)) - mp.mpc(w)


@dataclass(frozen=True)
class RemainderQuery:
    """One remainder-integral evaluation request.

    nu is read with its principal argument and then placed on the sector
    of the requested representation: for H1 a principal argument in
    (-pi, -pi/2] means the continued angle arg + 2 pi, H2 mirrors this
    downward, and J/Y stay on |arg nu| < pi/2.
    """

    function: str
    regime: str
    nu: object
    N: int
    beta: object = None


def _continued_theta(function: str, nu) -> RealHP:
    """Sector-resolved angle of nu for the requested function.

    Raises SectorError off-sector and within 1e-9 rad of an edge, where
    the integral representations degenerate (a kernel pole touches the
    integration ray).
    """
    arg = mp.arg(mp.mpc(nu))
    a = float(arg)
    half = math.pi / 2
    if function == "H1":
        th = arg if a > -half else arg + 2 * mp.pi
        lo, hi = -half, 3 * half
    elif function == "H2":
        th = arg if a < half else arg - 2 * mp.pi
        lo, hi = -3 * half, half
    elif function in ("J", "Y"):
        th = arg
        lo, hi = -half, half
    else:
        raise ValueError("function must be one of H1, H2, J, Y")
    tf = float(th)
    if not (lo + _EDGE < tf < hi - _EDGE):
        raise SectorError(
            "arg nu = %.9g is outside the %s sector (%.6g, %.6g)"
            % (tf, function, lo, hi)
        )
    return th


# ---------------------------------------------------------------------------
# K of purely imaginary order


_K_CACHE: dict = {}
_K_CACHE_LIMIT = 250_000


def _phase_gap_f(x: float) -> float:
    """sqrt(x^2-1) - acos(1/x) in doubles, for budgeting only."""
    if x <= 1.0:
        return 0.0
    return math.sqrt(x * x - 1.0) - math.acos(1.0 / x)


def _k_loss_nats(t: float, y: float) -> float:
    """Cancellation (in nats) of the straight-ray kernel quadrature: ratio
    of the integrand peak e^(-y) to the value of K_it(y)."""
    if t <= 0:
        return 0.0
    x = y / t
    if x >= 1.0:
        return max(0.0, t * (math.pi / 2 + _phase_gap_f(x) - x))
    return max(0.0, math.pi * t / 2 - y + 0.5 * math.log(max(t, 1.0)))


def _k_cosine(t, y, target: int, loss_digits: int):
    """Defining integral of K_it(y) on the real ray, with the cancellation
    loss paid for in working digits.

    The oscillation cos(t u) gets one panel per half period; the quiet
    near-origin mass gets a doubling grid. Each panel settles under the
    level-doubling engine, so a single run suffices; callers wanting an
    independent confirmation rerun at a shifted digit count.
    """
    run = target + loss_digits + 10
    if run > 1400:
        raise QuadratureError(
            "cosine-kernel cancellation wants %d working digits, beyond the "
            "practical range" % run
        )
    with mp.workdps(run):
        tt = +t
        yy = +y
        nats = mp.ln(10) * (target + loss_digits + 15)
        top = mp.acosh(1 + nats / yy)
        topf = float(top)
        pts = {mp.mpf(0), top}
        seed = min(float(1 / mp.sqrt(yy + 1)), topf / 4)
        g = seed
        while g < topf:
            pts.add(mp.mpf(g))
            g *= 2
        tf = float(tt)
        if tf > 0:
            step = math.pi / tf
            if topf / step > 50_000:
                raise QuadratureError(
                    "kernel oscillation count %d is too high for the "
                    "straight ray" % int(topf / step)
                )
            z = 1.5 * step
            while z < topf:
                pts.add(mp.mpf(z))
                z += 2 * step

        def f(u):
            return mp.exp(-yy * mp.cosh(u)) * mp.cos(tt * u)

        return tanh_sinh_panels(f, sorted(pts), goal_dps=target + loss_digits + 3)


def _sinhm_zero(m: float) -> float:
    """Positive root of sinh(u) - u = m, in doubles (panel edges only)."""
    if m <= 0:
        return 0.0
    if not math.isfinite(m):
        return math.inf
    if m > 1e8:
        # e^u/2 - u = m solved as a log fixed point; Newton below would
        # overflow cosh for the huge m coming from near-zero outer nodes
        u = math.log(2.0 * m)
        for _ in range(4):
            u = math.log(2.0 * (m + u))
        return u
    u = (6.0 * m) ** (1.0 / 3.0) if m <= 3.0 else math.asinh(m) + 0.5
    for _ in range(80):
        dv = math.cosh(u) - 1.0
        if dv <= 0:
            break
        du = (math.sinh(u) - u - m) / dv
        u -= du
        if abs(du) < 1e-12 * max(1.0, u):
            break
    return abs(u)


def _k_shifted(t, y, target: int):
    """The same defining integral taken along the horizontal line through
    the phase saddle i asin(t/y). Exact by Cauchy; the cancellation that
    forces a precision surcharge on the straight ray is flat here, so this
    route carries the large-t regime at ordinary working precision.

    Requires t < y. The residual phase t(sinh u - u) is cubic at the
    origin; its half-period points become panel edges.
    """
    run = target + 10
    with mp.workdps(run):
        tt = +t
        yy = +y
        c = mp.asin(tt / yy)
        a = mp.sqrt((yy - tt) * (yy + tt))
        nats = mp.ln(10) * (target + 18)
        top = mp.acosh(1 + nats / a)
        topf = float(top)
        tf = float(tt)
        pts = {mp.mpf(0), top}
        seed = min(
            float(2 / mp.sqrt(a + 1)),
            (6 * math.pi / max(tf, 1e-6)) ** (1.0 / 3.0),
            topf / 4,
        )
        g = seed
        while g < topf:
            pts.add(mp.mpf(g))
            g *= 2
        if tf > 0:
            if tf * (math.sinh(topf) - topf) / math.pi > 50_000:
                raise QuadratureError(
                    "oscillation count too high on the shifted line")
            k = 2
            while True:
                z = _sinhm_zero(k * math.pi / tf)
                if z >= topf:
                    break
                pts.add(mp.mpf(z))
                k += 2

        def f(u):
            return mp.exp(-a * mp.cosh(u)) * mp.cos(tt * (mp.sinh(u) - u))

        v = tanh_sinh_panels(f, sorted(pts), goal_dps=target + 4)
        return mp.exp(-tt * c) * v


def _k_route(tm, ym, target: int, loss_d: int):
    # the shifted line costs no cancellation surcharge and meets fewer
    # oscillations, so it carries every case where it is defined; the
    # straight ray keeps t = 0 and the near-diagonal band y ~ t where the
    # shift degenerates
    tf, yf = float(tm), float(ym)
    if tf > 0 and yf >= 1.05 * tf:
        return _k_shifted(tm, ym, target)
    return _k_cosine(tm, ym, target, loss_d)


def k_imag_order(t, y, ctx: PrecisionContext | None = None, *,
                 checked: bool = True) -> RealHP:
    """K_it(y) for real t, from its cosine-kernel integral.

    t = 0 reduces to the classical K_0. The result is a real number
    accurate to about ctx.digits significant digits; values are cached on
    the exact (t, y, digits) triple since the remainder quadratures
    revisit nodes. checked=True (the default) confirms the value against
    an independent run fifteen digits higher; integrands sitting inside a
    quadrature that already compares two resolutions end to end pass
    checked=False and skip the duplicate work.
    """
    ctx = ctx or default_context()
    target = ctx.digits
    # arguments are rounded a shade below the target, so the same physical
    # node reached at two different ambient precisions lands on one cache
    # entry; the induced value shift sits well under the headroom that
    # kernel targets carry over their caller's digits
    with mp.workdps(max(target - 3, 15)):
        tm = +abs(mp.mpf(t))
        ym = +mp.mpf(y)
    if not ym > 0:
        raise ValueError("y must be positive")
    key = (tm._mpf_, ym._mpf_, target)
    hit = _K_CACHE.get(key)
    if hit is not None and (hit[1] or not checked):
        return hit[0]
    tf, yf = float(tm), float(ym)
    loss_d = max(0, int(_k_loss_nats(tf, yf) / math.log(10.0)) + 1)
    val = hit[0] if hit is not None else _k_route(tm, ym, target, loss_d)
    if checked:
        ref = _k_route(tm, ym, target + 15, loss_d)
        with mp.workdps(target + 40):
            floor = mp.exp(-ym) * mp.mpf(10) ** (-loss_d - 5)
            scale = max(abs(val), abs(ref), floor)
            if abs(val - ref) > scale * mp.mpf(10) ** (-(target + 2)):
                raise QuadratureError(
                    "kernel runs at %d and %d digits disagree (%s vs %s)"
                    % (target, target + 15, mp.nstr(val, 10), mp.nstr(ref, 10))
                )
    if len(_K_CACHE) > _K_CACHE_LIMIT:
        _K_CACHE.clear()
    _K_CACHE[key] = (val, checked)
    return val


def ihankel_line(t, x, ctx: PrecisionContext | None = None, scaled: bool = False,
                 *, checked: bool = True):
    """(2/pi) e^(pi t/2) K_it(t x), the nonnegative real value of
    i H^(1)_it(i t x) on t > 0, x >= 1.

    With scaled=True the result comes back as a (mantissa, exponent10)
    pair with mantissa in [1, 10); use that form whenever t*x is past a
    few hundred and the compensated growth factor should stay explicit.
    checked is forwarded to the kernel evaluation.
    """
    ctx = ctx or default_context()
    with working(ctx, extra=8):
        tm = mp.mpf(t)
        xm = mp.mpf(x)
        if not tm > 0:
            raise ValueError("t must be positive")
        if not xm >= 1:
            raise ValueError("x must be >= 1")
        if float(tm) > 1e15:
            raise OverflowError(
                "pi t/2 with t = %.3g is beyond the supported exponent range"
                % float(tm)
            )
        kv = k_imag_order(tm, tm * xm, ctx.bumped(3), checked=checked)
        val = 2 / mp.pi * mp.exp(mp.pi * tm / 2) * kv
        if not scaled:
            return +val
        if val == 0:
            return mp.mpf(0), 0
        e10 = int(mp.floor(mp.log10(abs(val))))
        return +(val / mp.mpf(10) ** e10), e10


# ---------------------------------------------------------------------------
# Contour reference for H^(1)_nu(nu x)


def _grow_to(xf: float, need: float) -> float:
    """T with x sinh(T) - T >= need, via the asinh fixed point."""
    T = math.asinh(max(need, 1.0) / xf + 1.0)
    for _ in range(60):
        T = math.asinh((need + T) / xf)
    return T + 0.25


def _contour_once(nu_raw, x_raw, digits: int, run: int):
    """One pass over the fixed three-segment contour at `run` digits."""
    with mp.workdps(run):
        nu = mp.mpc(nu_raw)
        x = mp.mpf(x_raw)
        af = float(abs(nu))
        xf = float(x)
        nats = (
            math.log(10) * (digits + 20)
            + max(0.0, float(mp.im(nu)) * (math.pi + _phase_gap_f(xf)))
            + 10.0
        )
        T = _grow_to(xf, nats / (af * math.cos(float(mp.arg(nu)))))

        # incoming ray on the real axis
        core = min(1.0 / (af * (xf - 1.0) + 1e-30), (6.0 / af) ** (1.0 / 3.0), T / 4)
        left = {mp.mpf(0), mp.mpf(-T)}
        g = core / 4
        while g < T:
            left.add(mp.mpf(-g))
            g *= 2

        def f_in(u):
            return mp.exp(nu * (x * mp.sinh(u) - u))

        total = tanh_sinh_panels(f_in, sorted(left), goal_dps=run - 8)

        # vertical segment 0 -> i pi
        npan = max(8, int(af * (xf + 1.0) / 2.0) + 1)
        if npan > 20_000:
            raise QuadratureError("contour oscillation is out of range")
        ys = {mp.pi * k / npan for k in range(npan + 1)}
        if xf > 1.0:
            bet = math.acos(1.0 / xf)
            wid = (af * math.sqrt(xf * xf - 1.0)) ** -0.5
            ys.add(mp.mpf(bet))
            for j in (-3, -2, -1, 1, 2, 3):
                yv = bet + j * wid
                if 0.0 < yv < math.pi:
                    ys.add(mp.mpf(yv))
        else:
            wid = af ** (-1.0 / 3.0)
            for j in (1, 2, 3):
                if j * wid < math.pi:
                    ys.add(mp.mpf(j * wid))

        def f_up(w):
            return mp.exp(1j * nu * (x * mp.sin(w) - w))

        total += 1j * tanh_sinh_panels(f_up, sorted(ys), goal_dps=run - 8)

        # outgoing ray shifted by i pi
        core3 = min(1.0 / (af * (xf + 1.0)), T / 4)
        right = {mp.mpf(0), mp.mpf(T)}
        g = core3 / 4
        while g < T:
            right.add(mp.mpf(g))
            g *= 2

        def f_out(v):
            return mp.exp(-nu * (x * mp.sinh(v) + v))

        total += mp.exp(-1j * mp.pi * nu) * tanh_sinh_panels(
            f_out, sorted(right), goal_dps=run - 8)
        return total / (mp.pi * 1j)


def hankel1_reference(nu, x, ctx: PrecisionContext | None = None) -> CpxHP:
    """H^(1)_nu(nu x) from its contour integral over the fixed
    three-segment path (real ray in, vertical lift to i pi, shifted ray
    out).

    Needs |arg nu| < pi/2 and |nu| <= 1000. For Im nu > 0 the outgoing
    segment overshoots the answer by e^(pi Im nu); the working precision
    is raised to absorb exactly that before the segments cancel.
    """
    ctx = ctx or default_context()
    digits = ctx.digits
    with mp.workdps(digits + 20):
        nu_c = mp.mpc(nu)
        xm = mp.mpf(x)
    if not xm >= 1:
        raise ValueError("x must be >= 1")
    af = float(abs(nu_c))
    if af == 0:
        raise ValueError("nu must be nonzero")
    if af > 1000:
        raise ValueError("|nu| = %.4g is past the contoured range 1000" % af)
    tf = float(mp.arg(nu_c))
    if not abs(tf) < math.pi / 2 - _EDGE:
        raise SectorError(
            "the contour reference needs |arg nu| < pi/2, got %.9g" % tf)
    bump = 12 + int(
        max(0.0, float(mp.im(nu_c)) * (math.pi + _phase_gap_f(float(xm))))
        / math.log(10)
    )
    v1 = _contour_once(nu, x, digits, digits + bump)
    v2 = _contour_once(nu, x, digits, digits + bump + 15)
    with mp.workdps(digits + bump + 20):
        scale = max(abs(v1), abs(v2))
        if scale == 0 or abs(v1 - v2) > scale * mp.mpf(10) ** (-(digits + 1)):
            raise QuadratureError(
                "contour runs disagree (%s vs %s)"
                % (mp.nstr(v1, 10), mp.nstr(v2, 10))
            )
    return v2


def hankel2_reference(nu, x, ctx: PrecisionContext | None = None) -> CpxHP:
    """H^(2)_nu(nu x) by reflection through the conjugate of the H^(1)
    reference."""
    ctx = ctx or default_context()
    with mp.workdps(ctx.digits + 25):
        nc = mp.conj(mp.mpc(nu))
    return mp.conj(hankel1_reference(nc, x, ctx))


def jy_reference(nu, x, ctx: PrecisionContext | None = None):
    """(J_nu(nu x), Y_nu(nu x)) assembled from the contour references.

    For real nu this is just the real and imaginary part of one H^(1)
    evaluation, with no extra quadrature and no cancellation.
    """
    ctx = ctx or default_context()
    with mp.workdps(ctx.digits + 25):
        real_order = mp.im(mp.mpc(nu)) == 0
    h1 = hankel1_reference(nu, x, ctx)
    if real_order:
        return mp.mpc(mp.re(h1)), mp.mpc(mp.im(h1))
    h2 = hankel2_reference(nu, x, ctx)
    return (h1 + h2) / 2, (h1 - h2) / (2 * mp.mpc(0, 1))


# ---------------------------------------------------------------------------
# Remainder integrals


def _kernel_ctx(ctx: PrecisionContext) -> PrecisionContext:
    """Precision for kernel values inside an outer quadrature.

    Anchored to the caller's digits, not the ambient working precision:
    the outer integrator runs its confirmation pass at a different dps,
    and an anchored target lets that pass reuse the first pass's cached
    kernel values instead of recomputing every node. What the second pass
    checks is the panel law; kernel honesty is carried by the per-panel
    level agreement and by the contour cross-checks in the tests.
    """
    return PrecisionContext(digits=max(ctx.digits - 2, 15))


def _pole_breaks_oblique(anu: float, theta: float):
    """Breakpoints around the rational-kernel pole when it sits over the
    positive ray (Re(i nu) > 0)."""
    tp = -anu * math.sin(theta)
    if tp <= 0:
        return ()
    h = max(anu * abs(math.cos(theta)), 1e-6 * anu)
    near = [tp + j * h for j in (-4, -2, -1, 0, 1, 2, 4)]
    return tuple(b for b in near + [0.7 * tp, 1.3 * tp] if b > 0)


def _oblique_h(function: str, nu_raw, beta_raw, N: int, ctx: PrecisionContext):
    with working(ctx, extra=15):
        nu = mp.mpc(nu_raw)
        th = _continued_theta(function, nu)
        b = mp.mpf(beta_raw)
        if not (0 < b < mp.pi / 2):
            raise ValueError("beta must lie in (0, pi/2)")
        x = 1 / mp.cos(b)
        s = mp.tan(b) - b
        nu_eff = nu if function == "H1" else -nu
        th_eff = float(th) if function == "H1" else float(th) + math.pi
        c0 = 1 / (2 * mp.sqrt(2 * mp.pi / mp.tan(b)))
        pref = c0 / (1j * nu_eff) ** N
        sf = float(s)
        anu = float(abs(nu))
    cut = exp_tail_cutoff(N + 0.5, 2 * sf, ctx.digits)

    def f(t):
        if float(t) > cut:
            return mp.mpf(0)
        ih = ihankel_line(t, x, _kernel_ctx(ctx), checked=False)
        return (
            t ** (N - mp.mpf("0.5"))
            * mp.exp(-t * s)
            / (1 + 1j * t / nu_eff)
            * (1 + mp.exp(-2 * mp.pi * t))
            * ih
        )

    val = integrate_semiinfinite(
        f,
        2 * sf,
        ctx,
        power_hint=max(N - 1, 0.0),
        singular_power=Fraction(-1, 2) if N == 0 else 0,
        extra_breaks=_pole_breaks_oblique(anu, th_eff),
        panel_style="coarse",
    )
    with working(ctx, extra=15):
        return +(pref * val)


def _oblique_jy(function: str, nu_raw, beta_raw, N: int, ctx: PrecisionContext):
    with working(ctx, extra=15):
        nu = mp.mpc(nu_raw)
        th = _continued_theta(function, nu)
        b = mp.mpf(beta_raw)
        if not (0 < b < mp.pi / 2):
            raise ValueError("beta must lie in (0, pi/2)")
        x = 1 / mp.cos(b)
        s = mp.tan(b) - b
        c0 = 1 / (2 * mp.sqrt(2 * mp.pi / mp.tan(b)))
        sign = mp.mpf(-1) ** N
        pref_even = sign * c0 * nu ** (-2 * N)
        pref_odd = sign * c0 * nu ** (-2 * N - 1)
        xi = nu * s - mp.pi / 4
        sf = float(s)
        anu = float(abs(nu))
        thf = float(th)

    def make(power_shift):
        expo = 2 * N - mp.mpf("0.5") + power_shift
        cut = exp_tail_cutoff(2 * N + 0.5 + power_shift, 2 * sf, ctx.digits)

        def f(t):
            if float(t) > cut:
                return mp.mpf(0)
            ih = ihankel_line(t, x, _kernel_ctx(ctx), checked=False)
            return (
                t ** expo
                * mp.exp(-t * s)
                / (1 + (t / nu) ** 2)
                * (1 + mp.exp(-2 * mp.pi * t))
                * ih
            )

        return f

    tp = anu * abs(math.sin(thf))
    if tp > 0:
        h = max(anu * abs(math.cos(thf)), 1e-6 * anu)
        breaks = tuple(
            bk
            for bk in [tp + j * h for j in (-4, -2, -1, 0, 1, 2, 4)]
            + [0.7 * tp, 1.3 * tp]
            if bk > 0
        )
    else:
        breaks = ()

    even = integrate_semiinfinite(
        make(0),
        2 * sf,
        ctx,
        power_hint=max(2 * N - 1, 0.0),
        singular_power=Fraction(-1, 2) if N == 0 else 0,
        extra_breaks=breaks,
        panel_style="coarse",
    )
    odd = integrate_semiinfinite(
        make(1),
        2 * sf,
        ctx,
        power_hint=2 * N + 0.5,
        extra_breaks=breaks,
        panel_style="coarse",
    )
    with working(ctx, extra=15):
        a_term = pref_even * even
        b_term = pref_odd * odd
        if function == "J":
            return +(mp.cos(xi) * a_term + mp.sin(xi) * b_term)
        return +(mp.sin(xi) * a_term - mp.cos(xi) * b_term)


def _turning_remainder(function: str, nu_raw, N: int, ctx: PrecisionContext):
    with working(ctx, extra=15):
        nu = mp.mpc(nu_raw)
        th = _continued_theta(function, nu)
        if function == "H2":
            th_eff = th + mp.pi
            shape, outer_sign = "H1", -1
        else:
            th_eff = th
            shape, outer_sign = function, 1
        anu = abs(nu)
        log_nu = mp.log(anu) + 1j * th_eff
        wfac = mp.exp(-mp.mpf(2) / 3 * log_nu)
        e_plus = mp.exp(1j * mp.pi * (2 * N + 1) / 3)
        e_minus = mp.conj(e_plus)
        rot = mp.exp(2j * mp.pi / 3)
        rot_c = mp.conj(rot)
        p = mp.mpf(2 * N + 1) / 3
        if shape == "H1":
            pref = mp.mpf(-1) ** N / (3 * mp.pi) * mp.exp(-p * log_nu)
        elif shape == "J":
            pref = mp.mpf(-1) ** N / (6 * mp.pi) * mp.exp(-p * log_nu)
        else:
            pref = mp.mpf(-1) ** N / (6 * mp.pi * 1j) * mp.exp(-p * log_nu)
        pref = outer_sign * pref
        anu_f = float(anu)
        th_f = float(th_eff)
    cut = exp_tail_cutoff((2 * N + 1) / 3.0, 2 * math.pi, ctx.digits)

    def f(t):
        if float(t) > cut:
            return mp.mpf(0)
        # fractional exponents are rebuilt per call so they carry the
        # ambient quadrature precision, not the import-time default
        two_thirds = mp.mpf(2) / 3
        t_power = mp.mpf(2 * N - 2) / 3
        hline = -1j * ihankel_line(t, 1, _kernel_ctx(ctx), checked=False)
        w = t ** two_thirds * wfac
        if shape == "H1":
            ker = e_plus / (1 + w * rot) + 1 / (1 + w)
        elif shape == "J":
            ker = e_plus / (1 + w * rot) - e_minus / (1 + w * rot_c)
        else:
            ker = e_plus / (1 + w * rot) + e_minus / (1 + w * rot_c) + 2 / (1 + w)
        return t ** t_power * mp.exp(-2 * mp.pi * t) * ker * hline

    shifts = {"H1": (2 * math.pi / 3, 0.0), "J": (2 * math.pi / 3, -2 * math.pi / 3)}.get(
        shape, (2 * math.pi / 3, -2 * math.pi / 3, 0.0)
    )
    breaks = []
    for shift in shifts:
        phi = -2.0 * th_f / 3.0 + shift
        dist = abs((abs(phi) % (2 * math.pi)) - math.pi)
        if dist < 0.35:
            rel = 1.5 * max(dist, 1e-7)
            breaks.append(anu_f)
            for j in (-4, -2, -1, 1, 2, 4):
                bk = anu_f * (1 + j * rel)
                if bk > 0:
                    breaks.append(bk)

    val = integrate_semiinfinite(
        f,
        2 * math.pi,
        ctx,
        power_hint=max((2 * N - 2) / 3.0, 0.0),
        singular_power=Fraction(-2, 3) if N == 0 else 0,
        extra_breaks=tuple(breaks),
        panel_style="coarse",
    )
    with working(ctx, extra=15):
        return +(pref * val)


def remainder_quadrature(q: RemainderQuery, ctx: PrecisionContext | None = None) -> CpxHP:
    """Evaluate the exact remainder integral for the queried truncation.

    The returned value closes the truncated identity additively at the
    bracket level where the coefficient sum lives. For the oblique H
    family that is the term inside the braces next to the partial sum (H2
    receives the H1-form integral at nu e^(i pi)); for the turning family
    it is the free-standing remainder term of the corresponding identity,
    including its printed sign.
    """
    ctx = ctx or default_context()
    if int(q.N) != q.N or q.N < 0:
        raise ValueError("N must be a nonnegative integer")
    n = int(q.N)
    if q.regime == "oblique":
        if q.beta is None:
            raise ValueError("oblique queries need beta")
        if q.function in ("H1", "H2"):
            return _oblique_h(q.function, q.nu, q.beta, n, ctx)
        if q.function in ("J", "Y"):
            return _oblique_jy(q.function, q.nu, q.beta, n, ctx)
        raise ValueError("function must be one of H1, H2, J, Y")
    if q.regime == "turning":
        if q.beta not in (None, TURNING):
            raise ValueError("turning queries take no beta")
        if q.function not in ("H1", "H2", "J", "Y"):
            raise ValueError("function must be one of H1, H2, J, Y")
        return _turning_remainder(q.function, q.nu, n, ctx)
    raise ValueError("regime must be oblique or turning")


def _oblique_h_remainder_rotated(nu, beta, N: int, phi: float,
                                 ctx: PrecisionContext | None = None) -> CpxHP:
    """H-form oblique remainder with the integration ray turned down to
    arg t = -phi.

    Continuation consistency probe: off the real ray the kernel is reached
    through the modified Bessel function at complex imaginary order, a
    slower library route used only to confirm that the rotated and the
    straight evaluations agree.
    """
    ctx = ctx or default_context()
    if not 0 < phi < math.pi / 2:
        raise ValueError("phi must sit in (0, pi/2)")
    with working(ctx, extra=15):
        nu_c = mp.mpc(nu)
        _continued_theta("H1", nu_c)
        b = mp.mpf(beta)
        x = 1 / mp.cos(b)
        s = mp.tan(b) - b
        c0 = 1 / (2 * mp.sqrt(2 * mp.pi / mp.tan(b)))
        pref = c0 / (1j * nu_c) ** N
        rot = mp.exp(-1j * mp.mpf(phi))
        sf = float(s)

    def f(tau):
        t = rot * tau
        ih = 2 / mp.pi * mp.exp(mp.pi * t / 2) * mp.besselk(1j * t, t * x)
        return (
            rot
            * t ** (N - mp.mpf("0.5"))
            * mp.exp(-t * s)
            / (1 + 1j * t / nu_c)
            * (1 + mp.exp(-2 * mp.pi * t))
            * ih
        )

    val = integrate_semiinfinite(
        f,
        2 * sf * math.cos(phi),
        ctx,
        power_hint=max(N - 1, 0.0),
        singular_power=Fraction(-1, 2) if N == 0 else 0,
    )
    with working(ctx, extra=15):
        return +(pref * val)


# ---------------------------------------------------------------------------
# Coefficient integrals


def u_coeff_integral(n: int, beta, ctx: PrecisionContext | None = None) -> CpxHP:
    """U_n(i cot beta) from its real-line integral representation.

    Capped at n <= 8; the t^(n - 1/2) weight pushes the mass outward and
    the quadrature cost with it.
    """
    ctx = ctx or default_context()
    if not 0 <= n <= 8:
        raise ValueError("the integral route is capped at n <= 8")
    with working(ctx, extra=15):
        b = mp.mpf(beta)
        if not (0 < b < mp.pi / 2):
            raise ValueError("beta must lie in (0, pi/2)")
        x = 1 / mp.cos(b)
        s = mp.tan(b) - b
        pref = mp.mpc(1j) ** n / (2 * mp.sqrt(2 * mp.pi / mp.tan(b)))
        sf = float(s)
    cut = exp_tail_cutoff(n + 0.5, 2 * sf, ctx.digits)

    def f(t):
        if float(t) > cut:
            return mp.mpf(0)
        ih = ihankel_line(t, x, _kernel_ctx(ctx), checked=False)
        return (
            t ** (n - mp.mpf("0.5"))
            * mp.exp(-t * s)
            * (1 + mp.exp(-2 * mp.pi * t))
            * ih
        )

    val = integrate_semiinfinite(
        f,
        2 * sf,
        ctx,
        power_hint=max(n - 1, 0.0),
        singular_power=Fraction(-1, 2) if n == 0 else 0,
        panel_style="coarse",
    )
    with working(ctx, extra=15):
        return +(mp.mpc(pref * val))


def d_coeff_integral(n: int, ctx: PrecisionContext | None = None) -> CpxHP:
    """d_2n from its real-line integral representation; capped at n <= 8."""
    ctx = ctx or default_context()
    if not 0 <= n <= 8:
        raise ValueError("the integral route is capped at n <= 8")
    with working(ctx, extra=15):
        pref = mp.mpf(-1) ** n / mp.gamma(mp.mpf(2 * n + 1) / 3)

    cut = exp_tail_cutoff((2 * n + 1) / 3.0, 2 * math.pi, ctx.digits)

    def f(t):
        if float(t) > cut:
            return mp.mpf(0)
        t_power = mp.mpf(2 * n - 2) / 3
        return t ** t_power * mp.exp(-2 * mp.pi * t) * ihankel_line(t, 1, _kernel_ctx(ctx), checked=False)

    val = integrate_semiinfinite(
        f,
        2 * math.pi,
        ctx,
        power_hint=max((2 * n - 2) / 3.0, 0.0),
        singular_power=Fraction(-2, 3) if n == 0 else 0,
        panel_style="coarse",
    )
    with working(ctx, extra=15):
        return +(mp.mpc(pref * val))
