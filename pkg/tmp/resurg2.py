import time
from mpmath import mp
from debyekit.precision import PrecisionContext
from debyekit import oracle as orc
from debyekit import coeffs

ctx = PrecisionContext(digits=40)


def check_turning(fn, nu, N, rdigits=26):
    t0 = time.time()
    rctx = PrecisionContext(digits=rdigits)
    with mp.workdps(ctx.digits + 25):
        q = orc.RemainderQuery(function=fn, regime="turning", nu=mp.mpc(nu), N=N)
        R = orc.remainder_quadrature(q, rctx)
        if fn == "H1":
            ref = orc.hankel1_reference(nu, 1, ctx)
        elif fn == "J":
            ref = mp.besselj(mp.mpf(nu), mp.mpf(nu))
        else:
            ref = mp.bessely(mp.mpf(nu), mp.mpf(nu))
        ssum = mp.mpc(0)
        for n in range(N):
            dn = coeffs.d_coeff(n).value(ctx)
            ang = mp.mpf(2 * n + 1) / 3
            term = dn * mp.sin(ang * mp.pi) * mp.gamma(ang) / mp.mpf(nu) ** ang
            if fn == "H1":
                term *= mp.e ** (2j * mp.pi * ang)
            elif fn == "Y":
                term *= mp.sin(ang * mp.pi)
            ssum += term
        if fn == "H1":
            model = -2 / (3 * mp.pi) * ssum + R
        elif fn == "J":
            model = 1 / (3 * mp.pi) * ssum + R
        else:
            model = -2 / (3 * mp.pi) * ssum + R
        err = abs(ref - model) / abs(ref)
    print(f"{fn} turning nu={nu} N={N}: rel={float(err):.3e} "
          f"{'OK' if err < mp.mpf(10)**-20 else 'FAIL'}  {time.time()-t0:.1f}s", flush=True)


def check_jy_oblique(fn, nu, beta_frac, N, rdigits=26):
    t0 = time.time()
    rctx = PrecisionContext(digits=rdigits)
    with mp.workdps(ctx.digits + 25):
        beta = mp.pi / beta_frac
        x = 1 / mp.cos(beta)
        s = mp.tan(beta) - beta
        z = 1j / mp.tan(beta)
        xi = nu * s - mp.pi / 4
        q = orc.RemainderQuery(function=fn, regime="oblique", nu=mp.mpc(nu),
                               N=N, beta=beta)
        R = orc.remainder_quadrature(q, rctx)
        ref = (mp.besselj if fn == "J" else mp.bessely)(mp.mpf(nu), nu * x)
        amp = mp.sqrt(2 / (nu * mp.pi * mp.tan(beta)))
        se = mp.mpc(0)
        so = mp.mpc(0)
        for n in range(N):
            se += coeffs.u_eval(2 * n, z, ctx) / mp.mpc(nu) ** (2 * n)
            so += coeffs.u_eval(2 * n + 1, z, ctx) / mp.mpc(nu) ** (2 * n + 1)
        if fn == "J":
            inner = mp.cos(xi) * se - 1j * mp.sin(xi) * so
        else:
            inner = mp.sin(xi) * se + 1j * mp.cos(xi) * so
        model = amp * (inner + R)
        err = abs(ref - model) / abs(ref)
    print(f"{fn} oblique nu={nu} beta=pi/{beta_frac} N={N}: rel={float(err):.3e} "
          f"{'OK' if err < mp.mpf(10)**-20 else 'FAIL'}  {time.time()-t0:.1f}s", flush=True)


check_turning("H1", 10, 3)
check_turning("J", 8, 4)
check_jy_oblique("J", 9, 4, 2)
check_jy_oblique("Y", 9, 4, 2)
