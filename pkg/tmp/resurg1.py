import time
from mpmath import mp
from debyekit.precision import PrecisionContext
from debyekit import oracle as orc
from debyekit import coeffs

ctx = PrecisionContext(digits=40)

def check_h1_oblique(nu, beta_frac, N, rdigits=26):
    t0 = time.time()
    rctx = PrecisionContext(digits=rdigits)
    with mp.workdps(ctx.digits + 25):
        beta = mp.pi / beta_frac
        x = 1 / mp.cos(beta)
        s = mp.tan(beta) - beta
        z = 1j / mp.tan(beta)
        q = orc.RemainderQuery(function="H1", regime="oblique", nu=mp.mpc(nu),
                               N=N, beta=beta)
        R = orc.remainder_quadrature(q, rctx)
        h = orc.hankel1_reference(nu, x, ctx)
        pref = mp.e**(1j * nu * s - 1j * mp.pi / 4) / mp.sqrt(mp.pi * nu * mp.tan(beta) / 2)
        ssum = mp.mpf(0)
        for n in range(N):
            ssum += (-1) ** n * coeffs.u_eval(n, z, ctx) / mp.mpc(nu) ** n
        err = abs(h - pref * (ssum + R)) / abs(h)
    print(f"H1 oblique nu={nu} beta=pi/{beta_frac} N={N}: rel={float(err):.3e} "
          f"{'OK' if err < mp.mpf(10)**-20 else 'FAIL'}  {time.time()-t0:.1f}s", flush=True)

check_h1_oblique(10, 3, 5)
check_h1_oblique(10, 3, 0, rdigits=30)
