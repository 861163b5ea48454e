import time
from mpmath import mp
from debyekit.precision import PrecisionContext
from debyekit import oracle as orc

calls = {"n": 0, "t": 0.0, "miss": 0}
orig = orc._k_route
def timed(tm, ym, target, loss):
    calls["miss"] += 1
    t0 = time.time()
    v = orig(tm, ym, target, loss)
    calls["t"] += time.time() - t0
    return v
orc._k_route = timed

orig_k = orc.k_imag_order
def counted(t, y, ctx=None, *, checked=True):
    calls["n"] += 1
    return orig_k(t, y, ctx, checked=checked)
orc.k_imag_order = counted

ctx = PrecisionContext(digits=26)
with mp.workdps(50):
    t0 = time.time()
    q = orc.RemainderQuery(function="H1", regime="oblique", nu=mp.mpc(10), N=0, beta=mp.pi/3)
    R0 = orc.remainder_quadrature(q, ctx)
    el = time.time() - t0
print("N=0 digits=26: %.1fs  kernel calls=%d misses=%d kernel time=%.1fs" %
      (el, calls["n"], calls["miss"], calls["t"]))
print("R0 =", mp.nstr(R0, 12))
