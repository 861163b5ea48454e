import sys, time
sys.path.insert(0, "src")
import mpmath as mp
import debyekit.oracle as orc
from debyekit.oracle import RemainderQuery, remainder_quadrature
from debyekit.precision import PrecisionContext

kc = {"n": 0, "t": 0.0}
_k = orc.k_imag_order
def wrap(t, y, ctx=None, **kw):
    t0 = time.time(); kc["n"] += 1
    v = _k(t, y, ctx, **kw)
    kc["t"] += time.time() - t0
    return v
orc.k_imag_order = wrap

ctx = PrecisionContext(digits=26)
beta = mp.pi / 3
for N in (0, 5):
    kc["n"] = 0; kc["t"] = 0.0
    t0 = time.time()
    q = RemainderQuery(function="H1", regime="oblique",
                       nu=mp.mpc(10), beta=beta, N=N)
    r = remainder_quadrature(q, ctx)
    print("N=%d  %.1fs  kernel calls=%d (%.1fs)  R=%s"
          % (N, time.time() - t0, kc["n"], kc["t"], mp.nstr(r, 12)),
          flush=True)
