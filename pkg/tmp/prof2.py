import time
from mpmath import mp
import debyekit.precision as prec
from debyekit.precision import PrecisionContext
import debyekit.oracle as orc

real_engine = prec.tanh_sinh_panels
depth = {"d": 0}
def verbose(f, pts, goal_dps, max_level=11):
    if depth["d"] > 0:
        return real_engine(f, pts, goal_dps, max_level)
    print("outer engine: %d panels goal=%d" % (len(pts) - 1, goal_dps), flush=True)
    total = mp.mpf(0)
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        t0 = time.time()
        depth["d"] += 1
        try:
            v = real_engine(f, [a, b], goal_dps, max_level)
        finally:
            depth["d"] -= 1
        print("  panel [%s, %s] %.1fs" % (mp.nstr(mp.mpf(a), 6), mp.nstr(mp.mpf(b), 6), time.time() - t0), flush=True)
        total += v
    return total

prec.tanh_sinh_panels = verbose
# oracle imported tanh_sinh_panels by name; rebind there too
orc.tanh_sinh_panels = verbose
import debyekit.precision
debyekit.precision.tanh_sinh_panels = verbose
# integrate_semiinfinite references the module-global name, patched above

ctx = PrecisionContext(digits=26)
with mp.workdps(50):
    t0 = time.time()
    q = orc.RemainderQuery(function="H1", regime="oblique", nu=mp.mpc(10), N=0, beta=mp.pi/3)
    R0 = orc.remainder_quadrature(q, ctx)
    print("N=0 digits=26 total: %.1fs" % (time.time() - t0))
    print("R0 =", mp.nstr(R0, 12))
