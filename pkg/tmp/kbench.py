import sys, time
sys.path.insert(0, "src")
import mpmath as mp
import debyekit.oracle as orc
from debyekit.precision import PrecisionContext

calls = {"n": 0}
_ts = orc.tanh_sinh_panels
def counting(f, pts, goal_dps):
    def g(u):
        calls["n"] += 1
        return f(u)
    return _ts(g, pts, goal_dps=goal_dps)

for tgt, t, y in [(23, 7.0, 14.0), (23, 2.0, 4.0), (23, 30.0, 60.0),
                  (35, 7.0, 14.0), (23, 5.0, 5.0)]:
    orc._K_CACHE.clear()
    calls["n"] = 0
    orc.tanh_sinh_panels = counting
    t0 = time.time()
    with mp.workdps(tgt + 15):
        if y >= 1.05 * t:
            v = orc._k_shifted(mp.mpf(t), mp.mpf(y), tgt)
        else:
            v = orc._k_cosine(mp.mpf(t), mp.mpf(y), tgt)
    dt = time.time() - t0
    orc.tanh_sinh_panels = _ts
    with mp.workdps(tgt + 15):
        ref = mp.besselk(mp.mpc(0, t), mp.mpf(y))
        rel = abs(v - ref) / abs(ref)
    print("tgt=%2d t=%4.1f y=%4.1f  %.2fs  evals=%5d  rel=%s"
          % (tgt, t, y, dt, calls["n"], mp.nstr(rel, 3)), flush=True)
