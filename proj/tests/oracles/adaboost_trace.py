"""Reference trace for discrete AdaBoost on x=[0,1,2,3], y=[+1,+1,-1,+1].

Steps the weighted error, the contribution weight and the exponential
re-weighting by hand with plain floats, independent of the C++ code.
"""
import math

x = [0.0, 1.0, 2.0, 3.0]
y = [1, 1, -1, 1]
n = len(x)
w = [1.0 / n] * n
eps_floor = 1e-10


def candidates(vals):
    s = sorted(set(vals))
    out = [s[0] - 1.0]
    out += [(a + b) / 2 for a, b in zip(s, s[1:])]
    return out


def predict(thr, pol, v):
    return 1 if pol * (v - thr) > 0 else -1


for t in range(5):
    best = None
    for thr in candidates(x):
        for pol in (1, -1):
            err = sum(wi for wi, xi, yi in zip(w, x, y) if predict(thr, pol, xi) != yi)
            if best is None or err < best[0] - 1e-12:
                best = (err, thr, pol)
    err, thr, pol = best
    if err >= 0.5 - eps_floor:
        print("stop: no edge")
        break
    e = min(max(err, eps_floor), 0.5 - eps_floor)
    alpha = 0.5 * math.log((1 - e) / e)
    w = [wi * math.exp(-alpha * yi * predict(thr, pol, xi)) for wi, xi, yi in zip(w, x, y)]
    z = sum(w)
    w = [wi / z for wi in w]
    print(f"round {t}: thr={thr!r} pol={pol} eps={err!r} alpha={alpha!r}")
    print("  w=" + ", ".join(repr(v) for v in w))
    if err <= eps_floor:
        print("stop: perfect")
        break
