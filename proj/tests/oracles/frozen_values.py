#!/usr/bin/env python3
"""Extended-precision reference values frozen into the C++ unit tests.

Every quantity is evaluated directly from the closed-form relations of
special relativistic hydrodynamics with a Gamma-law gas, using mpmath at
40 significant digits. Nothing here calls the C++ library.

    python3 tests/oracles/frozen_values.py
"""
from mpmath import mp, mpf, sqrt, pi, e

mp.dps = 40


def thermo(rho, p, G):
    eint = p / ((G - 1) * rho)
    h = 1 + eint + p / rho
    cs = sqrt(G * p / (rho * h))
    return eint, h, cs


def prim_to_cons(rho, u, v, p, G):
    W = 1 / sqrt(1 - u * u - v * v)
    _, h, _ = thermo(rho, p, G)
    D = rho * W
    return [D, D * h * W * u, D * h * W * v, D * h * W - p]


def flux(prim, cons, axis):
    rho, u, v, p = prim
    D, mx, my, E = cons
    un = u if axis == 0 else v
    return [D * un, mx * un + (p if axis == 0 else 0), my * un + (p if axis == 1 else 0), (E + p) * un]


def eig(prim, G, axis):
    rho, u, v, p = prim
    _, _, cs = thermo(rho, p, G)
    un = u if axis == 0 else v
    q = u * u + v * v
    W = 1 / sqrt(1 - q)
    root = sqrt(1 - un * un - cs * cs * (q - un * un))
    den = 1 - cs * cs * q
    return (un * (1 - cs * cs) - cs / W * root) / den, (un * (1 - cs * cs) + cs / W * root) / den


def hll_pair(pl, pr, G, alpha, axis=0):
    ul = prim_to_cons(*pl, G)
    ur = prim_to_cons(*pr, G)
    fl = flux(pl, ul, axis)
    fr = flux(pr, ur, axis)
    sl = alpha * min(eig(pl, G, axis)[0], eig(pr, G, axis)[0])
    sr = alpha * max(eig(pl, G, axis)[1], eig(pr, G, axis)[1])
    state = [(sr * ur[k] - sl * ul[k] + fl[k] - fr[k]) / (sr - sl) for k in range(4)]
    slm, srp = min(sl, 0), max(sr, 0)
    fhll = [(srp * fl[k] - slm * fr[k] + slm * srp * (ur[k] - ul[k])) / (srp - slm) for k in range(4)]
    return sl, sr, state, fhll, ul, ur


def show(name, vals):
    if not isinstance(vals, (list, tuple)):
        vals = [vals]
    print(name, " ".join(mp.nstr(x, 17) for x in vals))


G53 = mpf(5) / 3

show("lorentz(0.99,0)", 1 / sqrt(1 - mpf("0.99") ** 2))
show("thermo(1,1,5/3) e h cs", thermo(mpf(1), mpf(1), G53))
p = (mpf("0.1"), mpf("0.99"), mpf(0), mpf(1))
c = prim_to_cons(*p, G53)
show("prim_to_cons(0.1,0.99,0,1)", c)
show("flux_x(0.1,0.99,0,1)", flux(p, c, 0))
show("eig_x(0.1,0.99,0,1)", eig(p, G53, 0))
show("eig_y(0.1,0.99,0,1)", eig(p, G53, 1))
cs = thermo(mpf(1), mpf(1), G53)[2]
show("2cs", 2 * cs)
show("dt rest dx=0.1 sigma=0.45", mpf("0.45") * mpf("0.1") / cs)

sod = hll_pair((mpf(1), mpf(0), mpf(0), mpf(1)), (mpf("0.125"), mpf(0), mpf(0), mpf("0.1")), G53, 2)
show("sod speeds", sod[:2])
show("sod state", sod[2])
show("sod flux", sod[3])
show("sod UL", sod[4])
show("sod UR", sod[5])

comp = hll_pair((mpf(1), mpf("0.5"), mpf(0), mpf(1)), (mpf(1), mpf("-0.5"), mpf(0), mpf(1)), G53, 2)
show("compression speeds", comp[:2])
show("compression state", comp[2])
show("compression flux", comp[3])
show("compression UL", comp[4])

G14 = mpf("1.4")
eps = mpf("10.0828")
avort = (G14 - 1) * eps ** 2 / (8 * G14 * pi ** 2)
show("vortex alpha", avort)
rho0 = (1 - avort * e) ** (1 / (G14 - 1))
show("vortex centre rho p", [rho0, rho0 ** G14])

for model, rb, vb, mb in [("hot", "0.01", "0.99", "1.72"), ("hot", "0.01", "0.999", "1.72"),
                          ("hot", "0.01", "0.9999", "1.72"), ("cold", "0.1", "0.99", "50"),
                          ("cold", "0.1", "0.999", "50"), ("cold", "0.1", "0.9999", "500")]:
    rb, vb, mb = mpf(rb), mpf(vb), mpf(mb)
    c2 = (vb / mb) ** 2
    pb = c2 * rb * (G53 - 1) / (G53 * (G53 - 1 - c2))
    W = 1 / sqrt(1 - vb * vb)
    Ws = 1 / sqrt(1 - c2)
    show(f"jet {model} vb={vb} Mb={mb}: pb gamma Mr", [pb, W, mb * W / Ws])


# Vortex: rest-frame profile and the boosted state. The swirl follows from
# the steady radial balance rho h W^2 v^2 / r = dp/dr with p = rho^Gamma,
# which gives W^2 v^2 = r^2 beta, beta = 2 Gamma a / (2 Gamma - 1 - Gamma a),
# a = alpha e^{1 - r^2}.
def vortex_rest(x0, y0, beta_num):
    r2 = x0 * x0 + y0 * y0
    a = avort * e ** (1 - r2)
    rho = (1 - a) ** (1 / (G14 - 1))
    beta = beta_num * a / (2 * G14 - 1 - G14 * a)
    f = sqrt(beta / (1 + beta * r2))
    return rho, -y0 * f, x0 * f, rho ** G14


def balance_residual(r, beta_num):
    def prof(rr):
        rho, vth, _, p = vortex_rest(mpf(0), rr, beta_num)
        return rho, abs(vth), p
    rho, v, p = prof(r)
    h = 1 + G14 / (G14 - 1) * p / rho
    dpdr = mp.diff(lambda rr: prof(rr)[2], r)
    return rho * h * v * v / (1 - v * v) / r - dpdr


show("vortex balance residual r=1 (2G, G^2)", [balance_residual(mpf(1), 2 * G14), balance_residual(mpf(1), G14 ** 2)])


def vortex(t, x, y):
    w = sqrt(mpf(2)) / 2
    gw = 1 / sqrt(1 - w * w)
    shift = (gw - 1) * (x + y) / 2 + gw * t * w / sqrt(mpf(2))
    rho, u0, v0, p = vortex_rest(x + shift, y + shift, 2 * G14)
    den = 1 - w * (u0 + v0) / sqrt(mpf(2))
    common = -w / sqrt(mpf(2)) + gw * w * w / (2 * (gw + 1)) * (u0 + v0)
    return rho, (u0 / gw + common) / den, (v0 / gw + common) / den, p


show("vortex(0,0.7,0.3)", vortex(mpf(0), mpf("0.7"), mpf("0.3")))
show("vortex(0.5,-1.2,2.1)", vortex(mpf("0.5"), mpf("-1.2"), mpf("2.1")))
