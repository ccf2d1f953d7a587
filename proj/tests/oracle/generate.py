"""Reference values for the unit tests, computed with mpmath at 40 digits.

Run: python3 tests/oracle/generate.py
The printed values are frozen into the C++ tests by hand.
"""
from mpmath import mp, mpf, pcfd, sqrt, diff, findroot, quad, exp, inf, airyai, gamma, erfc, pi, eig, matrix, eigsy

mp.dps = 40


def show(name, v):
    print(f"{name} = {mp.nstr(v, 17)}")


def V(th, b, e):
    se = sqrt(e)
    A = lambda z: pcfd(-th, z)
    B = lambda z: pcfd(-th / e, z)
    return -se * A(-b) * diff(B, b / se) - diff(A, -b) * B(b / se)


def M(th, b, e):
    se = sqrt(e)
    C = lambda z: pcfd(-th, z)
    B = lambda z: pcfd(-th / e, z)
    return se * C(b) * diff(B, b / se) - diff(C, b) * B(b / se)


# parabolic cylinder function
show("D(-0.5, 2)", pcfd(mpf("-0.5"), 2))
show("D(2.7, 5.5)", pcfd(mpf("2.7"), mpf("5.5")))
show("D(-3.2, -4)", pcfd(mpf("-3.2"), -4))
show("D(10.5, 3)", pcfd(mpf("10.5"), 3))
show("D(-20, 15)", pcfd(-20, 15))
show("D'(1.3, -0.7)", diff(lambda z: pcfd(mpf("1.3"), z), mpf("-0.7")))
show("dD/dp(0, 0)", diff(lambda p: pcfd(p, 0), 0))
show("dD/dp(3, 1)", diff(lambda p: pcfd(p, 1), 3))
show("d2D/dzdp(0.4, -1.1)", diff(lambda p: diff(lambda z: pcfd(p, z), mpf("-1.1")), mpf("0.4")))
show("Ai(15)", airyai(15))
show("Ai(-3.7)", airyai(mpf("-3.7")))
show("Ai'(1.2)", airyai(mpf("1.2"), derivative=1))

# characteristic function
b, e, th = mpf(1), mpf("0.5"), mpf("0.7")
show("V(0.7; 0.5, 1)", V(th, b, e))
show("M(0.7; 0.5, 1)", M(th, b, e))
show("dV(0.7; 0.5, 1)", diff(lambda t: V(t, b, e), th))
show("V(-0.3; 2, -0.5)", V(mpf("-0.3"), mpf("-0.5"), mpf(2)))
show("dV(0; 0.7, 0.5)", diff(lambda t: V(t, mpf("0.5"), mpf("0.7")), 0))

for bb, ee in [("2", "0.1"), ("1", "0.5"), ("0", "0.1"), ("0.5", "2"), ("-2", "3"), ("1.5", "0.3")]:
    bb, ee = mpf(bb), mpf(ee)
    # bracket by scanning
    lam = min(1, ee) * mpf("0.95")
    step = (max(1, ee) * mpf("1.05") - lam) / 400
    f = lambda l: V(-l, bb, ee)
    prev = f(lam)
    while True:
        cur = f(lam + step)
        if prev * cur <= 0:
            root = findroot(f, (lam, lam + step), solver="anderson")
            break
        lam += step
        prev = cur
    show(f"r({bb}, {ee})", root)

bb, ee = mpf(-1), mpf("0.1")
eps = findroot(lambda x: V(-ee * (1 + x), bb, ee), mpf("2.6e-3"))
show("r(-1, 0.1) - 0.1", eps * ee)

# steady state normaliser
bb, ee = mpf(1), mpf("0.5")
num = quad(lambda x: exp(-(x * x) / 2 - bb * x), [-inf, 0]) + quad(lambda x: exp(-ee * x * x / 2 - bb * x), [0, inf])
show("c(1, 0.5)", 1 / num)

# generator second eigenvalue, m=4, rho=3, eta=0.6 truncated at 120 (mass beyond is negligible)
m, rho, eta, N = 4, mpf(3), mpf("0.6"), 120
mu = lambda k: min(k, m) + max(0, k - m) * eta
A = matrix(N + 1, N + 1)
for k in range(N + 1):
    A[k, k] = (rho if k < N else 0) + mu(k)
    if k < N:
        A[k, k + 1] = A[k + 1, k] = -sqrt(rho * mu(k + 1))
ev = sorted(eigsy(A, eigvals_only=True))
show("generator gap (4, 3, 0.6)", ev[1])

# exponentially small gap offsets at large |beta|
bb, ee = mpf(-4), mpf("0.5")
eps = findroot(lambda x: V(-ee * (1 + x), bb, ee), mpf("7.1e-9"))
show("r(-4, 0.5) - 0.5", eps * ee)
bb = mpf(4)
eps = findroot(lambda x: V(-(1 - x), bb, ee), mpf("1.73e-5"))
show("1 - r(4, 0.5)", eps)
