import sys, runpy, io, contextlib
import cypari2
pari = cypari2.Pari(); pari.allocatemem(2*10**9)
ARGV = list(sys.argv); case = int(ARGV[1])
sys.argv = ['proto.py', str(case)]
with contextlib.redirect_stdout(io.StringIO()):
    g = runpy.run_path('proto.py')
D = g['D']; c0 = g['c0']; c1 = g['c1']
nfK = pari(f'nfinit(y^2 - ({D}))')
res = pari.rnfequation(nfK, pari(f'x^3 + ({c1})*x + ({c0})'), 1)
P, a, kk = res[0], res[1], res[2]
nf = pari.nfinit(P)
th = pari('Mod(x, %s)' % P)
w = pari.subst(pari.lift(a), 'x', th)     # sqrt(D) as polmod
xi = th - kk*w
def toH(h):
    s = pari(0)
    for i, (X, Y) in enumerate(h):
        s += (pari(str(X)) + pari(str(Y))*w) * xi**i
    return s
ua, va = g['P']['alpha']
alpha = (ua + va*w)/2
def pk(k): return 1 - alpha**k * xi
def sk(aH, k):
    b = pk(k)
    prs = list(pari.idealprimedec(nf, 2))
    fa = pari.idealfactor(nf, aH)
    for i in range(len(fa[0])):
        pr = fa[0][i]
        if int(pr[0]) != 2: prs.append(pr)
    s = 1
    for pr in prs:
        if int(pari.nfeltval(nf, b, pr)) != 0 and int(pr[0]) != 2:
            return 0
        s *= int(pari.nfhilbert(nf, aH, b, pr))
    return s
def eps(k):
    pi = 1 + c1*alpha**(2*k) + c0*alpha**(3*k)
    # pi in K: express pi^3 mod 4 O_K, compare with 1 and -sqrt(D)
    pi3 = pi**3
    def in4OK(z):
        z = pari.lift(z)  # polynomial in x (theta) -> need K element: use nf basis
        return None
    # do it with Python exact arithmetic instead
    return None
gam = g['g']; six = g['hq'](-6)
a1 = toH(g['hmul'](six, gam)); a2 = toH(g['discf'])
print("N(6g3) factor:", pari.idealfactor(nf, a1)[0].__len__())
import json
N = int(ARGV[2]) if len(ARGV) > 2 else 60
out = {"s1": [sk(a1, k) for k in range(1, N+1)], "s2": [sk(a2, k) for k in range(1, N+1)]}
print(json.dumps(out))

def orders(aH):
    fa = pari.idealfactor(nf, aH)
    res = []
    for i in range(len(fa[0])):
        pr = fa[0][i]; e = int(fa[1][i])
        q = int(pr[0]); f = int(pr[3])
        if q == 2: continue
        modpr = pari.nfmodprinit(nf, pr)
        am = pari.nf_to_Fq(nf, alpha, modpr) if hasattr(pari, 'nf_to_Fq') else None
        Nq = q**f - 1
        d = None
        for dd in sorted(int(x) for x in pari.divisors(Nq)):
            t = pari.nfeltpowmodpr(nf, alpha, dd, modpr) if False else None
            v = pari.nfeltval(nf, alpha**dd - 1, pr)
            if int(v) > 0: d = dd; break
        res.append((q, f, int(pr[2]), e, d))
    return res
print("orders 6g3:", orders(a1))
print("orders discf:", orders(a2))

def qmul(p, q_):  # (a,b) = (a + b sqrtD)/2
    return ((p[0]*q_[0] + D*p[1]*q_[1])//2, (p[0]*q_[1] + p[1]*q_[0])//2)
def qpow(p, n):
    r = (2, 0)
    for _ in range(n): r = qmul(r, p)
    return r
def pi_k(k):
    a2 = qpow((ua, va), 2*k); a3 = qpow((ua, va), 3*k)
    return (2 + c1*a2[0] + c0*a3[0], c1*a2[1] + c0*a3[1])
def epsilon(pi):
    c = qmul(qmul(pi, pi), pi)
    x = (c[0] - c[1])//2; y = c[1]
    return 1 if (x % 4 == 1 and y % 2 == 0) else -1
from math import gcd
def lcm(a, b): return a*b//gcd(a, b)
def bound(aH):
    L = 2
    for (q, f, e, ex, d) in orders(aH): L = lcm(L, d)
    return L
def period(vals, N):
    T = set(k for k in range(1, N+1) if vals[k-1])
    for t in sorted(int(x) for x in pari.divisors(N)):
        if all((k + t) in T for k in T if k <= N - t):
            return t, sorted(k % t for k in T if k <= t)
mode = ARGV[3] if len(ARGV) > 3 else ''
if mode == 'tables':
    N1 = bound(a1); N2 = bound(a2)
    print("bounds", N1, N2, flush=True)
    t1 = [sk(a1, k)*epsilon(pi_k(k)) == 1 for k in range(1, N1+1)]
    M1, R1 = period(t1, N1)
    print("T1", M1, R1, flush=True)
    t2 = [sk(a2, k) in (-1, 0) for k in range(1, N2+1)]
    M2, R2 = period(t2, N2)
    print("T2", M2, R2, flush=True)
    M = lcm(M1, M2)
    R = [r for r in range(M) if (r % M1) in R1 and (r % M2) in R2]
    print("combined", M, len(R), R, flush=True)
    print("eps", [epsilon(pi_k(k)) for k in range(1, 5)])
