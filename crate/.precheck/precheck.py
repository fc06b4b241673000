#!/usr/bin/env python3
"""Exact-rational pre-verification of the contested identities.

Pins conventions before the Rust build:
  A. core (p,q) bracket identity for general Delta (P1/t2 core)
  B. (P1) with omega-weighted generators: which RHS makes residual 0
  C. (e4)/(5) chi formulas, chi_mn(q,p) vs ratio
  D. d4/d15/d17/su(1,1) conventions (d24 literal vs d16)
  E. g-identities, Delta=1/2 proportionality
  F. (ce) cyclic residual with (ce2)
  G. t11 recursion, two-term recursion, exponent pinning
  H. alpha sums vs paper closed forms (JS/CJ/Quesne/HN)
  I. J3 jacobi value
"""
from fractions import Fraction as F

def frpow(b, e):
    assert e == int(e), (b, e)
    e = int(e)
    return b**e if e >= 0 else F(1, 1) / b**(-e)

class Params:
    def __init__(self, s, t, mu=0, nu=0, g=1):
        self.s, self.t = F(s), F(t)
        self.p, self.q = self.s**2, self.t**2
        self.mu, self.nu, self.g = F(mu), F(nu), F(g)
    def ppow(self, x):  # p^x, x half-integer allowed (x = Fraction)
        return frpow(self.s, 2 * F(x))
    def qpow(self, x):
        return frpow(self.t, 2 * F(x))
    def pqpow(self, x):
        return frpow(self.s * self.t, 2 * F(x))
    def num(self, x):  # [x]_{p,q}
        x = F(x)
        return (self.ppow(x) - self.qpow(x)) / (self.p - self.q)

# builtin R functions, evaluated at (u,v)=(p^x,q^x) via closed forms in x
def R_JS(P, x):
    return P.num(x)
def R_CJ(P, x):  # [x]_{p^{-1},q}
    return (P.ppow(-x) - P.qpow(x)) / (1/P.p - P.q)
def R_Q(P, x):  # [x]^Q
    return (P.ppow(x) - P.qpow(-x)) / (P.q - 1/P.p)
def R_HN(P, x):  # g q^{x nu} / p^{x mu} [x]^Q
    return P.g * P.qpow(P.nu*F(x)) / P.ppow(P.mu*F(x)) * R_Q(P, x)
R_HB = R_HN

FAMS = {'JS': R_JS, 'CJ': R_CJ, 'Q': R_Q, 'HN': R_HN, 'HB': R_HB}

def omega(P, R, delta, n):
    x = F(delta) * (n + 1)
    if x == 0:
        # limit: -(pq)^x R(p^x,q^x)/[x] as x->0; for JS -> -1
        if R is R_JS:
            return F(-1)
        # generic builtin limit of R(p^x,q^x)/[x] as x->0:
        # JS:1, CJ: lim [x]_{p^{-1},q}/[x], Q: lim [x]^Q/[x], HN: g*that
        if R is R_CJ:
            import math
            # [x]_{pinv,q}/[x] -> (ln p^{-1}... ) not rational. compute numeric
            return None
        return None
    return -P.pqpow(x) * R(P, x) / P.num(x)

def gen_coeff(P, R, delta, n, k, plain=False):
    """coefficient of generator L_n^delta on z^k (script unless plain)."""
    c = P.num(F(k) + F(delta) * (n + 1))
    return c if plain else omega(P, R, delta, n) * c

def brace(P, X, Y, n, m, N):
    K = 1 / (P.p - P.q)
    return K * (P.ppow(N) * (X * P.ppow(-n) - Y * P.ppow(-m))
                - P.qpow(N) * (X * P.qpow(-n) - Y * P.qpow(-m)))

def xy_free(P, delta, n, m):
    x = P.pqpow(n) * P.num(n*(F(delta)-1)) * P.num(F(delta)*m) / (P.num(n) * P.num(m))
    y = P.pqpow(m) * P.num(m*(F(delta)-1)) * P.num(F(delta)*n) / (P.num(n) * P.num(m))
    return x, y

def check_A():
    """core identity with plain generators, coefficients xy_free, RHS brace."""
    P = Params(F(1,2), F(1,3))
    bad = 0
    for delta in (F(1,2), 1, 2, 3):
        for n in range(-3, 4):
            for m in range(-3, 4):
                if 0 in (n, m) or n == m: continue
                for k in range(-2, 3):
                    X, Y = xy_free(P, delta, n, m)
                    lhs = X * gen_coeff(P, R_JS, delta, m, k, True) * gen_coeff(P, R_JS, delta, n, k+m, True) \
                        - Y * gen_coeff(P, R_JS, delta, n, k, True) * gen_coeff(P, R_JS, delta, m, k+n, True)
                    N = F(k + n + m) + F(delta)
                    rhs = brace(P, X, Y, n, m, N) * gen_coeff(P, R_JS, delta, n+m, k, True)
                    if lhs != rhs:
                        bad += 1
    print("A core-plain identity failures:", bad)

def check_B():
    """script generators: P1 with RHS brace evaluated at ratio-free x,y."""
    P = Params(F(1,2), F(1,3), mu=2, nu=1, g=F(3,5))
    bad = badlit = 0
    for name, R in FAMS.items():
        for delta in (2, 3):
            for n in (-3,-1,1,2,3):
                for m in (-2,1,3):
                    if n == m or 0 in (n,m): continue
                    for k in (-2, 0, 1):
                        w = lambda i: omega(P, R, delta, i)
                        if any(w(i) is None for i in (n, m, n+m)): continue
                        ratio = w(n+m)/(w(n)*w(m))
                        x0, y0 = xy_free(P, delta, n, m)
                        X, Y = x0*ratio, y0*ratio
                        Lm = lambda kk: gen_coeff(P, R, delta, m, kk)
                        Ln = lambda kk: gen_coeff(P, R, delta, n, kk)
                        lhs = X*Lm(k)*Ln(k+m) - Y*Ln(k)*Lm(k+n)
                        N = F(k+n+m)+F(delta)
                        rhs = brace(P, x0, y0, n, m, N) * gen_coeff(P, R, delta, n+m, k)
                        rhslit = brace(P, X, Y, n, m, N) * gen_coeff(P, R, delta, n+m, k)
                        if lhs != rhs: bad += 1
                        if lhs != rhslit: badlit += 1
    print("B script+ratio-free-brace failures:", bad, "| literal(P1) failures:", badlit)

def chi(P, delta, n, m, N):
    """chi_nm(p,q) evaluated at eigenvalue N, using ratio rho = y/x (ratio-free)."""
    x0, y0 = xy_free(P, delta, n, m)
    rho = y0 / x0
    val = (P.ppow(N)*(P.ppow(-n) - rho*P.ppow(-m))
           - P.qpow(N)*(P.qpow(-n) - rho*P.qpow(-m)))
    return 1/val

def chi_swapped(P, delta, n, m, N):
    """chi_mn(q,p): swap n<->m and p<->q."""
    P2 = Params(P.t, P.s, P.mu, P.nu, P.g)
    return chi(P2, delta, m, n, N)

def check_C():
    """(e4): Xhat=(p-q)R chi_nm * Wratio ; Yhat=(p-q)R chi_mn(q,p)*Wratio; RHS R*L_{n+m}."""
    P = Params(F(1,2), F(1,3), mu=2, nu=1, g=F(3,5))
    bad = 0; badswap = 0
    for name, R in FAMS.items():
        for delta in (2, 3):
            for n in (-3,-1,2,3):
                for m in (-2,1):
                    if n == m or 0 in (n,m): continue
                    for k in (-1, 0, 2):
                        w = lambda i: omega(P, R, delta, i)
                        if any(w(i) is None for i in (n, m, n+m)): continue
                        Wr = w(n+m)/(w(n)*w(m))
                        N = F(k+n+m)+F(delta)
                        Rval = R(P, n - m)
                        Xh = (P.p-P.q)*Rval*chi(P, delta, n, m, N)*Wr
                        Yh = (P.p-P.q)*Rval*chi_swapped(P, delta, n, m, N)*Wr
                        x0, y0 = xy_free(P, delta, n, m)
                        Yh2 = Xh * y0/x0
                        Lm = lambda kk: gen_coeff(P, R, delta, m, kk)
                        Ln = lambda kk: gen_coeff(P, R, delta, n, kk)
                        lhs = Xh*Lm(k)*Ln(k+m) - Yh*Ln(k)*Lm(k+n)
                        lhs2 = Xh*Lm(k)*Ln(k+m) - Yh2*Ln(k)*Lm(k+n)
                        rhs = Rval * gen_coeff(P, R, delta, n+m, k)
                        if lhs2 != rhs: bad += 1
                        if lhs != rhs: badswap += 1
    print("C e4 with Yhat=Xhat*rho failures:", bad, "| with chi_mn(q,p) failures:", badswap)

def w1(P, R, n):
    return omega(P, R, 1, n)

def chihat(P, R, n, m):
    return R(P, n-m)/P.num(m-n) * w1(P, R, n+m)/(w1(P, R, n)*w1(P, R, m))

def d1_coeff(P, R, n, k, variant='plain'):
    c = w1(P, R, n) * P.num(k+n+1)
    if variant == 'plain': return c
    if variant == 'tilde': return P.qpow(-(k+n+1)) * c
    raise ValueError

def check_D():
    P = Params(F('2')**F(1,2)**0, 1)  # placeholder
    for (p, q) in ((F(2), F(3)), (F(1,4), F(1,9))):
        # use s,t = sqrt? For Delta=1 only integer powers; fake s,t
        class Pr(Params):
            def __init__(self, p, q):
                self.p, self.q = p, q
                self.mu, self.nu, self.g = F(0), F(0), F(1)
            def ppow(self, x): return frpow(self.p, F(x))
            def qpow(self, x): return frpow(self.q, F(x))
            def pqpow(self, x): return frpow(self.p*self.q, F(x))
            def num(self, x): return (self.ppow(x)-self.qpow(x))/(self.p-self.q)
        P = Pr(p, q)
        R = R_JS
        bad4 = bad15 = bad17 = 0
        for n in range(-2, 4):
            for m in range(-2, 4):
                if n == m: continue
                for k in range(-2, 3):
                    ch = chihat(P, R, n, m)
                    xh, yh = ch, P.ppow(m-n)*ch
                    L = lambda i, kk: d1_coeff(P, R, i, kk)
                    lhs = xh*L(m,k)*L(n,k+m) - yh*L(n,k)*L(m,k+n)
                    rhs = R(P, n-m) * P.qpow((k+n+m+1)-m) * L(n+m, k)
                    if lhs != rhs: bad4 += 1
                    # d15: tilde gens, x=q^{m-n}chihat_nm, y=p^{m-n}chihat_mn
                    T = lambda i, kk: d1_coeff(P, R, i, kk, 'tilde')
                    x15, y15 = P.qpow(m-n)*chihat(P,R,n,m), P.ppow(m-n)*chihat(P,R,n,m)
                    lhs15 = x15*T(m,k)*T(n,k+m) - y15*T(n,k)*T(m,k+n)
                    rhs15 = R(P, n-m)*T(n+m, k)
                    if lhs15 != rhs15: bad15 += 1
                    # d17: plain commutator of tildes
                    lhs17 = T(m,k)*T(n,k+m) - T(n,k)*T(m,k+n)
                    N1 = F(k+n+m+1)
                    K1 = w1(P,R,n)*w1(P,R,m)/w1(P,R,n+m)
                    rhs17 = P.num(m-n)*P.ppow(N1-m)*P.qpow(-N1+n)*K1*T(n+m,k)
                    if lhs17 != rhs17: bad17 += 1
        print(f"D (p,q)=({p},{q}) JS: d4 fail {bad4}, d15 fail {bad15}, d17 fail {bad17}")
        # su(1,1): d23 with literal d24 coefficients vs d16 coefficients
        for k in range(-2, 3):
            T = lambda i, kk: d1_coeff(P, R, i, kk, 'tilde')
            ch01 = chihat(P, R, 0, 1)
            x24, y24 = P.q*ch01, P.p*ch01
            lhs24 = x24*T(1,k)*T(0,k+1) - y24*T(0,k)*T(1,k)
            x16, y16 = P.qpow(1)*chihat(P,R,0,1), P.ppow(1)*chihat(P,R,1,0)
            lhs16 = x16*T(1,k)*T(0,k+1) - y16*T(0,k)*T(1,k)
            rhs23 = R(P, -1) * T(1, k)
            if k == 0:
                print("  d23 literal-d24 residual:", lhs24-rhs23, "| d16-style residual:", lhs16-rhs23)
        # d25 at (-1,0): x=q chihat_{-1,0}, y=p chihat_{-1,0}
        k = 0
        T = lambda i, kk: d1_coeff(P, R, i, kk, 'tilde')
        chm = chihat(P, R, -1, 0)
        lhs25 = P.q*chm*T(0,0)*T(-1,0) - P.p*chm*T(-1,0)*T(0,-1)
        rhs25 = R(P, -1)*T(-1, 0)
        x16, y16 = P.qpow(1)*chihat(P,R,-1,0), P.ppow(1)*chihat(P,R,0,-1)
        lhs25b = x16*T(0,0)*T(-1,0) - y16*T(-1,0)*T(0,-1)
        print("  d25 literal residual:", lhs25-rhs25, "| d16-style:", lhs25b-rhs25)
        # d27: [Ltil_{-1},Ltil_1] = [2] p^{N-1} q^{-N-1} K^1_{-10} Ltil_0
        for k in (0, 1):
            lhs27 = T(1,k)*T(-1,k+1) - T(-1,k)*T(1,k-1)
            N1 = F(k+1)  # output degree k+0, N1 = k+1
            K_m10 = w1(P,R,-1)*w1(P,R,0)/w1(P,R,-1)  # as written: K^1_{-1,0}
            K_m11 = w1(P,R,-1)*w1(P,R,1)/w1(P,R,0)
            rhs27a = P.num(2)*P.ppow(N1-1)*P.qpow(-N1-1)*K_m10*T(0,k)
            rhs27b = P.num(2)*P.ppow(N1-1)*P.qpow(-N1-1)*K_m11*T(0,k)
            print(f"  d27 k={k}: lit K_-10 resid {lhs27-rhs27a} | K_-1,1 resid {lhs27-rhs27b}")

def check_E():
    P = Params(F(1,2), F(1,3))
    # Delta=1/2 Xhat_k = -(pq)^{k/2} Yhat_k from h1,h2
    delta = F(1,2)
    for R in (R_JS,):
        for k in range(-4, 5):
            for j in (-2, 0, 3):
                N = F(j + k) + delta  # output degree eigenvalue
                if P.ppow(N-F(k,2)) == P.qpow(N-F(k,2)): continue
                Rv = R(P, -k)
                Xh = (P.p-P.q)*Rv / (P.ppow(F(-k,2))+P.qpow(F(-k,2))) / (P.ppow(N-F(k,2))-P.qpow(N-F(k,2)))
                Yh = -(P.p-P.q)*Rv / (P.ppow(F(k,2))+P.qpow(F(k,2))) / (P.ppow(N-F(k,2))-P.qpow(N-F(k,2)))
                assert Xh == -P.pqpow(F(k,2))*Yh
    print("E Delta=1/2 proportionality holds (h1/h2 literal)")
    # g1 for general delta via chi with rho-limits at m=0: rho(k,0) uses lim [am]/[bm] = a/b
    def rho_lim(P, delta, n, m):
        delta = F(delta)
        if m == 0 and n == 0: return F(1)
        if m == 0:
            return P.pqpow(-n) * (delta-1)/delta * P.num(delta*n)/P.num(n*(delta-1)) if delta != 1 else None
        return None
    # just record values for JS delta=2, k=2, j=0
    delta = F(2)
    k, j = 2, 0
    # gamma op coeff(j) = (pq)^{(j+delta)/2}
    w = lambda i: omega(P, R_JS, delta, i)
    G = lambda jj: P.pqpow((F(jj)+delta)/2)
    Lk = lambda jj: gen_coeff(P, R_JS, delta, k, jj)
    # literal g3: Lk G - (p^{-k}+q^{-k}) G Lk on z^j
    g3 = Lk(j)*G(j) - (P.ppow(-k)+P.qpow(-k))*G(j+k)*Lk(j)
    print("E g3 literal residual (JS,D2,k=2,j=0):", g3)
    # g2 for Delta=1/2: (pq)^{k/2} Lk G + G Lk
    delta = F(1,2)
    Lk2 = lambda jj: gen_coeff(P, R_JS, delta, k, jj)
    G2 = lambda jj: P.pqpow(F(jj)/2)  # normalized by common Gamma(j+delta)
    g2 = P.pqpow(F(k,2))*Lk2(j)*G2(j) + G2(j+k)*Lk2(j)
    print("E g2 literal value (JS,D=1/2,k=2,j=0):", g2)

def check_G():
    for (p, q) in ((F(2), F(3)), (F(1,4), F(1,9))):
        class Pr:
            pass
        num = lambda x: (frpow(p, x)-frpow(q, x))/(p-q)
        nu_ = lambda n, m: frpow(p*q, n)*(frpow(p,m)+frpow(q,m))*num(2*n+m)
        mu_ = lambda n, m: frpow(p*q, m-n)*(frpow(p,n)+frpow(q,n))*num(2*m+n)
        al_ = lambda n, m: num(m-n)*(frpow(p,m+n)+frpow(q,m+n))
        # candidate c_m = (pq)^{a m}[m-1][m][m+1]/(p^m+q^m); test recursion t11 full?
        # two-term recursion: (p^m+q^m)[m-2] c_m = (pq)^{-2} (p^{m-1}+q^{m-1})[m+1] c_{m-1}
        for a in (-2, 1):
            ok = True
            for m in range(3, 11):
                cm = lambda mm, aa=a: frpow(p*q, aa*mm)*num(mm-1)*num(mm)*num(mm+1)/(frpow(p,mm)+frpow(q,mm))
                lhs = (frpow(p,m)+frpow(q,m))*num(m-2)*cm(m)
                rhs = frpow(p*q,-2)*(frpow(p,m-1)+frpow(q,m-1))*num(m+1)*cm(m-1)
                if lhs != rhs: ok = False
            print(f"G (p,q)=({p},{q}) two-term candidate a={a}: {'PASS' if ok else 'FAIL'}")
        # t11 with c_n from (ce2)-form a=+1: nu c_m - mu c_n = al c_{n+m}?
        for a in (-2, 1):
            bad = 0
            for n in range(-3, 4):
                for m in range(-3, 4):
                    cm = lambda mm, aa=a: frpow(p*q, aa*mm)*num(mm-1)*num(mm)*num(mm+1)/(frpow(p,mm)+frpow(q,mm))
                    r = nu_(n,m)*cm(m) - mu_(n,m)*cm(n) - al_(n,m)*cm(n+m)
                    if r != 0: bad += 1
            print(f"G t11 full-recursion candidate a={a}: failures {bad}/49")

def check_H():
    from fractions import Fraction
    # JS: sum_{n>=0} -(pq)^{n+1} = pq/(pq-1)
    for (p, q, label) in ((F(1,4), F(1,9), 's=1/2,t=1/3'),):
        pq = p*q
        s = sum(-(pq)**(n+1) for n in range(0, 60))
        closed = pq/(pq-1)
        print("H JS diff at N=60:", float(s - closed))
    # CJ, Quesne, HN: compare numerically
    import itertools
    def w1_generic(p, q, Rx, n):
        x = n+1
        num = (frpow(p,x)-frpow(q,x))/(p-q)
        return -frpow(p*q, x)*Rx(x)/num
    for (p, q) in ((F(1,2), F(1,3)), (F(2,3), F(1,2)), (F(1,3), F(1,4))):
        RCJ = lambda x: (frpow(p,-x)-frpow(q,x))/(1/p-q)
        RQ = lambda x: (frpow(p,x)-frpow(q,-x))/(q-1/p)
        closedCJ = (p-q)/(1/p-q)*(q/(q-p) - p*q/(1-p*q) - p**2/(1-p**2))
        closedQ = (p-q)/(q-1/p)*(-q**2/(1-q**2) + p/(p-q) - p*q/(1-p*q))
        sCJ = sum(w1_generic(p,q,RCJ,n) for n in range(0, 120))
        sQ = sum(w1_generic(p,q,RQ,n) for n in range(0, 120))
        print(f"H (p,q)=({p},{q}): CJ sum={float(sCJ):.12f} closed={float(closedCJ):.12f} diff={float(sCJ-closedCJ):.3e}")
        print(f"               Q  sum={float(sQ):.12f} closed={float(closedQ):.12f} diff={float(sQ-closedQ):.3e}")
    # HN with mu,nu,g
    p, q, mu, nu, g = F(1,2), F(1,3), F(2), F(1), F(3,5)
    RHN = lambda x: g*frpow(q,nu*x)/frpow(p,mu*x)*(frpow(p,x)-frpow(q,-x))/(q-1/p)
    sHN = sum(w1_generic(p,q,RHN,n) for n in range(0, 120))
    closedHN = g*(p-q)/(q-1/p)*(frpow(q,nu)/(frpow(p,mu)-frpow(q,nu))
        + frpow(q,nu+1)/(frpow(p,mu+1)-frpow(q,nu+1))
        - frpow(q,nu+2)/(frpow(p,mu-1)-frpow(q,nu+2))
        + frpow(q,nu+2)/(frpow(p,mu)-frpow(q,nu+2)))
    print(f"H HN sum={float(sHN):.12f} closed={float(closedHN):.12f} diff={float(sHN-closedHN):.3e}")

if __name__ == '__main__':
    check_A(); check_B(); check_C(); check_D(); check_E(); check_G(); check_H()
