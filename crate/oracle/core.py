from fractions import Fraction as Fr
import itertools, random
import numpy as np

def zeros(*s): return np.zeros(s, dtype=object) * 0 + Fr(0) if s else Fr(0)
def Z(*s):
    a = np.empty(s, dtype=object); a.fill(Fr(0)); return a

class Alg:
    # C[role][i,j,k] = coeff of e_k in e_i * e_j
    def __init__(self, n, roles):
        self.n = n; self.C = {r: Z(n,n,n) for r in roles}
    def mul(self, role, x, y):
        return np.einsum('i,j,ijk->k', x, y, self.C[role]) if self.n else Z(0)
    def L(self, role, a):  # matrix M[k,j]: e_j -> a*e_j
        return np.einsum('i,ijk->kj', a, self.C[role])
    def R(self, role, a):  # e_i -> e_i*a
        return np.einsum('j,ijk->ki', a, self.C[role])

def e(n, i):
    v = Z(n); v[i] = Fr(1); return v

def A2():
    A = Alg(2, ['circ','star']); A.C['circ'][1,1,0]=Fr(1); A.C['star'][1,1,0]=Fr(1); return A

def P3():
    P = Alg(3, ['dot','br']); P.C['dot'][0,0,1]=Fr(1); P.C['br'][0,2,2]=Fr(1); P.C['br'][2,0,2]=Fr(-1); return P

def as_dpp(P):
    A = Alg(P.n, ['circ','star']); A.C['circ']=P.C['dot'].copy(); A.C['star']=P.C['br'].copy(); return A

def nz(x): return any(v != 0 for v in np.asarray(x).flat)

def dpp_ids(A):
    n=A.n; m=lambda r,x,y: A.mul(r,x,y)
    c=lambda x,y: m('circ',x,y); s=lambda x,y: m('star',x,y)
    ids = {
     'perm.assoc': lambda a,b,d: c(a,c(b,d)) - c(c(a,b),d),
     'perm.leftcomm': lambda a,b,d: c(c(a,b),d) - c(c(b,a),d),
     'leibniz': lambda a,b,d: s(a,s(b,d)) - s(s(a,b),d) - s(b,s(a,d)),
     'cs1': lambda a,b,d: s(c(a,b),d) - c(a,s(b,d)) - c(b,s(a,d)),
     'sc1': lambda a,b,d: c(s(a,b),d) - s(a,c(b,d)) + c(b,s(a,d)),
     'sc2': lambda a,b,d: c(s(a,b),d) + c(s(b,a),d),
     'der1': lambda a,b,d: s(c(a,b),d) - s(c(b,a),d),
     'der2': lambda a,b,d: s(a,c(b,d)) - c(b,s(a,d)) - c(a,s(b,d)) + s(b,c(a,d)),
    }
    bad = {}
    for k,f in ids.items():
        for i,j,l in itertools.product(range(n),repeat=3):
            if nz(f(e(n,i),e(n,j),e(n,l))): bad.setdefault(k,(i,j,l))
    return bad

def poisson_ids(P):
    n=P.n; d=lambda x,y:P.mul('dot',x,y); b=lambda x,y:P.mul('br',x,y)
    ids = {'comm': lambda x,y,z: d(x,y)-d(y,x), 'assoc': lambda x,y,z: d(d(x,y),z)-d(x,d(y,z)),
      'anti': lambda x,y,z: b(x,y)+b(y,x), 'jacobi': lambda x,y,z: b(x,b(y,z))+b(y,b(z,x))+b(z,b(x,y)),
      'leib': lambda x,y,z: b(x,d(y,z)) - d(b(x,y),z) - d(y,b(x,z))}
    bad={}
    for k,f in ids.items():
        for i,j,l in itertools.product(range(n),repeat=3):
            if nz(f(e(n,i),e(n,j),e(n,l))): bad.setdefault(k,(i,j,l))
    return bad
