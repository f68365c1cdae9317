from core import *
def mat_of(A, fam, role):  # per-basis matrices
    return np.array([fam(role, e(A.n,i)) for i in range(A.n)], dtype=object) if A.n else Z(0,0,0)
def regular(A):
    return {'l':[A.L('circ',e(A.n,i)) for i in range(A.n)], 'r':[A.R('circ',e(A.n,i)) for i in range(A.n)],
            'L':[A.L('star',e(A.n,i)) for i in range(A.n)], 'R':[A.R('star',e(A.n,i)) for i in range(A.n)]}
def dual(M): return -M.T
def coregular(A, variant='standard'):
    g = regular(A); d=lambda k,i: dual(g[k][i]); n=A.n
    if variant=='standard':
        return {'l':[d('l',i) for i in range(n)], 'r':[d('l',i)-d('r',i) for i in range(n)],
                'L':[d('L',i) for i in range(n)], 'R':[-d('L',i)-d('R',i) for i in range(n)]}
    return {'l':[-d('l',i) for i in range(n)], 'r':[d('r',i)-d('l',i) for i in range(n)],
            'L':[d('L',i) for i in range(n)], 'R':[-d('L',i)-d('R',i) for i in range(n)]}
def ap(rep,k,a):
    return sum((a[i]*rep[k][i] for i in range(len(a))), start=Z(*rep[k][0].shape))
def semidirect(A, rep):
    n=A.n; d=rep['l'][0].shape[0]; S=Alg(n+d,['circ','star'])
    for role,(lk,rk) in {'circ':('l','r'),'star':('L','R')}.items():
        S.C[role][:n,:n,:n]=A.C[role]
        for i in range(n):
            for j in range(d):
                S.C[role][i,n+j,n:] = rep[lk][i][:,j]
                S.C[role][n+j,i,n:] = rep[rk][i][:,j]
    return S
def rep_identities(A, rep):
    n=A.n; bad={}
    c=lambda x,y:A.mul('circ',x,y); s=lambda x,y:A.mul('star',x,y)
    l=lambda a:ap(rep,'l',a); r=lambda a:ap(rep,'r',a); L=lambda a:ap(rep,'L',a); R=lambda a:ap(rep,'R',a)
    fams = {
     'perm.l1': lambda a,b: l(c(a,b)) - l(a).dot(l(b)), 'perm.l2': lambda a,b: l(a).dot(l(b)) - l(b).dot(l(a)),
     'perm.r1': lambda a,b: r(c(a,b)) - r(b).dot(r(a)), 'perm.r2': lambda a,b: r(b).dot(r(a)) - r(b).dot(l(a)),
     'perm.r3': lambda a,b: r(b).dot(l(a)) - l(a).dot(r(b)),
     'leib.L': lambda a,b: L(s(a,b)) - L(a).dot(L(b)) + L(b).dot(L(a)),
     'leib.R1_transposed': lambda a,b: R(a).dot(R(b)) - R(s(a,b)) - L(b).dot(R(a)),
     'leib.R2': lambda a,b: R(a).dot(R(b)) + R(a).dot(L(b)),
     'leib.R1_fixed': lambda a,b: R(b).dot(R(a)) - R(s(a,b)) + L(a).dot(R(b)),
     'm1': lambda a,b: L(c(a,b)) - l(a).dot(L(b)) - l(b).dot(L(a)),
     'm2a': lambda a,b: R(b).dot(l(a)) - l(a).dot(R(b)) - r(s(a,b)), 'm2b': lambda a,b: R(b).dot(l(a)) - R(b).dot(r(a)),
     'm3a': lambda a,b: l(s(a,b)) - L(a).dot(l(b)) + l(b).dot(L(a)), 'm3b': lambda a,b: l(s(a,b)) + l(s(b,a)),
     'm4a': lambda a,b: r(b).dot(R(a)) - R(c(a,b)) + l(a).dot(R(b)), 'm4b': lambda a,b: r(b).dot(R(a)) + r(b).dot(L(a)),
     'm4c': lambda a,b: r(b).dot(R(a)) - r(s(a,b)) + L(a).dot(r(b)),
    }
    for k,f in fams.items():
        for i,j in itertools.product(range(n),repeat=2):
            if nz(f(e(n,i),e(n,j))): bad.setdefault(k,(i,j))
    return bad
