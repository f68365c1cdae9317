from ybe import *
I_=lambda n: np.array([[Fr(int(i==j)) for j in range(n)] for i in range(n)],dtype=object)
def cop(c,x): return sum((x[i]*c[i] for i in range(len(x))), start=Z(*c[0].shape))
def op2(M,N,X): return M.dot(X).dot(N.T)
def tw(X): return X.T.copy()
def bia_checks(A, nu, th):
    n=A.n; I=I_(n)
    c=lambda x,y:A.mul('circ',x,y); s=lambda x,y:A.mul('star',x,y)
    l=lambda a:A.L('circ',a); r=lambda a:A.R('circ',a); L=lambda a:A.L('star',a); R=lambda a:A.R('star',a)
    N=lambda x: cop(nu,x); T=lambda x: cop(th,x)
    fam={
     'perm.1': lambda a1,a2: op2(r(a1),I,N(a2)) - tw(op2(r(a2),I,N(a1))),
     'perm.2': lambda a1,a2: N(c(a1,a2)) - op2(l(a1)-r(a1),I,N(a2)) - op2(I,r(a2),N(a1)),
     'perm.3': lambda a1,a2: N(c(a1,a2)) - op2(I,l(a1),N(a2)) - op2(l(a2)-r(a2),I,N(a1)-tw(N(a1))),
     'leib.1': lambda a1,a2: tw(op2(R(a2),I,T(a1))) - op2(R(a1),I,T(a2)),
     'leib.2': lambda a1,a2: T(s(a1,a2)) - (op2(I,R(a2),T(a1)+tw(T(a1))) - op2(L(a2)+R(a2),I,T(a1)+tw(T(a1)))) - op2(I,L(a1),T(a2)) - op2(L(a1),I,T(a2)),
     'dpbi.1': lambda a1,a2: N(s(a1,a2)) - op2(I,L(a1),N(a2)) - op2(L(a1),I,N(a2)) - op2(l(a2)-r(a2),I,T(a1)+tw(T(a1))) + op2(I,r(a2),T(a1)+tw(T(a1))),
     'dpbi.2': lambda a1,a2: T(c(a1,a2)) - op2(I,l(a1),T(a2)) - op2(I,r(a2),T(a1)) + op2(L(a1)+R(a1),I,N(a2)) + op2(L(a2)+R(a2),I,N(a1)-tw(N(a1))),
     'dpbi.3': lambda a1,a2: op2(I,R(a1),tw(N(a2))) + op2(r(a2),I,T(a1)),
     'dpbi.4': lambda a1,a2: N(s(a1,a2)) - op2(I,l(a1),T(a2)) + op2(l(a1),I,T(a2)) - op2(I,R(a2),N(a1)-tw(N(a1))) + op2(L(a2)+R(a2),I,N(a1)-tw(N(a1))),
     'dpbi.5': lambda a1,a2: (T(c(a1,a2))+tw(T(c(a1,a2)))) - op2(I,l(a1),T(a2)+tw(T(a2))) - op2(I,l(a2),T(a1)+tw(T(a1))) + op2(L(a1),I,N(a2)-tw(N(a2))) + op2(L(a2),I,N(a1)-tw(N(a1))),
     'dpbi.6': lambda a1,a2: T(c(a1,a2)) - op2(l(a1),I,T(a2)) + op2(I,R(a2),N(a1)-tw(N(a1))) - op2(I,L(a1),N(a2)) - op2(l(a2)-r(a2),I,T(a1)+tw(T(a1))),
     'dpbi.7': lambda a1,a2: N(s(a1,a2)+s(a2,a1)) - op2(I,L(a1)+R(a1),N(a2)) - op2(L(a1)+R(a1),I,tw(N(a2))) - op2(I,l(a2)-r(a2),T(a1)) - op2(l(a2)-r(a2),I,tw(T(a1))),
    }
    bad={}
    for k,f in fam.items():
        for i,j in itertools.product(range(n),repeat=2):
            if nz(f(e(n,i),e(n,j))): bad.setdefault(k,(i,j))
    return bad
def dual_alg(nu,th):
    n=len(nu); A=Alg(n,['circ','star'])
    for k in range(n):
        A.C['circ'][:,:,k]=nu[k]; A.C['star'][:,:,k]=th[k]
    return A
