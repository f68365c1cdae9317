from bia import *
def B2():
    B=Alg(2,['circ']); B.C['circ'][0,0,0]=Fr(1); B.C['circ'][0,1,1]=Fr(1); return B
def W_B2():
    W=Z(2,2); W[0,1]=Fr(1); W[1,0]=Fr(-1); return W
def tensor(P,B):
    p,b=P.n,B.n; A=Alg(p*b,['circ','star'])
    for i1,j1,i2,j2 in itertools.product(range(p),range(b),range(p),range(b)):
        A.C['circ'][i1*b+j1,i2*b+j2]=np.kron(P.C['dot'][i1,i2],B.C['circ'][j1,j2])
        A.C['star'][i1*b+j1,i2*b+j2]=np.kron(P.C['br'][i1,i2],B.C['circ'][j1,j2])
    return A
def inv(M):
    import sympy
    return np.array(sympy.Matrix(M.tolist()).inv().applyfunc(lambda x: Fr(int(x.p),int(x.q))).tolist(),dtype=object)
def nu_omega(B,W):
    # W-hat(nu(b1), b2(x)b3) = -W(b1, b2 o b3); nu(b1)=sum X[u,v] e_u(x)e_v ; pairing sum X[u,v] W[u,b2] W[v,b3]
    # => W^T X W = -S where S[b2,b3] = W(b1, b2 o b3)
    n=B.n; Wi=inv(W); res=[]
    for b1 in range(n):
        S=Z(n,n)
        for b2,b3 in itertools.product(range(n),repeat=2): S[b2,b3]=W[b1].dot(B.C['circ'][b2,b3])
        res.append(-(Wi.T).dot(S).dot(Wi))
    return res
def dual_basis(W):  # f_i with W(f_i,e_j)=delta -> F W = I, rows f_i
    return inv(W.T).T  # check below
def bullet(X,Y,p,b):  # (p1(x)p2) . (b1(x)b2) -> (p1(x)b1)(x)(p2(x)b2)
    T=Z(p*b,p*b)
    for i,j,k,l in itertools.product(range(p),range(p),range(b),range(b)):
        T[i*b+k,j*b+l]=X[i,j]*Y[k,l]
    return T
