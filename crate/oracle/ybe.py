from rep import *
def terms(X):  # list of (coef, i, j)
    return [(X[i,j],i,j) for i in range(X.shape[0]) for j in range(X.shape[1]) if X[i,j]!=0]
def P_res(A, X, role='circ'):
    n=A.n; T=Z(n,n,n); C=A.C[role]
    for (c1,i1,j1) in terms(X):
        for (c2,i2,j2) in terms(X):
            c=c1*c2
            # r12 r23: x_i (y_i x_j) y_j
            T[i1,:,j2]+=c*C[j1,i2,:]
            T[i1,i2,:]-=c*C[j1,j2,:]   # r13 r23: x_i x_j (y_i y_j)
            T[:,j1,j2]+=c*C[i1,i2,:]   # r12 r13: (x_i x_j) y_i y_j
            T[:,j2,j1]-=c*C[i1,i2,:]   # r13 r12: (x_i x_j) y_j y_i
    return T
def L_res(A, X, sign, role='star'):
    n=A.n; T=Z(n,n,n); C=A.C[role]
    for (c1,i1,j1) in terms(X):
        for (c2,i2,j2) in terms(X):
            c=c1*c2
            T[:,j1,j2]+=c*C[i1,i2,:]        # r12*r13 (x_i*x_j) y_i y_j
            T[i1,:,j2]+=sign*c*C[j1,i2,:]   # r12*r23 x_i (y_i*x_j) y_j
            T[i2,:,j1]-=c*C[i1,j2,:]        # r23*r12 x_j (x_i*y_j) y_i
            T[i2,i1,:]+=c*C[j1,j2,:]        # r23*r13 x_j x_i (y_i*y_j)
    return T
def FG(A, a, X):
    L=A.L('star',a); R=A.R('star',a); l=A.L('circ',a); r=A.R('circ',a)
    F=(L+R).dot(X) - X.dot(R.T)
    G=X.dot(r.T) + (r-l).dot(X)
    return F,G
def cobo(A,X):
    n=A.n; nu=[];th=[]
    for i in range(n):
        F,G=FG(A,e(n,i),X); th.append(F); nu.append(G)
    return nu,th
def rtilde(n):
    X=Z(2*n,2*n)
    for i in range(n): X[i,n+i]=Fr(1)
    return X
def show2(X, labels):
    return ' + '.join(f'{c}*{labels[i]}(x){labels[j]}' for c,i,j in terms(X)) or '0'
