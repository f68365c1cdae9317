# Independent expansion of the DOUBLE_A2 and PB6 tables, printed as "item = value"
# in the same term rendering as the Rust catalog.
from tens import *

def fmt(terms):
    out = ''
    for label, c in terms:
        neg = c < 0; a = abs(c)
        out += ('-' if neg else '') if not out else (' - ' if neg else ' + ')
        if a != 1: out += f'{a}·'
        out += label
    return out or '0'

def wrap(l): return f'({l})' if '⊗' in l else l
def vec(v, labels): return fmt([(labels[k], v[k]) for k in range(len(v)) if v[k] != 0])
def ten(X, labels):
    return fmt([(f'{wrap(labels[i])}⊗{wrap(labels[j])}', X[i, j])
                for i in range(X.shape[0]) for j in range(X.shape[1]) if X[i, j] != 0])

def dump(name, A, labels, nu, th, tensors, sharp_args):
    sym = {'circ': '∘', 'star': '∗'}
    n = A.n
    for role in ['circ', 'star']:
        for i, j in itertools.product(range(n), repeat=2):
            v = A.C[role][i, j]
            if nz(v): print(f'{name} {wrap(labels[i])}{sym[role]}{wrap(labels[j])} = {vec(v, labels)}')
    for i in range(n):
        print(f'{name} ν({labels[i]}) = {ten(nu[i], labels)}')
        print(f'{name} ϑ({labels[i]}) = {ten(th[i], labels)}')
    for s, X in tensors:
        print(f'{name} {s} = {ten(X, labels)}')
        for i in sharp_args:
            print(f'{name} {s}♯({labels[i]}*) = {vec(X[i, :], labels)}')
            print(f'{name} τ({s})♯({labels[i]}*) = {vec(X[:, i], labels)}')
            print(f'{name} 𝓘[{s}]({labels[i]}*) = {vec(X[i, :] - X[:, i], labels)}')

A = A2(); D = semidirect(A, coregular(A, 'signed')); X = rtilde(2)
nu, th = cobo(D, X)
dump('DOUBLE_A2', D, ['e1', 'e2', 'f1', 'f2'], nu, th, [('r̃', X)], range(4))

P = P3(); B = B2(); W = W_B2(); T = tensor(P, B)
rP = Z(3, 3); rP[1, 2] = Fr(1); rP[2, 1] = Fr(-1)
F = dual_basis(W); kap = Z(2, 2)
for k in range(2): kap[k, :] = F[k]
rhat = bullet(rP, kap, 3, 2); nu, th = cobo(T, rhat)
labels = [f'e{i}⊗x{j}' for i in range(1, 4) for j in range(1, 3)]
dump('PB6', T, labels, nu, th, [('r̂', rhat)], range(6))
print(f'PB6 κ = {ten(kap, ["x1", "x2"])}')
for k in range(2):
    print(f'PB6 κ♯(x{k+1}*) = {vec(kap[k, :], ["x1", "x2"])}')
