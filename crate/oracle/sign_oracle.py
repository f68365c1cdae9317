# Independent oracle: which sign of r12*r23 in the Leibniz Yang-Baxter residual
# makes r~ = sum e_i (x) f_i a solution on the doubles A (x) A* of A2 and P3.
from ybe import *
print("# LYBE sign oracle (independent Python/fractions implementation)")
print("# residual L = r12*r13 + s*r12*r23 - r23*r12 + r23*r13, r~ = sum_i e_i (x) f_i")
print("# double: semidirect product with the coregular representation, variants standard and signed")
ok = {}
for nm, AA in [('A2', A2()), ('P3', as_dpp(P3()))]:
    n = AA.n; X = rtilde(n)
    for v in ['standard', 'signed']:
        D = semidirect(AA, coregular(AA, v))
        p = nz(P_res(D, X))
        for s, sname in [(1, 'plus'), (-1, 'minus')]:
            l = nz(L_res(D, X, s))
            solved = (not p) and (not l)
            ok.setdefault((v, sname), []).append(solved)
            print(f"{nm:3} variant={v:8} sign={sname:5} perm_residual_zero={not p} leibniz_residual_zero={not l} solves={solved}")
print("# summary: sign solves on both doubles")
for (v, s), vals in sorted(ok.items()):
    print(f"variant={v:8} sign={s:5} both={all(vals)}")
winners = sorted({s for (v, s), vals in ok.items() if all(vals)})
print(f"chosen sign: {winners[0] if len(winners) == 1 else 'AMBIGUOUS ' + ','.join(winners)}")
