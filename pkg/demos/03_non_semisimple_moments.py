"""Moments of transition measures when the algebras are not semisimple.

In hecke:2,0,1 the projectives P^2.2 and P^2.3 share composition factors
(the Cartan matrix links them).  The trace of e~_mu x_3^k then collects
contributions from every projective containing L^mu, so the plain
dimension-ratio form of the up identity breaks for k >= 3 while the
Cartan-weighted form holds.

Run:  python demos/03_non_semisimple_moments.py
"""
from frobtower import verify as V
from frobtower.repn import analyse, cartan_matrix
from frobtower.towers import make_tower

T = make_tower("hecke:2,0,1", 4)
data = analyse(T, 3)

dec = data.decomps[2]
print("blocks:", [(b.label, b.dim_L, b.dim_P) for b in dec.blocks])
print("Cartan matrix:", cartan_matrix(dec))
br = data.branchings[1]
print("kappa  1->2:", br.kappa)
print("kappa* 1->2:", br.kappa_star)

for mu in ("2.2", "2.3"):
    for k in range(5):
        row = []
        for form in ("corrected", "cartan"):
            up = V.check_moment_identities(data, 2, mu, k, form)[0]
            row.append(f"{form}: {up.lhs} vs {up.rhs}")
        print(mu, k, " | ".join(row))
