"""Symmetric groups: blocks, branching and the Plancherel growth process.

Run:  python demos/01_symmetric_plancherel.py
"""
from fractions import Fraction

from frobtower.coherent import build_system, exact_marginal, moment, sample_growth, spectral_measure
from frobtower.repn import analyse
from frobtower.towers import make_tower

T = make_tower("sym", 5)
data = analyse(T, 4)

# simple modules of C[S_4]: labels are partitions, found from JM contents
for b in data.decomps[4].blocks:
    print(b.label, "dim L =", b.dim_L)

# restriction from S_4 to S_3 is the one-box rule
br = data.branchings[3]
for mu in br.rows:
    print(mu, "->", [lam for lam in br.cols if br.k(mu, lam)])

sys = build_system(data.decomps, data.branchings, "plain", "sym")
print("Pl_3 =", {k: str(v) for k, v in sys.Pl[3].items()})

# the transition measure of (2,1) lives on the contents of its addable boxes
sm = spectral_measure(sys, data.eigen, "(2,1)", "up")
print("atoms:", [(str(a), str(m)) for a, m in sm.atoms])
print("moments:", [str(moment(sm, k)) for k in range(5)])

# growth process: exact path enumeration against 5000 seeded samples
paths = sample_growth(sys, 3, seed=1, paths=5000)
ends = {}
for p in paths:
    ends[p.vertices[-1]] = ends.get(p.vertices[-1], 0) + 1
for lam, p in exact_marginal(sys, 3).items():
    print(f"{lam:10s} exact {str(p):6s} sampled {Fraction(ends.get(lam, 0), 5000)}")
