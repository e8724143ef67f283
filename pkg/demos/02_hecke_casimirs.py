"""Casimir elements of a level-2 degenerate cyclotomic Hecke tower.

C_{3,2} is central and has a closed form in the x's.  The opposite
order sum C^iota_{3,2} is not central; we print it and a generator that
fails to commute with it.

Run:  python demos/02_hecke_casimirs.py
"""
from frobtower import verify as V
from frobtower.towers import casimir, casimir_iota, frobenius_system, make_tower

for weights in ("0,0", "0,1"):
    T = make_tower(f"hecke:2,{weights}", 3)
    fs = frobenius_system(T, 3, 2)
    C, Ci = casimir(fs), casimir_iota(fs)
    print(f"weights ({weights})")
    print("  C_32      =", T.describe(C))
    print("  C^iota_32 =", T.describe(Ci))
    g = V.centrality_witness(T, Ci)
    print("  C^iota fails to commute with", T.describe(g))
    for r in V.check_hecke_casimir(T, "corrected") + V.check_hecke_casimir(T, "printed")[1:]:
        print("  ", r.identity, r.status)
