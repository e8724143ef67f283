"""The ungraded Sergeev tower Cl_1^{(x)n} x| S_n needs square roots.

With the rational field the block computation stops at level 2 with a
splitting failure naming the radicand; the default driver adjoins it and
carries on.

Run:  python demos/04_sergeev_fields.py
"""
from frobtower.errors import SplittingFieldFailure
from frobtower.repn import analyse
from frobtower.towers import make_tower

try:
    analyse(make_tower("sergeev", 3), 3, auto_extend=False)
except SplittingFieldFailure as err:
    print("over Q:", err, "radicand", err.radicand)

data = analyse(make_tower("sergeev", 4), 3)
print("field:", data.field.name)
for dec in data.decomps:
    print(dec.n, [(b.label, b.dim_L, b.dim_P) for b in dec.blocks])
for t in data.eigen:
    print("JM coordinates:", {k: str(v) for k, v in t.alpha.items()})
