"""Representation theory of one tower level and of adjacent pairs of levels.

Nothing here assumes semisimplicity.  The radical comes from the trace
form, simple blocks from splitting the centre of A/J, and every
multiplicity is a difference of two ranks of the form

    dim(e M) - dim(e J M),

the number of copies of the simple module belonging to the primitive
idempotent e in the top of M.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import flint
import numpy as np

from .errors import AssumptionBViolated, InvariantFailure, SplittingFieldFailure
from .exactlin.linalg import Echelon, Matrix, kernel_basis, rank, rref, split_commutative
from .exactlin.poly import factor_poly, krylov_minpoly, pdivmod, pextgcd, pmul, ppow, roots_or_fail
from .exactlin.scalars import QQ, Field, real_sort_key, scalar
from .spans import Span, act, concat, include_span


# span helpers ------------------------------------------------------------

def span_basis(vectors):
    """A basis (rref rows) of the span of ``vectors``."""
    vectors = [v for v in vectors if any(c != 0 for c in v)]
    if not vectors:
        return []
    return rref(vectors)[0]


def span_rank(vectors):
    vectors = [v for v in vectors if any(c != 0 for c in v)]
    return rank(vectors) if vectors else 0


def module_basis(A, e, limit=None):
    """Basis of the left ideal A e as a Span (``limit`` is the expected dimension)."""
    op = A.cached_operator(e, "right")
    if op is not None:
        span = Span(A.dim, mat=op[0]).basis()
    else:
        ech = Echelon(A.dim)
        out = []
        for w in A.words:
            v = (A.basis_element(w) * e).vector()
            if ech.add(v):
                out.append(v)
                if limit is not None and len(out) >= limit:
                    break
        span = Span.of(A.dim, out)
    if limit is not None and span.rank() > limit:
        raise InvariantFailure("left ideal is larger than expected")
    return span


def left_ideal_products(A, elements, span):
    """Basis of the span of {x v} for x in ``elements`` and v in ``span``."""
    if not span:
        return Span.empty(A.dim)
    return concat([act(A, x, span) for x in elements], A.dim).basis()


def top_multiplicity(A, e, M, JM):
    """dim(e M) - dim(e JM): multiplicity of the simple of e in the top of M.

    ``M`` spans a left A-submodule and ``JM`` spans J(A) M (precomputed,
    since the same module is probed with many idempotents).
    """
    if not M:
        return 0
    top = act(A, e, M).rank()
    if not JM:
        return top
    return top - act(A, e, JM).rank()


# radical -----------------------------------------------------------------

def gram_matrix(A):
    """(i, j) -> Tr_reg(w_i w_j), as a list of rows, or an fmpz_mat (times a
    positive scale) when the structure constants are small integers."""
    I, J, K, C = A.structure()
    lt, _ = A.trace_vectors()
    D = A.dim
    rs = A._rational_structure()
    if rs is not None and rs[0].dtype == np.int64:
        den = 1
        for c in lt:
            den = den * c.denominator // gcd(den, c.denominator)
        lt_int = np.array([int(c * den) for c in lt], dtype=np.int64)
        big = int(np.abs(lt_int).max()) * int(np.abs(rs[0]).max()) * D
        if big < 2 ** 62:
            G = np.zeros(D * D, dtype=np.int64)
            np.add.at(G, I * D + J, rs[0] * lt_int[K])
            return flint.fmpz_mat(D, D, [int(x) for x in G.tolist()])
    lt_arr = np.empty(D, dtype=object)
    lt_arr[:] = lt
    G = np.zeros(D * D, dtype=object)
    G[:] = Fraction(0)
    np.add.at(G, I * D + J, C * lt_arr[K])
    G = G.reshape(D, D)
    return [[scalar(x) for x in row] for row in G.tolist()]


def jacobson_radical(A):
    """Basis (list of elements) of J(A), checked to be a nilpotent two-sided ideal."""
    if A.dim == 1:
        return []
    G = gram_matrix(A)
    if isinstance(G, flint.fmpz_mat):
        X, nullity = G.nullspace()
        if int(nullity) == 0:
            return []
        basis = [A.from_vector([Fraction(int(X[i, j])) for i in range(A.dim)])
                 for j in range(int(nullity))]
    else:
        if rank(G) == A.dim:
            return []
        basis = [A.from_vector(v) for v in kernel_basis(G)]
    _check_radical(A, basis)
    return basis


def _check_radical(A, J):
    span = Span.of(A.dim, [j.vector() for j in J])
    r = span.rank()
    for g in A.generators():
        both = concat([span, act(A, g, span, "left"), act(A, g, span, "right")], A.dim)
        if both.rank() != r:
            raise InvariantFailure("radical is not a two-sided ideal")
    power = span
    for _ in range(A.dim + 1):
        power = left_ideal_products(A, J, power)
        if not power or power.rank() == 0:
            return
    raise InvariantFailure("radical is not nilpotent")


# centre of A/J and its splitting ----------------------------------------

class _Quotient:
    """Coordinates modulo the radical."""

    def __init__(self, A, J):
        self.A = A
        if J:
            self.rows, self.pivots = rref([j.vector() for j in J])
        else:
            self.rows, self.pivots = [], []

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != 0:
                v = [scalar(a - c * b) if b else a for a, b in zip(v, row)]
        return v

    def reduction_matrix_rows(self, M_rows):
        """Rows of Red * M where Red reduces modulo the radical."""
        if not self.rows:
            return M_rows
        out = [list(r) for r in M_rows]
        for row, p in zip(self.rows, self.pivots):
            prow = out[p]
            for i, coeff in enumerate(row):
                if coeff != 0 and i != p:
                    out[i] = [scalar(a - coeff * b) for a, b in zip(out[i], prow)]
        for p in self.pivots:
            out[p] = [Fraction(0)] * len(prow)
        return out


def centre_mod_radical(A, J):
    """Basis of Z(A/J) as rref rows (reduced modulo J) with pivot columns."""
    Q = _Quotient(A, J)
    gens = A.generators()
    if not gens:
        return [A.one().vector()], [A.index[A.unit]], Q
    blocks = []
    for g in gens:
        op_l = A.integer_operator(g, "left") if not J else None
        op_r = A.integer_operator(g, "right") if not J else None
        if op_l is not None and op_r is not None and op_l[1] == op_r[1]:
            blocks.append(op_l[0] - op_r[0])
            continue
        M = A.left_matrix(g) - A.right_matrix(g)
        blocks.append(Q.reduction_matrix_rows(M.rows))
    if all(not isinstance(b, list) for b in blocks):
        import flint
        rows = []
        for b in blocks:
            rows.extend(b.tolist())
        X, nullity = flint.fmpz_mat(rows).nullspace()
        kernel = [[Fraction(int(X[i, j])) for i in range(A.dim)] for j in range(int(nullity))]
    else:
        rows = []
        for b in blocks:
            rows.extend(b.tolist() if not isinstance(b, list) else b)
        kernel = kernel_basis(rows)
    reduced = [Q.reduce(v) for v in kernel]
    reduced = [v for v in reduced if any(c != 0 for c in v)]
    zrows, zpiv = rref(reduced)
    return zrows, zpiv, Q


def _coords(Q, zpiv, v):
    v = Q.reduce(v)
    return [v[p] for p in zpiv]


def split_centre(A, J, field=QQ, seed=0):
    """Primitive idempotents of Z(A/J), as coordinate vectors in A (reduced mod J)."""
    zrows, zpiv, Q = centre_mod_radical(A, J)
    r = len(zrows)
    one = _coords(Q, zpiv, A.one().vector())
    if r == 1:
        return [A.one().vector()], Q
    rng = random.Random(seed)
    attempts = []
    for attempt in range(3):
        coeffs = [Fraction(rng.randint(1, 97)) for _ in range(r)]
        z = [scalar(sum((c * row[i] for c, row in zip(coeffs, zrows)), Fraction(0))) for i in range(A.dim)]
        attempts.append([z])
    attempts.append(zrows)
    idems = None
    for gens in attempts:
        mats = []
        for z in gens:
            images = A.products(A.from_vector(z), zrows)
            cols = [_coords(Q, zpiv, im) for im in images]
            mats.append(Matrix.from_columns(cols, r))
        found = split_commutative(mats, field)
        if len(found) == r:
            idems = found
            break
    if idems is None:
        raise SplittingFieldFailure(f"centre of A/J does not split into {r} blocks over {field.name}")
    out = []
    for E in idems:
        c = E.apply(one)
        vec = [scalar(sum((ci * row[i] for ci, row in zip(c, zrows) if ci != 0), Fraction(0)))
               for i in range(A.dim)]
        out.append(vec)
    return out, Q


def newton_lift(x, max_iter=64):
    """Idempotent lift of an element that is idempotent modulo a nilpotent ideal."""
    e = x
    for _ in range(max_iter):
        e2 = e * e
        if e2 == e:
            return e
        e = e2.scale(3) - (e2 * e).scale(2)
    raise InvariantFailure("idempotent lifting did not converge")


def lift_orthogonal(A, reps):
    """Orthogonal idempotents of A lifting the given central idempotents of A/J."""
    one = A.one()
    lifted = []
    total = A.zero()
    for k, x in enumerate(reps):
        u = one - total
        if k == len(reps) - 1:
            e = u
        else:
            e = newton_lift(u * x * u)
        lifted.append(e)
        total = total + e
    return lifted


# block decomposition -------------------------------------------------------

@dataclass
class Block:
    index: int
    label: str
    f: object            # lifted idempotent of the simple block of A/J
    dim_L: int
    dim_P: int
    e_hat: object = None  # primitive idempotent, A e_hat = P


@dataclass
class BlockDecomposition:
    n: int
    level: object
    radical: list
    blocks: list
    field: Field = QQ

    @property
    def labels(self):
        return [b.label for b in self.blocks]

    def block(self, label):
        for b in self.blocks:
            if b.label == label:
                return b
        raise KeyError(label)

    @property
    def semisimple(self):
        return not self.radical

    def total_dim(self):
        return sum(b.dim_L * b.dim_P for b in self.blocks)


def cartan_matrix(dec):
    """c[i][j] = [P^i : L^j] = dim e_j P^i, rows and columns in block order."""
    cached = getattr(dec, "_cartan", None)
    if cached is not None:
        return cached
    A = dec.level
    if not dec.radical:
        c = [[b.dim_P // b.dim_L if i == j else 0 for j, _ in enumerate(dec.blocks)]
             for i, b in enumerate(dec.blocks)]
    else:
        P = [module_basis(A, b.e_hat, limit=b.dim_P) for b in dec.blocks]
        c = [[act(A, b.e_hat, Pi).rank() for b in dec.blocks] for Pi in P]
    for i, b in enumerate(dec.blocks):
        if sum(c[i][j] * dec.blocks[j].dim_L for j in range(len(c))) != b.dim_P:
            raise InvariantFailure("Cartan row does not add up to dim P")
    dec._cartan = c
    return c


def _isqrt_exact(x):
    x = Fraction(x)
    if x.denominator != 1 or x < 0:
        raise InvariantFailure(f"block dimension {x} is not a nonnegative integer")
    r = int(np.sqrt(float(x.numerator)))
    while r * r > x.numerator:
        r -= 1
    while (r + 1) * (r + 1) <= x.numerator:
        r += 1
    if r * r != x.numerator:
        raise SplittingFieldFailure(f"simple block of dimension {x} is not a full matrix algebra")
    return r


def _canonical_key(A, f):
    idx = A.index
    items = sorted(f.terms.items(), key=lambda kv: idx[kv[0]])
    return [(idx[w], real_sort_key(c)) for w, c in items]


def block_decomposition(tower, n, field=QQ, previous=None):
    """Blocks of A_n; ``previous`` is the decomposition of A_{n-1}, used to seed
    primitive idempotents by restriction."""
    A = tower.level(n)
    if A.dim == 1:
        b = Block(0, f"{n}.0", A.one(), 1, 1, A.one())
        return BlockDecomposition(n, A, [], [b], field)
    J = jacobson_radical(A)
    reps, Q = split_centre(A, J, field)
    reps = [A.from_vector(v) for v in reps]
    fs = lift_orthogonal(A, reps) if J else reps
    if A.one() != sum(fs[1:], fs[0]):
        raise InvariantFailure("block idempotents do not sum to 1")
    Jspan = Span.of(A.dim, [j.vector() for j in J])
    raw = []
    for f in fs:
        r = A.right_trace(f)
        if J:
            dl2 = r - act(A, f, Jspan, "right").rank()
        else:
            dl2 = r
        dL = _isqrt_exact(dl2)
        dP = Fraction(r) / dL
        if dP.denominator != 1:
            raise InvariantFailure("projective dimension is not an integer")
        raw.append((f, dL, int(dP)))
    raw.sort(key=lambda t: (t[1], t[2], _canonical_key(A, t[0])))
    blocks = [Block(i, f"{n}.{i}", f, dL, dP) for i, (f, dL, dP) in enumerate(raw)]
    dec = BlockDecomposition(n, A, J, blocks, field)
    if dec.total_dim() != A.dim:
        raise InvariantFailure("sum of dim L * dim P differs from dim A")
    for b in blocks:
        b.e_hat = primitive_idempotent(tower, dec, b, previous)
    return dec


def primitive_idempotent(tower, dec, block, previous=None, seed=0):
    A = dec.level
    if block.dim_L == 1:
        return block.f
    f = block.f
    J = dec.radical
    if previous is not None:
        for pb in previous.blocks:
            g = tower.include(pb.e_hat, dec.n)
            if not J:
                # f is central, so f g is an idempotent with A f g of dimension TrR(f g)
                if _trace_of_product(A, f, g) != block.dim_P:
                    continue
                return f * g
            x = f * g * f
            if x.is_zero():
                continue
            e = newton_lift(x)
            if e * e != e:
                continue
            if A.right_trace(e) == block.dim_P:
                return e
    return _split_corner(A, f, block.dim_P, seed)


def _trace_of_product(A, x, y):
    """TrR(x y) without forming the product."""
    rows = A.trace_pairing()
    idx = A.index
    yv = {idx[w]: c for w, c in y.terms.items()}
    acc = Fraction(0)
    for u, a in x.terms.items():
        for j, t in rows[idx[u]].items():
            b = yv.get(j)
            if b is not None:
                acc += a * b * t
    return scalar(acc)


def _split_corner(A, e, target, seed):
    """Refine an idempotent inside e A e until dim(A e) equals ``target``."""
    rng = random.Random(seed)
    for _ in range(200):
        if A.right_trace(e) == target:
            return e
        w = A.basis_element(rng.choice(A.words)) + A.basis_element(rng.choice(A.words)).scale(rng.randint(1, 9))
        y = e * w * e
        pieces = _polynomial_idempotents(A, y, e)
        if len(pieces) > 1:
            pieces.sort(key=A.right_trace)
            e = next(p for p in pieces if A.right_trace(p) > 0)
    raise SplittingFieldFailure("could not split a simple block into primitive idempotents")


def _polynomial_idempotents(A, y, unit):
    """Idempotents p(y) (with ``unit`` as 1) from the factorisation of y's minimal polynomial."""
    powers = [unit]
    ech = Echelon(A.dim)
    ech.add(unit.vector())
    while True:
        nxt = powers[-1] * y
        coords = ech.coordinates(nxt.vector())
        if coords is not None:
            mp = [scalar(-c) for c in coords] + [Fraction(1)]
            break
        ech.add(nxt.vector())
        powers.append(nxt)
    roots = roots_or_fail(mp, A.field if hasattr(A, "field") else QQ)
    if len(roots) < 2:
        return [unit]
    factors = [ppow([-r, Fraction(1)], k) for r, k in roots]
    out = []
    for j, q in enumerate(factors):
        other = [Fraction(1)]
        for i, g in enumerate(factors):
            if i != j:
                other = pmul(other, g)
        _, s, _ = pextgcd(other, q)
        poly = pdivmod(pmul(s, other), mp)[1]
        val = A.zero()
        for k, c in enumerate(poly):
            if c != 0:
                val = val + powers_at(powers, y, k).scale(c)
        out.append(val)
    return out


def powers_at(powers, y, k):
    while len(powers) <= k:
        powers.append(powers[-1] * y)
    return powers[k]


# branching ------------------------------------------------------------------

@dataclass
class BranchingTable:
    n: int
    rows: list           # labels at level n
    cols: list           # labels at level n+1
    kappa: list          # kappa[i][j] for (mu_i, lambda_j)
    kappa_star: list
    checks: dict = field(default_factory=dict)

    def k(self, mu, lam):
        return self.kappa[self.rows.index(mu)][self.cols.index(lam)]

    def ks(self, mu, lam):
        return self.kappa_star[self.rows.index(mu)][self.cols.index(lam)]


class _LevelPair:
    """Cached modules for the extension A_n ⊂ A_{n+1}."""

    def __init__(self, tower, lo, hi):
        self.tower = tower
        self.lo = lo
        self.hi = hi
        self.A = hi.level
        self.Jhi = hi.radical
        self.Jlo_up = [tower.include(j, hi.n) for j in lo.radical]
        self.e_lo = {b.label: tower.include(b.e_hat, hi.n) for b in lo.blocks}
        _, Bv = tower.bases(lo.n)
        self.Bv = Bv
        self._P_hi = {}
        self._ind = {}
        self._rad = {}

    def projective_hi(self, b):
        """Basis of A_{n+1} e_lambda."""
        if b.label not in self._P_hi:
            P = module_basis(self.A, b.e_hat, limit=b.dim_P)
            if P.rank() != b.dim_P:
                raise InvariantFailure("projective module has the wrong dimension")
            self._P_hi[b.label] = P
        return self._P_hi[b.label]

    def radical_part(self, key, J, M):
        """J M for a module M, cached under ``key``."""
        if key not in self._rad:
            self._rad[key] = left_ideal_products(self.A, J, M) if J and M else Span.empty(self.A.dim)
        return self._rad[key]

    def _induce(self, span):
        up = include_span(self.tower, span, self.lo.n, self.hi.n)
        return concat([act(self.A, bv, up) for bv in self.Bv], self.A.dim).basis()

    def induced(self, b):
        """Basis of A_{n+1} e_mu = sum over B^vee of b^vee A_n e_mu, and of A_{n+1} J_n e_mu."""
        if b.label not in self._ind:
            Alo = self.lo.level
            P = module_basis(Alo, b.e_hat, limit=b.dim_P)
            ind = self._induce(P)
            ratio = Fraction(self.A.dim, Alo.dim)
            if ind.rank() != ratio * b.dim_P:
                raise InvariantFailure("induced projective has the wrong dimension")
            rad = Span.empty(self.A.dim)
            if self.lo.radical:
                rad = self._induce(left_ideal_products(Alo, self.lo.radical, P))
            self._ind[b.label] = (ind, rad)
        return self._ind[b.label]


def branching(tower, lo, hi):
    """kappa and kappa* between consecutive block decompositions, each computed twice."""
    pair = _LevelPair(tower, lo, hi)
    A = pair.A
    rows = lo.labels
    cols = hi.labels
    kappa = [[0] * len(cols) for _ in rows]
    kappa_star = [[0] * len(cols) for _ in rows]
    kappa_alt = [[0] * len(cols) for _ in rows]
    kappa_star_alt = [[0] * len(cols) for _ in rows]
    for i, mb in enumerate(lo.blocks):
        ind, ind_rad = pair.induced(mb)
        e_mu = pair.e_lo[mb.label]
        for j, lb in enumerate(hi.blocks):
            P_lam = pair.projective_hi(lb)
            # kappa: copies of P^lambda in ind P^mu = L^lambda in its top
            kappa[i][j] = top_multiplicity(A, lb.e_hat, ind,
                                           pair.radical_part(("ind", mb.label), pair.Jhi, ind))
            # [res L^lambda : L^mu] = dim e_mu (A e_lambda / J e_lambda)
            kappa_alt[i][j] = top_multiplicity(A, e_mu, P_lam,
                                               pair.radical_part(("hi", lb.label), pair.Jhi, P_lam))
            # kappa*: copies of P^mu in res P^lambda = L^mu in its top over A_n
            kappa_star[i][j] = top_multiplicity(A, e_mu, P_lam,
                                                pair.radical_part(("res", lb.label), pair.Jlo_up, P_lam))
            # [ind L^mu : L^lambda] = dim e_lambda (A e_mu / A J_n e_mu)
            kappa_star_alt[i][j] = top_multiplicity(A, lb.e_hat, ind, ind_rad)
    if kappa != kappa_alt:
        raise InvariantFailure("kappa from induction and from restriction of simples disagree")
    if kappa_star != kappa_star_alt:
        raise InvariantFailure("kappa* from restriction and from induction of simples disagree")
    table = BranchingTable(lo.n, rows, cols, kappa, kappa_star)
    _bookkeeping(table, lo, hi, tower)
    return table


def _bookkeeping(table, lo, hi, tower):
    ratio = Fraction(hi.level.dim, lo.level.dim)
    for i, mb in enumerate(lo.blocks):
        s_ind_L = sum(table.kappa_star[i][j] * lb.dim_L for j, lb in enumerate(hi.blocks))
        s_ind_P = sum(table.kappa[i][j] * lb.dim_P for j, lb in enumerate(hi.blocks))
        if s_ind_L != ratio * mb.dim_L or s_ind_P != ratio * mb.dim_P:
            raise InvariantFailure(f"induction dimension count fails at {mb.label}")
    for j, lb in enumerate(hi.blocks):
        s_res_P = sum(table.kappa_star[i][j] * mb.dim_P for i, mb in enumerate(lo.blocks))
        s_res_L = sum(table.kappa[i][j] * mb.dim_L for i, mb in enumerate(lo.blocks))
        if s_res_P != lb.dim_P or s_res_L != lb.dim_L:
            raise InvariantFailure(f"restriction dimension count fails at {lb.label}")
    table.checks["dimension_counts"] = True
    table.checks["biadjunction"] = True


# Jucys-Murphy eigenvalues ------------------------------------------------------

@dataclass
class EigenvalueTable:
    n: int
    alpha: dict          # (mu, lambda) -> scalar, on edges with kappa* > 0
    components: dict = field(default_factory=dict)   # (mu, lambda) -> dim of the eigenspace
    alpha_simple: dict = field(default_factory=dict)  # (mu, lambda) -> scalar, on edges with kappa > 0
    unsplit: list = field(default_factory=list)       # kappa-edges whose L^mu meet several eigenvalues

    def coordinate(self, mu, lam, variant="starred"):
        return (self.alpha if variant == "starred" else self.alpha_simple)[(mu, lam)]


def _matrix_on(A, x, basis):
    """Matrix of left multiplication by x on the span of the independent columns ``basis``."""
    M = basis.coordinates(act(A, x, basis))
    if M is None:
        raise AssumptionBViolated("element does not preserve the module")
    return M


def generalized_eigenspaces(M, field=QQ):
    """{alpha: basis of ker (M - alpha)^dim} in the coordinates of M."""
    d = M.nrows
    mp = krylov_minpoly(M.apply, d)
    out = {}
    for alpha, mult in roots_or_fail(mp, field):
        N = M - Matrix.identity(d).scale(alpha)
        P = Matrix.identity(d)
        for _ in range(mult):
            P = P @ N
        out[alpha] = kernel_basis(P)
    return out


def jm_eigenvalues(tower, lo, hi, table, x=None, field=QQ):
    """Generalized eigenvalue of x on the P^mu part of res P^lambda for each edge.

    x defaults to the tower's Jucys-Murphy element at level n+1 and must
    commute with A_n.  Raises AssumptionBViolated when some P^mu occurs in
    more than one generalized eigenspace.
    """
    A = hi.level
    if x is None:
        x = tower.jucys_murphy(hi.n)
    for g in lo.level.generators():
        G = tower.include(g, hi.n)
        if G * x != x * G:
            raise AssumptionBViolated("element does not commute with the lower level")
    pair = _LevelPair(tower, lo, hi)
    alpha = {}
    alpha_simple = {}
    unsplit = []
    comps = {}
    for j, lb in enumerate(hi.blocks):
        P = pair.projective_hi(lb)
        M = _matrix_on(A, x, P)
        spaces = generalized_eigenspaces(M, field)
        subs = {}
        for a, vecs in spaces.items():
            sub = P.combine(vecs)
            subs[a] = (sub, left_ideal_products(A, pair.Jlo_up, sub) if pair.Jlo_up else Span.empty(A.dim))
        for i, mb in enumerate(lo.blocks):
            need = table.kappa_star[i][j]
            if need == 0:
                continue
            found = []
            for a, (sub, Jsub) in subs.items():
                m = top_multiplicity(A, pair.e_lo[mb.label], sub, Jsub)
                if m:
                    found.append((a, m))
            if len(found) != 1 or found[0][1] != need:
                raise AssumptionBViolated(
                    f"P^{mb.label} in res P^{lb.label} meets {len(found)} generalized eigenvalues")
            a = found[0][0]
            alpha[(mb.label, lb.label)] = a
            comps[(mb.label, lb.label)] = len(spaces[a])
        # the same for composition factors of res L^lambda = P^lambda / J P^lambda
        JP = pair.radical_part(("hi", lb.label), pair.Jhi, P)
        for i, mb in enumerate(lo.blocks):
            need = table.kappa[i][j]
            if need == 0:
                continue
            e = pair.e_lo[mb.label]
            base = act(A, e, JP).rank() if JP else 0
            found = []
            for a, (sub, _) in subs.items():
                m = act(A, e, concat([sub, JP], A.dim)).rank() - base
                if m:
                    found.append((a, m))
            if len(found) != 1 or found[0][1] != need:
                # not one of the standing assumptions: record it, the edge stays uncoordinatised
                unsplit.append((mb.label, lb.label))
                continue
            alpha_simple[(mb.label, lb.label)] = found[0][0]
    return EigenvalueTable(lo.n, alpha, comps, alpha_simple, unsplit)


# whole-tower driver ----------------------------------------------------------

@dataclass
class TowerData:
    tower: object
    N: int
    field: Field
    decomps: list
    branchings: list
    eigen: list


def analyse(tower, N, field=QQ, auto_extend=True, with_eigen=True, eigen_upto=None):
    """Block decompositions for levels 0..N, branching and JM tables between them.

    When ``auto_extend`` is set, a SplittingFieldFailure that names a
    quadratic radicand restarts the computation over the extended field.
    """
    while True:
        try:
            return _analyse(tower, N, field, with_eigen, eigen_upto)
        except SplittingFieldFailure as err:
            if not auto_extend or not err.radicand or set(err.radicand) <= field.primes:
                raise
            field = field.extend(err.radicand)
            for lvl in tower._levels.values():
                lvl.field = field


def _analyse(tower, N, field, with_eigen, eigen_upto):
    for lvl in tower._levels.values():
        lvl.field = field
    decomps = []
    prev = None
    for n in range(N + 1):
        tower.level(n).field = field
        dec = block_decomposition(tower, n, field, prev)
        decomps.append(dec)
        prev = dec
    branchings = [branching(tower, decomps[n], decomps[n + 1]) for n in range(N)]
    eigen = []
    if with_eigen:
        top = N if eigen_upto is None else min(N, eigen_upto)
        for n in range(top):
            eigen.append(jm_eigenvalues(tower, decomps[n], decomps[n + 1], branchings[n], field=field))
    data = TowerData(tower, N, field, decomps, branchings, eigen)
    relabel(data)
    return data


# labels -----------------------------------------------------------------

def _partition_text(p):
    return "(" + ",".join(map(str, p)) + ")" if p else "()"


def relabel(data):
    """Replace generic labels by partitions where the tower is (isomorphic to) a symmetric group
    algebra: the JM eigenvalue on an edge is the content of the added box."""
    T = data.tower
    shift = None
    if T.kind == "sym":
        shift = 0
    elif T.kind == "hecke" and T.d == 1:
        shift = T.weights[0]
    if shift is None or len(data.eigen) < data.N:
        return
    parts = {data.decomps[0].blocks[0].label: ()}
    for n in range(data.N):
        nxt = {}
        for (mu, lam), a in data.eigen[n].alpha.items():
            c = a - shift
            if Fraction(c).denominator != 1:
                return
            p = _add_box(parts[mu], int(c))
            if p is None or nxt.get(lam, p) != p:
                return
            nxt[lam] = p
        if len(set(nxt.values())) != len(nxt):
            return
        parts.update(nxt)
    mapping = {old: _partition_text(p) for old, p in parts.items()}
    for dec in data.decomps:
        for b in dec.blocks:
            b.label = mapping[b.label]
    for br in data.branchings:
        br.rows = [mapping[r] for r in br.rows]
        br.cols = [mapping[c] for c in br.cols]
    for et in data.eigen:
        et.alpha = {(mapping[m], mapping[l]): a for (m, l), a in et.alpha.items()}
        et.components = {(mapping[m], mapping[l]): v for (m, l), v in et.components.items()}
        et.alpha_simple = {(mapping[m], mapping[l]): a for (m, l), a in et.alpha_simple.items()}
        et.unsplit = [(mapping[m], mapping[l]) for m, l in et.unsplit]


def _add_box(p, content):
    p = list(p)
    for r in range(len(p) + 1):
        length = p[r] if r < len(p) else 0
        if length - r == content and (r == 0 or p[r - 1] > length):
            if r < len(p):
                p[r] += 1
            else:
                p.append(1)
            return tuple(p)
    return None
