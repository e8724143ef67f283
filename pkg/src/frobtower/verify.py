"""Executable checks of the trace, Casimir and moment identities of a tower.

Every check evaluates both sides through separate code paths (structure
constant traces against Frobenius maps, algebraic evaluations against
measure moments) and returns an :class:`IdentityReport` holding both
witnesses.  Nothing here uses tolerances.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .coherent import build_system, moment, spectral_measure, systems_equal
from .errors import AssumptionBViolated, AssumptionViolated, ConfigError, LevelMismatch
from .exactlin.linalg import kernel_basis
from .exactlin.scalars import format_scalar, scalar
from .repn import analyse, cartan_matrix, jm_eigenvalues
from .towers.frobenius import (bimodule_failures, casimir, casimir_iota, duality_failures,
                               frobenius_step, frobenius_system, relative_norm,
                               reproduction_failures, sample_elements)


@dataclass
class IdentityReport:
    identity: str
    tower: str
    levels: tuple
    params: dict
    lhs: object
    rhs: object
    status: str = ""
    detail: str = ""

    def __post_init__(self):
        if not self.status:
            self.status = "verified" if _same(self.lhs, self.rhs) else "failed"

    @property
    def ok(self):
        return self.status == "verified"

    def to_record(self, describe=None):
        return {
            "identity": self.identity,
            "tower": self.tower,
            "levels": list(self.levels),
            "params": {k: _text(v, describe) for k, v in self.params.items()},
            "status": self.status,
            "lhs": _text(self.lhs, describe),
            "rhs": _text(self.rhs, describe),
            "detail": self.detail,
        }


def _same(a, b):
    if isinstance(a, (list, tuple)) and isinstance(b, (list, tuple)):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return a == b


def _text(x, describe=None):
    if isinstance(x, (list, tuple)):
        return [_text(v, describe) for v in x]
    if hasattr(x, "terms") and hasattr(x, "level"):
        return describe(x) if describe else x.to_text()
    if isinstance(x, (int, str)) or x is None:
        return x
    try:
        return format_scalar(x)
    except (TypeError, ValueError):
        return str(x)


def _cache(tower):
    return tower.__dict__.setdefault("_verify_cache", {})


def E_to_scalar(tower, x):
    """E_{n,0}(x) read off as a scalar (A_0 is the ground field)."""
    while x.level.n > 0:
        x = tower.frobenius_map(x)
    A0 = tower.level(0)
    if A0.dim != 1:
        raise LevelMismatch("level 0 is not one-dimensional")
    return scalar(x.coefficient(A0.unit))


def casimir_element(tower, n, k=0, iota=False):
    key = ("C", n, k, iota)
    cache = _cache(tower)
    if key not in cache:
        sys = frobenius_system(tower, n, k)
        cache[key] = casimir_iota(sys) if iota else casimir(sys)
    return cache[key]


# Frobenius axioms ---------------------------------------------------------

def check_frobenius_axioms(sys, elements=None, seed=0, count=12):
    """Duality, reproduction and bimodule property of one Frobenius system."""
    A = sys.tower.level(sys.n)
    if elements is None:
        elements = sample_elements(A, count, seed)
    bad_dual = duality_failures(sys, limit=1)
    bad_rep = reproduction_failures(sys, elements) if not bad_dual else []
    bad_bim = bimodule_failures(sys, elements[:count]) if not (bad_dual or bad_rep) else []
    label = sys.tower.label
    params = {"basis_size": len(sys.B), "elements": len(elements)}
    if bad_dual:
        i, j, val = bad_dual[0]
        Ak = sys.tower.level(sys.k)
        want = Ak.one() if i == j else Ak.zero()
        return IdentityReport("frobenius_duality", label, (sys.n, sys.k), dict(params, i=i, j=j),
                              val, want, detail="E(b_i b_j^vee) != delta_ij")
    if bad_rep:
        a, left, right = bad_rep[0]
        lhs, what = (left, "sum E(a b^vee) b") if left != a else (right, "sum b^vee E(b a)")
        return IdentityReport("frobenius_reproduction", label, (sys.n, sys.k), params, lhs, a,
                              detail=f"{what} != a")
    if bad_bim:
        a, g = bad_bim[0]
        return IdentityReport("frobenius_bimodule", label, (sys.n, sys.k), params,
                              sys.E(sys.up(g) * a), g * sys.E(a), detail="E(g a) != g E(a)")
    return IdentityReport("frobenius_axioms", label, (sys.n, sys.k), params, 0, 0)


def corrupt_dual(sys):
    """Negative control: the same system with its dual basis perturbed."""
    Bv = list(sys.Bv)
    if len(Bv) >= 2:
        Bv[0], Bv[1] = Bv[1], Bv[0]
    else:
        Bv[0] = Bv[0].scale(2)
    return sys.with_dual(Bv)


# Casimir examples -------------------------------------------------------------

def check_sym_casimir_scalar(tower, n, k):
    """C_{n,k} of the symmetric tower is the scalar n (n-1) ... (k+1)."""
    C = casimir_element(tower, n, k)
    value = 1
    for j in range(k + 1, n + 1):
        value *= j
    A = tower.level(n)
    return IdentityReport("casimir_scalar", tower.label, (n, k), {}, C, A.one().scale(value))


def hecke_casimir_targets(tower, i, j):
    """Expected C_{3,2} and both forms of C^iota_{3,2} for the level-2 tower with weights (i, j)."""
    A = tower.level(3)
    x = [None] + [tower.x(3, m) for m in (1, 2, 3)]
    s1, s2 = tower.s(3, 1), tower.s(3, 2)
    shift = A.one().scale(3 * (i + j))
    C = (x[1] + x[2] + x[3]).scale(2) - shift
    intermediate = (s2 * s1 * x[1] * s1 * s2 + s2 * x[2] * s2 + x[3]).scale(2) - shift
    printed = x[3].scale(6) - (x[3] * s2).scale(4) - (s2 * s1 * s2).scale(2) - shift
    corrected = x[3].scale(6) - s2.scale(4) - (s2 * s1 * s2).scale(2) - shift
    return {"C": C, "Ciota_intermediate": intermediate, "Ciota_printed": printed,
            "Ciota_corrected": corrected}


def check_hecke_casimir(tower, form="corrected"):
    """C_{3,2} and C^iota_{3,2} against the closed forms; ``form`` picks printed or corrected C^iota."""
    if tower.kind != "hecke" or tower.d != 2:
        raise ConfigError("this check is for level-2 cyclotomic Hecke towers")
    i, j = tower.weights
    want = hecke_casimir_targets(tower, i, j)
    C = casimir_element(tower, 3, 2)
    Ci = casimir_element(tower, 3, 2, iota=True)
    key = "Ciota_printed" if form == "printed" else "Ciota_corrected"
    return [IdentityReport("hecke_casimir_C32", tower.label, (3, 2), {"i": i, "j": j}, C, want["C"]),
            IdentityReport(f"hecke_casimir_Ciota32_{form}", tower.label, (3, 2), {"i": i, "j": j},
                           Ci, want[key])]


def centrality_witness(tower, x):
    """A generator g of the level with g x != x g, or None if x is central."""
    for g in x.level.generators():
        if g * x != x * g:
            return g
    return None


def check_casimir_central(tower, n, k, iota=False):
    x = casimir_element(tower, n, k, iota)
    g = centrality_witness(tower, x)
    name = "casimir_iota_central" if iota else "casimir_central"
    if g is None:
        return IdentityReport(name, tower.label, (n, k), {}, 0, 0)
    return IdentityReport(name, tower.label, (n, k), {"witness": g}, g * x, x * g,
                          detail="fails to commute with a generator")


# traces --------------------------------------------------------------------------

def check_trace_casimir(tower, m, a):
    """Tr_{A_m}(a) = E_{m,0}(C_{m,0} a)."""
    A = tower.level(m)
    lhs = A.regular_trace(a)
    rhs = E_to_scalar(tower, casimir_element(tower, m, 0) * a)
    return IdentityReport("trace_casimir", tower.label, (m, 0), {"a": a}, lhs, rhs)


def centralizer_basis(tower, m):
    """Basis of Z(A_m, A_{m-1}) = elements of A_m commuting with A_{m-1}."""
    gens = [tower.include(g, m) for g in tower.level(m - 1).generators()]
    return _commutant(tower, m, gens, ("Z", m))


def centre_basis(tower, m):
    """Basis of the centre Z(A_m)."""
    return _commutant(tower, m, list(tower.level(m).generators()), ("centre", m))


def _commutant(tower, m, gens, key):
    cache = _cache(tower)
    if key in cache:
        return cache[key]
    A = tower.level(m)
    if not gens:
        out = A.basis()
    else:
        rows = []
        exact = True
        mats = []
        for g in gens:
            ol, orr = A.integer_operator(g, "left"), A.integer_operator(g, "right")
            if ol is None or orr is None or ol[1] != orr[1]:
                exact = False
                break
            mats.append(ol[0] - orr[0])
        if exact:
            import flint
            for M in mats:
                rows.extend(M.tolist())
            X, nullity = flint.fmpz_mat(rows).nullspace()
            vecs = [[Fraction(int(X[i, j])) for i in range(A.dim)] for j in range(int(nullity))]
        else:
            for g in gens:
                M = A.left_matrix(g) - A.right_matrix(g)
                rows.extend(M.rows)
            vecs = kernel_basis(rows)
        out = [A.from_vector(v) for v in vecs]
    cache[key] = out
    return out


def random_combination(elements, rng, terms=6):
    picked = rng.sample(elements, min(terms, len(elements)))
    acc = picked[0].level.zero()
    for e in picked:
        acc = acc + e.scale(rng.randint(-5, 5) or 1)
    return acc


def check_centralizer_trace(tower, m, a):
    """Tr_{A_m}(a) = Tr_{A_{m-1}}(E_{m,m-1}(C^iota_{m,m-1} a)) for a in Z(A_m, A_{m-1})."""
    for g in tower.level(m - 1).generators():
        G = tower.include(g, m)
        if G * a != a * G:
            raise AssumptionViolated("element is not in the centralizer of the lower level")
    A = tower.level(m)
    lhs = A.regular_trace(a)
    Ci = casimir_element(tower, m, m - 1, iota=True)
    rhs = tower.level(m - 1).regular_trace(tower.frobenius_map(Ci * a))
    return IdentityReport("centralizer_trace", tower.label, (m, m - 1), {"a": a}, lhs, rhs)


# moments ----------------------------------------------------------------------------

def _systems(data):
    cache = _cache(data.tower)
    key = ("systems", data.N, data.field.name)
    if key not in cache:
        cache[key] = {v: build_system(data.decomps, data.branchings, v, data.tower.label)
                      for v in ("plain", "starred")}
    return cache[key]


def moment_lhs_up(tower, dec, mu, k):
    """E_{n,0}(e~_mu E_{n+1,n}(C_{n+1,0} x_{n+1}^k)), purely algebraic."""
    n = dec.n
    b = dec.block(mu)
    x = tower.jucys_murphy(n + 1)
    inner = tower.frobenius_map(casimir_element(tower, n + 1, 0) * x ** k)
    et = b.e_hat.scale(Fraction(1, b.dim_P))
    return E_to_scalar(tower, et * inner)


def moment_lhs_down(tower, dec, mu, k):
    """E_{n,0}(e~_mu N_{n,0}(x_n^k))."""
    n = dec.n
    b = dec.block(mu)
    x = tower.jucys_murphy(n)
    key = ("N", n, k)
    cache = _cache(tower)
    if key not in cache:
        cache[key] = relative_norm(frobenius_system(tower, n, 0), x ** k)
    et = b.e_hat.scale(Fraction(1, b.dim_P))
    return E_to_scalar(tower, et * cache[key])


def cartan_up_moment(data, n, mu, k):
    """Tr_{A_{n+1}}(e~_mu x_{n+1}^k) from branching data, Cartan matrix and JM coordinates.

    e_mu res P^lambda picks up one copy of L^mu from each composition
    factor, so every summand P^nu of res P^lambda contributes c[nu][mu]
    times the coordinate of the edge nu -> lambda.
    """
    lo, hi = data.decomps[n], data.decomps[n + 1]
    br = data.branchings[n]
    c = cartan_matrix(lo)
    j = lo.labels.index(mu)
    alpha = data.eigen[n].alpha
    acc = Fraction(0)
    for lam in hi.blocks:
        for i, nu in enumerate(lo.blocks):
            ks = br.ks(nu.label, lam.label)
            if ks and c[i][j]:
                acc = acc + lam.dim_L * ks * c[i][j] * alpha[(nu.label, lam.label)] ** k
    return scalar(acc / lo.block(mu).dim_P)


def check_moment_identities(data, n, mu, k, form="corrected"):
    """Both moment identities at vertex mu of level n.

    The algebraic sides use Frobenius maps, Casimirs and relative norms
    only.  The other sides are moments of the starred spectral measures
    built from branching data and Jucys-Murphy coordinates.  ``form`` is
    "corrected" (dimension ratio on the up identity), "literal" (the
    ratio on the down identity instead) or "cartan" (the up side summed
    over every projective whose composition factors include L^mu, which
    is what the algebraic side measures once the Cartan matrix of A_n
    has off-diagonal entries).
    """
    tower = data.tower
    dims = [d.level.dim for d in data.decomps]
    star = _systems(data)["starred"]
    reports = []
    if n + 1 <= data.N:
        lhs = moment_lhs_up(tower, data.decomps[n], mu, k)
        m_up = moment(spectral_measure(star, data.eigen, mu, "up", level=n), k)
        if form == "cartan":
            rhs = cartan_up_moment(data, n, mu, k)
        elif form == "corrected":
            rhs = Fraction(dims[n + 1], dims[n]) * m_up
        else:
            rhs = m_up
        reports.append(IdentityReport(f"moment_up_{form}", tower.label, (n + 1, n),
                                      {"mu": mu, "k": k}, lhs, scalar(rhs)))
    if n >= 1:
        lhs = moment_lhs_down(tower, data.decomps[n], mu, k)
        m_dn = moment(spectral_measure(star, data.eigen, mu, "down", level=n), k)
        rhs = Fraction(dims[n], dims[n - 1]) * m_dn if form == "literal" else m_dn
        reports.append(IdentityReport(f"moment_down_{form}", tower.label, (n, n - 1),
                                      {"mu": mu, "k": k}, lhs, scalar(rhs)))
    return reports


# idempotent independence -------------------------------------------------------------

def conjugate_idempotent(e, a):
    """e + e a (1 - e): another idempotent with the same left ideal class."""
    one = e.level.one()
    return e + e * a * (one - e)


def check_idempotent_independence(tower, dec, mu, elements=None, seed=0, mode="central"):
    """E_{m,0}(C_{m,0} e a) is the same for two primitive idempotents e of one block.

    With mode="central" a runs over a basis of Z(A_m); mode="literal"
    uses every basis element, where the identity can fail (in S_3 the two
    idempotents e and s2 e s2 of the block (2,1) already disagree at a = (1 2)).
    """
    A = dec.level
    b = dec.block(mu)
    e1 = b.e_hat
    rng = random.Random(seed)
    e2 = e1
    for _ in range(50):
        w = A.basis_element(rng.choice(A.words))
        cand = conjugate_idempotent(e1, w)
        if cand != e1:
            e2 = cand
            break
    if elements is None:
        if mode == "central":
            elements = centre_basis(tower, dec.n)
        elif mode == "literal":
            elements = A.basis() if A.dim <= 48 else sample_elements(A, 12, seed)
        else:
            raise ConfigError(f"unknown mode {mode!r}")
    C = casimir_element(tower, dec.n, 0)
    lhs = [E_to_scalar(tower, C * e1 * a) for a in elements]
    rhs = [E_to_scalar(tower, C * e2 * a) for a in elements]
    rep = IdentityReport("idempotent_independence", tower.label, (dec.n, 0),
                         {"mu": mu, "distinct": int(e1 != e2), "elements": len(elements), "mode": mode}, lhs, rhs)
    unit = IdentityReport("idempotent_trace_unit", tower.label, (dec.n, 0), {"mu": mu},
                          E_to_scalar(tower, C * e1), Fraction(b.dim_P))
    return [rep, unit]


# assumption (b) -------------------------------------------------------------------

def find_jm_violation(tower, lo, hi, table, tries=40, seed=0):
    """An element of Z(A_{n+1}, A_n) violating the single-eigenvalue assumption, or None."""
    Z = centralizer_basis(tower, hi.n)
    rng = random.Random(seed)
    candidates = list(Z) + [random_combination(Z, rng) for _ in range(tries)]
    for x in candidates:
        try:
            jm_eigenvalues(tower, lo, hi, table, x=x, field=hi.field)
        except AssumptionBViolated as err:
            return x, str(err)
    return None


def jm_negative_control(tower, data, n, seed=0):
    """Run the coordinate computation on a candidate that is not a Jucys-Murphy element.

    Genuine violations inside Z(A_{n+1}, A_n) are searched first; when there
    are none, x_{n+1} plus a generator that does not commute with A_n is used.
    Always raises AssumptionBViolated.
    """
    lo, hi = data.decomps[n], data.decomps[n + 1]
    found = find_jm_violation(tower, lo, hi, data.branchings[n], seed=seed)
    if found is not None:
        raise AssumptionBViolated(found[1])
    x = tower.jucys_murphy(n + 1)
    lower = [tower.include(g, n + 1) for g in tower.level(n).generators()]
    for g in tower.level(n + 1).generators():
        cand = x + g
        if any(h * cand != cand * h for h in lower):
            jm_eigenvalues(tower, lo, hi, data.branchings[n], x=cand, field=data.field)
    raise AssumptionBViolated(f"level {n + 1} has no element outside the centralizer to test")


# suite ---------------------------------------------------------------------------------

@dataclass
class SuiteResult:
    tower: str
    N: int
    reports: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.ok for r in self.reports)

    def failures(self):
        return [r for r in self.reports if not r.ok]


def run_suite(tower, N, field=None, k_max=4, sweep_dim=48, random_count=100, seed=0,
              full_pipeline_dim=200, moment_form="cartan", auto_extend=True):
    """Every check on one tower up to level N.

    Representation-theoretic checks (coherence, moments, idempotents)
    run while the top level has dimension at most ``full_pipeline_dim``
    or N <= 6 for the symmetric tower; Frobenius axioms and trace
    identities run at every level.
    """
    from .exactlin.scalars import QQ
    res = SuiteResult(tower.label, N)
    add = res.reports.extend
    for n in range(N):
        add([check_frobenius_axioms(frobenius_step(tower, n), seed=seed)])
    rng = random.Random(seed)
    for m in range(1, N + 1):
        A = tower.level(m)
        elems = A.basis() if A.dim <= sweep_dim else [random_combination(A.basis(), rng)
                                                      for _ in range(random_count)]
        add([check_trace_casimir(tower, m, a) for a in elems])
        Z = centralizer_basis(tower, m)
        zs = Z if A.dim <= sweep_dim else [random_combination(Z, rng) for _ in range(random_count)]
        add([check_centralizer_trace(tower, m, a) for a in zs])
        for k in range(m):
            add([check_casimir_central(tower, m, k)])
    if tower.level(N).dim > full_pipeline_dim and not (tower.kind == "sym" and N <= 6):
        return res
    data = analyse(tower, N, field or QQ, auto_extend=auto_extend)
    sys = _systems(data)
    if all(d.semisimple for d in data.decomps):
        same = systems_equal(sys["plain"], sys["starred"])
        add([IdentityReport("semisimple_systems_coincide", tower.label, (0, N), {}, same, True)])
    add([IdentityReport(f"coherence_{v}", tower.label, (0, N), {}, s.checks.get("coherent"), True)
         for v, s in sys.items()])
    for n in range(N + 1):
        for mu in data.decomps[n].labels:
            for k in range(k_max + 1):
                add(check_moment_identities(data, n, mu, k, form=moment_form))
    for dec in data.decomps[1:]:
        if dec.level.dim > sweep_dim:
            continue
        for b in dec.blocks:
            add(check_idempotent_independence(tower, dec, b.label, seed=seed))
    return res
