"""The two coherent systems on the branching graphs of a tower.

Both share the Plancherel-type measures

    Pl_n(mu) = dim L^mu * dim P^mu / dim A_n.

The plain system walks the graph weighted by kappa, with

    p_down(lam, mu) = kappa(mu, lam) dim L^mu / dim L^lam
    p_up(mu, lam)   = dim A_n / dim A_{n+1} * kappa(mu, lam) dim P^lam / dim P^mu

and the starred system uses kappa* with the roles of L and P swapped.
Everything is exact; floats only appear when results are serialized.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError, InvariantFailure, NonRealCoordinate, ZeroMassVertex
from .exactlin.scalars import is_real, real_sort_key, scalar

VARIANTS = ("plain", "starred")


@dataclass
class GradedGraph:
    """Vertices by level and edge multiplicities between adjacent levels."""
    levels: list                  # levels[n] = labels of Gamma_n
    mult: list                    # mult[n][(mu, lam)] > 0 for mu in level n, lam in level n+1

    def edges(self, n):
        return sorted(self.mult[n].items(), key=lambda kv: (self.levels[n].index(kv[0][0]),
                                                           self.levels[n + 1].index(kv[0][1])))

    def above(self, n, mu):
        return [lam for lam in self.levels[n + 1] if (mu, lam) in self.mult[n]]

    def below(self, n, lam):
        """Vertices of level n joined to lam at level n+1."""
        return [mu for mu in self.levels[n] if (mu, lam) in self.mult[n]]


@dataclass
class CoherentSystem:
    variant: str
    tower: str
    graph: GradedGraph
    algebra_dims: list
    dim_L: list                   # dim_L[n][label]
    dim_P: list
    Pl: list                      # Pl[n][label]
    down: list                    # down[n][(lam, mu)], lam at level n+1
    up: list                      # up[n][(mu, lam)]
    checks: dict = field(default_factory=dict)

    @property
    def N(self):
        return len(self.Pl) - 1

    def levels(self):
        return self.graph.levels

    def p_down(self, n, lam, mu):
        """Probability of stepping from lam at level n+1 down to mu at level n."""
        return self.down[n].get((lam, mu), Fraction(0))

    def p_up(self, n, mu, lam):
        return self.up[n].get((mu, lam), Fraction(0))


def _tables(decomps, branchings):
    levels = [[b.label for b in d.blocks] for d in decomps]
    dim_L = [{b.label: b.dim_L for b in d.blocks} for d in decomps]
    dim_P = [{b.label: b.dim_P for b in d.blocks} for d in decomps]
    dims = [d.level.dim for d in decomps]
    return levels, dim_L, dim_P, dims


def build_system(decomps, branchings, variant="plain", tower=""):
    """Coherent system of the given variant, with every invariant checked exactly."""
    if variant not in VARIANTS:
        raise ConfigError(f"unknown variant {variant!r}; use plain or starred")
    levels, dim_L, dim_P, dims = _tables(decomps, branchings)
    if len(branchings) != len(decomps) - 1:
        raise ConfigError("need one branching table per adjacent pair of levels")
    Pl = []
    for n, labels in enumerate(levels):
        m = {mu: Fraction(dim_L[n][mu] * dim_P[n][mu], dims[n]) for mu in labels}
        for mu, v in m.items():
            if v <= 0:
                raise ZeroMassVertex(f"Pl_{n}({mu}) = {v}")
        Pl.append(m)
    # down-weights use the "down" dimension, up-weights the other one
    dlo, dup = (dim_L, dim_P) if variant == "plain" else (dim_P, dim_L)
    mult, down, up = [], [], []
    for n, br in enumerate(branchings):
        table = br.kappa if variant == "plain" else br.kappa_star
        if br.rows != levels[n] or br.cols != levels[n + 1]:
            raise InvariantFailure(f"branching labels at level {n} do not match the block labels")
        m, dn, u = {}, {}, {}
        ratio = Fraction(dims[n], dims[n + 1])
        for i, mu in enumerate(br.rows):
            for j, lam in enumerate(br.cols):
                k = table[i][j]
                if k <= 0:
                    continue
                m[(mu, lam)] = k
                dn[(lam, mu)] = Fraction(k * dlo[n][mu], dlo[n + 1][lam])
                u[(mu, lam)] = ratio * Fraction(k * dup[n + 1][lam], dup[n][mu])
        mult.append(m)
        down.append(dn)
        up.append(u)
    label = tower or getattr(getattr(decomps[0], "level", None), "name", "")
    sys = CoherentSystem(variant, label, GradedGraph(levels, mult), dims, dim_L, dim_P, Pl, down, up)
    check_system(sys)
    return sys


def check_system(sys):
    """Exact checks: normalisation, stochasticity, coherence and up/down consistency."""
    G = sys.graph
    for n, m in enumerate(sys.Pl):
        if sum(m.values()) != 1:
            raise InvariantFailure(f"Pl_{n} does not sum to 1")
    for n in range(len(sys.down)):
        for lam in G.levels[n + 1]:
            if sum(sys.p_down(n, lam, mu) for mu in G.levels[n]) != 1:
                raise InvariantFailure(f"p_down out of {lam} is not stochastic")
        for mu in G.levels[n]:
            if sum(sys.p_up(n, mu, lam) for lam in G.levels[n + 1]) != 1:
                raise InvariantFailure(f"p_up out of {mu} is not stochastic")
        for mu in G.levels[n]:
            lhs = sum(sys.Pl[n + 1][lam] * sys.p_down(n, lam, mu) for lam in G.levels[n + 1])
            if lhs != sys.Pl[n][mu]:
                raise InvariantFailure(f"coherence fails at {mu}: {lhs} != {sys.Pl[n][mu]}")
        for (mu, lam) in G.mult[n]:
            if sys.p_up(n, mu, lam) * sys.Pl[n][mu] != sys.p_down(n, lam, mu) * sys.Pl[n + 1][lam]:
                raise InvariantFailure(f"up/down consistency fails on {mu} -> {lam}")
    sys.checks.update(normalised=True, stochastic=True, coherent=True, up_down=True)
    return True


def coherence_residuals(sys):
    """(n, mu, lhs, Pl_n(mu)) for every vertex below the top level."""
    out = []
    G = sys.graph
    for n in range(len(sys.down)):
        for mu in G.levels[n]:
            lhs = sum((sys.Pl[n + 1][lam] * sys.p_down(n, lam, mu) for lam in G.levels[n + 1]), Fraction(0))
            out.append((n, mu, lhs, sys.Pl[n][mu]))
    return out


def systems_equal(a, b):
    """Entrywise equality of two coherent systems (graphs, measures, transitions)."""
    return (a.graph.levels == b.graph.levels and a.graph.mult == b.graph.mult
            and a.Pl == b.Pl and a.down == b.down and a.up == b.up)


# spectral measures ------------------------------------------------------------

@dataclass
class SpectralMeasure:
    vertex: str
    level: int
    direction: str
    variant: str
    atoms: list                   # [(location, mass)] sorted by location

    def total(self):
        return sum((m for _, m in self.atoms), Fraction(0))


def spectral_measure(sys, eigen, mu, direction="up", level=None):
    """Transition (up) or co-transition (down) measure of vertex mu.

    ``eigen`` is the list of EigenvalueTable objects, one per adjacent pair.
    Atoms at equal locations are merged by adding their masses.
    """
    G = sys.graph
    if level is None:
        level = next((n for n, labels in enumerate(G.levels) if mu in labels), None)
        if level is None:
            raise ConfigError(f"unknown vertex {mu!r}")
    n = level
    pairs = []
    if direction == "up":
        if n >= len(sys.up) or n >= len(eigen):
            raise ConfigError(f"no level above {mu} has been computed")
        for lam in G.above(n, mu):
            pairs.append((_alpha(eigen[n], mu, lam, sys.variant), sys.p_up(n, mu, lam)))
    elif direction == "down":
        if n == 0:
            raise ConfigError("level-0 vertices have no co-transition measure")
        for eta in G.below(n - 1, mu):
            pairs.append((_alpha(eigen[n - 1], eta, mu, sys.variant), sys.p_down(n - 1, mu, eta)))
    else:
        raise ConfigError(f"direction must be up or down, not {direction!r}")
    merged = {}
    for a, m in pairs:
        if m == 0:
            continue
        if not is_real(a):
            raise NonRealCoordinate(f"coordinate {a} of {mu} is not real")
        merged[a] = merged.get(a, Fraction(0)) + m
    atoms = sorted(merged.items(), key=lambda am: real_sort_key(am[0]))
    sm = SpectralMeasure(mu, n, direction, sys.variant, atoms)
    if sm.total() != 1:
        raise InvariantFailure(f"spectral measure of {mu} has mass {sm.total()}")
    return sm


def _alpha(table, mu, lam, variant):
    # the plain graph has kappa-edges, coordinatised through the simple modules
    try:
        return table.coordinate(mu, lam, variant)
    except KeyError:
        raise InvariantFailure(f"no Jucys-Murphy coordinate on the edge {mu} -> {lam}") from None


def moment(sm, k):
    """k-th moment: sum of mass * location^k."""
    if k < 0:
        raise ConfigError("moments need k >= 0")
    return scalar(sum((m * scalar(a) ** k for a, m in sm.atoms), Fraction(0)))


# growth process -------------------------------------------------------------------

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """The splitmix64 generator: state += golden gamma, then a fixed output mix."""

    def __init__(self, state):
        self.state = state & _MASK

    def next(self):
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)


def path_stream(seed, index):
    """Independent generator for path ``index`` of a run with ``seed``."""
    return SplitMix64((seed * _GOLDEN + index) & _MASK)


def choose(u, options):
    """First option whose cumulative probability exceeds u / 2^64.

    ``options`` is a list of (value, probability).  The comparison
    u < cum * 2^64 is done by cross-multiplication, so it is exact.
    """
    cum = Fraction(0)
    for value, p in options:
        cum += p
        if u * cum.denominator < cum.numerator << 64:
            return value
    raise InvariantFailure("probabilities do not sum to 1")


@dataclass
class GrowthPath:
    index: int
    vertices: list


def sample_growth(sys, steps, seed=0, paths=1):
    """``paths`` independent runs of the up-transition chain started at level 0."""
    if steps < 0 or steps > len(sys.up):
        raise ConfigError(f"steps must lie in 0..{len(sys.up)}")
    G = sys.graph
    if len(G.levels[0]) != 1:
        raise InvariantFailure("level 0 should have a single vertex")
    start = G.levels[0][0]
    # options per (level, vertex) in canonical label order
    opts = {}
    for n in range(steps):
        for mu in G.levels[n]:
            opts[(n, mu)] = [(lam, sys.p_up(n, mu, lam)) for lam in G.above(n, mu)]
    out = []
    for i in range(paths):
        rng = path_stream(seed, i)
        cur = start
        walk = [cur]
        for n in range(steps):
            cur = choose(rng.next(), opts[(n, cur)])
            walk.append(cur)
        out.append(GrowthPath(i, walk))
    return out


def path_weights(sys, steps):
    """Every path of the given length from level 0 with its exact probability."""
    G = sys.graph
    paths = [((G.levels[0][0],), Fraction(1))]
    for n in range(steps):
        nxt = []
        for walk, w in paths:
            for lam in G.above(n, walk[-1]):
                nxt.append((walk + (lam,), w * sys.p_up(n, walk[-1], lam)))
        paths = nxt
    return paths


def exact_marginal(sys, steps):
    """Distribution of the endpoint after ``steps`` steps, by path enumeration."""
    out = {lam: Fraction(0) for lam in sys.graph.levels[steps]}
    for walk, w in path_weights(sys, steps):
        out[walk[-1]] += w
    return out


def empirical_marginal(paths, step):
    counts = {}
    for p in paths:
        v = p.vertices[step]
        counts[v] = counts.get(v, 0) + 1
    return counts
