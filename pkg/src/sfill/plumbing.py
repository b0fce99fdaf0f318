"""Star-shaped plumbing graphs, concave caps, and blowdown template graphs.

A small Seifert manifold Y(-b; (a1,b1), (a2,b2), (a3,b3)) bounds the plumbing
on a star graph with central weight -b and arm weights the negated HJ
expansions of the slopes.  For b >= 4 it also bounds a concave cap: a star
with central weight +1, essential arms carrying the negated dual expansions,
and (b - 4) arms made of a single (-1)-sphere.

Blowdown templates are the linear chains C_p = C_{p,1} and C_{p,q} (the
chain of L(p^2, pq-1), first weight -(p+2) when q = 1) together with the
three-legged graphs Gamma_{p,q,r} with central weight -4.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cfrac import dual_expand, hj_expand, validate_slope

_SEIFERT_RE = re.compile(
    r"^\s*b\s*=\s*(-?\d+)\s*;\s*(\d+)\s*/\s*(\d+)\s*,\s*(\d+)\s*/\s*(\d+)\s*,\s*(\d+)\s*/\s*(\d+)\s*$"
)


@dataclass(frozen=True)
class SeifertData:
    """Input invariants (b; (alpha_i, beta_i)) of a small Seifert manifold."""

    b: int
    arms: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        if len(self.arms) != 3:
            raise ValueError("exactly three singular fibers are supported")
        object.__setattr__(self, "arms", tuple((int(a), int(x)) for a, x in self.arms))
        if self.b < 1:
            raise ValueError("central multiplicity b must be positive")
        for alpha, beta in self.arms:
            validate_slope(alpha, beta)

    @classmethod
    def parse(cls, text: str) -> "SeifertData":
        """Parse the CLI form ``b=<int>;<a1>/<b1>,<a2>/<b2>,<a3>/<b3>``."""
        m = _SEIFERT_RE.match(text)
        if m is None:
            raise ValueError(f"malformed Seifert data {text!r}; expected b=<int>;a/b,a/b,a/b")
        g = [int(x) for x in m.groups()]
        return cls(g[0], ((g[1], g[2]), (g[3], g[4]), (g[5], g[6])))

    def __str__(self) -> str:
        arms = ",".join(f"{a}/{b}" for a, b in self.arms)
        return f"b={self.b};{arms}"


@dataclass(frozen=True)
class PlumbingGraph:
    """Weighted tree, stored center-first with arms read outward."""

    central_weight: int
    arms: tuple[tuple[int, ...], ...]
    shape: str = "star"

    def __post_init__(self):
        object.__setattr__(self, "arms", tuple(tuple(arm) for arm in self.arms))
        if self.shape not in ("star", "linear"):
            raise ValueError(f"unknown graph shape {self.shape!r}")

    @property
    def vertex_count(self) -> int:
        return 1 + sum(len(arm) for arm in self.arms)

    def weights(self) -> tuple[int, ...]:
        """All vertex weights in the canonical center-first order."""
        return (self.central_weight,) + tuple(w for arm in self.arms for w in arm)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Tree edges between canonical vertex indices."""
        out = []
        k = 1
        for arm in self.arms:
            prev = 0
            for _ in arm:
                out.append((prev, k))
                prev = k
                k += 1
        return tuple(out)


def linear_graph(weights) -> PlumbingGraph:
    weights = tuple(weights)
    if not weights:
        raise ValueError("a linear graph needs at least one vertex")
    return PlumbingGraph(weights[0], (weights[1:],) if len(weights) > 1 else ((),), shape="linear")


def build_star_graph(s: SeifertData) -> PlumbingGraph:
    """Plumbing graph of Y: central weight -b, arm i = negated HJ word of alpha_i/beta_i."""
    arms = tuple(tuple(-e for e in hj_expand(a, b)) for a, b in s.arms)
    return PlumbingGraph(-s.b, arms, shape="star")


def intersection_matrix(g: PlumbingGraph) -> list[list[int]]:
    n = g.vertex_count
    w = g.weights()
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = w[i]
    for i, j in g.edges():
        m[i][j] = m[j][i] = 1
    return m


def _det(matrix: list[list[int]]) -> int:
    """Integer determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_negative_definite(matrix: list[list[int]]) -> bool:
    """Sylvester test: the k-th leading principal minor has sign (-1)^k."""
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(i):
            if matrix[i][j] != matrix[j][i]:
                raise ValueError("matrix must be symmetric")
    for k in range(1, n + 1):
        minor = _det([row[:k] for row in matrix[:k]])
        if minor * (-1) ** k <= 0:
            return False
    return True


@dataclass(frozen=True)
class ConcaveCap:
    """Cap K: +1 central sphere, dual-weight essential arms, (b-4) single (-1) arms."""

    essential_arms: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    minus_one_arms: int

    central_weight = 1

    def __post_init__(self):
        object.__setattr__(self, "essential_arms", tuple(tuple(a) for a in self.essential_arms))
        if self.minus_one_arms < 0:
            raise ValueError("minus_one_arms must be nonnegative")

    @property
    def arm_count(self) -> int:
        return 3 + self.minus_one_arms

    def arm_weights(self, j: int) -> tuple[int, ...]:
        """Weights of arm j (1-based); arms beyond the third are single (-1) spheres."""
        if not 1 <= j <= self.arm_count:
            raise ValueError(f"cap has no arm {j}")
        if j <= 3:
            return self.essential_arms[j - 1]
        return (-1,)

    @property
    def component_count(self) -> int:
        return 1 + sum(len(a) for a in self.essential_arms) + self.minus_one_arms

    def as_graph(self) -> PlumbingGraph:
        arms = tuple(self.essential_arms) + ((-1,),) * self.minus_one_arms
        return PlumbingGraph(1, arms, shape="star")


def build_concave_cap(s: SeifertData) -> ConcaveCap:
    """Concave cap of Y; requires b >= 4 so the (b-4) single (-1) arms exist."""
    if s.b < 4:
        raise ValueError(f"b={s.b}: a concave cap of this shape requires b >= 4")
    arms = tuple(tuple(-e for e in dual_expand(a, b)) for a, b in s.arms)
    return ConcaveCap(arms, s.b - 4)


@dataclass(frozen=True)
class BlowdownTemplate:
    """A rational-blowdown configuration shape with its realized weight graph."""

    family: str  # "C_p" | "C_pq" | "Gamma_pqr"
    params: tuple[int, ...]
    graph: PlumbingGraph

    def weights(self) -> tuple[int, ...]:
        return self.graph.weights()

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.graph.edges()

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    def label(self) -> str:
        return f"{self.family}({','.join(str(p) for p in self.params)})"


def c_pq(p: int, q: int) -> BlowdownTemplate:
    """Linear chain bounding L(p^2, pq-1): weights = negated HJ word of p^2/(pq-1)."""
    if p < 2 or not 0 < q < p or gcd(p, q) != 1:
        raise ValueError(f"C_(p,q) needs p >= 2 and 0 < q < p coprime, got ({p},{q})")
    word = hj_expand(p * p, p * q - 1)
    family = "C_p" if q == 1 else "C_pq"
    params = (p,) if q == 1 else (p, q)
    return BlowdownTemplate(family, params, linear_graph(tuple(-e for e in word)))


def c_p(p: int) -> BlowdownTemplate:
    """Fintushel-Stern chain: -(p+2) followed by p-2 spheres of weight -2."""
    t = c_pq(p, 1)
    assert t.weights() == (-(p + 2),) + (-2,) * (p - 2)
    return t


def gamma_pqr(p: int, q: int, r: int) -> BlowdownTemplate:
    """Three-legged blowdown graph: center -4, legs of (-2)-chains ending in
    -(p+3), -(q+3), -(r+3) arranged cyclically."""
    if p < 0 or q < 0 or r < 0:
        raise ValueError("Gamma_(p,q,r) needs nonnegative parameters")
    legs = (
        (-2,) * q + (-(p + 3),),
        (-2,) * r + (-(q + 3),),
        (-2,) * p + (-(r + 3),),
    )
    return BlowdownTemplate("Gamma_pqr", (p, q, r), PlumbingGraph(-4, legs, shape="star"))


def canonical_gamma_params(p: int, q: int, r: int) -> tuple[int, int, int]:
    """Lexicographically least cyclic rotation; Gamma_(p,q,r) = Gamma_(q,r,p)."""
    return min(((p, q, r), (q, r, p), (r, p, q)))


def sample_seifert(rng, max_alpha: int = 30, min_b: int = 3, max_b: int = 8) -> SeifertData:
    """Random valid SeifertData for property tests."""
    arms = []
    while len(arms) < 3:
        alpha = rng.randint(2, max_alpha)
        beta = rng.randint(1, alpha - 1)
        if gcd(alpha, beta) == 1:
            arms.append((alpha, beta))
    return SeifertData(rng.randint(min_b, max_b), tuple(arms))


def graph_to_dot(g: PlumbingGraph, name: str = "plumbing") -> str:
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for i, w in enumerate(g.weights()):
        lines.append(f'  v{i} [label="{w:+d}"];')
    for i, j in g.edges():
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_text(g: PlumbingGraph) -> str:
    parts = [f"center {g.central_weight:+d}"]
    for k, arm in enumerate(g.arms, start=1):
        if arm:
            parts.append(f"arm {k}: " + " ".join(str(w) for w in arm))
    return "; ".join(parts)


def all_seifert_with_small_arms(max_alpha: int):
    """All coprime slope pairs with alpha <= max_alpha, for exhaustive tests."""
    return [
        (alpha, beta)
        for alpha in range(2, max_alpha + 1)
        for beta in range(1, alpha)
        if gcd(alpha, beta) == 1
    ]


def seifert_value(s: SeifertData) -> Fraction:
    """Orbifold Euler-number style invariant -b + sum(beta_i/alpha_i); negative for b >= 3."""
    return -s.b + sum(Fraction(b, a) for a, b in s.arms)
