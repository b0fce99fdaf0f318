"""Rational blowdown: embedded template chains and the relation graph.

An embedding of a blowdown template in a filling is a tuple of classes, one
per template vertex, realizing the template's intersection matrix exactly,
orthogonal to every cap class, and each satisfying genus-0 adjunction (the
classes are represented by symplectic spheres, so homological orthogonality
to the cap is geometric orthogonality).

Blowing the chain down replaces the ambient CP^2 # N by CP^2 # (N - k),
where k is the template vertex count.  On homology this is an isometric
re-expression: the orthogonal complement of the chain splits off the central
line, its negative definite part embeds into the new exceptional lattice
respecting the canonical class, and the cap classes are pushed through.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .cfrac import CFWord, eval_cf
from .curveconfig import CurveConfiguration, Strand, cap_role, central_role, verify_configuration
from .enumeration import minimal_resolution_config
from .homlattice import (
    HClass,
    HomologicalData,
    adjunction_genus0,
    canonical_class,
    gram_matrix,
    integer_kernel,
    isometry_equivalent,
    pair,
    pairing_vector,
    short_vectors,
)
from .plumbing import BlowdownTemplate, c_pq, canonical_gamma_params, gamma_pqr

ALL_FAMILIES = ("C_p", "C_pq", "Gamma_pqr")


@dataclass(frozen=True)
class ChainEmbedding:
    template: BlowdownTemplate
    classes: tuple[HClass, ...]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        weights = self.template.weights()
        if len(self.classes) != len(weights):
            raise ValueError("one class per template vertex is required")


@dataclass(frozen=True)
class BlowdownEdge:
    source: int
    target: int
    template: BlowdownTemplate


@dataclass(frozen=True)
class BlowdownGraph:
    edges: tuple[BlowdownEdge, ...]
    reachable: tuple[bool, ...]
    minimal_resolution: int


def _linear_chain_words(max_len: int) -> list[tuple[int, ...]]:
    """All blowdown-chain weight words of length <= max_len, one per
    reversal pair.

    Every C_(p,q) chain arises from (4) by repeatedly appending a 2 while
    deepening the first entry or prepending a 2 while deepening the last;
    lengths grow by one per step, so the closure is tiny.
    """
    level = {(4,)}
    words = set(level)
    for _ in range(max_len - 1):
        nxt = set()
        for w in level:
            nxt.add((w[0] + 1,) + w[1:] + (2,))
            nxt.add((2,) + w[:-1] + (w[-1] + 1,))
        level = nxt
        words |= level
    out = set()
    for w in words:
        if len(w) <= max_len:
            out.add(min(w, tuple(reversed(w))))
    return sorted(out, key=lambda w: (len(w), w))


def _candidate_templates(rank: int, families, max_p: int | None):
    """Every template that could fit in a complement of the given rank."""
    out = []
    families = set(families if families is not None else ALL_FAMILIES)
    if families & {"C_p", "C_pq"}:
        seen = set()
        for word in _linear_chain_words(rank):
            value = eval_cf(CFWord(word))
            p = isqrt(value.numerator)
            assert p * p == value.numerator, "chain recursion produced a non-blowdown chain"
            q = (value.denominator + 1) // p
            q = min(q, p - q)  # the reversed chain bounds the same lens space
            if (p, q) in seen:
                continue
            seen.add((p, q))
            if max_p is not None and p > max_p:
                continue
            if "C_pq" not in families and q != 1:
                continue
            out.append(c_pq(p, q))
    if "Gamma_pqr" in families:
        for total in range(0, max(0, rank - 4) + 1):
            for p in range(total + 1):
                for q in range(total - p + 1):
                    r = total - p - q
                    if (p, q, r) != canonical_gamma_params(p, q, r):
                        continue
                    out.append(gamma_pqr(p, q, r))
    out.sort(key=lambda t: (t.vertex_count, t.family, t.params))
    return out


def _template_autos(t: BlowdownTemplate):
    """Vertex permutations of the template graph preserving weights."""
    weights = t.weights()
    k = len(weights)
    autos = [tuple(range(k))]
    if t.graph.shape == "linear" or len(t.graph.arms) == 1:
        rev = tuple(reversed(range(k)))
        if tuple(weights[i] for i in rev) == weights:
            autos.append(rev)
        return autos
    # star: permute equal-weight legs around the fixed center
    arms = t.graph.arms
    offsets = []
    k0 = 1
    for arm in arms:
        offsets.append(list(range(k0, k0 + len(arm))))
        k0 += len(arm)
    for perm in itertools.permutations(range(len(arms))):
        if perm == tuple(range(len(arms))):
            continue
        if all(arms[perm[i]] == arms[i] for i in range(len(arms))):
            mapping = [0] * k
            for i in range(len(arms)):
                for a, b in zip(offsets[i], offsets[perm[i]]):
                    mapping[a] = b
            autos.append(tuple(mapping))
    return autos


def find_blowdown_embeddings(
    config: CurveConfiguration | HomologicalData,
    families=None,
    max_p: int | None = None,
) -> list[ChainEmbedding]:
    """All template embeddings orthogonal to the cap of the configuration.

    The search enumerates lattice vectors of each needed square in the
    orthogonal complement of the cap (negative definite since the cap spans
    the positive direction), keeps those satisfying sphere adjunction, and
    assembles them along the template tree; embeddings equal up to a
    template automorphism are reported once.
    """
    data = config.data() if isinstance(config, CurveConfiguration) else config
    cap = data.cap_classes()
    basis = _complement_basis(cap, data.n)
    rank = len(basis)
    if rank == 0:
        return []
    templates = _candidate_templates(rank, families, max_p)
    if not templates:
        return []
    max_norm = max(-w for t in templates for w in t.weights())
    gram = gram_matrix(basis)
    halves = short_vectors(gram, max_norm)
    by_square: dict[int, list[HClass]] = {}
    for v in halves:
        for sv in (v, tuple(-c for c in v)):
            u = _combine(basis, sv)
            if adjunction_genus0(u):
                by_square.setdefault(u.square, []).append(u)
    for lst in by_square.values():
        lst.sort(key=lambda u: u.vector())
    out = []
    for t in templates:
        out.extend(_embed_template(t, by_square))
    return out


def _complement_basis(classes, n):
    rows = [pairing_vector(c) for c in classes]
    return [HClass(n, v[0], tuple(v[1:])) for v in integer_kernel(rows, n + 1)]


def _combine(basis, coords) -> HClass:
    n = basis[0].n
    l = sum(c * b.l for c, b in zip(coords, basis))
    e = tuple(sum(c * b.e[i] for c, b in zip(coords, basis)) for i in range(n))
    return HClass(n, l, e)


def _embed_template(t: BlowdownTemplate, by_square) -> list[ChainEmbedding]:
    weights = t.weights()
    edges = set(t.edges())
    autos = _template_autos(t)
    chosen: list[HClass] = []
    found = []

    def rec(k: int):
        if k == len(weights):
            found.append(tuple(chosen))
            return
        for u in by_square.get(weights[k], ()):
            ok = True
            for j in range(k):
                want = 1 if (j, k) in edges or (k, j) in edges else 0
                if pair(chosen[j], u) != want:
                    ok = False
                    break
            if ok:
                chosen.append(u)
                rec(k + 1)
                chosen.pop()

    rec(0)
    seen = set()
    out = []
    for emb in found:
        key = min(tuple(emb[i].vector() for i in auto) for auto in autos)
        if key in seen:
            continue
        seen.add(key)
        out.append(ChainEmbedding(t, emb))
    return out


# --- the lattice substitution ---------------------------------------------------


def rational_blowdown(config: CurveConfiguration, emb: ChainEmbedding) -> CurveConfiguration:
    """Replace the embedded chain by a rational ball: re-express the cap in
    CP^2 # (N - k) preserving all pairings and adjunction.

    Raises ``ValueError`` if the embedding does not satisfy its invariants in
    this configuration, and ``RuntimeError`` if no re-expression exists (which
    would contradict the invariants).
    """
    data = config.data()
    cap = data.cap_classes()
    chain = emb.classes
    k = len(chain)
    weights = emb.template.weights()
    expected = [[0] * k for _ in range(k)]
    for i in range(k):
        expected[i][i] = weights[i]
    for i, j in emb.template.edges():
        expected[i][j] = expected[j][i] = 1
    if gram_matrix(chain) != expected:
        raise ValueError("embedding classes do not realize the template matrix")
    for u in chain:
        if any(pair(u, c) != 0 for c in cap):
            raise ValueError("embedding is not orthogonal to the cap")
        if not adjunction_genus0(u):
            raise ValueError("embedding class violates adjunction")
    n2 = config.n - k
    central = data.central

    # negative definite part of the complement: orthogonal to chain and central
    rows = [pairing_vector(u) for u in chain] + [pairing_vector(central)]
    w_basis = [HClass(config.n, v[0], tuple(v[1:])) for v in integer_kernel(rows, config.n + 1)]
    assert len(w_basis) == n2, "complement rank must equal the new exceptional count"
    images = _embed_negdef(w_basis, n2)
    if images is None:
        raise RuntimeError("no isometric re-expression found for this blowdown")

    w_cols = [w.vector() for w in w_basis]

    def push(v: HClass) -> HClass:
        a = pair(v, central)
        w_part = [x - a * y for x, y in zip(v.vector(), central.vector())]
        coords = _solve_integer(w_cols, w_part)
        e = tuple(sum(c * images[i][col] for i, c in enumerate(coords)) for col in range(n2))
        return HClass(n2, a, e)

    strands = [Strand(push(central), central_role())]
    cap_obj = config.cap
    pos = 1
    for j in range(1, cap_obj.arm_count + 1):
        for i in range(1, len(cap_obj.arm_weights(j)) + 1):
            strands.append(Strand(push(cap[pos]), cap_role(j, i)))
            pos += 1
    out = CurveConfiguration(n2, tuple(strands), cap=cap_obj, seifert=config.seifert)
    report = verify_configuration(out)
    if not report.ok:
        raise RuntimeError(f"blowdown re-expression failed verification:\n{report}")
    return out


def _embed_negdef(w_basis, n2):
    """Isometric embedding of the lattice spanned by w_basis into the
    exceptional sublattice of CP^2 # n2, matching the canonical class.

    Returns stored-coefficient vectors (length n2) per basis vector, found by
    most-constrained-first backtracking over exact-norm candidates; the first
    solution in the sorted candidate order is the canonical one.
    """
    r = len(w_basis)
    if r == 0:
        return []
    g = gram_matrix(w_basis)
    kk = canonical_class(w_basis[0].n)
    kvals = [pair(kk, w) for w in w_basis]
    order = sorted(range(r), key=lambda i: g[i][i])
    identity = [[-1 if i == j else 0 for j in range(n2)] for i in range(n2)]
    cand_cache: dict[tuple[int, int], list[tuple[int, ...]]] = {}

    def candidates(norm, kval):
        key = (norm, kval)
        if key not in cand_cache:
            vecs = []
            for v in short_vectors(identity, norm):
                for sv in (v, tuple(-c for c in v)):
                    if sum(c * c for c in sv) == norm and sum(sv) == kval:
                        vecs.append(sv)
            cand_cache[key] = sorted(set(vecs))
        return cand_cache[key]

    assign: dict[int, tuple[int, ...]] = {}

    def rec(pos):
        if pos == r:
            return True
        i = order[pos]
        for y in candidates(-g[i][i], kvals[i]):
            ok = True
            for j in assign:
                if -sum(a * b for a, b in zip(y, assign[j])) != g[i][j]:
                    ok = False
                    break
            if ok:
                assign[i] = y
                if rec(pos + 1):
                    return True
                del assign[i]
        return False

    if not rec(0):
        return None
    return [assign[i] for i in range(r)]


def _solve_integer(cols, target):
    """Solve sum(x_i * cols[i]) = target exactly; coordinates must be integral."""
    m = len(target)
    r = len(cols)
    a = [[Fraction(cols[j][i]) for j in range(r)] + [Fraction(target[i])] for i in range(m)]
    row = 0
    pivots = []
    for col in range(r):
        p = next((i for i in range(row, m) if a[i][col] != 0), None)
        if p is None:
            continue
        a[row], a[p] = a[p], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for i in range(m):
            if i != row and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if a[i][r] != 0:
            raise ValueError("target is not in the span")
    x = [Fraction(0)] * r
    for i, col in enumerate(pivots):
        x[col] = a[i][r]
    out = []
    for v in x:
        if v.denominator != 1:
            raise ValueError("non-integral coordinates in a saturated lattice")
        out.append(int(v))
    return out


# --- the relation graph ----------------------------------------------------------


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SFILL_THREADS", "1")))
    except ValueError:
        return 1


def blowdown_graph(configs: list[CurveConfiguration]) -> BlowdownGraph:
    """Relation DAG: an edge A -> B whenever some embedded template in A
    blows down to a configuration isometric to B.  Reachability is reported
    from the minimal resolution entry."""
    if not configs:
        raise ValueError("empty catalog")
    datas = [c.data() for c in configs]
    minres = minimal_resolution_config(configs[0].seifert)
    minres_data = minres.data()
    minres_index = next(
        (i for i, d in enumerate(datas) if d.n == minres_data.n and isometry_equivalent(d, minres_data)),
        None,
    )
    if minres_index is None:
        raise ValueError("catalog does not contain the minimal resolution")

    def edges_from(i):
        found = []
        for emb in find_blowdown_embeddings(configs[i]):
            try:
                out = rational_blowdown(configs[i], emb)
            except RuntimeError:
                continue
            out_data = out.data()
            for j, d in enumerate(datas):
                if d.n == out_data.n and isometry_equivalent(out_data, d):
                    found.append(BlowdownEdge(i, j, emb.template))
                    break
        return found

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(edges_from, range(len(configs))))
    else:
        results = [edges_from(i) for i in range(len(configs))]
    edges = []
    seen = set()
    for chunk in results:
        for e in chunk:
            key = (e.source, e.target, e.template.family, e.template.params)
            if key not in seen:
                seen.add(key)
                edges.append(e)
    reach = [False] * len(configs)
    reach[minres_index] = True
    frontier = [minres_index]
    while frontier:
        nxt = []
        for i in frontier:
            for e in edges:
                if e.source == i and not reach[e.target]:
                    reach[e.target] = True
                    nxt.append(e.target)
        frontier = nxt
    return BlowdownGraph(tuple(edges), tuple(reach), minres_index)


def blowdown_graph_to_dot(graph: BlowdownGraph, labels=None) -> str:
    lines = ["digraph blowdowns {", "  node [shape=box];"]
    n = len(graph.reachable)
    for i in range(n):
        label = labels[i] if labels else f"W{i}"
        marks = []
        if i == graph.minimal_resolution:
            marks.append("minimal resolution")
        if not graph.reachable[i]:
            marks.append("UNREACHABLE")
        suffix = ("\\n" + ", ".join(marks)) if marks else ""
        lines.append(f'  w{i} [label="{label}{suffix}"];')
    for e in graph.edges:
        lines.append(f'  w{e.source} -> w{e.target} [label="{e.template.label()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
