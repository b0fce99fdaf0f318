"""Exhaustive search for the curve configurations realizing a concave cap.

The search starts from the two canonical seed states (one blow-up of the
common-point arrangement; the fan-resolved state of the generic-line
arrangement) and applies the three admissible kinds of blow-up uniformly:

* a generic point of a cap-arm strand (tick),
* the intersection point of two adjacent components of one arm (insert),
* the intersection of an exceptional strand with a cap-arm strand (cross),

plus the bookkeeping step of committing an exceptional strand that crosses
the current tip of an arm as that arm's next component (adopt).  Terminal
states are those whose arm chains realize the cap weights exactly with all
remaining strands of square -1 and no stray intersections among cap
components.  Results are deduplicated by basis-permutation isometry of the
cap classes; the loose strands of the first route found are kept as the
representative configuration.

Squares only ever decrease, which gives sharp pruning: every strand is
bounded below by the deepest cap slot it could still occupy, and an exact
move-budget window follows from counting how much total square each kind of
blow-up destroys.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curveconfig import (
    COMMON_POINT,
    GENERIC_LINE,
    CurveConfiguration,
    Strand,
    cap_role,
    central_role,
    exceptional_role,
)
from .homlattice import HClass, HomologicalData, isometry_equivalent
from .plumbing import ConcaveCap, SeifertData, build_concave_cap, build_star_graph


class BudgetExhausted(RuntimeError):
    """The search ran out of its state budget before completing."""


@dataclass(frozen=True)
class SearchBudget:
    max_ambient_n: int | None = None
    max_branches: int = 2_000_000


def ambient_bound(s: SeifertData) -> int:
    """N = b2(minimal resolution) + b2(cap) - 1, the largest ambient needed."""
    gamma = build_star_graph(s)
    cap = build_concave_cap(s)
    return gamma.vertex_count + cap.component_count - 1


# --- search state -------------------------------------------------------------


class _State:
    __slots__ = ("n", "rows", "members", "frozen")

    def __init__(self, n, rows, members, frozen):
        self.n = n
        self.rows = rows  # tuple of (l, e-tuple); row 0 is the central line
        self.members = members  # tuple of tuples of strand ids, one per arm slot
        self.frozen = frozen  # ids that must stay loose at square -1

    def committed(self):
        return [m for ch in self.members for m in ch]

    def loose(self):
        inside = {0}
        inside.update(self.committed())
        return [i for i in range(len(self.rows)) if i not in inside]


def _row_pair(a, b):
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1], b[1]))


def _sq(row):
    return row[0] * row[0] - sum(c * c for c in row[1])


def _ranks(items):
    order = {v: i for i, v in enumerate(sorted(set(items)))}
    return [order[v] for v in items]


def _state_key(st: _State):
    """Canonical-enough serialization: states with equal keys are isomorphic.

    Columns are relabeled by an iteratively refined incidence signature
    (ties broken by current index, which can only split isomorphic states,
    never merge distinct ones); loose rows are sorted after relabeling.
    """
    committed = [0] + st.committed()
    commit_set = set(committed)
    loose = [i for i in range(len(st.rows)) if i not in commit_set]
    rows = st.rows
    n = st.n
    base = [tuple(rows[i][1][c] for i in committed) for c in range(n)]
    col_rank = _ranks(base)
    for _ in range(3):
        loose_sig = [
            (
                tuple(sorted((col_rank[c], rows[i][1][c]) for c in range(n) if rows[i][1][c])),
                i in st.frozen,
            )
            for i in loose
        ]
        loose_rank = _ranks(loose_sig)
        new_sig = [
            (
                base[c],
                tuple(sorted((loose_rank[k], rows[loose[k]][1][c]) for k in range(len(loose)) if rows[loose[k]][1][c])),
            )
            for c in range(n)
        ]
        new_rank = _ranks(new_sig)
        if new_rank == col_rank:
            break
        col_rank = new_rank
    order = sorted(range(n), key=lambda c: (col_rank[c], c))

    def relab(i):
        l, e = rows[i]
        return (l, tuple(e[c] for c in order))

    return (
        st.n,
        tuple(len(ch) for ch in st.members),
        tuple(relab(i) for i in committed),
        tuple(sorted((relab(i), i in st.frozen) for i in loose)),
    )


class _Search:
    def __init__(self, targets, maxn, max_branches):
        self.targets = targets  # tuple of tuples of positive ints, one per slot
        self.maxn = maxn
        self.max_branches = max_branches
        self.sum_targets = sum(sum(t) for t in targets)
        self.len_targets = sum(len(t) for t in targets)
        self.visited = set()
        self.expanded = 0
        self.terminals = []  # (HomologicalData, state) in encounter order

    # -- state predicates --

    def _budget_window(self, st):
        total = sum(_sq(r) for r in st.rows)
        c = total + len(st.rows) + self.sum_targets - self.len_targets - 2
        return c

    def _feasible(self, st):
        c = self._budget_window(st)
        if c < 0 or c > 2 * (self.maxn - st.n):
            return False
        open_max = 0
        for k, ch in enumerate(st.members):
            t = self.targets[k]
            if len(ch) > len(t):
                return False
            slack = len(t) - len(ch)
            if slack:
                open_max = max(open_max, max(t[len(ch):]))
            for idx, sid in enumerate(ch):
                window = t[idx : idx + slack + 1]
                if -_sq(st.rows[sid]) > max(window):
                    return False
        for i in st.loose():
            sq = _sq(st.rows[i])
            if sq <= -2 and (i in st.frozen or -sq > open_max):
                return False
        return True

    def _terminal(self, st):
        for k, ch in enumerate(st.members):
            t = self.targets[k]
            if len(ch) != len(t):
                return False
            for idx, sid in enumerate(ch):
                if _sq(st.rows[sid]) != -t[idx]:
                    return False
        for i in st.loose():
            if _sq(st.rows[i]) != -1:
                return False
        committed = [(k, idx, sid) for k, ch in enumerate(st.members) for idx, sid in enumerate(ch)]
        for a in range(len(committed)):
            ka, ia, sa = committed[a]
            for b in range(a + 1, len(committed)):
                kb, ib, sb = committed[b]
                p = _row_pair(st.rows[sa], st.rows[sb])
                want = 1 if (ka == kb and abs(ia - ib) == 1) else 0
                if p != want:
                    return False
        return True

    # -- moves --

    def _moves(self, st):
        mv = []
        rows = st.rows
        loose = st.loose()
        committed = st.committed()
        commit_chain = {}
        for k, ch in enumerate(st.members):
            for idx, sid in enumerate(ch):
                commit_chain[sid] = (k, idx)
        for k, ch in enumerate(st.members):
            t = self.targets[k]
            if len(ch) < len(t):
                tip = ch[-1]
                for e in loose:
                    if e in st.frozen:
                        continue
                    if _row_pair(rows[e], rows[tip]) == 1:
                        mv.append(("adopt", k, e))
        if st.n < self.maxn:
            for sid in committed:
                mv.append(("tick", sid))
            for k, ch in enumerate(st.members):
                if len(ch) < len(self.targets[k]):
                    for i in range(len(ch) - 1):
                        mv.append(("insert", k, i))
            pool = committed + loose
            for a in range(len(pool)):
                for b in range(a + 1, len(pool)):
                    u, v = pool[a], pool[b]
                    cu, cv = commit_chain.get(u), commit_chain.get(v)
                    if cu is None and cv is None:
                        continue  # both loose: never needed, see module docstring
                    if cu is not None and cv is not None and cu[0] == cv[0] and abs(cu[1] - cv[1]) == 1:
                        continue  # adjacent in one chain: that is the insert move
                    if _row_pair(rows[u], rows[v]) >= 1:
                        mv.append(("cross", min(u, v), max(u, v)))
        return mv

    def _apply(self, st, move):
        if move[0] == "adopt":
            _, k, e = move
            members = tuple(
                ch + (e,) if i == k else ch for i, ch in enumerate(st.members)
            )
            return _State(st.n, st.rows, members, st.frozen)
        hit: tuple[int, ...]
        members = st.members
        if move[0] == "tick":
            hit = (move[1],)
        elif move[0] == "cross":
            hit = (move[1], move[2])
        else:  # insert between positions i, i+1 of chain k
            _, k, i = move
            ch = st.members[k]
            hit = (ch[i], ch[i + 1])
        new_id = len(st.rows)
        rows = []
        for idx, (l, e) in enumerate(st.rows):
            rows.append((l, e + ((1,) if idx in hit else (0,))))
        rows.append((0, (0,) * st.n + (-1,)))
        if move[0] == "insert":
            _, k, i = move
            ch = st.members[k]
            members = tuple(
                ch[: i + 1] + (new_id,) + ch[i + 1 :] if j == k else c
                for j, c in enumerate(st.members)
            )
        return _State(st.n + 1, tuple(rows), members, st.frozen)

    # -- driver --

    def run(self, seeds):
        for st in seeds:
            if self._feasible(st):
                self._dfs(st)

    def _dfs(self, st):
        key = _state_key(st)
        if key in self.visited:
            return
        self.visited.add(key)
        self.expanded += 1
        if self.expanded > self.max_branches:
            raise BudgetExhausted(f"search exceeded {self.max_branches} states")
        if self._terminal(st):
            self.terminals.append(st)
            return
        for move in self._moves(st):
            child = self._apply(st, move)
            if self._feasible(child):
                self._dfs(child)


# --- seeds --------------------------------------------------------------------


def _slot_targets(cap: ConcaveCap):
    ess = tuple(tuple(-w for w in arm) for arm in cap.essential_arms)
    return ess + ((1,),) * cap.minus_one_arms


def _seed_common(b: int, targets) -> _State:
    rows = [(1, (0,))]
    rows += [(1, (1,))] * (b - 1)
    rows.append((0, (-1,)))
    members = tuple((i + 1,) for i in range(b - 1))
    return _State(1, tuple(rows), members, frozenset())


def _seed_generic(b: int, targets, c_slot: int, frozen_second_fan: bool) -> _State:
    n = b - 1
    zero = (0,) * n

    def vec(cols):
        e = list(zero)
        for c, v in cols:
            e[c] = v
        return tuple(e)

    rows = [(1, zero)]
    rows.append((1, vec([(i, 1) for i in range(1, n)])))  # c, id 1
    for i in range(1, n):
        rows.append((1, vec([(0, 1), (i, 1)])))  # M_i, id 1 + i
    rows.append((0, vec([(0, -1)])))  # E_P, id b
    for i in range(1, n):
        rows.append((0, vec([(i, -1)])))  # fan to M_i, id b + i
    slots: list[tuple[int, ...]] = [()] * len(targets)
    slots[c_slot] = (1,)
    other = [k for k in range(3) if k != c_slot]
    slots[other[0]] = (2,)
    slots[other[1]] = (3,)
    for j in range(3, len(targets)):
        slots[j] = (j + 1,)
    frozen = frozenset({b + 2}) if frozen_second_fan else frozenset()
    return _State(n, tuple(rows), tuple(slots), frozen)


def _seed_states(s: SeifertData, cap: ConcaveCap, seed_b_only=False, frozen_second_fan=False):
    targets = _slot_targets(cap)
    seeds = []
    if not seed_b_only:
        seeds.append(_seed_common(s.b, targets))
    seen_slots = set()
    for c_slot in range(3):
        t = targets[c_slot]
        if t in seen_slots:
            continue  # equal-weight slots are identified by arm symmetry
        seen_slots.add(t)
        seeds.append(_seed_generic(s.b, targets, c_slot, frozen_second_fan))
    return targets, seeds


# --- public operations ----------------------------------------------------------


def _state_to_config(st: _State, cap: ConcaveCap, s: SeifertData) -> CurveConfiguration:
    n = st.n
    strands = [Strand(HClass(n, *st.rows[0]), central_role())]
    for k, ch in enumerate(st.members):
        for idx, sid in enumerate(ch):
            strands.append(Strand(HClass(n, *st.rows[sid]), cap_role(k + 1, idx + 1)))
    for i in st.loose():
        strands.append(Strand(HClass(n, *st.rows[i]), exceptional_role()))
    return CurveConfiguration(n, tuple(strands), cap=cap, seifert=s)


def _state_data(st: _State, cap: ConcaveCap) -> HomologicalData:
    n = st.n
    arms = tuple(
        tuple(HClass(n, *st.rows[sid]) for sid in st.members[k]) for k in range(3)
    )
    minus_one = tuple(HClass(n, *st.rows[ch[0]]) for ch in st.members[3:])
    extras = tuple(HClass(n, *st.rows[i]) for i in st.loose())
    return HomologicalData(n, HClass(n, *st.rows[0]), arms, minus_one, extras)


def _dedup(states, cap):
    reps = []
    for st in states:
        d = _state_data(st, cap)
        if not any(d.n == r.n and isometry_equivalent(d, r) for r, _ in reps):
            reps.append((d, st))
    return reps


def enumerate_fillings(s: SeifertData, budget: SearchBudget | None = None) -> list[CurveConfiguration]:
    """All curve configurations realizing the cap of Y, up to cap isometry.

    Raises :class:`BudgetExhausted` when the state budget runs out, which is
    distinct from an empty result.
    """
    budget = budget or SearchBudget()
    cap = build_concave_cap(s)
    maxn = budget.max_ambient_n if budget.max_ambient_n is not None else ambient_bound(s)
    if maxn < cap.component_count - 1:
        raise ValueError("ambient budget below the cap component count")
    targets, seeds = _seed_states(s, cap)
    search = _Search(targets, maxn, budget.max_branches)
    search.run(seeds)
    reps = _dedup(search.terminals, cap)
    return [_state_to_config(st, cap, s) for _, st in reps]


def count_fillings_without_second_fan(s: SeifertData, budget: SearchBudget | None = None) -> int:
    """Fillings reachable from the generic-line seed without ever committing
    the fan of the second concurrent line as a cap component.

    These are exactly the configurations covered by the disjoint-subgraph
    decomposition: the region spanned by the generic line, the first
    concurrent line and the shared exceptional strands builds the cap of one
    linear subgraph, the remaining essential arm builds the other.
    """
    budget = budget or SearchBudget()
    cap = build_concave_cap(s)
    maxn = budget.max_ambient_n if budget.max_ambient_n is not None else ambient_bound(s)
    targets, seeds = _seed_states(s, cap, seed_b_only=True, frozen_second_fan=True)
    search = _Search(targets, maxn, budget.max_branches)
    search.run(seeds)
    return len(_dedup(search.terminals, cap))


def minimal_resolution_config(s: SeifertData) -> CurveConfiguration:
    """Configuration of the minimal resolution: standard blow-ups only.

    Each arm is deepened at generic points of its current last component,
    adopting the first tick of each component as the next one; no exceptional
    strand is ever blown up, so the shared strand over the common point stays
    a pristine (-1) sphere crossing every arm root.
    """
    cap = build_concave_cap(s)
    targets = _slot_targets(cap)
    b = s.b
    rows = [[1, [0]], *[[1, [1]] for _ in range(b - 1)], [0, [-1]]]
    members = [[i + 1] for i in range(b - 1)]

    def tick(i):
        for r in rows:
            r[1].append(0)
        rows[i][1][-1] = 1
        rows.append([0, [0] * (len(rows[i][1]) - 1) + [-1]])
        return len(rows) - 1

    for k, t in enumerate(targets):
        current = members[k][0]
        born = 0  # square of the component being deepened
        for pos, a in enumerate(t):
            proto = None
            for _ in range(a - born):
                tick_id = tick(current)
                if proto is None:
                    proto = tick_id
            if pos + 1 < len(t):
                assert proto is not None
                members[k].append(proto)
                current = proto
                born = 1
    n = len(rows[0][1])
    st = _State(
        n,
        tuple((l, tuple(e)) for l, e in rows),
        tuple(tuple(ch) for ch in members),
        frozenset(),
    )
    assert _Search(targets, n, 10)._terminal(st)
    return _state_to_config(st, cap, s)
