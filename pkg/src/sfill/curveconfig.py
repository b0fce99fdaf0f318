"""Curve configurations: homology-labeled strands and blow-up/blow-down moves.

A configuration holds the strands of a concave cap K (central +1 line,
essential arm chains, single (-1) arms) together with the exceptional
spheres accumulated while blowing up from a complex line arrangement.
Exceptional strands that cross a single cap component are retained in the
data even though drawings usually suppress them; dropping them would lose
the blow-down structure.

Blow-ups are purely homological here: every intersection is transverse with
multiplicity equal to the pairing, blowing up a point subtracts the fresh
basis class from the strands through it and adds the exceptional strand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .homlattice import HClass, HomologicalData, adjunction_genus0, pair
from .plumbing import ConcaveCap, SeifertData, build_concave_cap

CENTRAL = "central"
EXCEPTIONAL = "exceptional"
LINE = "line"  # pre-cap projective line, only in arrangements and seeds


@dataclass(frozen=True)
class Role:
    kind: str
    arm: int = 0
    pos: int = 0

    def __str__(self) -> str:
        if self.kind == "cap":
            return f"cap:{self.arm}:{self.pos}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "Role":
        if text.startswith("cap:"):
            _, arm, pos = text.split(":")
            return cls("cap", int(arm), int(pos))
        if text in (CENTRAL, EXCEPTIONAL, LINE):
            return cls(text)
        raise ValueError(f"unknown strand role {text!r}")


def central_role() -> Role:
    return Role(CENTRAL)


def cap_role(arm: int, pos: int) -> Role:
    return Role("cap", arm, pos)


def exceptional_role() -> Role:
    return Role(EXCEPTIONAL)


@dataclass(frozen=True)
class Strand:
    hclass: HClass
    role: Role

    @property
    def square(self) -> int:
        return self.hclass.square


@dataclass(frozen=True)
class CurveConfiguration:
    n: int
    strands: tuple[Strand, ...]
    cap: ConcaveCap | None = None
    seifert: SeifertData | None = None
    variant: str | None = None  # seed bookkeeping for line arrangements

    def __post_init__(self):
        object.__setattr__(self, "strands", tuple(self.strands))
        for s in self.strands:
            if s.hclass.n != self.n:
                raise ValueError("strand ambient size disagrees with configuration")

    def classes(self) -> tuple[HClass, ...]:
        return tuple(s.hclass for s in self.strands)

    def strand(self, role: Role) -> Strand:
        for s in self.strands:
            if s.role == role:
                return s
        raise KeyError(f"no strand with role {role}")

    def data(self) -> HomologicalData:
        """Cap classes in slot order plus loose exceptional classes."""
        if self.cap is None:
            raise ValueError("configuration carries no cap reference")
        central = self.strand(central_role()).hclass
        arms = []
        for j in range(1, 4):
            weights = self.cap.arm_weights(j)
            arms.append(tuple(self.strand(cap_role(j, i + 1)).hclass for i in range(len(weights))))
        minus_one = tuple(
            self.strand(cap_role(j, 1)).hclass for j in range(4, self.cap.arm_count + 1)
        )
        extras = tuple(s.hclass for s in self.strands if s.role.kind == EXCEPTIONAL)
        return HomologicalData(self.n, central, tuple(arms), minus_one, extras)

    # --- serialization -----------------------------------------------------

    def to_json(self) -> str:
        doc = {
            "schema": 1,
            "seifert": str(self.seifert) if self.seifert else None,
            "ambient_N": self.n,
            "strands": [
                {"l": s.hclass.l, "e": list(s.hclass.e), "role": str(s.role)}
                for s in self.strands
            ],
        }
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CurveConfiguration":
        doc = json.loads(text)
        n = doc["ambient_N"]
        strands = tuple(
            Strand(HClass(n, d["l"], tuple(d["e"])), Role.parse(d["role"]))
            for d in doc["strands"]
        )
        seifert = SeifertData.parse(doc["seifert"]) if doc.get("seifert") else None
        cap = build_concave_cap(seifert) if seifert else None
        return cls(n, strands, cap=cap, seifert=seifert)

    def to_dot(self, name: str = "configuration") -> str:
        lines = [f"graph {name} {{", "  node [shape=box];"]
        for i, s in enumerate(self.strands):
            color = ' color=red' if s.role.kind == EXCEPTIONAL else ""
            lines.append(f'  s{i} [label="{s.hclass} ({s.square:+d}) {s.role}"{color}];')
        for i in range(len(self.strands)):
            for j in range(i + 1, len(self.strands)):
                p = pair(self.strands[i].hclass, self.strands[j].hclass)
                if p > 0:
                    label = f' [label="{p}"]' if p > 1 else ""
                    lines.append(f"  s{i} -- s{j}{label};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def config_from_data(
    data: HomologicalData, cap: ConcaveCap, seifert: SeifertData | None = None
) -> CurveConfiguration:
    """Configuration with the given cap classes in their slots; extra classes
    become exceptional strands."""
    strands = [Strand(data.central, central_role())]
    for j, arm in enumerate(data.arms, start=1):
        for i, h in enumerate(arm, start=1):
            strands.append(Strand(h, cap_role(j, i)))
    for j, h in enumerate(data.minus_one, start=4):
        strands.append(Strand(h, cap_role(j, 1)))
    for h in data.extras:
        strands.append(Strand(h, exceptional_role()))
    return CurveConfiguration(data.n, tuple(strands), cap=cap, seifert=seifert)


# --- line arrangements and seed states ---------------------------------------

COMMON_POINT = "common_point"
GENERIC_LINE = "generic_line"


def line_arrangement(b: int, variant: str) -> CurveConfiguration:
    """The two arrangements of b projective lines behind every configuration.

    ``common_point``: the central line plus b-1 lines through one shared point
    off the central line.  ``generic_line``: central line, b-2 concurrent
    lines, and one line in general position.  At ambient N = 0 all classes
    are l; the concurrency is recorded in the variant tag and realized by the
    canonical first blow-ups of :func:`seed_configuration`.
    """
    if b < 4:
        raise ValueError(f"b={b}: line arrangements are built for b >= 4")
    if variant not in (COMMON_POINT, GENERIC_LINE):
        raise ValueError(f"unknown arrangement variant {variant!r}")
    line = HClass(0, 1, ())
    strands = [Strand(line, central_role())]
    strands += [Strand(line, Role(LINE))] * (b - 1)
    return CurveConfiguration(0, tuple(strands), variant=variant)


def seed_configuration(b: int, variant: str, seifert: SeifertData | None = None) -> CurveConfiguration:
    """Canonical post-blow-up seed states the enumeration starts from.

    common_point: one blow-up at the shared point; the b-1 lines become
    square-0 strands all crossed by the exceptional e1.

    generic_line: blow up the point shared by the b-2 concurrent lines (e1),
    then each crossing of the generic line c with them; c ends at square 3-b,
    each concurrent line at -1 crossed by e1 and by its own fan strand.
    """
    if b < 4:
        raise ValueError(f"b={b}: seeds are built for b >= 4")
    cap = build_concave_cap(seifert) if seifert else None
    if variant == COMMON_POINT:
        n = 1
        root = HClass(n, 1, (1,))
        strands = [Strand(HClass(n, 1, (0,)), central_role())]
        strands += [Strand(root, Role(LINE)) for _ in range(b - 1)]
        strands.append(Strand(HClass(n, 0, (-1,)), exceptional_role()))
        return CurveConfiguration(n, tuple(strands), cap=cap, seifert=seifert, variant=variant)
    if variant == GENERIC_LINE:
        n = b - 1  # e1 at the shared point, one fan class per crossing of c

        def h(l, **cols):
            e = [0] * n
            for name, val in cols.items():
                e[int(name[1:])] = val
            return HClass(n, l, tuple(e))

        strands = [Strand(h(1), central_role())]
        # the generic line c, separated from every concurrent line
        c_e = [0] + [1] * (n - 1)
        strands.append(Strand(HClass(n, 1, tuple(c_e)), Role(LINE)))
        for i in range(1, n):
            strands.append(Strand(h(1, c0=1, **{f"c{i}": 1}), Role(LINE)))
        strands.append(Strand(h(0, c0=-1), exceptional_role()))
        for i in range(1, n):
            strands.append(Strand(h(0, **{f"c{i}": -1}), exceptional_role()))
        return CurveConfiguration(n, tuple(strands), cap=cap, seifert=seifert, variant=variant)
    raise ValueError(f"unknown arrangement variant {variant!r}")


# --- moves -------------------------------------------------------------------


def _extend(h: HClass, hit: bool) -> HClass:
    return HClass(h.n + 1, h.l, h.e + ((1,) if hit else (0,)))


def blow_up(c: CurveConfiguration, i: int, j: int | None = None) -> CurveConfiguration:
    """Blow up at an intersection of strands i and j, or a generic point of i.

    The touched strands get the fresh basis class subtracted and a new
    exceptional strand is appended; all other pairings are untouched.
    """
    if not 0 <= i < len(c.strands) or (j is not None and not 0 <= j < len(c.strands)):
        raise ValueError("strand index out of range")
    if j is not None:
        if i == j:
            raise ValueError("an intersection site needs two distinct strands")
        if pair(c.strands[i].hclass, c.strands[j].hclass) < 1:
            raise ValueError("strands do not intersect; cannot blow up their intersection")
    hit = {i} if j is None else {i, j}
    strands = [Strand(_extend(s.hclass, k in hit), s.role) for k, s in enumerate(c.strands)]
    new = HClass(c.n + 1, 0, (0,) * c.n + (-1,))
    strands.append(Strand(new, exceptional_role()))
    return replace(c, n=c.n + 1, strands=tuple(strands))


def blow_down(c: CurveConfiguration, i: int) -> CurveConfiguration:
    """Contract strand i; inverse of :func:`blow_up`.

    The strand must be a square -1 pure basis class e_k whose index k meets
    every other strand with coefficient 0 or 1; those through it gain +1 to
    their square and the ambient basis drops the column.
    """
    if not 0 <= i < len(c.strands):
        raise ValueError("strand index out of range")
    x = c.strands[i].hclass
    if x.square != -1 or x.l != 0:
        raise ValueError("only square -1 classes with no l part can be blown down")
    cols = [k for k, v in enumerate(x.e) if v != 0]
    if len(cols) != 1 or x.e[cols[0]] != -1:
        raise ValueError("strand class is not a pure basis class; not blow-downable")
    k = cols[0]
    for s in c.strands:
        if s is not c.strands[i] and s.hclass.e[k] not in (0, 1):
            raise ValueError("another strand meets the blow-down class with multiplicity")
    strands = []
    for idx, s in enumerate(c.strands):
        if idx == i:
            continue
        e = s.hclass.e[:k] + s.hclass.e[k + 1 :]
        strands.append(Strand(HClass(c.n - 1, s.hclass.l, e), s.role))
    return replace(c, n=c.n - 1, strands=tuple(strands))


# --- verification -------------------------------------------------------------


@dataclass(frozen=True)
class ConfigReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "configuration verified: no violations"
        return "\n".join(f"violation: {v}" for v in self.violations)


def verify_configuration(c: CurveConfiguration) -> ConfigReport:
    """Check squares against roles, adjunction, the cap star graph, the
    curve-configuration degree condition, and pairing non-negativity."""
    v: list[str] = []
    centrals = [s for s in c.strands if s.role.kind == CENTRAL]
    if len(centrals) != 1:
        v.append(f"expected exactly one central strand, found {len(centrals)}")
        return ConfigReport(tuple(v))
    central = centrals[0]
    if central.hclass.l != 1 or any(central.hclass.e):
        v.append(f"central strand has class {central.hclass}, expected l")

    for idx, s in enumerate(c.strands):
        if not adjunction_genus0(s.hclass):
            v.append(f"strand {idx} ({s.hclass}) violates genus-0 adjunction")
        if s.role.kind == EXCEPTIONAL and s.square != -1:
            v.append(f"exceptional strand {idx} has square {s.square}")
        if s.square <= -2 and s.role.kind != "cap":
            v.append(f"strand {idx} ({s.hclass}) has square <= -2 but is not a cap component")

    for i in range(len(c.strands)):
        for j in range(i + 1, len(c.strands)):
            p = pair(c.strands[i].hclass, c.strands[j].hclass)
            if p < 0:
                v.append(f"strands {i} and {j} have negative pairing {p}")

    if c.cap is not None:
        cap = c.cap
        slots = {}
        for s in c.strands:
            if s.role.kind == "cap":
                if (s.role.arm, s.role.pos) in slots:
                    v.append(f"duplicate cap slot {s.role}")
                slots[(s.role.arm, s.role.pos)] = s
        for j in range(1, cap.arm_count + 1):
            weights = cap.arm_weights(j)
            for i, w in enumerate(weights, start=1):
                s = slots.pop((j, i), None)
                if s is None:
                    v.append(f"cap slot arm {j} position {i} is not realized")
                    continue
                if s.square != w:
                    v.append(f"cap component arm {j} pos {i} has square {s.square}, cap weight {w}")
                want_central = 1 if i == 1 else 0
                if pair(central.hclass, s.hclass) != want_central:
                    v.append(f"arm {j} pos {i} pairs {pair(central.hclass, s.hclass)} with the central line")
        for extra in slots:
            v.append(f"cap slot {extra} does not exist in this cap")
        # star graph: consecutive arm components pair 1, all other cap pairs 0
        cap_strands = [(r, s) for s in c.strands for r in [s.role] if r.kind == "cap"]
        for a in range(len(cap_strands)):
            for b in range(a + 1, len(cap_strands)):
                ra, sa = cap_strands[a]
                rb, sb = cap_strands[b]
                p = pair(sa.hclass, sb.hclass)
                adjacent = ra.arm == rb.arm and abs(ra.pos - rb.pos) == 1
                want = 1 if adjacent else 0
                if p != want:
                    v.append(
                        f"cap components {ra} and {rb} pair {p}, star graph wants {want}"
                    )
    return ConfigReport(tuple(v))
