"""Exact intersection-form arithmetic in H_2(CP^2 # N CP^2bar).

Classes are written a*l - sum(c_i * e_i) against the standard basis
(l, e_1, ..., e_N) with pairing diag(+1, -1, ..., -1), so

    pair(x, y) = a_x * a_y - sum(c_{x,i} * c_{y,i}).

The canonical class is K = -3l + sum(e_i); an embedded sphere C satisfies
the genus-0 adjunction equality K.C + C.C = -2.

The module also carries the small amount of integral lattice machinery the
blowdown computations need: kernels of pairing constraints and short-vector
enumeration in negative definite sublattices.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*(l|e(\d+))\s*", re.X)


@dataclass(frozen=True)
class HClass:
    """Integer class l_coeff*l - sum(e_coeffs[i] * e_{i+1}) in H_2(CP^2 # N)."""

    n: int
    l: int
    e: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(int(c) for c in self.e))
        if len(self.e) != self.n:
            raise ValueError(f"expected {self.n} exceptional coefficients, got {len(self.e)}")

    @classmethod
    def parse(cls, text: str, n: int) -> "HClass":
        """Build a class from notation like ``l-e2-e3`` or ``2l-e1+e4``."""
        compact = text.replace(" ", "")
        l = 0
        e = [0] * n
        pos = 0
        while pos < len(compact):
            m = _TERM_RE.match(compact, pos)
            if m is None:
                raise ValueError(f"cannot parse class {text!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            mult = int(m.group(2)) if m.group(2) else 1
            if m.group(3) == "l":
                l += sign * mult
            else:
                idx = int(m.group(4))
                if not 1 <= idx <= n:
                    raise ValueError(f"index e{idx} outside ambient N={n}")
                # stored e-coefficients carry the opposite sign of the class
                e[idx - 1] -= sign * mult
        if pos == 0:
            raise ValueError(f"cannot parse class {text!r}")
        return cls(n, l, tuple(e))

    def __str__(self) -> str:
        terms = []
        if self.l:
            terms.append(("+" if self.l > 0 else "-") + (f"{abs(self.l)}" if abs(self.l) != 1 else "") + "l")
        for i, c in enumerate(self.e, start=1):
            if c:
                # stored coefficient c means the class contains -c * e_i
                terms.append(("-" if c > 0 else "+") + (f"{abs(c)}" if abs(c) != 1 else "") + f"e{i}")
        if not terms:
            return "0"
        out = "".join(terms)
        return out[1:] if out.startswith("+") else out

    def vector(self) -> tuple[int, ...]:
        return (self.l,) + self.e

    @property
    def square(self) -> int:
        return self.l * self.l - sum(c * c for c in self.e)


def pair(x: HClass, y: HClass) -> int:
    if x.n != y.n:
        raise ValueError(f"ambient mismatch: N={x.n} vs N={y.n}")
    return x.l * y.l - sum(a * b for a, b in zip(x.e, y.e))


def canonical_class(n: int) -> HClass:
    """K = -3l + sum(e_i), the class compatible with genus-0 adjunction here."""
    return HClass(n, -3, (-1,) * n)


def adjunction_genus0(x: HClass) -> bool:
    """True iff x satisfies K.x + x.x = -2, the sphere adjunction equality."""
    return pair(canonical_class(x.n), x) + pair(x, x) == -2


@dataclass(frozen=True)
class HomologicalData:
    """Cap classes of a configuration: central l, essential arms, (-1) arms,
    plus any extra exceptional classes that came along with the embedding."""

    n: int
    central: HClass
    arms: tuple[tuple[HClass, ...], ...]
    minus_one: tuple[HClass, ...]
    extras: tuple[HClass, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arms", tuple(tuple(a) for a in self.arms))
        object.__setattr__(self, "minus_one", tuple(self.minus_one))
        object.__setattr__(self, "extras", tuple(self.extras))

    def cap_classes(self) -> tuple[HClass, ...]:
        return (self.central,) + tuple(c for arm in self.arms for c in arm) + self.minus_one

    def arm_weights(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(c.square for c in arm) for arm in self.arms)


def _column_profiles(data: HomologicalData, arm_order, m1_order) -> list[tuple]:
    rows = [data.central]
    for j in arm_order:
        rows.extend(data.arms[j])
    rows.extend(data.minus_one[j] for j in m1_order)
    profiles = []
    for c in range(data.n):
        profiles.append(tuple(r.e[c] for r in rows))
    profiles.sort()
    return profiles


def arm_symmetries(weights: tuple[tuple[int, ...], ...]):
    """Permutations of the essential arms preserving their weight sequences."""
    out = []
    for perm in itertools.permutations(range(len(weights))):
        if all(weights[perm[i]] == weights[i] for i in range(len(weights))):
            out.append(perm)
    return out


def isometry_equivalent(a: HomologicalData, b: HomologicalData, cap_symmetries=None) -> bool:
    """Decide whether some e-index permutation plus an allowed arm permutation
    maps the cap classes of ``a`` onto those of ``b``.

    A basis permutation is forced to match columns with equal incidence
    profiles down the ordered cap-class list, and any profile-preserving
    matching works, so the search reduces to comparing sorted profiles.
    """
    if a.n != b.n:
        return False
    if a.arm_weights() != b.arm_weights() and cap_symmetries is None:
        return False
    if cap_symmetries is None:
        cap_symmetries = arm_symmetries(a.arm_weights())
    if len(a.minus_one) != len(b.minus_one):
        return False
    if a.central.l != b.central.l:
        return False
    b_profiles = _column_profiles(b, range(len(b.arms)), range(len(b.minus_one)))
    b_lcoeffs = [c.l for c in b.cap_classes()]
    for perm in cap_symmetries:
        if tuple(a.arm_weights()[j] for j in perm) != b.arm_weights():
            continue
        for m1 in itertools.permutations(range(len(a.minus_one))):
            rows = [a.central]
            for j in perm:
                rows.extend(a.arms[j])
            rows.extend(a.minus_one[j] for j in m1)
            if [r.l for r in rows] != b_lcoeffs:
                continue
            if _column_profiles(a, perm, m1) == b_profiles:
                return True
    return False


# --- integral lattice utilities ---------------------------------------------


def integer_kernel(rows: list[list[int]], width: int) -> list[list[int]]:
    """Basis of the integer kernel {x : row . x = 0 for all rows}.

    Column-reduction with unimodular operations tracked on an identity
    matrix; columns that end up annihilating every row form the kernel.
    The result is a basis of the full (saturated) kernel lattice.
    """
    mat = [list(r) for r in rows]
    trans = [[1 if i == j else 0 for j in range(width)] for i in range(width)]
    pivot_cols = []
    for i in range(len(mat)):
        # find a nonzero entry in row i among non-pivot columns, minimizing |entry|
        while True:
            candidates = [j for j in range(width) if j not in pivot_cols and mat[i][j] != 0]
            if not candidates:
                break
            j0 = min(candidates, key=lambda j: abs(mat[i][j]))
            done = True
            for j in candidates:
                if j == j0:
                    continue
                q = mat[i][j] // mat[i][j0]
                if q:
                    for k in range(len(mat)):
                        mat[k][j] -= q * mat[k][j0]
                    for k in range(width):
                        trans[k][j] -= q * trans[k][j0]
                if mat[i][j] != 0:
                    done = False
            if done:
                pivot_cols.append(j0)
                break
    kernel = []
    for j in range(width):
        if j in pivot_cols:
            continue
        if all(mat[i][j] == 0 for i in range(len(mat))):
            kernel.append([trans[k][j] for k in range(width)])
    return kernel


def pairing_vector(x: HClass) -> list[int]:
    """Row v such that v . (vector of y) = pair(x, y)."""
    return [x.l] + [-c for c in x.e]


def orthogonal_complement(classes, n: int) -> list[HClass]:
    """Integer basis of the sublattice orthogonal to all given classes."""
    rows = [pairing_vector(c) for c in classes]
    return [HClass(n, v[0], tuple(v[1:])) for v in integer_kernel(rows, n + 1)]


def gram_matrix(classes) -> list[list[int]]:
    return [[pair(a, b) for b in classes] for a in classes]


def _coord_range(shift: Fraction, bound2: Fraction) -> range:
    """Integers x with (x + shift)^2 <= bound2, bounds computed exactly."""
    if bound2 < 0:
        return range(0)
    a, b = shift.numerator, shift.denominator
    # (b*x + a)^2 <= bound2 * b^2
    limit = (bound2 * b * b)
    y_max = isqrt(limit.numerator // limit.denominator)
    lo = -((y_max + a) // b)  # ceil((-y_max - a) / b)
    hi = (y_max - a) // b
    while ((lo - 1) + shift) ** 2 <= bound2:
        lo -= 1
    while (hi + 1 + shift) ** 2 <= bound2:
        hi += 1
    while lo <= hi and (lo + shift) ** 2 > bound2:
        lo += 1
    while lo <= hi and (hi + shift) ** 2 > bound2:
        hi -= 1
    return range(lo, hi + 1)


def short_vectors(gram: list[list[int]], max_norm: int) -> list[tuple[int, ...]]:
    """All x != 0 with 0 < -x^T G x <= max_norm, for G negative definite.

    Recursive enumeration through the exact Cholesky decomposition of -G;
    one vector per antipodal pair {x, -x} is kept.
    """
    g = [[Fraction(-x) for x in row] for row in gram]
    r = len(g)
    if r == 0:
        return []
    # Cholesky data: diagonal q[i][i] > 0 and multipliers q[i][j] for j > i
    q = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            q[i][j] = g[i][j] - sum(q[k][k] * q[k][i] * q[k][j] for k in range(i))
        d = q[i][i]
        if d <= 0:
            raise ValueError("gram matrix is not negative definite")
        for j in range(i + 1, r):
            q[i][j] /= d
    out = []
    x = [0] * r

    def rec(i: int, remaining: Fraction):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        shift = sum(q[i][j] * x[j] for j in range(i + 1, r))
        for xi in _coord_range(shift, remaining / q[i][i]):
            x[i] = xi
            rec(i - 1, remaining - q[i][i] * (xi + shift) ** 2)
        x[i] = 0

    rec(r - 1, Fraction(max_norm))
    seen = set()
    result = []
    for v in sorted(out):
        if tuple(-c for c in v) in seen:
            continue
        seen.add(v)
        result.append(v)
    return result
