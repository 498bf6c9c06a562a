"""Explicit outer descriptions with exact lattice-point verification.

Builders produce small integer-coefficient inequality systems for the
classic families (unit cube, tour polytopes, connected subgraphs, the
permutahedron).  The verifier enumerates every lattice point of a bounded
polyhedron exactly and compares against the convex hull of a target point
set, so a "verified" answer is a complete certificate, not a sample.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm

from .errors import DimMismatch, Infeasible, TooLarge, UnboundedCoordinate
from .families import DEFAULT_CAP, EdgeIndexer, PointSet, _cap_check
from .linprog import (
    Halfspace,
    HPolyhedron,
    conv_membership,
    recession_nontrivial,
    solve_lp,
)


def build_cube_relaxation(d):
    """d+1 rows whose integer solutions are exactly {0,1}^d.

    Row k bounds x_k by 1 plus a geometrically shrinking tail of the later
    coordinates; one final row bounds x_1 from below by the mirrored tail.
    All rows are scaled by 2**d so the data is integral.
    """
    if d < 1:
        raise ValueError("need dimension at least 1")
    s = 2**d
    rows = []
    for k in range(1, d + 1):
        a = [0] * d
        a[k - 1] = s
        for i in range(k + 1, d + 1):
            a[i - 1] = -(2 ** (d - i))
        rows.append(Halfspace(a, "<=", s))
    a = [0] * d
    a[0] = s
    for i in range(2, d + 1):
        a[i - 1] = 2 ** (d - i)
    rows.append(Halfspace(a, ">=", 0))
    return HPolyhedron(d, rows)


def _box_rows(dim):
    rows = []
    for k in range(dim):
        a = [0] * dim
        a[k] = 1
        rows.append(Halfspace(a, ">=", 0))
        rows.append(Halfspace(a, "<=", 1))
    return rows


def build_subtour_relaxation(n, directed=False):
    """Degree equalities plus one cut row per node subset, over the box.

    Undirected: x(delta(v)) = 2 and x(delta(S)) >= 2; cuts deduplicated by
    complement (delta(S) = delta(V minus S)), keeping the side with node 1.
    Directed: out- and in-degree equal 1 and every proper subset needs one
    outgoing arc.  Row order: box pairs by edge, degrees by node, cuts by
    subset bitmask (node i <-> bit i-1) ascending.
    """
    if n < 3:
        raise ValueError("need at least three nodes")
    _cap_check(2**n, None, "cut rows")
    idx = EdgeIndexer(n, directed=directed)
    rows = _box_rows(idx.dim)
    for v in range(1, n + 1):
        if directed:
            out = [0] * idx.dim
            inc = [0] * idx.dim
            for w in range(1, n + 1):
                if w != v:
                    out[idx.index(v, w)] = 1
                    inc[idx.index(w, v)] = 1
            rows.append(Halfspace(out, "=", 1))
            rows.append(Halfspace(inc, "=", 1))
        else:
            a = [0] * idx.dim
            for w in range(1, n + 1):
                if w != v:
                    a[idx.index(v, w)] = 1
            rows.append(Halfspace(a, "=", 2))
    full = (1 << n) - 1
    for mask in range(1, full):
        if not directed and not mask & 1:
            continue
        a = [0] * idx.dim
        for u in range(1, n + 1):
            if not mask >> (u - 1) & 1:
                continue
            for w in range(1, n + 1):
                if w != u and not mask >> (w - 1) & 1:
                    a[idx.index(u, w)] = 1
        rows.append(Halfspace(a, ">=", 1 if directed else 2))
    return HPolyhedron(idx.dim, rows)


def build_conn_cut_relaxation(n):
    """Box rows plus x(delta(S)) >= 1 per subset, deduplicated by complement.

    Integer solutions are exactly the edge sets meeting every cut, i.e. the
    spanning connected subgraphs.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    _cap_check(2**n, None, "cut rows")
    idx = EdgeIndexer(n)
    rows = _box_rows(idx.dim)
    full = (1 << n) - 1
    for mask in range(1, full, 2):
        a = [0] * idx.dim
        for u in range(1, n + 1):
            if not mask >> (u - 1) & 1:
                continue
            for w in range(1, n + 1):
                if w != u and not mask >> (w - 1) & 1:
                    a[idx.index(u, w)] = 1
        rows.append(Halfspace(a, ">=", 1))
    return HPolyhedron(idx.dim, rows)


def build_rado_permutahedron(n):
    """Subset-sum description of the convex hull of all permutations of 1..n.

    One equality fixes the total; each proper subset S must carry at least
    1 + 2 + ... + |S|; coordinates stay nonnegative.
    """
    if n < 2:
        raise ValueError("need at least two coordinates")
    _cap_check(2**n, None, "subset rows")
    rows = [Halfspace([1] * n, "=", n * (n + 1) // 2)]
    full = (1 << n) - 1
    for mask in range(1, full):
        a = [1 if mask >> i & 1 else 0 for i in range(n)]
        size = sum(a)
        rows.append(Halfspace(a, ">=", size * (size + 1) // 2))
    for i in range(n):
        a = [0] * n
        a[i] = 1
        rows.append(Halfspace(a, ">=", 0))
    return HPolyhedron(n, rows)


@dataclass(frozen=True)
class LatticeBox:
    """Per-coordinate integer bounds, lower <= upper."""

    lower: tuple
    upper: tuple

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "upper", tuple(self.upper))
        if len(self.lower) != len(self.upper):
            raise DimMismatch("bound vectors of different lengths")
        for lo, hi in zip(self.lower, self.upper):
            if not isinstance(lo, int) or not isinstance(hi, int):
                raise TypeError("integer bounds only")
            if lo > hi:
                raise ValueError(f"empty range [{lo}, {hi}]")

    @property
    def dim(self):
        return len(self.lower)

    @property
    def volume(self):
        v = 1
        for lo, hi in zip(self.lower, self.upper):
            v *= hi - lo + 1
        return v


def bounding_box(P):
    """Tightest integer box around P, via one LP per coordinate and sign."""
    lower = []
    upper = []
    for k in range(P.dim):
        obj = [0] * P.dim
        obj[k] = 1
        hi = solve_lp(P, obj, maximize=True)
        if hi.status == "infeasible":
            raise Infeasible("polyhedron has no points")
        if hi.status == "unbounded":
            raise UnboundedCoordinate(k + 1, "+")
        lo = solve_lp(P, obj, maximize=False)
        if lo.status == "unbounded":
            raise UnboundedCoordinate(k + 1, "-")
        upper.append(floor(hi.value))
        lower.append(ceil(lo.value))
    return LatticeBox(lower, upper)


def _integer_rows(P):
    rows = []
    for c in P.constraints:
        mult = lcm(*(Fraction(v).denominator for v in (*c.a, c.rhs)))
        a = tuple(int(v * mult) for v in c.a)
        rows.append((a, c.sense, int(c.rhs * mult)))
    return rows


def enumerate_lattice(P, box=None, max_points=None):
    """All integer points of P inside the box (default: bounding_box(P)).

    Odometer scan over the box with interval pruning: a partial assignment
    is abandoned as soon as some row cannot be satisfied by any completion
    within the remaining coordinate ranges.  All arithmetic is integer.
    """
    if box is None:
        box = bounding_box(P)
    if box.dim != P.dim:
        raise DimMismatch("box dimension does not match polyhedron")
    cap = DEFAULT_CAP if max_points is None else max_points
    if box.volume > cap:
        raise TooLarge(f"box volume {box.volume} exceeds the cap of {cap}")
    d = P.dim
    lo, hi = box.lower, box.upper
    rows = _integer_rows(P)
    nr = len(rows)
    minrem = [[0] * (d + 1) for _ in range(nr)]
    maxrem = [[0] * (d + 1) for _ in range(nr)]
    for r, (a, _, _) in enumerate(rows):
        for k in range(d - 1, -1, -1):
            t1, t2 = a[k] * lo[k], a[k] * hi[k]
            minrem[r][k] = minrem[r][k + 1] + min(t1, t2)
            maxrem[r][k] = maxrem[r][k + 1] + max(t1, t2)
    out = []
    x = [0] * d

    def scan(k, sums):
        if k == d:
            out.append(tuple(x))
            return
        for v in range(lo[k], hi[k] + 1):
            nxt = [s + row[0][k] * v for s, row in zip(sums, rows)]
            ok = True
            for r, (_, sense, rhs) in enumerate(rows):
                s = nxt[r]
                if sense != ">=" and s + minrem[r][k + 1] > rhs:
                    ok = False
                    break
                if sense != "<=" and s + maxrem[r][k + 1] < rhs:
                    ok = False
                    break
            if ok:
                x[k] = v
                scan(k + 1, nxt)

    scan(0, [0] * nr)
    return PointSet(d, out, validate=False)


@dataclass(frozen=True)
class RelaxationReport:
    """Outcome of an exact relaxation check.

    verified -> lattice_count = number of integer points of P, all of them
    in the convex hull of X (and every point of X in P).  failed -> reason
    is a (kind, witness) pair: missing_point, extra_lattice_point, or
    unbounded_with_finite_X with a recession ray.
    """

    status: str
    reason: tuple | None = None
    lattice_count: int | None = None


def verify_relaxation(P, X, max_points=None, box=None):
    """Check that the integer points of P are exactly conv(X)'s lattice points.

    Point containment is tested first, so a failure names a concrete witness;
    then an unboundedness guard (a rational recession ray plus any lattice
    point gives infinitely many lattice points, while X spans only finitely
    many); finally a full enumeration compared against the hull. A caller
    who already knows an enclosing box may pass it to skip the bounding
    LPs and the recession probe: a polyhedron with a lattice point and a
    nonzero recession direction has lattice points outside every box, so
    a genuinely enclosing box already rules that out, and every row of P
    is still checked during the scan.
    """
    if P.dim != X.dim:
        raise DimMismatch("polyhedron and point set dimensions differ")
    for p in X:
        if not P.contains(p):
            return RelaxationReport("failed", ("missing_point", tuple(p)))
    if len(X) > 0 and box is None:
        nontrivial, ray = recession_nontrivial(P)
        if nontrivial:
            return RelaxationReport("failed", ("unbounded_with_finite_X", ray))
    lattice = enumerate_lattice(P, box=box, max_points=max_points)
    known = set(X.points)
    for z in lattice:
        if z in known:
            continue
        if len(X) == 0 or not conv_membership(z, X)[0]:
            return RelaxationReport("failed", ("extra_lattice_point", z))
    return RelaxationReport("verified", None, len(lattice))


def irredundant_count(P):
    """Count inequality rows that actually cut something off.

    A row is redundant when optimizing its left-hand side over the other
    rows still respects its bound.  Equality rows are left in place but
    excluded from the count and the redundancy list.
    """
    probe = solve_lp(P, [0] * P.dim, maximize=True)
    if probe.status == "infeasible":
        raise Infeasible("polyhedron has no points")
    redundant = []
    total = 0
    for i, c in enumerate(P.constraints):
        if c.sense == "=":
            continue
        total += 1
        out = solve_lp(P.without_row(i), c.a, maximize=c.sense == "<=")
        if out.status != "optimal":
            continue
        if c.sense == "<=" and out.value <= c.rhs:
            redundant.append(i)
        elif c.sense == ">=" and out.value >= c.rhs:
            redundant.append(i)
    return total - len(redundant), redundant
