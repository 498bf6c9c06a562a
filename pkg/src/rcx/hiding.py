"""Hiding-set constructions and exact certificate checking.

A hiding set for X is a set H of integer points in aff(X) but outside
conv(X) such that the segment between any two of its points meets
conv(X). Any polyhedron whose integer points within aff(X) are exactly X
must then use a separate facet to cut off each point of H, so |H| is a
lower bound on the number of facets of any such relaxation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import DimMismatch, EmptySet, OddNodeSet, TooLarge
from .families import DEFAULT_CAP, EdgeIndexer, PointSet, odd
from .linprog import conv_membership, segment_hits_hull
from .rational import affine_hull, in_affine_hull


def cycle_pair_arcs(N, b, drop_return_arc=False):
    """Arc set on 2(N+1) nodes built from a binary pattern b.

    Nodes 1..N+1 form the top row, nodes N+2..2N+2 the bottom row. Both
    rows close up (top: 2N+2 -> ... arc (N+1, 1); bottom: (2N+2, N+2)),
    and at position i the rows either continue straight (b_i = 0) or
    cross over (b_i = 1). The result is one hamiltonian cycle when b has
    an odd number of ones, and two disjoint cycles when even.
    """
    if len(b) != N:
        raise DimMismatch("pattern length must be N")
    top = lambda i: i              # v_i
    bot = lambda i: N + 1 + i      # w_i
    arcs = [(top(N + 1), top(1))]
    if not drop_return_arc:
        arcs.append((bot(N + 1), bot(1)))
    for i in range(1, N + 1):
        if b[i - 1] == 0:
            arcs.append((top(i), top(i + 1)))
            arcs.append((bot(i), bot(i + 1)))
        else:
            arcs.append((top(i), bot(i + 1)))
            arcs.append((bot(i), top(i + 1)))
    return tuple(arcs)


def flip_pair(b, bp):
    """For distinct patterns, flip the first differing bit in both.

    Flipping one crossing toggles the parity, so two even patterns turn
    into two odd ones while the arc multiset union stays the same.
    """
    j = next(i for i in range(len(b)) if b[i] != bp[i])
    c = tuple(v ^ (1 if i == j else 0) for i, v in enumerate(b))
    cp = tuple(v ^ (1 if i == j else 0) for i, v in enumerate(bp))
    return c, cp, j


def _arcs_vector(idx, arcs, directed):
    vec = [0] * idx.dim
    for u, v in arcs:
        vec[idx.index(u, v)] += 1
    return tuple(vec)


def _even_patterns(N):
    return [b for b in product((0, 1), repeat=N) if sum(b) % 2 == 0]


def build_tsp_hiding(N, directed=True):
    """Two-cycle configurations hiding the tour set on 2(N+1) nodes.

    One point per even pattern, 2^(N-1) in total. With directed=False
    arcs are projected onto undirected edges (summing multiplicities,
    which only matters for N = 1).
    """
    if N < 1:
        raise ValueError("need N >= 1")
    n = 2 * (N + 1)
    idx = EdgeIndexer(n, directed=directed)
    pts = [_arcs_vector(idx, cycle_pair_arcs(N, b), directed)
           for b in _even_patterns(N)]
    pts.sort()
    return PointSet(idx.dim, pts,
                    family={"name": "tsp_hiding",
                            "params": {"N": N, "directed": directed}},
                    legend=idx.legend(), validate=False)


def build_arb_hiding(N, directed=True):
    """Cycle-plus-path configurations hiding arborescences or trees.

    Same patterns as build_tsp_hiding but with the bottom row's closing
    arc removed, so odd patterns give spanning paths (arborescences) and
    even patterns a disjoint cycle plus path.
    """
    if N < 1:
        raise ValueError("need N >= 1")
    n = 2 * (N + 1)
    idx = EdgeIndexer(n, directed=directed)
    pts = [_arcs_vector(idx, cycle_pair_arcs(N, b, drop_return_arc=True), directed)
           for b in _even_patterns(N)]
    pts.sort()
    return PointSet(idx.dim, pts,
                    family={"name": "arb_hiding",
                            "params": {"N": N, "directed": directed}},
                    legend=idx.legend(), validate=False)


def build_diff_hiding(n):
    """Duplicated-block points (x, x) hiding the distinct-rows family.

    For n = 1 the target has only two points and spans a line that no
    duplicated pair touches, so the two integer points of that line
    flanking the hull are returned instead; the bound 2^n is unchanged.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if 2**n > DEFAULT_CAP:
        raise TooLarge(f"2^{n} duplicated blocks exceed the cap")
    if n == 1:
        pts = [(-1, 2), (2, -1)]
    else:
        pts = [x + x for x in product((0, 1), repeat=n)]
    return PointSet(2 * n, pts,
                    family={"name": "diff_hiding", "params": {"n": n}},
                    validate=False)


def build_perm_hiding(n):
    """Near-permutation vectors hiding the permutation family.

    For each index set S of size m = floor(n/2), the point puts the
    values 1..m-1 on S (the value m-1 twice, at the two largest indices)
    and m+2..n elsewhere (m+2 twice, at the two smallest), staying on the
    total-sum hyperplane while undershooting only the subset-sum bound
    of S itself.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    m = n // 2
    pts = []
    for S in combinations(range(n), m):
        x = [0] * n
        inside = [1 + j for j in range(m - 2)] + [m - 1, m - 1]
        for pos, val in zip(S, inside):
            x[pos] = val
        comp = [j for j in range(n) if j not in S]
        outside = [m + 2, m + 2] + [m + 2 + j for j in range(1, n - m - 1)]
        for pos, val in zip(comp, outside):
            x[pos] = val
        pts.append(tuple(x))
    pts.sort()
    return PointSet(n, pts,
                    family={"name": "perm_hiding", "params": {"n": n}},
                    validate=False)


def build_parity_hiding(n):
    """The odd-parity vectors, hiding the even-parity family."""
    return odd(n)


def _degree_parities(n, idx, vec):
    deg = [0] * (n + 1)
    for k, v in enumerate(vec):
        if v % 2:
            u, w = idx.pairs[k]
            deg[u] ^= 1
            deg[w] ^= 1
    return tuple(v for v in range(1, n + 1) if deg[v])


def build_tjoin_hiding(n, terminals):
    """Two matching-union families hiding the T-join family.

    Splits the terminals and the remaining nodes into halves joined by
    round-robin matchings M_1..M_k and N_1..N_l. Unions of an even
    number of M's (with a fixed even N-part) and of an odd number of N's
    (with a fixed odd M-part) have the wrong parity pattern, yet pairs
    average into the hull. Points that happen to be T-joins themselves
    (only possible when T is empty) are dropped. Returns (H1, H2).
    """
    if n < 2 or n % 2 == 1:
        raise ValueError("need an even number of nodes, n >= 2")
    T = sorted(set(terminals))
    if any(not 1 <= t <= n for t in T):
        raise ValueError("terminals out of range")
    if len(T) % 2 == 1:
        raise OddNodeSet(f"terminal set of odd size {len(T)}")
    U = [v for v in range(1, n + 1) if v not in set(T)]
    k, l = len(T) // 2, len(U) // 2
    T1, T2 = T[:k], T[k:]
    U1, U2 = U[:l], U[l:]
    M = [[(T1[j], T2[(j + i) % k]) for j in range(k)] for i in range(k)]
    Nm = [[(U1[j], U2[(j + i) % l]) for j in range(l)] for i in range(l)]
    idx = EdgeIndexer(n)
    b_star = (1,) + (0,) * (k - 1) if k else ()
    c_star = (0,) * l

    def join_vector(b, c):
        edges = []
        for i, bit in enumerate(b):
            if bit:
                edges.extend(M[i])
        for j, bit in enumerate(c):
            if bit:
                edges.extend(Nm[j])
        return idx.vector(edges)

    h1 = []
    for b in product((0, 1), repeat=k):
        if sum(b) % 2 == 0:
            vec = join_vector(b, c_star)
            if _degree_parities(n, idx, vec) != tuple(T):
                h1.append(vec)
    h2 = []
    for c in product((0, 1), repeat=l):
        if sum(c) % 2 == 1:
            vec = join_vector(b_star, c)
            if _degree_parities(n, idx, vec) != tuple(T):
                h2.append(vec)
    h1.sort()
    h2.sort()
    fam = {"name": "tjoin_hiding", "params": {"n": n, "terminals": list(T)}}
    H1 = PointSet(idx.dim, h1, family={**fam, "params": {**fam["params"], "part": 1}},
                  legend=idx.legend(), validate=False)
    H2 = PointSet(idx.dim, h2, family={**fam, "params": {**fam["params"], "part": 2}},
                  legend=idx.legend(), validate=False)
    return H1, H2


@dataclass(frozen=True)
class HidingCertificate:
    """Outcome of checking a candidate hiding set H against X.

    Check lists follow H's point order (pairs in lexicographic index
    order) and may stop early at the first failure, which is then named
    in `failure` as (kind, detail).
    """

    valid: bool
    bound: int
    x_digest: str
    h_digest: str
    integral: tuple
    in_affine: tuple
    excluded: tuple
    pair_results: tuple
    failure: tuple | None = None

    @property
    def rc_lower_bound(self):
        return self.bound if self.valid else None


def verify_hiding(H, X):
    """Exactly check every hiding-set condition of H against X."""
    if H.dim != X.dim:
        raise DimMismatch("hiding set and target set dimensions differ")
    if not X.points:
        raise EmptySet("cannot hide against an empty point set")

    def done(valid, integral, in_aff, excluded, pairs, failure=None):
        return HidingCertificate(
            valid=valid, bound=len(H), x_digest=X.digest(), h_digest=H.digest(),
            integral=tuple(integral), in_affine=tuple(in_aff),
            excluded=tuple(excluded), pair_results=tuple(pairs),
            failure=failure)

    integral = [all(isinstance(v, int) for v in h) for h in H.points]
    if not all(integral):
        bad = H.points[integral.index(False)]
        return done(False, integral, [], [], [], ("not_integral", bad))
    hull = affine_hull(X.points)
    in_aff = [in_affine_hull(h, hull) for h in H.points]
    if not all(in_aff):
        bad = H.points[in_aff.index(False)]
        return done(False, integral, in_aff, [], [], ("outside_affine_hull", bad))
    excluded = []
    for h in H.points:
        inside, _ = conv_membership(h, X)
        excluded.append(not inside)
        if inside:
            return done(False, integral, in_aff, excluded, [],
                        ("inside_hull", h))
    pairs = []
    for i, j in combinations(range(len(H.points)), 2):
        hit, _ = segment_hits_hull(H.points[i], H.points[j], X)
        pairs.append(((i, j), hit))
        if not hit:
            return done(False, integral, in_aff, excluded, pairs,
                        ("segment_misses", (H.points[i], H.points[j])))
    return done(True, integral, in_aff, excluded, pairs)


def _greedy_color(order, adj):
    classes = []
    color = {}
    for v in order:
        for ci, cl in enumerate(classes):
            if not (adj[v] & cl):
                cl.add(v)
                color[v] = ci + 1
                break
        else:
            classes.append({v})
            color[v] = len(classes)
    return color


def _max_clique(adj):
    """Largest clique by branch and bound with a greedy coloring bound."""
    n = len(adj)
    best = []

    def expand(R, P):
        nonlocal best
        if not P:
            if len(R) > len(best):
                best = list(R)
            return
        color = _greedy_color(sorted(P), adj)
        ordered = sorted(P, key=lambda v: (color[v], v))
        for i in range(len(ordered) - 1, -1, -1):
            v = ordered[i]
            if len(R) + color[v] <= len(best):
                return
            R.append(v)
            expand(R, [u for u in ordered[:i] if u in adj[v]])
            R.pop()

    expand([], list(range(n)))
    return best


def max_hiding_in_box(X, box, max_candidates=None):
    """Largest hiding set for X whose points lie in an integer box.

    box is a (lows, highs) pair of integer tuples. Enumerates all lattice
    points in the box that sit in aff(X) but outside conv(X), connects
    two of them when their segment meets conv(X), and finds a maximum
    clique. Returns (size, witness PointSet).
    """
    lo, hi = box
    if len(lo) != X.dim or len(hi) != X.dim:
        raise DimMismatch("box dimension does not match point set")
    if any(a > b for a, b in zip(lo, hi)):
        raise ValueError("empty box")
    volume = 1
    for a, b in zip(lo, hi):
        volume *= b - a + 1
    cap = DEFAULT_CAP if max_candidates is None else max_candidates
    if volume > cap:
        raise TooLarge(f"box holds {volume} lattice points, cap is {cap}")
    hull = affine_hull(X.points)
    cands = []
    for p in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if in_affine_hull(p, hull) and not conv_membership(p, X)[0]:
            cands.append(p)
    adj = [set() for _ in cands]
    for i, j in combinations(range(len(cands)), 2):
        if segment_hits_hull(cands[i], cands[j], X)[0]:
            adj[i].add(j)
            adj[j].add(i)
    clique = _max_clique(adj)
    witness = PointSet(X.dim, [cands[i] for i in clique])
    return len(clique), witness
