"""Pants decompositions and bounded-budget distance search.

A pants decomposition of the n-punctured sphere is a set of n-3 disjoint,
pairwise non-isotopic essential curves.  Replacing one curve by another that
meets it exactly twice is an elementary move (edge of the pants complex);
allowing any intersection number >= 2 gives the dual curve complex, whose
distance can only be smaller.

Both complexes are infinite and locally infinite, so searches are budgeted:
candidate replacement curves are generated from round curves by twist words
of bounded length, and breadth-first search stops after a node budget.  A
returned value is therefore an upper bound; it is exact when it matches an
independent lower bound (the trivial one here is the number of curves of the
target missing from the source, since each move replaces a single curve).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .curves import (Curve, CurveError, PuncturedSphere, apply_half_twist,
                     format_curve, geometric_intersection, parse_curve,
                     round_curve)

DEFAULT_TWIST_BUDGET = 3
DEFAULT_NODE_BUDGET = 10 ** 6


class PantsError(ValueError):
    """Invalid pants decomposition."""


class PantsDecomposition:
    """A validated pants decomposition; a vertex of both complexes."""

    __slots__ = ("sphere", "curves", "_key")

    def __init__(self, sphere: PuncturedSphere, curves: Iterable[Curve],
                 _validated: bool = False):
        curves = tuple(sorted(curves))
        if not _validated:
            _validate(sphere, curves)
        self.sphere = sphere
        self.curves = curves
        self._key = tuple(c.key for c in curves)

    @property
    def n(self) -> int:
        return self.sphere.n

    @property
    def key(self):
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, PantsDecomposition) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other: "PantsDecomposition") -> bool:
        return self._key < other._key

    def __len__(self) -> int:
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __repr__(self) -> str:
        return f"PantsDecomposition({format_pants(self)!r})"

    def __str__(self) -> str:
        return format_pants(self)

    def shared_with(self, other: "PantsDecomposition") -> tuple[Curve, ...]:
        mine = {c.key: c for c in self.curves}
        return tuple(c for c in other.curves if c.key in mine)

    def replace(self, index: int, new: Curve) -> "PantsDecomposition":
        curves = list(self.curves)
        curves[index] = new
        return PantsDecomposition(self.sphere, curves)


def _validate(sphere: PuncturedSphere, curves: Sequence[Curve]) -> None:
    n = sphere.n
    for c in curves:
        if c.n != n:
            raise PantsError(f"curve {format_curve(c)} lives on n={c.n}, not {n}")
    for a, b in itertools.combinations(curves, 2):
        if a == b:
            raise PantsError(f"duplicate isotopy class: {format_curve(a)}")
    want = n - 3
    if len(curves) != want:
        raise PantsError(
            f"a pants decomposition of the {n}-punctured sphere needs "
            f"{want} curves, got {len(curves)}")
    for a, b in itertools.combinations(curves, 2):
        i = geometric_intersection(a, b)
        if i != 0:
            raise PantsError(
                f"curves intersect ({i} points): {format_curve(a)} "
                f"and {format_curve(b)}")


def validate_pants(sphere: PuncturedSphere, curves: Iterable[Curve]) -> PantsDecomposition:
    """Check count, disjointness and non-isotopy; return the canonical vertex."""
    return PantsDecomposition(sphere, curves)


def is_pants_edge(p: PantsDecomposition, q: PantsDecomposition) -> bool:
    """Elementary move: n-4 shared classes, remaining pair meeting twice."""
    return _edge_kind(p, q) == 2


def is_dual_edge(p: PantsDecomposition, q: PantsDecomposition) -> bool:
    """Dual-complex move: n-4 shared classes, remaining pair meeting >= 2."""
    return _edge_kind(p, q) >= 2


def _edge_kind(p: PantsDecomposition, q: PantsDecomposition) -> int:
    """0 if not an edge of either complex, else the intersection number of
    the unique differing pair."""
    if p.n != q.n or p == q:
        return 0
    pk = {c.key: c for c in p.curves}
    qk = {c.key: c for c in q.curves}
    p_only = [c for c in p.curves if c.key not in qk]
    q_only = [c for c in q.curves if c.key not in pk]
    if len(p_only) != 1 or len(q_only) != 1:
        return 0
    return geometric_intersection(p_only[0], q_only[0])


def is_edge(p: PantsDecomposition, q: PantsDecomposition, kind: str) -> bool:
    if kind == "pants":
        return is_pants_edge(p, q)
    if kind == "dual":
        return is_dual_edge(p, q)
    raise PantsError(f"unknown edge kind {kind!r}")


@lru_cache(maxsize=None)
def _curve_pool_cached(n: int, twist_budget: int) -> tuple[Curve, ...]:
    sphere = PuncturedSphere(n)
    seen: dict = {}
    frontier: list[Curve] = []
    for i in range(n):
        for j in range(i + 1, n):
            size = j - i + 1
            if 2 <= size <= n - 2:
                c = round_curve(sphere, i, j)
                if c.key not in seen:
                    seen[c.key] = c
                    frontier.append(c)
    frontier.sort()
    for _ in range(twist_budget):
        nxt = []
        for c in frontier:
            for g in range(n - 1):
                for s in (1, -1):
                    d = apply_half_twist(c, g, s)
                    if d.key not in seen:
                        seen[d.key] = d
                        nxt.append(d)
        nxt.sort()
        frontier = nxt
    return tuple(sorted(seen.values()))


def curve_pool(sphere: PuncturedSphere, twist_budget: int = DEFAULT_TWIST_BUDGET
               ) -> tuple[Curve, ...]:
    """All curves reachable from round curves by at most `twist_budget`
    half twists, one representative per isotopy class, sorted."""
    return _curve_pool_cached(sphere.n, twist_budget)


def neighbor_candidates(p: PantsDecomposition, index: int,
                        twist_budget: int = DEFAULT_TWIST_BUDGET,
                        kind: str = "pants",
                        extra: Sequence[Curve] = (),
                        pool: Sequence[Curve] | None = None) -> list[PantsDecomposition]:
    """Decompositions obtained by replacing curve `index` along an edge.

    Candidates come from the bounded twist-word pool (plus any `extra`
    curves); results are deduplicated and sorted for deterministic search.
    An explicit `pool` replaces the default twist-word pool.
    """
    old = p.curves[index]
    rest = [c for k, c in enumerate(p.curves) if k != index]
    rest_keys = {c.key for c in rest}
    out = {}
    if pool is None:
        pool = curve_pool(p.sphere, twist_budget)
    for cand in itertools.chain(pool, extra):
        if cand.key == old.key or cand.key in rest_keys:
            continue
        i_old = geometric_intersection(cand, old)
        if kind == "pants":
            if i_old != 2:
                continue
        else:
            if i_old < 2:
                continue
        if any(geometric_intersection(cand, c) != 0 for c in rest):
            continue
        q = PantsDecomposition(p.sphere, rest + [cand], _validated=True)
        out[q.key] = q
    return sorted(out.values())


@dataclass
class DistanceResult:
    """Outcome of a budgeted shortest-path search between two vertices.

    `value` is None when the budget was exhausted first; then `floor` is the
    number of complete levels explored, so the true distance exceeds it.
    `trivial_lower` is the always-valid lower bound |q \\ p|.
    """

    kind: str
    value: int | None
    path: list[PantsDecomposition] = field(default_factory=list)
    floor: int = 0
    trivial_lower: int = 0
    nodes_expanded: int = 0
    twist_budget: int = DEFAULT_TWIST_BUDGET
    node_budget: int = DEFAULT_NODE_BUDGET

    @property
    def exact(self) -> bool:
        return self.value is not None and self.value <= self.trivial_lower

    def verify_path(self) -> bool:
        if self.value is None:
            return True
        if len(self.path) != self.value + 1:
            return False
        return all(is_edge(a, b, self.kind)
                   for a, b in zip(self.path, self.path[1:]))


def distance_upper(p: PantsDecomposition, q: PantsDecomposition,
                   kind: str = "pants",
                   twist_budget: int = DEFAULT_TWIST_BUDGET,
                   node_budget: int = DEFAULT_NODE_BUDGET,
                   hold: Sequence[Curve] = (),
                   pool: Sequence[Curve] | None = None) -> DistanceResult:
    """Budgeted breadth-first distance search from p to q.

    Deterministic: the frontier is expanded in sorted order level by level.
    Curves of both endpoints are always admitted as candidates, so distance-1
    pairs are recognised at any budget.  On the 4-punctured sphere the search
    runs over the slope index instead of a twist-word pool, and the resulting
    path is re-verified edge by edge with the diagram machinery.
    """
    if p.n != q.n:
        raise PantsError("decompositions on different spheres")
    trivial_lower = (q.n - 3) - len(p.shared_with(q))
    res = DistanceResult(kind=kind, value=None, trivial_lower=trivial_lower,
                         twist_budget=twist_budget, node_budget=node_budget)
    if p == q:
        res.value = 0
        res.path = [p]
        return res
    if p.n == 4:
        return _distance_four(p, q, kind, twist_budget, node_budget, res)
    hold_keys = {c.key for c in hold}
    extra = tuple(sorted(set(p.curves) | set(q.curves)))
    parent: dict = {p.key: None}
    nodes = {p.key: p}
    frontier = [p]
    depth = 0
    expanded = 0
    while frontier and expanded < node_budget:
        depth += 1
        nxt = []
        for node in frontier:
            expanded += 1
            if expanded > node_budget:
                break
            for index in range(len(node.curves)):
                if node.curves[index].key in hold_keys:
                    continue
                for nb in neighbor_candidates(node, index, twist_budget,
                                              kind, extra, pool):
                    if nb.key in parent:
                        continue
                    parent[nb.key] = node.key
                    nodes[nb.key] = nb
                    if nb == q:
                        res.value = depth
                        res.nodes_expanded = expanded
                        res.path = _unwind(parent, nodes, nb.key)
                        return res
                    nxt.append(nb)
        res.floor = depth
        frontier = sorted(nxt)
    res.nodes_expanded = expanded
    return res


def _unwind(parent, nodes, key) -> list[PantsDecomposition]:
    path = []
    while key is not None:
        path.append(nodes[key])
        key = parent[key]
    return path[::-1]


def _distance_four(p: PantsDecomposition, q: PantsDecomposition, kind: str,
                   twist_budget: int, node_budget: int,
                   res: DistanceResult) -> DistanceResult:
    """Exact search on the 4-punctured sphere through the slope index.

    Vertices are slopes; pants edges are unimodular slope pairs.  The found
    path is materialised as curves and every edge is re-checked with the
    diagram intersection machinery, so the slope index only guides the
    search and never vouches for the result.
    """
    from . import farey

    a = farey.slope_of_curve(p.curves[0])
    b = farey.slope_of_curve(q.curves[0])
    if kind == "dual":
        # Any two distinct essential curves here meet at least twice, so the
        # dual complex is a complete graph.
        res.value = 1
        res.path = [p, q]
        if not is_dual_edge(p, q):  # pragma: no cover - safety net
            raise PantsError("slope index produced a bad dual edge")
        return res
    height = max(6, 3 * twist_budget)
    height = max(height, 2 * (abs(a[0]) + a[1]), 2 * (abs(b[0]) + b[1]))
    parent: dict = {a: None}
    frontier = [a]
    expanded = 0
    found = False
    while frontier and not found and expanded < node_budget:
        nxt = []
        for u in sorted(frontier):
            expanded += 1
            for w in farey.farey_neighbors_in_box(u, height):
                if w in parent:
                    continue
                parent[w] = u
                if w == b:
                    found = True
                    break
                nxt.append(w)
            if found:
                break
        frontier = nxt
        res.floor += 1
    res.nodes_expanded = expanded
    if not found:
        return res
    chain = []
    s = b
    while s is not None:
        chain.append(s)
        s = parent[s]
    chain.reverse()
    path = [p]
    for s in chain[1:-1]:
        path.append(PantsDecomposition(
            p.sphere, [farey.curve_of_slope(p.sphere, *s)], _validated=True))
    path.append(q)
    for x, y in zip(path, path[1:]):
        if not is_edge(x, y, kind):  # honest re-verification
            raise PantsError("slope index produced a non-edge in the path")
    res.value = len(path) - 1
    res.path = path
    return res


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return x


# -- text syntax --------------------------------------------------------------

def format_pants(p: PantsDecomposition) -> str:
    inner = "; ".join(format_curve(c) for c in p.curves)
    return "pants { " + inner + " }"


def parse_pants(sphere: PuncturedSphere, text: str) -> PantsDecomposition:
    text = text.strip()
    if not (text.startswith("pants") and "{" in text and text.endswith("}")):
        raise PantsError(f"bad pants literal {text!r}")
    body = text[text.index("{") + 1:-1].strip()
    parts = [s for s in (x.strip() for x in body.split(";")) if s]
    return validate_pants(sphere, [parse_curve(sphere, s) for s in parts])
