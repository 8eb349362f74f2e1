"""Exact combinatorial model for simple closed curves on a punctured sphere.

The sphere carries n punctures p_0, ..., p_{n-1} placed on a fixed circle
(the "axis").  The circle is divided into n open segments

    S_k = the gap between p_{k-1 mod n} and p_k,

so S_0 is the gap between the last puncture and p_0.  The two complementary
faces of the circle are unpunctured disks, called U (upper) and L (lower).

A curve transverse to the circle is recorded by its *diagram*:

  * the cyclic sequence of segments it crosses, in curve order,
  * the left-to-right rank of each crossing within its segment,
  * the face (U or L) of the arc between consecutive crossings.

Arcs strictly alternate between the faces, and inside a face an arc is a
chord of an unpunctured disk, hence determined by its endpoints.  A diagram
with no empty bigon against the circle (no chord with both endpoints adjacent
on one segment) is *reduced*; reduced diagrams are unique in their isotopy
class, so equality of reduced diagrams decides isotopy on the sphere exactly.

Half twists that swap adjacent punctures act by an explicit surgery: dragging
one puncture past the other through a face hooks every chord that separates
the moving puncture from its destination, leaving those chords looped around
the new position.  Everything is integer combinatorics; no numerics anywhere.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

UPPER = 0
LOWER = 1


class DiagramError(Exception):
    """Raised when diagram data is structurally invalid."""


def _crossing_key(seg: int, rank: int) -> tuple[int, int, int]:
    """Total-order key of a crossing point on the circle (odd slots)."""
    return (seg, 1, 2 * rank + 1)


def _split_key(seg: int, slot: int) -> tuple[int, int, int]:
    """Key of the gap before rank `slot` on a segment (even slots)."""
    return (seg, 1, 2 * slot)


def _puncture_key(p: int) -> tuple[int, int, int]:
    """Key of puncture p, which sits between S_p and S_{p+1}."""
    return (p, 2, 0)


def _in_cyclic(x, a, b) -> bool:
    """True if key x lies in the open cyclic interval (a, b)."""
    if a < b:
        return a < x < b
    return x > a or x < b


def _chords_cross(a, b, c, d) -> bool:
    """Whether chords {a,b} and {c,d} of one disk face must intersect."""
    return _in_cyclic(c, a, b) != _in_cyclic(d, a, b)


class Diagram:
    """Reduced canonical diagram of one simple closed curve.

    Instances are immutable and hashable; two diagrams compare equal exactly
    when the curves are isotopic on the punctured sphere.
    """

    __slots__ = ("n", "word", "ranks", "side0", "_key", "_hash")

    def __init__(self, n: int, word: Sequence[int], ranks: Sequence[int],
                 side0: int, _check: bool = False):
        if n < 3:
            raise DiagramError("need at least 3 punctures")
        word = list(word)
        ranks = list(ranks)
        if len(word) != len(ranks):
            raise DiagramError("word/ranks length mismatch")
        if len(word) % 2:
            raise DiagramError("odd number of crossings")
        if any(not 0 <= s < n for s in word):
            raise DiagramError("segment index out of range")
        word, ranks, side0 = _reduce(word, ranks, side0)
        word, ranks = _renumber(word, ranks)
        word, ranks, side0 = _canonical_rotation(word, ranks, side0)
        self.n = n
        self.word = tuple(word)
        self.ranks = tuple(ranks)
        self.side0 = side0
        self._key = (n, side0, self.word, self.ranks)
        self._hash = hash(self._key)
        if _check:
            self.check_embedded()

    # -- basic structure ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        return isinstance(other, Diagram) and self._key == other._key

    def __lt__(self, other: "Diagram") -> bool:
        return self._key < other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Diagram(n={self.n}, word={self.word}, ranks={self.ranks}, side0={self.side0})"

    @property
    def key(self):
        return self._key

    def is_empty(self) -> bool:
        return not self.word

    def arc_side(self, i: int) -> int:
        """Face of the arc from crossing i to crossing i+1 (cyclically)."""
        return self.side0 ^ (i & 1)

    def seg_counts(self) -> list[int]:
        counts = [0] * self.n
        for s in self.word:
            counts[s] += 1
        return counts

    def chords(self, face: int) -> list[tuple[int, int]]:
        """Arcs lying in the given face, as pairs of crossing indices."""
        m = len(self.word)
        return [(i, (i + 1) % m) for i in range(m) if self.arc_side(i) == face]

    def crossing_keys(self) -> list[tuple[int, int, int]]:
        return [_crossing_key(s, r) for s, r in zip(self.word, self.ranks)]

    def check_embedded(self) -> None:
        """Verify per-segment ranks and pairwise disjointness of face chords."""
        per_seg: dict[int, list[int]] = {}
        for s, r in zip(self.word, self.ranks):
            per_seg.setdefault(s, []).append(r)
        for s, rs in per_seg.items():
            if sorted(rs) != list(range(len(rs))):
                raise DiagramError(f"ranks on segment {s} not contiguous: {rs}")
        keys = self.crossing_keys()
        for face in (UPPER, LOWER):
            ch = self.chords(face)
            for i in range(len(ch)):
                a, b = ch[i]
                for j in range(i + 1, len(ch)):
                    c, d = ch[j]
                    if _chords_cross(keys[a], keys[b], keys[c], keys[d]):
                        raise DiagramError(
                            f"face {face} chords {ch[i]} and {ch[j]} cross")

    # -- topological readings ----------------------------------------------

    def enclosed_punctures(self) -> frozenset[int]:
        """Punctures on the side of the curve away from p_{n-1}.

        Convention: the distinguished outside region is the one containing
        puncture n-1 (equivalently, a basepoint hugging it), so the result
        never contains n-1 and is empty only for the empty diagram.
        """
        counts = self.seg_counts()
        out = []
        parity = 0
        for k in range(self.n - 2, -1, -1):
            parity ^= counts[k + 1] & 1
            if parity:
                out.append(k)
        return frozenset(out)

    def mirror(self) -> "Diagram":
        """Reflect through the circle: swap the two faces."""
        return Diagram(self.n, self.word, self.ranks, self.side0 ^ 1)

    # -- intersection counts -------------------------------------------------

    def intersect_round(self, i: int, j: int) -> int:
        """Minimal intersection number with the round curve around p_i..p_j.

        The round curve crosses the circle once in S_i and once in
        S_{(j+1) mod n}; its position within those segments is free, so the
        count is minimised over both placements.  A chord of this diagram in
        either face crosses the same-face chord of the round curve exactly
        when its endpoints straddle the round curve's crossing points, so the
        count is a sum of straddle indicators, maintained incrementally while
        the two placements sweep over their segments.
        """
        n = self.n
        ga, gb = i % n, (j + 1) % n
        if ga == gb:
            raise DiagramError("round curve gaps coincide")
        m = len(self.word)
        if m == 0:
            return 0
        keys = self.crossing_keys()
        # incident[c] = the two chords at crossing c; chords as index pairs
        chords = [(k, (k + 1) % m) for k in range(m)]
        incident: list[list[int]] = [[] for _ in range(m)]
        for ci, (a, b) in enumerate(chords):
            incident[a].append(ci)
            incident[b].append(ci)
        ranked = {}  # crossings on the two sweep segments, by (seg, rank)
        for idx in range(m):
            if self.word[idx] in (ga, gb):
                ranked[(self.word[idx], self.ranks[idx])] = idx
        counts = self.seg_counts()

        def in_arc(key, xa, xb):
            return _in_cyclic(key, xa, xb)

        xa = _split_key(ga, 0)
        xb = _split_key(gb, 0)
        inside = [in_arc(keys[idx], xa, xb) for idx in range(m)]
        total = sum(inside[a] != inside[b] for a, b in chords)
        best = total

        def toggle(idx):
            nonlocal total
            for ci in incident[idx]:
                a, b = chords[ci]
                total -= inside[a] != inside[b]
            inside[idx] ^= True
            for ci in incident[idx]:
                a, b = chords[ci]
                total += inside[a] != inside[b]

        # Serpentine sweep over the placement grid.
        direction = 1
        for ta in range(counts[ga] + 1):
            if ta > 0:
                toggle(ranked[(ga, ta - 1)])
                if total < best:
                    best = total
            rng = range(counts[gb]) if direction > 0 else range(counts[gb] - 1, -1, -1)
            for tb in rng:
                toggle(ranked[(gb, tb)])
                if total < best:
                    best = total
            direction = -direction
        return best

    def intersect_lower_chords(self, pairs: Iterable[tuple[int, int]]) -> int:
        """Total minimal intersection with disjoint lower-face chords whose
        endpoints are punctures (the reference drawing of an arc system)."""
        keys = self.crossing_keys()
        lower = [(keys[a], keys[b]) for a, b in self.chords(LOWER)]
        total = 0
        for pa, pb in pairs:
            ka, kb = _puncture_key(pa % self.n), _puncture_key(pb % self.n)
            for a, b in lower:
                if _chords_cross(a, b, ka, kb):
                    total += 1
        return total

    # -- mapping classes -----------------------------------------------------

    def drag_below(self, s: int) -> "Diagram":
        """Drag puncture p_{s+1} through the lower face to just before p_s.

        This realises one half twist swapping the adjacent punctures at
        positions s and s+1 (the clockwise one under our drawing convention);
        the mirror conjugate gives the inverse twist.
        """
        n = self.n
        s %= n
        gap = (s + 1) % n            # segment between p_s and p_{s+1}
        merged = (s + 2) % n         # S_{s+1} and S_{s+2} merge here
        m = len(self.word)
        if m == 0:
            return self

        counts = self.seg_counts()
        keys = self.crossing_keys()
        a_key = _puncture_key((s + 1) % n)

        # Chords hooked by the drag: lower arcs with exactly one end in the
        # gap between the swapped punctures.
        dragged = []
        for ci, cj in self.chords(LOWER):
            ends_in_gap = (self.word[ci] == gap) + (self.word[cj] == gap)
            if ends_in_gap == 1:
                dragged.append((ci, cj))

        def separates(x, y):
            xa, xb = keys[x[0]], keys[x[1]]
            ya, yb = keys[y[0]], keys[y[1]]
            side = _in_cyclic(a_key, xa, xb)
            return _in_cyclic(ya, xa, xb) != side and _in_cyclic(yb, xa, xb) != side

        def cmp(x, y):
            if separates(x, y):
                return -1
            if separates(y, x):
                return 1
            return 0

        # First chord met by the moving puncture wraps innermost.
        dragged.sort(key=functools.cmp_to_key(cmp))
        order = {ch: t for t, ch in enumerate(dragged)}

        def relabel(seg: int, rank: int) -> tuple[int, int]:
            if seg == gap:
                return merged, rank
            if seg == merged:
                return merged, counts[gap] + rank
            return seg, rank

        total = len(dragged)
        new_word: list[int] = []
        new_ranks: list[int] = []
        new_sides: list[int] = []
        for idx in range(m):
            seg, rank = relabel(self.word[idx], self.ranks[idx])
            new_word.append(seg)
            new_ranks.append(rank)
            nxt = (idx + 1) % m
            side = self.arc_side(idx)
            hooked = order.get((idx, nxt))
            if hooked is None:
                new_sides.append(side)
                continue
            # Replacement path: q -L- w_R -U- w_L -L- r, with q the gap end.
            w_r = (gap, hooked)
            w_l = (s, counts[s] + total - 1 - hooked)
            if self.word[idx] == gap:
                inserted = [w_r, w_l]
            else:
                inserted = [w_l, w_r]
            new_sides.append(LOWER)
            new_word.append(inserted[0][0])
            new_ranks.append(inserted[0][1])
            new_sides.append(UPPER)
            new_word.append(inserted[1][0])
            new_ranks.append(inserted[1][1])
            new_sides.append(LOWER)

        return Diagram(n, new_word, new_ranks, new_sides[0], _check=True)

    def half_twist(self, i: int, sign: int) -> "Diagram":
        """Apply the half twist swapping punctures i and i+1.

        Positive twists drag through the upper face, negative through the
        lower; the two are mutually inverse.
        """
        if sign not in (1, -1):
            raise DiagramError("sign must be +1 or -1")
        if sign < 0:
            return self.drag_below(i)
        return self.drag_below_mirrored(i)

    def drag_below_mirrored(self, i: int) -> "Diagram":
        return self.mirror().drag_below(i).mirror()

    def apply_word(self, letters: Sequence[tuple[int, int]]) -> "Diagram":
        """Apply a twist word; the last letter acts first (composition order)."""
        d = self
        for gen, sign in reversed(letters):
            d = d.half_twist(gen, sign)
        return d


def round_diagram(n: int, i: int, j: int) -> Diagram:
    """Diagram of the convex curve enclosing the consecutive block p_i..p_j."""
    ga, gb = i % n, (j + 1) % n
    if ga == gb:
        raise DiagramError("round curve must exclude at least one gap")
    return Diagram(n, [ga, gb], [0, 0], UPPER)


def _reduce(word: list[int], ranks: list[int], side0: int):
    """Remove empty bigons against the circle until none remain.

    A cancellable pair is two crossings adjacent along the curve, on the same
    segment, with no other crossing between them on that segment: the arc
    between them cuts an empty bigon off the circle.  Entries carry the side
    of the arc *after* each crossing; deleting the pair automatically merges
    the three arcs into one with the surviving side.
    """
    entries = [[s, r, side0 ^ (i & 1)]
               for i, (s, r) in enumerate(zip(word, ranks))]
    while entries:
        _renumber_entries(entries)
        m = len(entries)
        hit = None
        for i in range(m):
            j = (i + 1) % m
            if entries[i][0] == entries[j][0] and \
                    abs(entries[i][1] - entries[j][1]) == 1:
                hit = i
                break
        if hit is None:
            break
        if m == 2:
            return [], [], 0
        if hit == m - 1:
            entries = entries[1:] + entries[:1]
            hit -= 1
        del entries[hit:hit + 2]
    if not entries:
        return [], [], 0
    # entries[i][2] is the side of the arc from crossing i to i+1, so the
    # surviving side0 is entries[0][2].
    return [e[0] for e in entries], [e[1] for e in entries], entries[0][2]


def _renumber_entries(entries) -> None:
    per_seg: dict[int, list[int]] = {}
    for idx, e in enumerate(entries):
        per_seg.setdefault(e[0], []).append(idx)
    for s, idxs in per_seg.items():
        for new_r, idx in enumerate(sorted(idxs, key=lambda k: entries[k][1])):
            entries[idx][1] = new_r


def _renumber(word: list[int], ranks: list[int]):
    """Make per-segment ranks contiguous 0..m-1 preserving order."""
    per_seg: dict[int, list[int]] = {}
    for idx, (s, r) in enumerate(zip(word, ranks)):
        per_seg.setdefault(s, []).append(idx)
    new_ranks = list(ranks)
    for s, idxs in per_seg.items():
        for new_r, idx in enumerate(sorted(idxs, key=lambda k: ranks[k])):
            new_ranks[idx] = new_r
    return word, new_ranks


def _canonical_rotation(word: list[int], ranks: list[int], side0: int):
    """Pick the lexicographically least rotation/reflection of the sequence."""
    m = len(word)
    if m == 0:
        return word, ranks, 0
    best = None
    seq = list(zip(word, ranks))
    for direction in (1, -1):
        if direction == 1:
            base = seq
            base_side = side0
        else:
            base = [seq[0]] + seq[:0:-1]
            base_side = side0 ^ 1
        for r in range(m):
            rot = base[r:] + base[:r]
            cand = (base_side ^ (r & 1), tuple(rot))
            if best is None or cand < best:
                best = cand
    side, rot = best
    word = [s for s, _ in rot]
    ranks = [r for _, r in rot]
    return word, ranks, side
