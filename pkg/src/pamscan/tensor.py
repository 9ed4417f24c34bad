"""Tensor-style multiset calculus over a pair of partial sum carriers.

A carrier provides a partial pairwise sum, tuple sums, and (when finite or
enumerable) element and partition listings.  A multiset of pairs lies in the
tensor region when, for every sub-multiset, pairwise insummability of one
projection forces tuple summability of the other, in both directions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .pam import UNIT, DomainError, FinitePam, PamError
from .intervals import Interval, merge_summable, normalize_config, IncompatibleConfig

MAX_TENSOR_SIZE = 16


class EqVerdict(enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


class PamCarrier:
    """A finite partial abelian monoid viewed as a sum carrier."""

    is_trivial = False

    def __init__(self, pam: FinitePam):
        self.pam = pam

    def zero(self):
        return UNIT

    def is_zero(self, x):
        return self.pam.is_zero(x)

    def pair_sum(self, x, y):
        return self.pam.pair_sum(x, y)

    def tuple_sum(self, xs):
        return self.pam.sum_tuple(xs)

    def partitions(self, m):
        return self.pam.partitions(m)

    def elements(self):
        return list(self.pam.elements)

    def sort_key(self, x):
        return self.pam.index(x)


class TrivialCarrier:
    """A based set with the trivial partial sum: only the base is a unit."""

    is_trivial = True

    def __init__(self, points, base="0"):
        self.points = tuple(points)
        self.base = base
        if base not in self.points:
            raise PamError("base %r missing from carrier points" % (base,))

    def zero(self):
        return self.base

    def is_zero(self, x):
        if x not in self.points:
            raise DomainError("unknown point %r" % (x,))
        return x == self.base

    def pair_sum(self, x, y):
        if self.is_zero(x):
            return y
        if self.is_zero(y):
            return x
        return None

    def tuple_sum(self, xs):
        nontrivial = [x for x in xs if not self.is_zero(x)]
        if len(nontrivial) > 1:
            return None
        return nontrivial[0] if nontrivial else self.base

    def partitions(self, m):
        self.is_zero(m)
        if m == self.base:
            return [(self.base, self.base)]
        return [(self.base, m), (m, self.base)]

    def elements(self):
        return list(self.points)

    def sort_key(self, x):
        return self.points.index(x)


BASEPOINT = Fraction(1)


def norm_circle(t):
    """Normalize a rational to the circle's fundamental domain (-1, 1]."""
    t = Fraction(t)
    r = t % 2
    if r > 1:
        r -= 2
    return r


class CircleCarrier:
    """The circle of radius one as a based set; basepoint 1 (= -1)."""

    is_trivial = True

    def __init__(self):
        self.base = BASEPOINT

    def zero(self):
        return self.base

    def is_zero(self, t):
        return norm_circle(t) == self.base

    def pair_sum(self, x, y):
        if self.is_zero(x):
            return norm_circle(y)
        if self.is_zero(y):
            return norm_circle(x)
        return None

    def tuple_sum(self, xs):
        nontrivial = [norm_circle(x) for x in xs if not self.is_zero(x)]
        if len(nontrivial) > 1:
            return None
        return nontrivial[0] if nontrivial else self.base

    def partitions(self, m):
        m = norm_circle(m)
        if m == self.base:
            return [(self.base, self.base)]
        return [(self.base, m), (m, self.base)]

    def elements(self):
        return None

    def sort_key(self, t):
        return norm_circle(t)


class ConfigCarrier:
    """Reduced interval configurations under the merge partial sum."""

    is_trivial = False

    def __init__(self):
        pass

    def zero(self):
        return ()

    def is_zero(self, c):
        return len(self._reduce(c)) == 0

    @staticmethod
    def _reduce(c):
        if isinstance(c, Interval):
            c = (c,)
        return normalize_config(c)

    def pair_sum(self, c1, c2):
        return merge_summable(self._reduce(c1), self._reduce(c2))

    def tuple_sum(self, cs):
        pieces = []
        for c in cs:
            pieces.extend(self._reduce(c))
        try:
            return normalize_config(pieces)
        except IncompatibleConfig:
            return None

    def partitions(self, c):
        return None

    def elements(self):
        return None

    def sort_key(self, c):
        return tuple(j.sort_key() for j in self._reduce(c))


def _insummable_masks(carrier, xs):
    """Bitmask per index: which partners are insummable with it."""
    n = len(xs)
    masks = [0] * n
    for i in range(n):
        for k in range(i + 1, n):
            if carrier.pair_sum(xs[i], xs[k]) is None:
                masks[i] |= 1 << k
                masks[k] |= 1 << i
    return masks


def in_T(c1, c2, pairs, witness=False):
    """Tensor-region membership for a multiset of pairs.

    For every sub-multiset: if the first coordinates are pairwise insummable
    the second coordinates must be tuple-summable, and symmetrically.  The
    scan enumerates insummability cliques instead of raw subsets; a clique's
    sub-multisets are covered because summability is closed under taking
    sub-tuples.
    """
    pairs = list(pairs)
    n = len(pairs)
    if n > MAX_TENSOR_SIZE:
        raise DomainError(
            "multiset too large for tensor membership check: %d > %d"
            % (n, MAX_TENSOR_SIZE)
        )
    for first_side in (True, False):
        if first_side:
            us = [p[0] for p in pairs]
            vs = [p[1] for p in pairs]
            ca, cb = c1, c2
        else:
            us = [p[1] for p in pairs]
            vs = [p[0] for p in pairs]
            ca, cb = c2, c1
        masks = _insummable_masks(ca, us)
        bad = _clique_scan(masks, vs, cb)
        if bad is not None:
            if witness:
                return False, (("first" if first_side else "second"), sorted(bad))
            return False
    if witness:
        return True, None
    return True


def _clique_scan(masks, others, carrier):
    """Find a pairwise-insummable clique whose partner tuple is unsummable.

    Returns the witnessing index list, or None.  Recursion only extends
    cliques, so the number of visited nodes is the number of cliques in the
    insummability graph; summability of sub-tuples is monotone, so pruning
    on already-summable prefixes is not sound and every clique is checked.
    """
    n = len(masks)
    found = []

    def extend(indices, allowed, start):
        if len(indices) >= 2:
            if carrier.tuple_sum([others[i] for i in indices]) is None:
                found.append(list(indices))
                return True
        for i in range(start, n):
            if not (allowed >> i) & 1:
                continue
            indices.append(i)
            if extend(indices, allowed & masks[i], i + 1):
                return True
            indices.pop()
        return False

    if extend([], (1 << n) - 1, 0):
        return found[0]
    return None


def is_pairwise_insummable(carrier, xs):
    xs = list(xs)
    return all(
        carrier.pair_sum(xs[i], xs[k]) is None
        for i in range(len(xs))
        for k in range(i + 1, len(xs))
    )


def _canon_pairs(c1, c2, pairs):
    return tuple(sorted(pairs, key=lambda p: (c1.sort_key(p[0]), c2.sort_key(p[1]))))


def rewrite_neighbors(c1, c2, pairs):
    """One-step rewrites of a pair multiset, filtered to the tensor region.

    Moves: drop/insert a pair with a zero coordinate (insertions use the
    other carrier's elements when finite, and reuse coordinates already
    present otherwise); split a coordinate along the carrier's partitions;
    merge two pairs that agree in the other coordinate and whose remaining
    coordinates are summable.
    """
    pairs = list(pairs)
    out = set()

    def admit(cand):
        cand = list(cand)
        if len(cand) <= MAX_TENSOR_SIZE and in_T(c1, c2, cand):
            out.add(_canon_pairs(c1, c2, cand))

    for i, (x, y) in enumerate(pairs):
        if c1.is_zero(x) or c2.is_zero(y):
            admit(pairs[:i] + pairs[i + 1 :])

    first_coords = [p[0] for p in pairs]
    second_coords = [p[1] for p in pairs]
    e1 = c1.elements()
    e2 = c2.elements()
    for x in e1 if e1 is not None else set(first_coords):
        admit(pairs + [(x, c2.zero())])
    for y in e2 if e2 is not None else set(second_coords):
        admit(pairs + [(c1.zero(), y)])

    for i, (x, y) in enumerate(pairs):
        rest = pairs[:i] + pairs[i + 1 :]
        parts1 = c1.partitions(x)
        if parts1 is not None:
            for x1, x2 in parts1:
                admit(rest + [(x1, y), (x2, y)])
        parts2 = c2.partitions(y)
        if parts2 is not None:
            for y1, y2 in parts2:
                admit(rest + [(x, y1), (x, y2)])

    for i in range(len(pairs)):
        for k in range(i + 1, len(pairs)):
            (x1, y1), (x2, y2) = pairs[i], pairs[k]
            rest = [p for idx, p in enumerate(pairs) if idx not in (i, k)]
            if y1 == y2:
                s = c1.pair_sum(x1, x2)
                if s is not None:
                    admit(rest + [(s, y1)])
            if x1 == x2:
                s = c2.pair_sum(y1, y2)
                if s is not None:
                    admit(rest + [(x1, s)])
    return out


def _trivial_canon(c1, c2, pairs):
    """Exact canonical form when either carrier is trivial.

    Group by the trivial-side coordinate, sum the other side within each
    group (summability is forced by tensor membership), then drop pairs with
    a zero on either side.
    """
    if c1.is_trivial:
        key_side, sum_side = 0, 1
        kc, sc = c1, c2
    else:
        key_side, sum_side = 1, 0
        kc, sc = c2, c1
    groups = {}
    for p in pairs:
        k = p[key_side]
        if kc.is_zero(k):
            continue
        if isinstance(kc, CircleCarrier):
            k = norm_circle(k)
        groups.setdefault(k, []).append(p[sum_side])
    out = []
    for k, vals in groups.items():
        total = sc.tuple_sum(vals)
        if total is None:
            raise DomainError(
                "not in the tensor region: coordinate %r carries unsummable labels %r"
                % (k, vals)
            )
        if sc.is_zero(total):
            continue
        pair = (k, total) if key_side == 0 else (total, k)
        out.append(pair)
    return _canon_pairs(c1, c2, out)


def tensor_eq(c1, c2, a, b, depth=6):
    """Decide rewrite equivalence of two pair multisets.

    With a trivial carrier on either side the canonical form is exact.
    Otherwise a bounded bidirectional search over one-step rewrites returns
    EQUAL, DISTINCT (both reachability sets exhausted), or UNKNOWN.
    """
    if not in_T(c1, c2, a) or not in_T(c1, c2, b):
        raise DomainError("tensor_eq requires both multisets in the tensor region")
    if c1.is_trivial or c2.is_trivial:
        return (
            EqVerdict.EQUAL
            if _trivial_canon(c1, c2, a) == _trivial_canon(c1, c2, b)
            else EqVerdict.DISTINCT
        )
    start_a = _canon_pairs(c1, c2, a)
    start_b = _canon_pairs(c1, c2, b)
    seen_a, seen_b = {start_a}, {start_b}
    frontier_a, frontier_b = {start_a}, {start_b}
    if seen_a & seen_b:
        return EqVerdict.EQUAL
    for _ in range(depth):
        if not frontier_a and not frontier_b:
            return EqVerdict.DISTINCT
        # grow the smaller frontier first
        if frontier_a and (not frontier_b or len(seen_a) <= len(seen_b)):
            new = set()
            for node in frontier_a:
                new |= rewrite_neighbors(c1, c2, node)
            frontier_a = new - seen_a
            seen_a |= frontier_a
        else:
            new = set()
            for node in frontier_b:
                new |= rewrite_neighbors(c1, c2, node)
            frontier_b = new - seen_b
            seen_b |= frontier_b
        if seen_a & seen_b:
            return EqVerdict.EQUAL
    if not frontier_a and not frontier_b:
        return EqVerdict.DISTINCT
    return EqVerdict.UNKNOWN


@dataclass(frozen=True)
class BMElement:
    """Canonical point of the circle tensored with a pam.

    ``m0`` is the optional label at circle coordinate 0; ``points`` are
    (coordinate, label) pairs with coordinates strictly increasing in
    (-1, 1), none zero, and no zero labels.
    """

    m0: object
    points: tuple

    def __post_init__(self):
        pts = tuple((Fraction(t), m) for t, m in self.points)
        object.__setattr__(self, "points", pts)
        last = None
        for t, m in pts:
            if not (-1 < t < 1) or t == 0:
                raise ValueError("coordinate %s outside the punctured domain" % t)
            if last is not None and t <= last:
                raise ValueError("coordinates must be strictly increasing")
            if m == UNIT:
                raise ValueError("zero label at coordinate %s" % t)
            last = t
        if self.m0 == UNIT:
            raise ValueError("use m0=None for an absent zero-coordinate label")

    @property
    def is_empty(self):
        return self.m0 is None and not self.points

    @property
    def level(self):
        """Number of points, the zero-coordinate one included."""
        return (0 if self.m0 is None else 1) + len(self.points)

    def to_pairs(self):
        out = []
        if self.m0 is not None:
            out.append((Fraction(0), self.m0))
        out.extend(self.points)
        return out


BM_EMPTY = BMElement(None, ())


def bm_canon(pam, pairs):
    """Canonical form of a circle/label pair multiset.

    Drops basepoint coordinates and zero labels, requires the remaining
    labels to be jointly summable (raising DomainError with a minimal
    witnessing subset otherwise), merges coincident coordinates by summing,
    and drops groups whose sum is zero.
    """
    cleaned = []
    for t, m in pairs:
        t = norm_circle(t)
        pam.check_element(m)
        if t == BASEPOINT or m == UNIT:
            continue
        cleaned.append((t, m))
    labels = [m for _, m in cleaned]
    if pam.sum_tuple(labels) is None:
        raise DomainError(
            "not in the tensor region: labels %r are not jointly summable"
            % (_minimal_unsummable(pam, labels),)
        )
    groups = {}
    for t, m in cleaned:
        groups.setdefault(t, []).append(m)
    merged = []
    m0 = None
    for t in sorted(groups):
        total = pam.sum_tuple(groups[t])
        if total == UNIT:
            continue
        if t == 0:
            m0 = total
        else:
            merged.append((t, total))
    return BMElement(m0, tuple(merged))


def _minimal_unsummable(pam, labels):
    import itertools as _it

    for size in range(2, len(labels) + 1):
        for combo in _it.combinations(labels, size):
            if pam.sum_tuple(combo) is None:
                return list(combo)
    return list(labels)


def bm_filtration_level(z: BMElement):
    return z.level
