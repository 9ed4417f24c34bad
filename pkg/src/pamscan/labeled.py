"""Labeled interval configurations: normal forms, windows, admissibility.

A labeled configuration is a multiset of (interval, label) pairs with labels
in a finite partial abelian monoid.  Tensor membership ties the two partial
sums together: wherever intervals refuse to merge, their labels must sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .pam import UNIT, DomainError
from .intervals import CLOSED, OPEN, Interval, clip_interval, is_compatible
from .tensor import ConfigCarrier, EqVerdict, PamCarrier, in_T

_CONFIGS = ConfigCarrier()


class DecomposeError(DomainError):
    """A window's content admits no elementary decomposition."""


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def lc_sorted(pairs, pam=None):
    """Canonical ordering of a labeled configuration."""
    if pam is None:
        return tuple(sorted(pairs, key=lambda jm: (jm[0].sort_key(), jm[1])))
    return tuple(
        sorted(pairs, key=lambda jm: (jm[0].sort_key(), pam.index(jm[1])))
    )


def pi_mul(xi):
    """Forget labels."""
    return tuple(j for j, _ in xi)


def in_T_labeled(xi, pam, witness=False):
    """Tensor membership of a labeled configuration.

    A compatible interval multiset short-circuits to True: all of its
    sub-multisets are compatible, so neither direction of the tensor
    condition has anything to force.
    """
    xi = list(xi)
    for _, m in xi:
        pam.check_element(m)
    if is_compatible(pi_mul(xi)):
        return (True, None) if witness else True
    pairs = [((j,), m) for j, m in xi]
    return in_T(_CONFIGS, PamCarrier(pam), pairs, witness=witness)


def labeled_normalize(xi, pam):
    """Deterministic normal form of a labeled configuration.

    Repeatedly applies the leftmost applicable move: drop zero labels, drop
    degenerate intervals, merge identical intervals by summing labels, paste
    touching equal-label pieces with complementary parities.  A failing
    label merge means the input was outside the tensor region.
    """
    items = list(lc_sorted(xi, pam))
    while True:
        items.sort(key=lambda jm: (jm[0].sort_key(), pam.index(jm[1])))
        move = _nf_step(items, pam)
        if not move:
            return tuple(items)


def _nf_step(items, pam):
    for i, (j, m) in enumerate(items):
        if m == UNIT:
            del items[i]
            return True
    for i, (j, m) in enumerate(items):
        if j.is_degenerate:
            del items[i]
            return True
    for i in range(len(items) - 1):
        j1, m1 = items[i]
        j2, m2 = items[i + 1]
        if j1 == j2:
            s = pam.pair_sum(m1, m2)
            if s is None:
                raise DomainError(
                    "not in the tensor region: coincident interval %r carries "
                    "unsummable labels (%s, %s)" % (j1, m1, m2)
                )
            items[i : i + 2] = [(j1, s)]
            return True
    for i in range(len(items)):
        j1, m1 = items[i]
        for k in range(i + 1, len(items)):
            j2, m2 = items[k]
            if m1 == m2 and j1.v == j2.u and j1.q != j2.p:
                items[k : k + 1] = []
                items[i : i + 1] = [(Interval(j1.u, j2.v, j1.p, j2.q), m1)]
                return True
    return False


def config_eq(x1, x2, pam, method="nf", depth=6, node_cap=20000):
    """Equality in the labeled configuration space.

    ``nf`` compares normal forms (exact).  ``search`` runs a bounded
    bidirectional walk over one-step rewrites and may return UNKNOWN.
    """
    if method == "nf":
        return (
            EqVerdict.EQUAL
            if labeled_normalize(x1, pam) == labeled_normalize(x2, pam)
            else EqVerdict.DISTINCT
        )
    if method != "search":
        raise ValueError("unknown method %r" % method)
    cuts = sorted(
        {j.u for j, _ in list(x1) + list(x2)} | {j.v for j, _ in list(x1) + list(x2)}
    )
    start_a = lc_sorted(x1, pam)
    start_b = lc_sorted(x2, pam)
    seen_a, seen_b = {start_a}, {start_b}
    frontier_a, frontier_b = {start_a}, {start_b}
    if seen_a & seen_b:
        return EqVerdict.EQUAL
    for _ in range(depth):
        if not frontier_a and not frontier_b:
            return EqVerdict.DISTINCT
        if frontier_a and (not frontier_b or len(seen_a) <= len(seen_b)):
            grow, seen = frontier_a, seen_a
        else:
            grow, seen = frontier_b, seen_b
        new = set()
        for node in grow:
            new |= labeled_rewrite_neighbors(node, pam, extra_cuts=cuts)
        new -= seen
        seen |= new
        if grow is frontier_a:
            frontier_a = new
        else:
            frontier_b = new
        if seen_a & seen_b:
            return EqVerdict.EQUAL
        if len(seen_a) + len(seen_b) > node_cap:
            return EqVerdict.UNKNOWN
    if not frontier_a and not frontier_b:
        return EqVerdict.DISTINCT
    return EqVerdict.UNKNOWN


def labeled_rewrite_neighbors(xi, pam, extra_cuts=()):
    """One-step rewrites of a labeled configuration.

    Pastes and unpastes (cut points drawn from endpoints, piece midpoints and
    ``extra_cuts``), merges and splits of labels over coincident intervals,
    and drops of zero labels or degenerate pieces.
    """
    items = list(xi)
    out = set()

    def admit(cand):
        if in_T_labeled(cand, pam):
            out.add(lc_sorted(cand, pam))

    for i, (j, m) in enumerate(items):
        rest = items[:i] + items[i + 1 :]
        if m == UNIT or j.is_degenerate:
            admit(rest)
        cuts = {j.u, j.v} | set(extra_cuts) | {(j.u + j.v) / 2}
        for w in cuts:
            w = _frac(w)
            if j.u < w < j.v:
                for r in (CLOSED, OPEN):
                    admit(rest + [(Interval(j.u, w, j.p, r), m), (Interval(w, j.v, -r, j.q), m)])
        if m != UNIT:
            for a, b in pam.nonzero_partitions(m):
                admit(rest + [(j, a), (j, b)])

    for i in range(len(items)):
        j1, m1 = items[i]
        for k in range(i + 1, len(items)):
            j2, m2 = items[k]
            rest = [p for idx, p in enumerate(items) if idx not in (i, k)]
            if j1 == j2:
                s = pam.pair_sum(m1, m2)
                if s is not None:
                    admit(rest + [(j1, s)])
            if m1 == m2:
                if j1.v == j2.u and j1.q != j2.p:
                    admit(rest + [(Interval(j1.u, j2.v, j1.p, j2.q), m1)])
                if j2.v == j1.u and j2.q != j1.p:
                    admit(rest + [(Interval(j2.u, j1.v, j2.p, j1.q), m1)])
    return out


def restrict(xi, a, b):
    """Set intersection with the open window (a, b), labels kept."""
    a, b = _frac(a), _frac(b)
    out = []
    for j, m in xi:
        c = clip_interval(j, a, b)
        if c is not None:
            out.append((c, m))
    return lc_sorted(out)


def mirror_config(xi):
    return lc_sorted((j.mirror(), m) for j, m in xi)


def translate_config(xi, d):
    return lc_sorted((j.translate(d), m) for j, m in xi)


def rescale_config(xi, k):
    """Scale all endpoints by a positive rational."""
    k = _frac(k)
    if k <= 0:
        raise DomainError("rescale factor must be positive")
    return lc_sorted((Interval(j.u * k, j.v * k, j.p, j.q), m) for j, m in xi)


def double(xi):
    """The configuration together with its mirror image."""
    return lc_sorted(tuple(xi) + mirror_config(xi))


def is_mirror_invariant(xi, pam):
    return labeled_normalize(xi, pam) == labeled_normalize(mirror_config(xi), pam)


def split_sides(nf):
    """Split a normal form into negative, zero-crossing and positive parts.

    Zero-crossing pieces must be mirror-shaped: (-w, w) with complementary
    parities.  Pieces with an endpoint exactly at 0 must be open there.
    """
    s_minus, s_zero, s_plus = [], [], []
    for j, m in nf:
        if j.u < 0 < j.v:
            if j.u != -j.v or j.p != -j.q:
                raise DomainError(
                    "zero-crossing piece %r is not mirror-shaped" % (j,)
                )
            s_zero.append((j, m))
        elif j.u >= 0:
            if j.u == 0 and j.p == CLOSED:
                raise DomainError("piece %r is closed at 0" % (j,))
            s_plus.append((j, m))
        elif j.v <= 0:
            if j.v == 0 and j.q == CLOSED:
                raise DomainError("piece %r is closed at 0" % (j,))
            s_minus.append((j, m))
    return tuple(s_minus), tuple(s_zero), tuple(s_plus)


def positive_part(eta, pam):
    """Fold a mirror-invariant configuration onto the half line.

    Zero-crossing pieces (-w, w) become [0, w) with the right parity kept;
    the positive pieces are kept as they are.  The negative side must be
    exactly the mirror of the positive side.
    """
    nf = labeled_normalize(eta, pam)
    if labeled_normalize(mirror_config(nf), pam) != nf:
        raise DomainError("configuration is not mirror-invariant")
    s_minus, s_zero, s_plus = split_sides(nf)
    if mirror_config(s_minus) != lc_sorted(s_plus):
        raise DomainError("negative side is not the mirror of the positive side")
    folded = [(Interval(0, j.v, CLOSED, j.q), m) for j, m in s_zero]
    return lc_sorted(folded + list(s_plus))


# --- window decomposition -------------------------------------------------

E1_WHOLE = "whole"
E1_LEFT = "left"
E1_RIGHT = "right"
E1_INTERIOR = "interior"


@dataclass(frozen=True)
class Elem1:
    kind: str
    piece: Interval
    label: str

    def sort_key(self):
        return (0, self.piece.sort_key(), self.label)


@dataclass(frozen=True)
class Elem2:
    """A cut pair: anchored strands with one shared label, counted once."""

    left: Interval
    right: Interval
    label: str

    def sort_key(self):
        return (1, self.left.sort_key(), self.right.sort_key(), self.label)


@dataclass(frozen=True)
class DecompResult:
    items: tuple
    count: int


def _classify_piece(j, a, b):
    if j.u == a and j.v == b:
        if j.p == OPEN and j.q == OPEN:
            return E1_WHOLE
        return None
    if j.u == a:
        if j.p == OPEN and a < j.v < b:
            return E1_LEFT
        return None
    if j.v == b:
        if j.q == OPEN and a < j.u < b:
            return E1_RIGHT
        return None
    if a < j.u and j.v < b:
        if j.p + j.q == 0:
            return E1_INTERIOR
        return None
    return None


def decompose_window(xi_t, a, b, pam):
    """Decompose window content into elementary configurations.

    The content is first normalized (so the reading is class-level), then
    each piece is classified against the window (a, b); left- and
    right-anchored pieces with one shared label and complementary cut
    parities may pair up into cut pairs.  All matchings are enumerated; a
    matching is valid when the resulting label tuple is summable.  Returns
    the first valid decomposition under a deterministic preference for more
    pairings, along with the brute-force count of valid matchings.
    """
    a, b = _frac(a), _frac(b)
    w = labeled_normalize(xi_t, pam)
    ok, wit = in_T_labeled(w, pam, witness=True)
    if not ok:
        side, idx = wit
        labels = [w[i][1] for i in idx]
        if side == "second":
            raise DecomposeError(
                "window (%s, %s): labels %r are pairwise insummable but their "
                "intervals do not merge" % (a, b, labels)
            )
        raise DecomposeError(
            "window (%s, %s): pieces %r collide but their labels %r are not "
            "jointly summable" % (a, b, [w[i][0] for i in idx], labels)
        )
    fixed = []
    lefts, rights = [], []
    for j, m in w:
        kind = _classify_piece(j, a, b)
        if kind is None:
            raise DecomposeError(
                "window (%s, %s): piece %r:%s is not elementary" % (a, b, j, m)
            )
        if kind == E1_LEFT:
            lefts.append((j, m))
        elif kind == E1_RIGHT:
            rights.append((j, m))
        else:
            fixed.append(Elem1(kind, j, m))

    compatible = {}
    for li, (jl, ml) in enumerate(lefts):
        compatible[li] = [
            ri
            for ri, (jr, mr) in enumerate(rights)
            if ml == mr and jl.v < jr.u and jl.q + jr.p == 0
        ]

    valid = []

    def assignments(li, used, acc):
        if li == len(lefts):
            valid.append(list(acc))
            return
        # prefer pairing: matched options first, then unmatched
        for ri in compatible[li]:
            if ri not in used:
                acc.append((li, ri))
                assignments(li + 1, used | {ri}, acc)
                acc.pop()
        assignments(li + 1, used, acc)

    assignments(0, frozenset(), [])

    results = []
    for matching in valid:
        matched_l = {li for li, _ in matching}
        matched_r = {ri for _, ri in matching}
        items = list(fixed)
        labels = [e.label for e in fixed]
        for li, ri in matching:
            jl, ml = lefts[li]
            jr, _ = rights[ri]
            items.append(Elem2(jl, jr, ml))
            labels.append(ml)
        for li, (jl, ml) in enumerate(lefts):
            if li not in matched_l:
                items.append(Elem1(E1_LEFT, jl, ml))
                labels.append(ml)
        for ri, (jr, mr) in enumerate(rights):
            if ri not in matched_r:
                items.append(Elem1(E1_RIGHT, jr, mr))
                labels.append(mr)
        if len(labels) > 8:
            raise DecomposeError(
                "window (%s, %s): %d elementary labels exceed the desk-scale "
                "summability bound" % (a, b, len(labels))
            )
        if pam.sum_tuple(labels) is not None:
            results.append(tuple(sorted(items, key=lambda e: e.sort_key())))
    if not results:
        raise DecomposeError(
            "window (%s, %s): no matching makes the label multiset summable "
            "(content %r)" % (a, b, list(w))
        )
    # assignments() emits richer matchings first, so results[0] prefers pairs
    return DecompResult(items=results[0], count=len(results))


def window_sweep_points(xi, eps):
    """Window centers that cover every combinatorial type of restriction."""
    eps = _frac(eps)
    ends = sorted({x for j, _ in xi for x in (j.u, j.v)})
    if not ends:
        return [Fraction(0)]
    crit = sorted({e + d for e in ends for d in (-eps, eps)})
    ts = set(crit)
    for x, y in zip(crit, crit[1:]):
        ts.add((x + y) / 2)
    ts.add(crit[0] - 1)
    ts.add(crit[-1] + 1)
    return sorted(ts)


def admissibility_sweep(xi, eps, pam):
    """Decompose every combinatorially distinct window; yields (t, result)."""
    eps = _frac(eps)
    for t in window_sweep_points(xi, eps):
        content = restrict(xi, t - eps, t + eps)
        yield t, decompose_window(content, t - eps, t + eps, pam)


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    reason: str = None

    def __bool__(self):
        return self.ok


def is_admissible(xi, eps, support, pam):
    """Admissibility: tensor membership, decomposable windows, support.

    Returns an AdmissibilityReport; failures carry a reason instead of
    raising.
    """
    eps = _frac(eps)
    a, b = _frac(support[0]), _frac(support[1])
    if b - a <= eps:
        raise DomainError("support window must be wider than eps")
    xi = lc_sorted(xi, pam)
    ok, wit = in_T_labeled(xi, pam, witness=True)
    if not ok:
        return AdmissibilityReport(False, "not in the tensor region: %r" % (wit,))
    unique_required = pam.is_self_insummable()
    try:
        for t, res in admissibility_sweep(xi, eps, pam):
            if unique_required and res.count != 1:
                return AdmissibilityReport(
                    False,
                    "window at t=%s has %d decompositions over a self-insummable "
                    "pam" % (t, res.count),
                )
    except DomainError as e:
        return AdmissibilityReport(False, str(e))
    inner = restrict(xi, a + eps / 2, b - eps / 2)
    if inner != xi:
        return AdmissibilityReport(
            False,
            "support leaks outside (%s, %s)" % (a + eps / 2, b - eps / 2),
        )
    return AdmissibilityReport(True)


@dataclass(frozen=True)
class ThickenedConfig:
    """A labeled configuration with its admissibility data."""

    config: tuple
    eps: Fraction
    support: tuple

    def validate(self, pam):
        report = is_admissible(self.config, self.eps, self.support, pam)
        if not report:
            raise DomainError(report.reason)
        return self


@dataclass(frozen=True)
class SymmetricConfig:
    """A mirror-invariant configuration on a symmetric window (-s, s)."""

    config: tuple
    s: Fraction

    def validate(self, pam):
        if not is_mirror_invariant(self.config, pam):
            raise DomainError("configuration is not mirror-invariant")
        report = is_admissible(self.config, 1, (-self.s, self.s), pam)
        if not report:
            raise DomainError(report.reason)
        return self
