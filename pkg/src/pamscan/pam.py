"""Finite partial abelian monoids.

A partial abelian monoid is a based set with a partially defined, symmetric,
associative sum for which the base element "0" is a unit.  Sums are stored
sparsely: a pair that is absent from the table is insummable.  Unit sums
(0 + a = a) are implicit and never stored.
"""

from __future__ import annotations

import itertools

UNIT = "0"


class PamError(Exception):
    """Structural problem: malformed table or violated axiom."""

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations or [])


class DomainError(Exception):
    """A value lies outside the domain of the requested operation."""


class FinitePam:
    """A finite partial abelian monoid given by an explicit sum table.

    ``sums`` maps unordered pairs of element ids to their sum.  The
    constructor validates the whole structure and raises PamError carrying
    every violation found, each with a witnessing triple or pair.
    """

    __slots__ = ("name", "elements", "_index", "_sums", "_tuple_cache")

    def __init__(self, name, elements, sums):
        self.name = name
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._sums = {}
        self._tuple_cache = {}
        problems = self._build(sums)
        problems += self._violations()
        if problems:
            raise PamError(
                "invalid partial abelian monoid %r: %s" % (name, "; ".join(problems)),
                violations=problems,
            )

    def _build(self, sums):
        out = []
        if len(set(self.elements)) != len(self.elements):
            out.append("duplicate element ids")
        if UNIT not in self._index:
            out.append("missing unit element %r" % UNIT)
            return out
        for (a, b), c in dict(sums).items():
            for x in (a, b, c):
                if x not in self._index:
                    out.append("sum %s + %s = %s uses unknown element %s" % (a, b, c, x))
                    break
            else:
                if a == UNIT or b == UNIT:
                    # implicit unit sums may be restated, but only consistently
                    other = b if a == UNIT else a
                    if c != other:
                        out.append("unit violation: %s + %s = %s" % (a, b, c))
                    continue
                key = self._key(a, b)
                if key in self._sums and self._sums[key] != c:
                    out.append(
                        "conflicting sums for (%s, %s): %s and %s"
                        % (a, b, self._sums[key], c)
                    )
                else:
                    self._sums[key] = c
        return out

    def _key(self, a, b):
        if self._index[a] <= self._index[b]:
            return (a, b)
        return (b, a)

    def _violations(self):
        """Exhaustive associativity scan over ordered triples.

        The axiom: (a,b) and (a+b,c) are summable iff (b,c) and (a,b+c) are,
        and then the totals agree.  Each failure reports its witnessing
        triple.
        """
        if UNIT not in self._index:
            return []
        out = []
        for a, b, c in itertools.product(self.elements, repeat=3):
            ab = self.pair_sum(a, b)
            left = self.pair_sum(ab, c) if ab is not None else None
            bc = self.pair_sum(b, c)
            right = self.pair_sum(a, bc) if bc is not None else None
            if (left is None) != (right is None):
                side = "(%s+%s)+%s" % (a, b, c) if left is not None else "%s+(%s+%s)" % (a, b, c)
                out.append(
                    "associativity fails at triple (%s, %s, %s): only %s is defined"
                    % (a, b, c, side)
                )
            elif left is not None and left != right:
                out.append(
                    "associativity fails at triple (%s, %s, %s): %s != %s"
                    % (a, b, c, left, right)
                )
        return out

    def check_element(self, x):
        if x not in self._index:
            raise DomainError("unknown element %r of pam %r" % (x, self.name))
        return x

    def index(self, x):
        return self._index[self.check_element(x)]

    def is_zero(self, x):
        return self.check_element(x) == UNIT

    def pair_sum(self, a, b):
        """The sum of two elements, or None when the pair is insummable."""
        self.check_element(a)
        self.check_element(b)
        if a == UNIT:
            return b
        if b == UNIT:
            return a
        return self._sums.get(self._key(a, b))

    def defined(self, a, b):
        return self.pair_sum(a, b) is not None

    def sum_tuple(self, elems):
        """Total sum of a tuple, None if undefined.

        A tuple is summable when every ordering folds left-to-right with all
        intermediate pairs defined; all orderings then agree.  Desk scale
        only: n <= 8.
        """
        elems = tuple(elems)
        for x in elems:
            self.check_element(x)
        if len(elems) > 8:
            raise PamError("sum_tuple supports at most 8 summands, got %d" % len(elems))
        key = tuple(sorted(elems, key=self._index.__getitem__))
        if key in self._tuple_cache:
            return self._tuple_cache[key]
        result = self._sum_tuple_uncached(key)
        self._tuple_cache[key] = result
        return result

    def _sum_tuple_uncached(self, key):
        if not key:
            return UNIT
        if len(key) == 1:
            return key[0]
        values = set()
        for perm in set(itertools.permutations(key)):
            acc = perm[0]
            for x in perm[1:]:
                acc = self.pair_sum(acc, x)
                if acc is None:
                    return None
            values.add(acc)
        if len(values) != 1:
            raise PamError(
                "sum of %r depends on ordering: %r" % (key, sorted(values))
            )
        return values.pop()

    def is_self_insummable(self):
        """True when a + a is undefined for every nonzero a."""
        return all(
            not self.defined(a, a) for a in self.elements if a != UNIT
        )

    def partitions(self, m):
        """Ordered pairs (x, y) with x + y = m, sorted by element index."""
        self.check_element(m)
        out = [
            (x, y)
            for x in self.elements
            for y in self.elements
            if self.pair_sum(x, y) == m
        ]
        out.sort(key=lambda xy: (self._index[xy[0]], self._index[xy[1]]))
        return out

    def nonzero_partitions(self, m):
        return [(x, y) for x, y in self.partitions(m) if x != UNIT and y != UNIT]

    def sum_rows(self):
        """Stored nonunit sums as (a, b, c) rows in element-index order."""
        rows = [(a, b, c) for (a, b), c in self._sums.items()]
        rows.sort(key=lambda r: (self._index[r[0]], self._index[r[1]]))
        return rows

    def __repr__(self):
        return "FinitePam(%r, %d elements, %d sums)" % (
            self.name,
            len(self.elements),
            len(self._sums),
        )


def validate_pam(name, elements, sums):
    """Build a FinitePam, returning (pam, []) or (None, violations)."""
    try:
        return FinitePam(name, elements, sums), []
    except PamError as e:
        if e.violations:
            return None, e.violations
        raise
