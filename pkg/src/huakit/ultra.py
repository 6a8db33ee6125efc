"""Filters and ultrafilters on small index sets, with principal ultraproducts.

Subsets of S = {0..n-1} are bitmask integers, so every check below is a
plain exhaustive sweep over at most 2^n masks (n <= 20).  Free
ultrafilters have no finite representation: the ultraproduct machinery
deliberately exposes only the principal case, where the quotient is
isomorphic to a single factor by projection.
"""

from __future__ import annotations

import itertools

from .fields import FiniteField

MAX_UNIVERSE = 20


class UltraError(Exception):
    pass


class TooLarge(UltraError):
    pass


class NotAFilter(UltraError):
    pass


class UniquenessViolation(UltraError):
    """A partition with not-exactly-one part in the ultrafilter; unreachable
    for genuine ultrafilters."""


class NotPrincipal(UltraError):
    pass


class SetFamily:
    """A family of subsets of {0..n-1}, members encoded as bitmasks."""

    def __init__(self, n: int, members):
        if n < 1 or n > MAX_UNIVERSE:
            raise TooLarge(f"universe size must be 1..{MAX_UNIVERSE}, got {n}")
        self.n = n
        full = (1 << n) - 1
        members = frozenset(int(m) for m in members)
        for m in members:
            if m & ~full:
                raise UltraError(f"member {bin(m)} is not a subset of the universe")
        self.members = members

    @property
    def universe(self) -> int:
        return (1 << self.n) - 1

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def __len__(self):
        return len(self.members)

    def sets(self):
        """Members as sorted point lists (canonical serialisation)."""
        return sorted(sorted(i for i in range(self.n) if m >> i & 1)
                      for m in self.members)

    def __repr__(self):
        return f"SetFamily(n={self.n}, members={len(self.members)})"


def mask_of(n: int, points) -> int:
    m = 0
    for x in points:
        if not 0 <= x < n:
            raise UltraError(f"point {x} outside the universe")
        m |= 1 << x
    return m


def principal_family(n: int, base_points) -> SetFamily:
    """All supersets of the base set (the fixed filter it generates)."""
    base = mask_of(n, base_points)
    if base == 0:
        raise UltraError("the base set must be nonempty")
    rest = ((1 << n) - 1) & ~base
    members = []
    sub = rest
    while True:
        members.append(base | sub)
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return SetFamily(n, members)


def cofinite_family(n: int) -> SetFamily:
    """On a finite universe this is the whole power set, empty set included;
    evaluated literally so the degenerate filter test can observe it."""
    return SetFamily(n, range(1 << n))


def is_filter(fam: SetFamily) -> bool:
    full = fam.universe
    if full not in fam.members or 0 in fam.members:
        return False
    for a in fam.members:
        for b in fam.members:
            if (a & b) not in fam.members:
                return False
    for a in fam.members:
        rest = full & ~a
        sup = rest
        while True:
            if (a | sup) not in fam.members:
                return False
            if sup == 0:
                break
            sup = (sup - 1) & rest
    return True


def is_ultrafilter(fam: SetFamily) -> bool:
    if not is_filter(fam):
        raise NotAFilter("the family is not a filter")
    full = fam.universe
    for a in range(full + 1):
        if a not in fam.members and (full & ~a) not in fam.members:
            return False
    return True


def is_fixed(fam: SetFamily) -> bool:
    """Nonempty intersection of all members.  On a finite universe every
    filter is fixed (the intersection is itself a member), so the free
    case is observable only through non-filters here."""
    if not is_filter(fam):
        raise NotAFilter("the family is not a filter")
    inter = fam.universe
    for m in fam.members:
        inter &= m
    return inter != 0


def partition_unique_member(fam: SetFamily, member: int, parts) -> int:
    """Index of the unique part of a partition of a member that itself
    belongs to the ultrafilter; uniqueness asserted by full scan."""
    if not is_ultrafilter(fam):
        raise NotAFilter("need an ultrafilter")
    if member not in fam.members:
        raise UltraError("the partitioned set must belong to the family")
    parts = [int(p) for p in parts]
    union = 0
    for p in parts:
        if union & p:
            raise UltraError("parts must be pairwise disjoint")
        union |= p
    if union != member:
        raise UltraError("parts must partition the member")
    hits = [i for i, p in enumerate(parts) if p in fam.members]
    if len(hits) != 1:
        raise UniquenessViolation(
            f"expected exactly one part in the ultrafilter, found {hits}")
    return hits[0]


def set_partitions(points):
    """All partitions of a point list (each a list of lists)."""
    points = list(points)
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for sub in set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
        yield [[first]] + sub


def principal_point(fam: SetFamily) -> int:
    """The single point generating a principal ultrafilter.

    Raises NotPrincipal when the intersection of all members is not a
    singleton (the only ultrafilters a finite computation can hold are
    principal, so this is the designated error path for everything else).
    """
    if not is_ultrafilter(fam):
        raise NotAFilter("need an ultrafilter")
    inter = fam.universe
    for m in fam.members:
        inter &= m
    if inter == 0 or inter & (inter - 1):
        raise NotPrincipal("the family is not principal at a single point")
    return inter.bit_length() - 1


def principal_ultraproduct(structures, at) -> dict:
    """Quotient of a finite product by a principal ultrafilter.

    `at` is either the principal point or a SetFamily to extract it from.
    The equivalence relation (tuples identified iff they agree at the
    principal point) and the componentwise operations are verified on the
    full product, then the factor is returned with the projection as the
    isomorphism.  Accepts lists of FiniteField or of MoufangSetData.
    """
    if isinstance(at, SetFamily):
        s = principal_point(at)
        if at.n != len(structures):
            raise UltraError("ultrafilter universe must index the structures")
    else:
        s = int(at)
    if not 0 <= s < len(structures):
        raise UltraError(f"index {s} out of range")
    factor = structures[s]

    if isinstance(factor, FiniteField):
        sizes = [X.q for X in structures]
        classes = {}
        for tup in itertools.product(*[range(n) for n in sizes]):
            classes.setdefault(tup[s], []).append(tup)
        assert len(classes) == factor.q
        for tup in itertools.product(*[range(n) for n in sizes]):
            for tup2 in itertools.product(*[range(n) for n in sizes]):
                add = tuple(X.add(x, y) for X, x, y in zip(structures, tup, tup2))
                mul = tuple(X.mul(x, y) for X, x, y in zip(structures, tup, tup2))
                assert add[s] == factor.add(tup[s], tup2[s])
                assert mul[s] == factor.mul(tup[s], tup2[s])
        return {"structure": factor, "principal_at": s,
                "classes": len(classes), "verified": True}

    from .mset import MoufangSetData
    if isinstance(factor, MoufangSetData):
        sizes = [M.U.size for M in structures]
        # Hua maps act componentwise on classes; with a principal filter the
        # class of a tuple is its coordinate at s, so the product Hua table
        # must project onto the factor's
        for atup in itertools.product(*[list(M.U.nonzero()) for M in structures]):
            ha = factor.hua[atup[s]]
            for xtup in itertools.product(*[range(n) for n in sizes]):
                img = tuple(M.hua[a][x] for M, a, x in zip(structures, atup, xtup))
                assert img[s] == ha[xtup[s]]
        return {"structure": factor, "principal_at": s,
                "classes": sizes[s], "verified": True}

    raise UltraError(f"unsupported structure type {type(factor).__name__}")
