"""Permutation groups of small degree by full enumeration.

Everything is generator based: a group is closed by breadth-first
multiplication and stored as an explicit element set, so all the
structural questions (transitivity, stabilizers, normality, centres)
are answered by direct inspection.  Intended for orders up to ~10^5.

Points are 0..n-1.  Permutations act on the right: x -> x^g, and g*h
means "apply g first, then h".
"""

from __future__ import annotations

import math
from collections import Counter

DEFAULT_CAP = 10 ** 6


class PermError(Exception):
    pass


class CapExceeded(PermError):
    pass


class DegreeMismatch(PermError):
    pass


class NotEnumerated(PermError):
    pass


class PointOutOfRange(PermError):
    pass


class NotSubgroup(PermError):
    pass


class HypothesisFails(PermError):
    """The supplied data does not satisfy a check's hypothesis."""


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise PermError(f"not a bijection of 0..{len(images) - 1}: {images}")
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise DegreeMismatch("cannot compose permutations of different degree")
        o = other.images
        return Permutation(tuple(o[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        seen = [False] * self.degree
        n = 1
        for start in range(self.degree):
            if seen[start]:
                continue
            length, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                length += 1
            n = math.lcm(n, length)
        return n

    def fixed_points(self):
        return [i for i, x in enumerate(self.images) if i == x]

    def cycles(self):
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc, x = [], start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return f"Perm(id, deg={self.degree})"
        return "Perm(" + "".join(str(c) for c in cyc) + ")"


def from_cycles(n: int, *cycles) -> Permutation:
    images = list(range(n))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            images[x] = cyc[(i + 1) % len(cyc)]
    return Permutation(images)


def from_mapping(n: int, func) -> Permutation:
    return Permutation(tuple(func(x) for x in range(n)))


class PermGroup:
    """A fully enumerated permutation group."""

    def __init__(self, degree: int, generators, elements=None, order=None):
        self.degree = degree
        self.generators = tuple(generators)
        for g in self.generators:
            if g.degree != degree:
                raise DegreeMismatch("generator degree does not match group degree")
        self._elements = frozenset(elements) if elements is not None else None
        self.order = order if order is not None else (
            len(self._elements) if self._elements is not None else None)

    @property
    def enumerated(self) -> bool:
        return self._elements is not None

    @property
    def elements(self):
        if self._elements is None:
            raise NotEnumerated("group has not been enumerated; call closure()")
        return self._elements

    def element_perms(self):
        return [Permutation(t) for t in sorted(self.elements)]

    def __contains__(self, g) -> bool:
        t = g.images if isinstance(g, Permutation) else tuple(g)
        return t in self.elements

    def __len__(self) -> int:
        if self.order is None:
            raise NotEnumerated("group has not been enumerated")
        return self.order

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self.elements <= other.elements

    def same_group(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self.elements == other.elements

    def descriptor(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [list(g.images) for g in self.generators],
            "order": self.order,
        }

    def __repr__(self):
        o = self.order if self.order is not None else "?"
        return f"PermGroup(deg={self.degree}, order={o})"


def closure(generators, cap: int = DEFAULT_CAP) -> PermGroup:
    """Breadth-first product closure of the generators."""
    generators = [g if isinstance(g, Permutation) else Permutation(g)
                  for g in generators]
    if not generators:
        raise PermError("need at least one generator (or pass an identity)")
    if cap < 1:
        raise PermError("cap must be positive")
    degree = generators[0].degree
    for g in generators:
        if g.degree != degree:
            raise DegreeMismatch("generators act on different point sets")
    gen_images = [g.images for g in generators]
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for t in frontier:
            for g in gen_images:
                prod = tuple(g[x] for x in t)
                if prod not in seen:
                    seen.add(prod)
                    if len(seen) > cap:
                        raise CapExceeded(
                            f"closure exceeded cap of {cap} elements")
                    nxt.append(prod)
        frontier = nxt
    return PermGroup(degree, generators, elements=seen)


def _check_points(G: PermGroup, points):
    for x in points:
        if not 0 <= x < G.degree:
            raise PointOutOfRange(f"point {x} outside 0..{G.degree - 1}")


def tuple_orbit(G: PermGroup, start, max_size=None):
    """Orbit of an ordered point tuple under the group's generators."""
    gens = [g.images for g in G.generators]
    start = tuple(start)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for t in frontier:
            for g in gens:
                img = tuple(g[x] for x in t)
                if img not in seen:
                    seen.add(img)
                    if max_size is not None and len(seen) > max_size:
                        return seen
                    nxt.append(img)
        frontier = nxt
    return seen


def transitivity_report(G: PermGroup) -> dict:
    """Max verified k-transitivity (k <= 3) and the degrees of sharpness.

    k-transitivity is decided by the orbit of a base k-tuple of distinct
    points; sharpness additionally demands |G| = n(n-1)...(n-k+1).
    """
    if not G.enumerated:
        raise NotEnumerated("enumerate the group first")
    n = G.degree
    k_max = 0
    sharp = []
    for k in (1, 2, 3):
        if k > n:
            break
        target = 1
        for i in range(k):
            target *= n - i
        orbit = tuple_orbit(G, range(k), max_size=target)
        if len(orbit) != target:
            break
        k_max = k
        if G.order == target:
            sharp.append(k)
    if k_max and sharp and sharp[-1] == k_max:
        # sharply k-transitive groups have the predicted order by definition
        assert G.order == math.prod(n - i for i in range(k_max))
    return {"k_transitive": k_max, "sharp_at": sharp}


def point_stabilizer(G: PermGroup, points) -> PermGroup:
    """The subgroup fixing every listed point, fully enumerated."""
    if not G.enumerated:
        raise NotEnumerated("enumerate the group first")
    _check_points(G, points)
    pts = tuple(points)
    elems = {t for t in G.elements if all(t[x] == x for x in pts)}
    gens = [Permutation(t) for t in sorted(elems) if t != tuple(range(G.degree))]
    if not gens:
        gens = [Permutation.identity(G.degree)]
    return PermGroup(G.degree, gens, elements=elems)


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    """True iff N is a normal subgroup of G (membership verified first)."""
    if not N.is_subgroup_of(G):
        raise NotSubgroup("N is not contained in G")
    for g in G.generators:
        ginv = g.inverse()
        for t in N.elements:
            conj = (ginv * Permutation(t) * g).images
            if conj not in N.elements:
                return False
    return True


def is_regular(N: PermGroup, on_points=None) -> bool:
    """Transitive on the point set with order equal to its size."""
    if not N.enumerated:
        raise NotEnumerated("enumerate the group first")
    pts = list(range(N.degree)) if on_points is None else sorted(on_points)
    _check_points(N, pts)
    if N.order != len(pts):
        return False
    base = pts[0]
    orbit = {t[base] for t in N.elements}
    return orbit == set(pts)


def element_order_multiset(G: PermGroup) -> Counter:
    if not G.enumerated:
        raise NotEnumerated("enumerate the group first")
    return Counter(Permutation(t).order() for t in G.elements)


def center(G: PermGroup) -> PermGroup:
    """Elements commuting with every generator (hence with all of G)."""
    if not G.enumerated:
        raise NotEnumerated("enumerate the group first")
    gens = [g.images for g in G.generators]
    cent = set()
    for t in G.elements:
        if all(tuple(g[x] for x in t) == tuple(t[x] for x in g) for g in gens):
            cent.add(t)
    gen_perms = [Permutation(t) for t in sorted(cent)]
    return PermGroup(G.degree, gen_perms, elements=cent)


def is_k_sharp(G: PermGroup, k: int) -> bool:
    """No nontrivial element fixes k distinct points."""
    if not G.enumerated:
        raise NotEnumerated("enumerate the group first")
    ident = tuple(range(G.degree))
    for t in G.elements:
        if t == ident:
            continue
        if sum(1 for i, x in enumerate(t) if i == x) >= k:
            return False
    return True


def check_stabilizer_sum_property(G: PermGroup, A: PermGroup, x: int,
                                  h1: Permutation, h2: Permutation,
                                  h3: Permutation) -> dict:
    """On a 2-sharp group: if a^h3 = a^h1 * a^h2 for every a in the regular
    subgroup A, then the centre of the stabilizer G_x normalises A.

    Verifies the hypothesis exhaustively (raising HypothesisFails with a
    witness if it does not hold), then the conclusion Z(G_x) <= N_G(A) n G_x.
    """
    if not G.enumerated or not A.enumerated:
        raise NotEnumerated("enumerate both groups first")
    _check_points(G, [x])
    if not is_k_sharp(G, 2):
        raise HypothesisFails("G is not 2-sharp")
    if not is_regular(A):
        raise HypothesisFails("A is not regular on the point set")
    aset = A.elements
    for h in (h1, h2, h3):
        if h.images not in G.elements:
            raise NotSubgroup("h1,h2,h3 must be elements of G")
        if h(x) != x:
            raise HypothesisFails(f"{h!r} does not fix the base point {x}")
        hinv = h.inverse()
        if any((hinv * Permutation(t) * h).images not in aset for t in aset):
            raise HypothesisFails(f"{h!r} does not normalise A")
    h1i, h2i, h3i = (h.inverse() for h in (h1, h2, h3))
    for t in sorted(aset):
        a = Permutation(t)
        lhs = h3i * a * h3
        rhs = (h1i * a * h1) * (h2i * a * h2)
        if lhs != rhs:
            raise HypothesisFails(
                f"additive relation fails at a={t}: a^h3 != a^h1 * a^h2")
    # conclusion: every central element of G_x normalises A
    Gx = point_stabilizer(G, [x])
    Z = center(Gx)
    witness = None
    for t in sorted(Z.elements):
        z = Permutation(t)
        zinv = z.inverse()
        if any((zinv * Permutation(a) * z).images not in aset for a in aset):
            witness = list(t)
            break
    return {
        "hypothesis": True,
        "conclusion": witness is None,
        "witness": witness,
        "center_order": Z.order,
    }
