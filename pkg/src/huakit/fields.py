"""Exact arithmetic in small finite fields.

Elements of GF(p^f) are represented by integer indices 0..q-1.  The index
encodes the coefficient vector of the polynomial residue in base p:
index = c0 + c1*p + ... + c_{f-1}*p^(f-1).  All operations are table
driven and exact; nothing here is probabilistic.

The intended range is q <= 2^16, in practice q <= 27: every table fits
comfortably in memory and exhaustive verification stays cheap.
"""

from __future__ import annotations

import numpy as np


class FieldError(Exception):
    pass


class NotPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DegreeMismatch(FieldError):
    pass


class MixedFields(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class ExponentOutOfRange(FieldError):
    pass


class DuplicateLambda(FieldError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for the small moduli used here."""
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ----------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient tuples, little endian,
# no trailing zeros (the zero polynomial is the empty tuple)
# ----------------------------------------------------------------------

def _ptrim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _padd(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _ptrim(out)


def _pscale(a, c, p):
    return _ptrim([(x * c) % p for x in a])


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    """Euclidean division; b must be nonzero."""
    assert b, "division by zero polynomial"
    binv = pow(b[-1], p - 2, p)
    rem = list(a)
    quo = [0] * max(len(a) - len(b) + 1, 1)
    while len(_ptrim(rem)) >= len(b):
        rem = list(_ptrim(rem))
        shift = len(rem) - len(b)
        c = (rem[-1] * binv) % p
        quo[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = (rem[shift + i] - c * y) % p
    return _ptrim(quo), _ptrim(rem)


def _pmod(a, m, p):
    return _pdivmod(a, m, p)[1]


def _pxgcd(a, b, p):
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g (g monic)."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pscale(_pmul(q, s1, p), p - 1, p), p)
        t0, t1 = t1, _padd(t0, _pscale(_pmul(q, t1, p), p - 1, p), p)
    if r0:
        lead_inv = pow(r0[-1], p - 2, p)
        r0 = _pscale(r0, lead_inv, p)
        s0 = _pscale(s0, lead_inv, p)
        t0 = _pscale(t0, lead_inv, p)
    return r0, s0, t0


def _monic_polys(deg, p):
    """All monic polynomials of the given degree, in index order."""
    for k in range(p ** deg):
        coeffs = []
        kk = k
        for _ in range(deg):
            coeffs.append(kk % p)
            kk //= p
        yield tuple(coeffs) + (1,)


def poly_is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1 or poly[-1] != 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(d, p):
            if not _pmod(poly, cand, p):
                return False
    return True


def default_modulus(p: int, f: int):
    """The first monic irreducible of degree f in index order (deterministic)."""
    if f == 1:
        return (0, 1)
    for cand in _monic_polys(f, p):
        if poly_is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ----------------------------------------------------------------------
# fields
# ----------------------------------------------------------------------

class FiniteField:
    """GF(p^f) with table-driven arithmetic on element indices.

    Immutable after construction; safe to share.
    """

    def __init__(self, p: int, f: int = 1, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if f < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {f}")
        if modulus is None:
            modulus = default_modulus(p, f)
        else:
            modulus = _ptrim(tuple(int(c) % p for c in modulus)) or ()
            if len(modulus) != f + 1 or modulus[-1] != 1:
                raise DegreeMismatch(
                    f"modulus must be monic of degree {f}, got {modulus}")
            if not poly_is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.f = f
        self.q = p ** f
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, f, q = self.p, self.f, self.q
        coeffs = []
        for i in range(q):
            k, v = i, []
            for _ in range(f):
                v.append(k % p)
                k //= p
            coeffs.append(tuple(v))
        self._coeffs = tuple(coeffs)
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for i in range(q):
            ci = coeffs[i]
            for j in range(i, q):
                cj = coeffs[j]
                s = self.index_of(tuple((a + b) % p for a, b in zip(ci, cj)))
                add[i][j] = add[j][i] = s
                m = self.index_of(_pmod(_pmul(_ptrim(ci), _ptrim(cj), p),
                                        self.modulus, p))
                mul[i][j] = mul[j][i] = m
        self._add = tuple(map(tuple, add))
        self._mul = tuple(map(tuple, mul))
        self._neg = tuple(self.index_of(tuple((-a) % p for a in coeffs[i]))
                          for i in range(q))
        inv = [0] * q
        for i in range(1, q):
            # extended Euclid on the residue against the modulus
            g, s, _ = _pxgcd(_ptrim(coeffs[i]), self.modulus, p)
            assert g == (1,), "residue not invertible: modulus reducible?"
            inv[i] = self.index_of(_pmod(s, self.modulus, p))
        self._inv = tuple(inv)
        self._squares = frozenset(self._mul[i][i] for i in range(q))

    # -- index-level arithmetic ----------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            n >>= 1
        return r

    def is_square(self, a: int) -> bool:
        return a in self._squares

    def coeffs(self, a: int):
        return self._coeffs[a]

    def index_of(self, coeffs) -> int:
        idx = 0
        for c in reversed(tuple(coeffs)):
            idx = idx * self.p + (c % self.p)
        return idx

    def scalar_embed(self, n: int) -> int:
        """The prime-field element n mod p as a field index."""
        return n % self.p

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    # -- object-level API ----------------------------------------------

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise FieldError(f"index {index} out of range for GF({self.q})")
        return FieldElement(self, index)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def frobenius(self, k: int) -> "FieldAutomorphism":
        return FieldAutomorphism(self, k)

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        n, x = 1, a
        while x != 1:
            x = self._mul[x][a]
            n += 1
        return n

    def has_primitive_element(self) -> bool:
        return any(self.multiplicative_order(a) == self.q - 1
                   for a in self.units())

    def descriptor(self) -> dict:
        return {"p": self.p, "f": self.f, "modulus": list(self.modulus)}

    # numpy views of the tables, for vectorised sweeps
    @property
    def np_add(self):
        if not hasattr(self, "_np_add"):
            self._np_add = np.array(self._add, dtype=np.int64)
        return self._np_add

    @property
    def np_mul(self):
        if not hasattr(self, "_np_mul"):
            self._np_mul = np.array(self._mul, dtype=np.int64)
        return self._np_mul

    @property
    def np_neg(self):
        if not hasattr(self, "_np_neg"):
            self._np_neg = np.array(self._neg, dtype=np.int64)
        return self._np_neg

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and (self.p, self.f, self.modulus) == (other.p, other.f, other.modulus))

    def __hash__(self):
        return hash((self.p, self.f, self.modulus))

    def __repr__(self):
        if self.f == 1:
            return f"GF({self.p})"
        return f"GF({self.q})[{list(self.modulus)}]"


class FieldElement:
    """A field element bound to its owner; supports the usual operators."""

    __slots__ = ("field", "index")

    def __init__(self, field: FiniteField, index: int):
        self.field = field
        self.index = index

    def _co(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields("operands belong to different fields")
            return other.index
        if isinstance(other, int):
            return other % self.field.p  # prime-field constant
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.index, self._co(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.index, self._co(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.index, self._co(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.index, self._co(other)))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.index, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.index))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.index == other.index
        if isinstance(other, int):
            return self.index == other % self.field.p and self.index < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.index))

    def __repr__(self):
        return f"<{self.index} in {self.field!r}>"


class FieldAutomorphism:
    """The Frobenius power x -> x^(p^k) of a finite field."""

    __slots__ = ("field", "k", "table")

    def __init__(self, field: FiniteField, k: int):
        if not 0 <= k < field.f:
            raise ExponentOutOfRange(f"k must satisfy 0 <= k < {field.f}, got {k}")
        self.field = field
        self.k = k
        e = field.p ** k
        self.table = tuple(field.pow(a, e) for a in range(field.q))

    def __call__(self, a: int) -> int:
        return self.table[a]

    def apply(self, elem: FieldElement) -> FieldElement:
        return FieldElement(self.field, self.table[elem.index])

    def compose(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        if other.field != self.field:
            raise MixedFields("automorphisms of different fields")
        return FieldAutomorphism(self.field, (self.k + other.k) % self.field.f)

    def fixed_points(self):
        return [a for a in range(self.field.q) if self.table[a] == a]

    def order(self) -> int:
        f, k = self.field.f, self.k
        if k == 0:
            return 1
        n = 1
        acc = k
        while acc % f:
            acc += k
            n += 1
        return n

    def __eq__(self, other):
        return (isinstance(other, FieldAutomorphism)
                and self.field == other.field and self.k == other.k)

    def __repr__(self):
        return f"Frob({self.field!r}, {self.k})"


def make_field(p: int, f: int = 1, modulus=None) -> FiniteField:
    """Build GF(p^f); with no modulus the first monic irreducible is used."""
    return FiniteField(p, f, modulus)


def frobenius(field: FiniteField, k: int) -> FieldAutomorphism:
    return field.frobenius(k)


# ----------------------------------------------------------------------
# small dense linear algebra over a field (row vectors, right action)
# ----------------------------------------------------------------------

def mat_identity(field: FiniteField, n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

def vec_mat(field: FiniteField, v, m):
    """Row vector times matrix."""
    n = len(m[0])
    out = [0] * n
    for i, vi in enumerate(v):
        if vi:
            row = m[i]
            for j in range(n):
                out[j] = field.add(out[j], field.mul(vi, row[j]))
    return tuple(out)

def mat_mul(field: FiniteField, a, b):
    return tuple(vec_mat(field, row, b) for row in a)

def mat_add(field: FiniteField, a, b):
    return tuple(tuple(field.add(x, y) for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))

def mat_sub(field: FiniteField, a, b):
    return tuple(tuple(field.sub(x, y) for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))

def mat_scale(field: FiniteField, c: int, a):
    return tuple(tuple(field.mul(c, x) for x in row) for row in a)

def mat_pow(field: FiniteField, a, n: int):
    r = mat_identity(field, len(a))
    while n:
        if n & 1:
            r = mat_mul(field, r, a)
        a = mat_mul(field, a, a)
        n >>= 1
    return r


def gauss_solve(field: FiniteField, a, b):
    """Solve a @ X = b exactly; returns X or None if a is singular.

    a is n x n, b is n x m, both as nested sequences of field indices.
    """
    n = len(a)
    m = len(b[0]) if b else 0
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pinv = field.inv(aug[col][col])
        aug[col] = [field.mul(pinv, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                c = aug[r][col]
                aug[r] = [field.sub(x, field.mul(c, y))
                          for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:n + m]) for row in aug)


def mat_inv(field: FiniteField, a):
    """Exact inverse, or None if singular."""
    return gauss_solve(field, a, mat_identity(field, len(a)))


def mat_is_invertible(field: FiniteField, a) -> bool:
    return mat_inv(field, a) is not None


# ----------------------------------------------------------------------
# Vandermonde recovery
# ----------------------------------------------------------------------

def vandermonde_solve(field: FiniteField, lambdas, vectors):
    """Invert the system w_i = sum_j lambda_i^(j-1) v_j exactly.

    lambdas: n pairwise distinct field indices (or FieldElements).
    vectors: the n observed vectors w_i, each a sequence of field indices.
    Returns the recovered v_1..v_n as tuples.
    """
    lams = [x.index if isinstance(x, FieldElement) else int(x) for x in lambdas]
    n = len(lams)
    if len(set(lams)) != n:
        raise DuplicateLambda(f"lambdas must be pairwise distinct: {lams}")
    if len(vectors) != n:
        raise DegreeMismatch("need as many vectors as lambdas")
    width = {len(v) for v in vectors}
    if len(width) > 1:
        raise DegreeMismatch("vectors must all have the same length")
    vmat = tuple(tuple(field.pow(lam, j) for j in range(n)) for lam in lams)
    sol = gauss_solve(field, vmat, [tuple(v) for v in vectors])
    assert sol is not None, "Vandermonde matrix with distinct nodes is invertible"
    return list(sol)


def vandermonde_eval(field: FiniteField, lambdas, solution):
    """Forward evaluation w_i = sum_j lambda_i^(j-1) v_j (oracle for the solver)."""
    lams = [x.index if isinstance(x, FieldElement) else int(x) for x in lambdas]
    n = len(lams)
    width = len(solution[0])
    out = []
    for lam in lams:
        acc = [0] * width
        for j in range(n):
            c = field.pow(lam, j)
            acc = [field.add(x, field.mul(c, y)) for x, y in zip(acc, solution[j])]
        out.append(tuple(acc))
    return out


def all_irreducibles(p: int, f: int):
    """Every monic irreducible of degree f over GF(p), in index order."""
    return [m for m in _monic_polys(f, p) if poly_is_irreducible(m, p)]
