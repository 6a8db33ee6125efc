"""Quadratic Jordan algebras over finite fields, table first.

An algebra is a carrier k^d together with the full table of quadratic
operators Q_a (one d x d matrix over k per carrier element) and a unit e.
Closed-form constructors populate the table; user supplied tables load
through the same type, so every verifier below works on either.

Carrier elements are indexed 0..q^d-1 by base-q expansion of their
coordinate vectors (each coordinate being a field element index), which
keeps every report deterministic.
"""

from __future__ import annotations

import numpy as np

from .fields import (FiniteField, mat_identity, mat_inv, mat_mul, vec_mat)

DEFAULT_AXIOM_CAP = 6561


class JordanError(Exception):
    pass


class NotDivision(JordanError):
    pass


class SingularQ(JordanError):
    pass


class CapExceeded(JordanError):
    pass


class ParseError(JordanError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class QuadraticJordan:
    """Carrier k^d with an explicit Q table and unit e."""

    def __init__(self, base: FiniteField, dim: int, q_table, e: int):
        self.base = base
        self.dim = dim
        self.size = base.q ** dim
        if len(q_table) != self.size:
            raise JordanError(
                f"Q table must have {self.size} entries, got {len(q_table)}")
        self.Q = tuple(tuple(tuple(row) for row in m) for m in q_table)
        if not 0 < e < self.size:
            raise JordanError("unit must be a nonzero carrier index")
        self.e = e
        q = base.q
        self._digits = []
        for i in range(self.size):
            k, v = i, []
            for _ in range(dim):
                v.append(k % q)
                k //= q
            self._digits.append(tuple(v))
        self._digits = tuple(self._digits)

    # -- carrier arithmetic ----------------------------------------------

    def coords(self, a: int):
        return self._digits[a]

    def index_of(self, coords) -> int:
        idx = 0
        for c in reversed(tuple(coords)):
            idx = idx * self.base.q + c
        return idx

    def add(self, a: int, b: int) -> int:
        F = self.base
        return self.index_of(tuple(F.add(x, y)
                                   for x, y in zip(self._digits[a], self._digits[b])))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        F = self.base
        return self.index_of(tuple(F.neg(x) for x in self._digits[a]))

    def scalar_mul(self, r: int, a: int) -> int:
        F = self.base
        return self.index_of(tuple(F.mul(r, x) for x in self._digits[a]))

    def apply(self, a: int, m) -> int:
        """Image of carrier element a under a d x d operator matrix."""
        return self.index_of(vec_mat(self.base, self._digits[a], m))

    def elements(self):
        return range(self.size)

    def nonzero(self):
        return range(1, self.size)

    def q_of(self, a: int):
        return self.Q[a]

    def descriptor(self) -> dict:
        d = self.base.descriptor()
        d.update({"dim": self.dim, "e": self.e})
        return d

    def __repr__(self):
        return f"QuadraticJordan(q={self.base.q}, dim={self.dim})"


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------

def field_jordan(F: FiniteField) -> QuadraticJordan:
    """The one-dimensional algebra of the field itself: xQ_a = a^2 x."""
    table = [((F.mul(a, a),),) for a in range(F.q)]
    return QuadraticJordan(F, 1, table, e=1)


def matrix_jordan(F: FiniteField) -> QuadraticJordan:
    """2x2 matrices over F with xQ_a = a x a.

    Satisfies all the axioms but is never a division algebra: rank-one
    idempotents give singular sandwich operators.  Kept as the standing
    negative control for is_division.
    """
    dim = 4  # coordinates (m00, m01, m10, m11)

    def mmul(x, y):
        return (
            F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])),
            F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
            F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])),
            F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3])),
        )

    q = F.q
    size = q ** dim
    coords = []
    for i in range(size):
        k, v = i, []
        for _ in range(dim):
            v.append(k % q)
            k //= q
        coords.append(tuple(v))
    basis = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    table = []
    for a in coords:
        rows = [mmul(a, mmul(eps, a)) for eps in basis]
        table.append(tuple(rows))
    e = 1 * q ** 0 + 1 * q ** 3  # identity matrix (1,0,0,1)
    return QuadraticJordan(F, dim, table, e=e)


# ----------------------------------------------------------------------
# verifiers
# ----------------------------------------------------------------------

def _np_matmul(F: FiniteField, A, B):
    """Batched matrix product over the field; A (...,d,m), B (...,m,e)."""
    add, mul = F.np_add, F.np_mul
    m = A.shape[-1]
    acc = mul[A[..., :, 0][..., :, None], B[..., 0, :][..., None, :]]
    for k in range(1, m):
        term = mul[A[..., :, k][..., :, None], B[..., k, :][..., None, :]]
        acc = add[acc, term]
    return acc


def check_axioms(J: QuadraticJordan, cap: int = DEFAULT_AXIOM_CAP) -> dict:
    """Exhaustive verification of quadraticity, the unit axiom, the
    V-operator commutation axiom and the fundamental identity.

    Bilinearity of (a,b) -> Q_{a+b} - Q_a - Q_b is verified by comparing
    the table against the bilinear extension of its basis-pair values,
    which is equivalent to slotwise additivity plus homogeneity and keeps
    the sweep at N^2.  Returns one flag per family plus the first witness
    on failure.  Memory stays O(N) by slicing over the first argument.
    """
    if J.size > cap:
        raise CapExceeded(f"carrier size {J.size} exceeds cap {cap}")
    F = J.base
    N, d, q = J.size, J.dim, F.q
    add, mul, neg = F.np_add, F.np_mul, F.np_neg
    Q = np.array(J.Q, dtype=np.int64)                      # (N, d, d)
    digits = np.array(J._digits, dtype=np.int64)           # (N, d)
    powers = q ** np.arange(d, dtype=np.int64)
    basis_idx = [int(powers[i]) for i in range(d)]         # carrier index of eps_i

    witnesses = {}

    # Q_{r a} == r^2 Q_a
    quad_ok = True
    for r in range(q):
        sidx = mul[r, digits] @ powers                     # (N,) index of r*a
        rhs = mul[F.mul(r, r), Q]
        if not (Q[sidx] == rhs).all():
            a = int(np.argwhere(~(Q[sidx] == rhs).all(axis=(1, 2)))[0][0])
            witnesses["quadratic"] = {"r": r, "a": a}
            quad_ok = False
            break

    unit_ok = J.Q[J.e] == mat_identity(F, d)
    if not unit_ok:
        witnesses["unit"] = {"Q_e": [list(r) for r in J.Q[J.e]]}

    def d_row(a):
        """D[a, b] for all b, shape (N, d, d)."""
        arow = (add[digits[a][None, :], digits] @ powers)
        return add[add[Q[arow], neg[Q]], neg[Q[a]][None]]

    # D on basis rows, reused for bilinearity and for V_{b,a}
    d_eps = np.stack([d_row(basis_idx[i]) for i in range(d)])  # (d, N, d, d)
    bmat = d_eps[:, basis_idx]                                 # (d, d, d, d): B[i][j]

    bilin_ok = comm_ok = fund_ok = True
    for a in range(N):
        Da = d_row(a)                                      # (N, d, d)

        if bilin_ok:
            # expected D[a,b] = sum_j b_j * (sum_i a_i * B[i][j])
            adig = digits[a]
            ea = None                                      # (d, d, d): E_a[j]
            for i in range(d):
                term = mul[adig[i], bmat[i]]
                ea = term if ea is None else add[ea, term]
            exp = None
            for j in range(d):
                term = mul[digits[:, j][:, None, None], ea[j][None]]
                exp = term if exp is None else add[exp, term]
            if not (Da == exp).all():
                b = int(np.argwhere(~(Da == exp).all(axis=(1, 2)))[0][0])
                witnesses["bilinear"] = {"a": a, "b": b}
                bilin_ok = False

        if comm_ok:
            # Vab[b][i,:] = sum_k b_k * D[a,eps_i][k,:]
            dab = Da[basis_idx]                            # (d, d, d)
            vab = None
            for k in range(d):
                term = mul[digits[:, k][:, None, None], dab[None, :, k, :]]
                vab = term if vab is None else add[vab, term]
            # Vba[b][i,:] = sum_k a_k * D[b,eps_i][k,:] = sum_k a_k * d_eps[i][b][k,:]
            vba = None
            for k in range(d):
                term = mul[digits[a][k],
                           d_eps[:, :, k, :].transpose(1, 0, 2)]  # (N, d, d)
                vba = term if vba is None else add[vba, term]
            lhs = _np_matmul(F, Q[a][None], vab)           # Q_a V_{a,b}
            rhs = _np_matmul(F, vba, Q[a][None])           # V_{b,a} Q_a
            if not (lhs == rhs).all():
                b = int(np.argwhere(~(lhs == rhs).all(axis=(1, 2)))[0][0])
                witnesses["commutation"] = {"a": a, "b": b}
                comm_ok = False

        if fund_ok:
            # index of a Q_b for every b, then Q_{aQ_b} == Q_b Q_a Q_b
            img = None
            for k in range(d):
                term = mul[digits[a][k], Q[:, k, :]]
                img = term if img is None else add[img, term]
            aqb = img @ powers                             # (N,)
            lhs = Q[aqb]
            rhs = _np_matmul(F, _np_matmul(F, Q, Q[a][None]), Q)
            if not (lhs == rhs).all():
                b = int(np.argwhere(~(lhs == rhs).all(axis=(1, 2)))[0][0])
                witnesses["fundamental"] = {"a": a, "b": b}
                fund_ok = False

        if not (bilin_ok or comm_ok or fund_ok):
            break

    return {
        "quadratic": quad_ok and bilin_ok,
        "unit": bool(unit_ok),
        "commutation": comm_ok,
        "fundamental": fund_ok,
        "witnesses": witnesses,
    }


def is_division(J: QuadraticJordan) -> bool:
    """True iff Q_a is invertible for every nonzero a."""
    return division_witness(J) is None


def division_witness(J: QuadraticJordan):
    for a in J.nonzero():
        if mat_inv(J.base, J.Q[a]) is None:
            return a
    return None


def jordan_inverse(J: QuadraticJordan, a: int) -> int:
    """a^{-1} = a Q_a^{-1}; raises SingularQ when Q_a is not invertible."""
    if a == 0:
        raise SingularQ("0 has no inverse (Q_0 = 0)")
    qinv = mat_inv(J.base, J.Q[a])
    if qinv is None:
        raise SingularQ(f"Q_a singular for a={a}")
    return J.apply(a, qinv)


def q_bilinear(J: QuadraticJordan, a: int, b: int):
    """The matrix Q_{a,b} = Q_{a+b} - Q_a - Q_b."""
    F = J.base
    s = J.add(a, b)
    out = []
    for ra, rb, rs in zip(J.Q[a], J.Q[b], J.Q[s]):
        out.append(tuple(F.sub(F.sub(x_s, x_a), x_b)
                         for x_s, x_a, x_b in zip(rs, ra, rb)))
    return tuple(out)


def v_operator(J: QuadraticJordan, a: int, b: int):
    """Matrix of the map c -> b Q_{a,c}."""
    F = J.base
    d = J.dim
    rows = []
    for i in range(d):
        eps = J.index_of(tuple(1 if j == i else 0 for j in range(d)))
        rows.append(vec_mat(F, J.coords(b), q_bilinear(J, a, eps)))
    return tuple(rows)


def check_q_commutativity(J: QuadraticJordan) -> dict:
    """Whether the Hua subgroup is nontrivial and fixed-point free on
    nonzero points, and whether all quadratic operators commute.

    The first property is decided on the Moufang set built from J; the
    implication (free nontrivial action => commuting operators) is the
    content under test and is reported, never assumed.
    """
    if not is_division(J):
        raise NotDivision("the commutativity check needs a division algebra")
    from . import mset  # deferred: mset itself builds on this module

    M = mset.from_jordan(J)
    H, proper = mset.hua_subgroup(M)
    free = True
    ident = tuple(range(H.degree))
    for t in H.elements:
        if t == ident:
            continue
        if any(t[x] == x for x in range(1, H.degree)):
            free = False
            break
    zass = proper and free
    F = J.base
    commutes = True
    witness = None
    for a in J.elements():
        for b in range(a + 1, J.size):
            if mat_mul(F, J.Q[a], J.Q[b]) != mat_mul(F, J.Q[b], J.Q[a]):
                commutes = False
                witness = (a, b)
                break
        if not commutes:
            break
    return {
        "zassenhaus": zass,
        "hua_order": H.order,
        "acts_freely": free,
        "commutes": commutes,
        "witness": witness,
        "implication_holds": (not zass) or commutes,
    }


# ----------------------------------------------------------------------
# ingest format: p f / modulus / d / e / then q^d rows of d*d indices
# ----------------------------------------------------------------------

def _data_lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _ints(line, no, expect=None):
    try:
        vals = [int(t) for t in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", line=no)
    if expect is not None and len(vals) != expect:
        raise ParseError(f"expected {expect} integers, got {len(vals)}", line=no)
    return vals


def loads_jordan(text: str) -> QuadraticJordan:
    lines = _data_lines(text)

    def next_line(what):
        try:
            return next(lines)
        except StopIteration:
            raise ParseError(f"unexpected end of file, missing {what}")

    no, line = next_line("p f")
    p, f = _ints(line, no, 2)
    no, line = next_line("modulus")
    modulus = _ints(line, no, f + 1)
    try:
        F = FiniteField(p, f, modulus)
    except Exception as exc:
        raise ParseError(str(exc), line=no)
    no, line = next_line("dimension")
    (d,) = _ints(line, no, 1)
    if d < 1:
        raise ParseError("dimension must be positive", line=no)
    no, line = next_line("unit index")
    (e,) = _ints(line, no, 1)
    size = F.q ** d
    table = []
    for _ in range(size):
        no, line = next_line(f"Q row {len(table)} of {size}")
        vals = _ints(line, no, d * d)
        for v in vals:
            if not 0 <= v < F.q:
                raise ParseError(f"field index {v} out of range", line=no)
        table.append(tuple(tuple(vals[i * d:(i + 1) * d]) for i in range(d)))
    try:
        return QuadraticJordan(F, d, table, e)
    except JordanError as exc:
        raise ParseError(str(exc))


def load_jordan(path) -> QuadraticJordan:
    with open(path) as fh:
        return loads_jordan(fh.read())


def dumps_jordan(J: QuadraticJordan) -> str:
    F = J.base
    out = [f"{F.p} {F.f}",
           " ".join(str(c) for c in F.modulus),
           str(J.dim),
           str(J.e)]
    for a in J.elements():
        out.append(" ".join(str(x) for row in J.Q[a] for x in row))
    return "\n".join(out) + "\n"


def save_jordan(J: QuadraticJordan, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_jordan(J))
