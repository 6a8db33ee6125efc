"""Finite (right) nearfields, Dickson twists and sharply 3-transitive groups.

A nearfield here reuses the additive group of a finite field and carries
an explicit multiplication table; Dickson instances derive the table from
a coupling (a map from the units to Frobenius exponents), raw tables can
be ingested for the wild cases.  Right distributivity (a+b)c = ac + bc is
the defining one-sided law; left distributivity singles out the kernel.
"""

from __future__ import annotations

import json

from .fields import FiniteField, make_field
from .perm import PermGroup, Permutation, closure, point_stabilizer
from . import mset

DEFAULT_CLOSURE_CAP = 10 ** 6


class NearfieldError(Exception):
    pass


class NotACoupling(NearfieldError):
    pass


class AxiomFailure(NearfieldError):
    pass


class CouplingNotInversionSymmetric(NearfieldError):
    pass


class NotMultiplicativeAutomorphism(NearfieldError):
    pass


class NotInvolution(NearfieldError):
    pass


class NotKT(NearfieldError):
    pass


class ZeroArgument(NearfieldError):
    pass


class ParseError(NearfieldError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class Coupling:
    """Frobenius exponents phi(b) for the units; phi(a.b) = phi(a)+phi(b) mod f."""

    def __init__(self, field: FiniteField, exponents):
        self.field = field
        exps = [0] + [int(e) % field.f for e in exponents]
        if len(exps) != field.q:
            raise NearfieldError(
                f"need {field.q - 1} exponents (one per unit), got {len(exps) - 1}")
        self.exps = tuple(exps)

    def __call__(self, a: int) -> int:
        return self.exps[a]

    def twisted_product(self, a: int, b: int) -> int:
        F = self.field
        if b == 0:
            return 0
        return F.mul(F.pow(a, F.p ** self.exps[b]), b)

    def violation(self):
        """First (a, b) violating the coupling identity, or None."""
        F = self.field
        for a in F.units():
            for b in F.units():
                if (self.exps[self.twisted_product(a, b)]
                        != (self.exps[a] + self.exps[b]) % F.f):
                    return (a, b)
        return None

    def inversion_symmetric(self) -> bool:
        F = self.field
        return all(self.exps[a] == self.exps[F.inv(a)] for a in F.units())

    def descriptor(self) -> dict:
        d = self.field.descriptor()
        d["phi"] = list(self.exps[1:])
        return d


def trivial_coupling(F: FiniteField) -> Coupling:
    return Coupling(F, [0] * (F.q - 1))


def quadratic_character_coupling(F: FiniteField) -> Coupling:
    """phi(b) = 0 on squares, f/2 on non-squares; needs even degree."""
    if F.f % 2:
        raise NearfieldError("the quadratic-character coupling needs even degree")
    half = F.f // 2
    return Coupling(F, [0 if F.is_square(a) else half for a in F.units()])


class Nearfield:
    """Additive group of a field with an explicit multiplication table."""

    def __init__(self, field: FiniteField, table, phi: Coupling | None = None,
                 check: bool = True):
        self.field = field
        self.q = field.q
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        if len(self.table) != self.q or any(len(r) != self.q for r in self.table):
            raise NearfieldError("multiplication table must be q x q")
        self.phi = phi
        self.one = 1
        if check:
            witness = nearfield_axiom_witness(self)
            if witness is not None:
                raise AxiomFailure(f"nearfield axiom fails: {witness}")
        self._minv = [0] * self.q
        for a in range(1, self.q):
            self._minv[a] = next(u for u in range(1, self.q)
                                 if self.table[a][u] == 1)

    # additive structure is the field's
    def add(self, a, b):
        return self.field.add(a, b)

    def sub(self, a, b):
        return self.field.sub(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        return self.table[a][b]

    def minv(self, a):
        if a == 0:
            raise ZeroArgument("0 has no multiplicative inverse")
        return self._minv[a]

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def is_field_multiplication(self) -> bool:
        F = self.field
        return all(self.table[a][b] == F.mul(a, b)
                   for a in range(self.q) for b in range(self.q))

    def descriptor(self) -> dict:
        d = self.field.descriptor()
        if self.phi is not None:
            d["phi"] = list(self.phi.exps[1:])
        else:
            d["table"] = [list(r) for r in self.table]
        return d

    def __repr__(self):
        kind = "dickson" if self.phi is not None else "table"
        return f"Nearfield(q={self.q}, {kind})"


def nearfield_axiom_witness(N: Nearfield):
    """First violated axiom as (name, data), or None; all checks exhaustive."""
    F = N.field
    q = N.q
    # (F,+,0) is an abelian group: delegated to field tables, spot-verified
    for a in range(q):
        if F.add(a, 0) != a or F.add(a, F.neg(a)) != 0:
            return ("additive_group", a)
        for b in range(q):
            if F.add(a, b) != F.add(b, a):
                return ("additive_commutativity", (a, b))
    for a in range(q):
        if N.table[a][0] != 0:
            return ("a_times_zero", a)
    units = set(range(1, q))
    for a in units:
        if N.table[a][1] != a or N.table[1][a] != a:
            return ("unit_neutral", a)
        row = {N.table[a][b] for b in units}
        if row != units:
            return ("units_not_closed", a)
        if not any(N.table[a][b] == 1 for b in units):
            return ("no_inverse", a)
    for a in units:
        for b in units:
            ab = N.table[a][b]
            if ab == 0:
                return ("zero_divisor", (a, b))
            for c in units:
                if N.table[ab][c] != N.table[a][N.table[b][c]]:
                    return ("associativity", (a, b, c))
    for a in range(q):
        for b in range(q):
            s = F.add(a, b)
            for c in range(q):
                if N.table[s][c] != F.add(N.table[a][c], N.table[b][c]):
                    return ("right_distributivity", (a, b, c))
    return None


def dickson(F: FiniteField, phi: Coupling) -> Nearfield:
    """Twist the field multiplication by a coupling: a.b = a^phi(b) b."""
    if phi.field != F:
        raise NearfieldError("coupling belongs to a different field")
    bad = phi.violation()
    if bad is not None:
        raise NotACoupling(f"coupling identity fails at {bad}")
    table = tuple(tuple(phi.twisted_product(a, b) for b in range(F.q))
                  for a in range(F.q))
    return Nearfield(F, table, phi=phi, check=True)


def kernel(N: Nearfield):
    """Left-distributive elements; verified to close into a field."""
    q = N.q
    out = []
    for a in range(q):
        if all(N.mul(a, N.add(b, c)) == N.add(N.mul(a, b), N.mul(a, c))
               for b in range(q) for c in range(q)):
            out.append(a)
    ker = set(out)
    assert 0 in ker and 1 in ker
    for a in out:
        assert N.neg(a) in ker, "kernel must be closed under negation"
        if a:
            assert N.minv(a) in ker, "kernel must be closed under inversion"
        for b in out:
            assert N.add(a, b) in ker and N.mul(a, b) in ker, \
                "kernel must be additively and multiplicatively closed"
    return out


def center(N: Nearfield):
    """Elements commuting with everything; closed under the product."""
    q = N.q
    out = [a for a in range(q)
           if all(N.mul(a, b) == N.mul(b, a) for b in range(q))]
    cen = set(out)
    for a in out:
        for b in out:
            assert N.mul(a, b) in cen, "centre must be multiplicatively closed"
    return out


class KTAutomorphism:
    """An involutory automorphism of the multiplicative group, as a table."""

    __slots__ = ("nearfield", "images")

    def __init__(self, nearfield: Nearfield, images):
        self.nearfield = nearfield
        imgs = list(images)
        if len(imgs) == nearfield.q - 1:
            imgs = [0] + imgs
        if len(imgs) != nearfield.q or imgs[0] != 0:
            raise NearfieldError("sigma needs one image per unit")
        if sorted(imgs[1:]) != list(range(1, nearfield.q)):
            raise NearfieldError("sigma must permute the units")
        self.images = tuple(imgs)

    def __call__(self, a: int) -> int:
        if a == 0:
            raise ZeroArgument("sigma is only defined on the units")
        return self.images[a]

    def is_involution(self) -> bool:
        return all(self.images[self.images[a]] == a
                   for a in range(1, self.nearfield.q))

    def automorphism_witness(self):
        N = self.nearfield
        for a in N.units():
            for b in N.units():
                if self.images[N.mul(a, b)] != N.mul(self.images[a],
                                                     self.images[b]):
                    return (a, b)
        return None

    def descriptor(self):
        return list(self.images[1:])


def identity_sigma(N: Nearfield) -> KTAutomorphism:
    """sigma = id; involutory and multiplicative, fails the KT identity
    whenever 2 != -1 (negative control)."""
    return KTAutomorphism(N, list(range(N.q)))


def make_kt_sigma(N: Nearfield) -> KTAutomorphism:
    """sigma = inversion in the base field, for Dickson nearfields whose
    coupling is symmetric under field inversion."""
    if N.phi is None:
        raise NearfieldError("sigma construction needs a Dickson instance")
    F = N.field
    if not N.phi.inversion_symmetric():
        raise CouplingNotInversionSymmetric(
            "need phi(a) == phi(a^-1) for every unit")
    sigma = KTAutomorphism(N, [F.inv(a) for a in F.units()])
    if not sigma.is_involution():
        raise NotInvolution("field inversion should be involutory")
    bad = sigma.automorphism_witness()
    if bad is not None:
        raise NotMultiplicativeAutomorphism(
            f"inversion is not multiplicative at {bad}")
    return sigma


def check_kt(N: Nearfield, sigma: KTAutomorphism) -> dict:
    """(1 + a^sigma)^sigma == 1 - (1 + a)^sigma over the units != -1."""
    if not sigma.is_involution():
        raise NotInvolution("sigma must be an involution of the units")
    bad = sigma.automorphism_witness()
    if bad is not None:
        raise NotMultiplicativeAutomorphism(
            f"sigma is not multiplicative at {bad}")
    minus_one = N.neg(1)
    for a in N.units():
        if a == minus_one:
            continue
        s = N.add(1, sigma(a))
        lhs = sigma(s)
        rhs = N.sub(1, sigma(N.add(1, a)))
        if lhs != rhs:
            return {"is_kt": False, "witness": a}
    return {"is_kt": True, "witness": None}


def pseudo_square(N: Nearfield, sigma: KTAutomorphism, a: int) -> int:
    """q_a = (a^sigma)^-1 . a, inverses and products in the nearfield."""
    if a == 0:
        raise ZeroArgument("pseudo-squares are defined for nonzero a")
    return N.mul(N.minv(sigma(a)), a)


def affine_group(N: Nearfield) -> PermGroup:
    """All maps x -> x.a + b; sharply 2-transitive on the carrier."""
    q = N.q
    elements = set()
    for a in N.units():
        col = [N.mul(x, a) for x in range(q)]
        for b in range(q):
            elements.add(tuple(N.add(col[x], b) for x in range(q)))
    gens = [Permutation(tuple(N.add(x, b) for x in range(q)))
            for b in (N.field.p ** i for i in range(N.field.f))]
    gens += [Permutation(tuple(N.mul(x, a) for x in range(q)))
             for a in N.units()]
    return PermGroup(q, gens, elements=elements)


def _tau_permutation(N: Nearfield, sigma: KTAutomorphism) -> Permutation:
    q = N.q
    images = [0] * (q + 1)
    images[0], images[q] = q, 0
    for x in N.units():
        images[x] = N.neg(sigma(x))
    return Permutation(images)


def t3_group(N: Nearfield, sigma: KTAutomorphism,
             cap: int = DEFAULT_CLOSURE_CAP) -> PermGroup:
    """Closure of the affine maps and tau: x -> -x^sigma on F u {inf}.

    Asserts sharp 3-transitivity and that the stabiliser of inf is
    exactly the affine group.
    """
    rep = check_kt(N, sigma)
    if not rep["is_kt"]:
        raise NotKT(f"sigma fails the KT identity at a={rep['witness']}")
    q = N.q
    inf = q
    gens = []
    for b in (N.field.p ** i for i in range(N.field.f)):
        gens.append(Permutation(tuple(N.add(x, b) for x in range(q)) + (inf,)))
    for a in N.units():
        gens.append(Permutation(tuple(N.mul(x, a) for x in range(q)) + (inf,)))
    gens.append(_tau_permutation(N, sigma))
    G = closure(gens, cap=cap)
    from .perm import transitivity_report
    rep = transitivity_report(G)
    assert 3 in rep["sharp_at"], "T3 must be sharply 3-transitive"
    aff = affine_group(N)
    stab = point_stabilizer(G, [inf])
    assert {t[:q] for t in stab.elements} == aff.elements, \
        "the stabiliser of inf must be the affine group"
    return G


def kt_moufang(N: Nearfield, sigma: KTAutomorphism) -> mset.MoufangSetData:
    """The Moufang set with root group (F,+) and tau: x -> -x^sigma."""
    rep = check_kt(N, sigma)
    if not rep["is_kt"]:
        raise NotKT(f"sigma fails the KT identity at a={rep['witness']}")
    F = N.field
    U = mset.RootGroupModel(F.p, F.f)
    tau = {a: N.neg(sigma(a)) for a in N.units()}
    return mset.build_moufang(U, tau, e=1)


def check_hua_pseudosquare(N: Nearfield, sigma: KTAutomorphism) -> dict:
    """x h_a == x . q_a for every x and every nonzero a, with h_a computed
    by mu-map composition on the Moufang side and q_a the pseudo-square.

    The formula is verified, never assumed; a mismatch is reported as a
    finding with a witness."""
    M = kt_moufang(N, sigma)
    crit = mset.check_moufang_criterion(M)
    if not crit["is_moufang"]:
        return {"ok": False, "witness": {"criterion": crit["witness"]}}
    for a in N.units():
        qa = pseudo_square(N, sigma, a)
        h = M.hua[a]
        for x in N.elements():
            if h[x] != N.mul(x, qa):
                return {"ok": False, "witness": {"a": a, "x": x, "q_a": qa}}
    return {"ok": True, "witness": None}


def k_sigma_report(N: Nearfield, sigma: KTAutomorphism) -> dict:
    """The sigma-symmetric part of the kernel and its promised properties.

    k_sigma = (kernel n sigma(kernel*)) u {0}; reported: commutative
    subfield, squares central, sigma acting as inversion on it, and
    equality with the kernel away from characteristic 2.
    """
    ker = kernel(N)
    cen = set(center(N))
    sigma_img = {sigma(x) for x in ker if x != 0}
    ks = sorted((set(ker) & sigma_img) | {0})
    kset = set(ks)

    commutative_subfield = 0 in kset and 1 in kset
    for a in ks:
        if not commutative_subfield:
            break
        if N.neg(a) not in kset or (a and N.minv(a) not in kset):
            commutative_subfield = False
            break
        for b in ks:
            if (N.add(a, b) not in kset or N.mul(a, b) not in kset
                    or N.mul(a, b) != N.mul(b, a)):
                commutative_subfield = False
                break

    squares_central = all(N.mul(x, x) in cen for x in ks if x != 0)
    sigma_inverts = all(sigma(x) == N.minv(x) for x in ks if x != 0)
    equals_kernel = (N.field.p == 2) or (kset == set(ker))
    return {
        "set": ks,
        "kernel": ker,
        "is_commutative_subfield": commutative_subfield,
        "squares_central": squares_central,
        "sigma_is_inversion_on_it": sigma_inverts,
        "equals_kernel_when_odd_char": equals_kernel,
    }


# ----------------------------------------------------------------------
# ingest: JSON descriptor for Dickson data, raw q x q tables for the rest
# ----------------------------------------------------------------------

def dickson_from_descriptor(data) -> Nearfield:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}")
    try:
        p, f = int(data["p"]), int(data["f"])
        phi_exps = [int(x) for x in data["phi"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"descriptor needs p, f, phi: {exc}")
    modulus = data.get("modulus")
    F = make_field(p, f, modulus)
    return dickson(F, Coupling(F, phi_exps))


def load_nearfield_table(path) -> Nearfield:
    with open(path) as fh:
        return loads_nearfield_table(fh.read())


def loads_nearfield_table(text: str) -> Nearfield:
    rows = []
    header = None
    header_line = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals = [int(t) for t in line.split()]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", line=no)
        if header is None:
            if len(vals) != 2:
                raise ParseError("first line must be 'p f'", line=no)
            header = vals
            header_line = no
            continue
        rows.append((no, vals))
    if header is None:
        raise ParseError("empty table file")
    p, f = header
    try:
        F = make_field(p, f)
    except Exception as exc:
        raise ParseError(str(exc), line=header_line)
    q = F.q
    if len(rows) != q:
        raise ParseError(f"expected {q} table rows, found {len(rows)}",
                         line=rows[-1][0] if rows else header_line)
    table = []
    for no, vals in rows:
        if len(vals) != q:
            raise ParseError(f"row needs {q} entries, got {len(vals)}", line=no)
        if any(not 0 <= v < q for v in vals):
            raise ParseError("table entry out of range", line=no)
        table.append(tuple(vals))
    try:
        return Nearfield(F, table, phi=None, check=True)
    except AxiomFailure as exc:
        raise ParseError(str(exc))


def dumps_nearfield_table(N: Nearfield) -> str:
    lines = [f"{N.field.p} {N.field.f}"]
    for row in N.table:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"
