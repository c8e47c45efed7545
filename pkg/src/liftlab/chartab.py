"""Ordinary character tables and the class-function algebra.

Tables are computed by the Burnside-Dixon method: the commuting action
matrices of the class sums are simultaneously diagonalised over a prime field
F_q with q = 1 (mod exponent), and the eigenvalue data is lifted back to exact
cyclotomic values through the power maps.  Both orthogonality relations are
verified exactly on every constructed table.

Characters are stored against a specific Group instance; cross-group
operations go through explicit subgroup containment so classes can never be
silently misaligned.  Virtual class functions (integer combinations with
negative coefficients) are representable; operations that need genuine
characters check for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import cyclo
from .cyclo import Cyclotomic
from .errors import ConsistencyError, InputError
from .permgroup import (Group, Subgroup, as_group, inverse_class_map,
                        power_map, _raw_power)


@dataclass(frozen=True)
class Character:
    """A class function with exact cyclotomic values, one per class."""

    group: Group
    values: tuple

    @cached_property
    def degree(self):
        d = self.values[0].as_rational()
        if d is None:
            raise ConsistencyError("degree entry is irrational")
        return int(d) if d.denominator == 1 else d

    @cached_property
    def is_linear(self) -> bool:
        return self.degree == 1

    @cached_property
    def is_irreducible(self) -> bool:
        return self in set(character_table(self.group).irreducibles)

    def value_at(self, element) -> Cyclotomic:
        return self.values[self.group.class_index(element)]

    def __add__(self, other):
        self._check_same_group(other)
        return Character(self.group,
                         tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check_same_group(other)
        return Character(self.group,
                         tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, Character):
            return tensor(self, other)
        return Character(self.group, tuple(v * other for v in self.values))

    __rmul__ = __mul__

    def _check_same_group(self, other):
        if self.group != other.group:
            raise InputError("characters live on different groups")

    def serialize(self) -> str:
        return "[" + ", ".join(v.serialize() for v in self.values) + "]"

    def __repr__(self):
        return f"<Character deg {self.values[0].serialize()} on {self.group!r}>"


@dataclass(frozen=True)
class CharacterTable:
    group: Group
    irreducibles: tuple

    def __iter__(self):
        return iter(self.irreducibles)

    def index_of(self, chi: Character) -> int:
        return self.irreducibles.index(chi)


def trivial_character(G: Group) -> Character:
    one = Cyclotomic.one()
    return Character(G, tuple(one for _ in G.classes))


# ---------------------------------------------------------------------------
# class algebra

@lru_cache(maxsize=None)
def class_algebra_constants(G: Group):
    """Structure-constant matrices M_i with (M_i)[k][j] = a_ijk, where the
    class sums satisfy c_i c_j = sum_k a_ijk c_k."""
    r = len(G.classes)
    inv = {}
    mats = []
    for i in range(r):
        M = [[0] * r for _ in range(r)]
        for k in range(r):
            z = G.classes[k].members[0]
            for x in G.classes[i].members:
                xi = inv.get(x)
                if xi is None:
                    buf = [0] * len(x)
                    for a, b in enumerate(x):
                        buf[b] = a
                    xi = inv[x] = tuple(buf)
                y = tuple(z[p] for p in xi)  # x^-1 * z
                M[k][G.class_of[y]] += 1
        mats.append(tuple(tuple(row) for row in M))
    return tuple(mats)


# ---------------------------------------------------------------------------
# Dixon's method over F_q

def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def dixon_prime(G: Group) -> int:
    """Smallest prime q = 1 (mod exponent) with q > 2*sqrt(|G|)*max class size."""
    e = G.exponent
    maxsize = max(c.size for c in G.classes)
    q = e + 1
    while True:
        if q * q > 4 * G.order * maxsize * maxsize and _is_prime(q):
            return q
        q += e


def _primitive_root(q):
    fact = []
    n = q - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            fact.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        fact.append(n)
    for g in range(2, q):
        if all(pow(g, (q - 1) // f, q) != 1 for f in fact):
            return g
    raise ConsistencyError("no primitive root found")


def _kernel_mod(rows, q):
    """Null-space basis of a matrix over F_q (rows given as lists)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    A = [list(r) for r in rows]
    pivots = []
    rk = 0
    for c in range(n):
        piv = next((i for i in range(rk, m) if A[i][c] % q), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        inv = pow(A[rk][c], q - 2, q)
        A[rk] = [(v * inv) % q for v in A[rk]]
        for i in range(m):
            if i != rk and A[i][c] % q:
                f = A[i][c]
                A[i] = [(a - f * b) % q for a, b in zip(A[i], A[rk])]
        pivots.append(c)
        rk += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for r, c in enumerate(pivots):
            vec[c] = (-A[r][f]) % q
        basis.append(vec)
    return basis


def _matvec(M, v, q):
    return [sum(M[k][j] * v[j] for j in range(len(v)) if v[j]) % q
            for k in range(len(M))]


def _common_eigenvectors(mats, q, r):
    """Refine F_q^r into the common one-dimensional eigenspaces of mats."""
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for M in mats[1:]:  # mats[0] is the identity class, it never splits
        if all(len(B) == 1 for B in spaces):
            break
        refined = []
        for B in spaces:
            if len(B) == 1:
                refined.append(B)
                continue
            imgs = [_matvec(M, b, q) for b in B]
            found = 0
            for lam in range(q):
                rows = [[(imgs[t][k] - lam * B[t][k]) % q for t in range(len(B))]
                        for k in range(r)]
                coeffs = _kernel_mod(rows, q)
                if not coeffs:
                    continue
                block = []
                for cv in coeffs:
                    vec = [sum(cv[t] * B[t][k] for t in range(len(B))) % q
                           for k in range(r)]
                    block.append(vec)
                refined.append(block)
                found += len(block)
                if found == len(B):
                    break
            if found != len(B):
                raise ConsistencyError("eigenspace refinement lost dimensions")
        spaces = refined
    if not all(len(B) == 1 for B in spaces):
        raise ConsistencyError("class algebra did not split into lines")
    return [B[0] for B in spaces]


def _sqrt_mod(a, q):
    a %= q
    for s in range(1, (q + 1) // 2):
        if s * s % q == a:
            return s
    raise ConsistencyError(f"{a} is not a square mod {q}")


def _dixon_rows(G: Group):
    """All irreducible character value rows, as tuples of Cyclotomic."""
    r = len(G.classes)
    if r == 1:
        return [(Cyclotomic.one(),)]
    q = dixon_prime(G)
    e = G.exponent
    omega = pow(_primitive_root(q), (q - 1) // e, q)
    mats = class_algebra_constants(G)
    vectors = _common_eigenvectors(mats, q, r)
    inv_class = inverse_class_map(G)
    sizes = [c.size for c in G.classes]
    orders = [c.element_order for c in G.classes]
    pmods = {k: power_map(G, k) for k in range(e)}
    rows = []
    for v in vectors:
        t = next(i for i, x in enumerate(v) if x)
        vt_inv = pow(v[t], q - 2, q)
        theta = [(_matvec(M, v, q)[t] * vt_inv) % q for M in mats]
        f = sum(theta[i] * theta[inv_class[i]] * pow(sizes[i], q - 2, q)
                for i in range(r)) % q
        d = _sqrt_mod(G.order * pow(f, q - 2, q) % q, q)
        w = [theta[i] * d * pow(sizes[i], q - 2, q) % q for i in range(r)]
        values = []
        for i in range(r):
            m = orders[i]
            wm = pow(omega, e // m, q)
            minv = pow(m, q - 2, q)
            lams = []
            for j in range(m):
                s = sum(w[pmods[k % e][i]] * pow(wm, (-j * k) % m, q)
                        for k in range(m)) % q
                lam = (s * minv) % q
                if lam > d:
                    raise ConsistencyError("eigenvalue multiplicity out of range")
                lams.append(lam)
            if sum(lams) != d:
                raise ConsistencyError("eigenvalue multiplicities do not sum to degree")
            values.append(cyclo.from_root_sum(m, lams))
        rows.append(tuple(values))
    return rows


@lru_cache(maxsize=None)
def character_table(G: Group) -> CharacterTable:
    """The full table, canonically ordered and verified for orthogonality."""
    rows = _dixon_rows(G)
    rows.sort(key=lambda vals: (int(vals[0].as_rational()),
                                tuple(v.serialize() for v in vals)))
    irr = tuple(Character(G, vals) for vals in rows)
    table = CharacterTable(G, irr)
    _verify_orthogonality(table)
    return table


def _verify_orthogonality(table: CharacterTable):
    G = table.group
    irr = table.irreducibles
    r = len(G.classes)
    if len(irr) != r:
        raise ConsistencyError(f"{len(irr)} irreducibles for {r} classes")
    for i, chi in enumerate(irr):
        for j in range(i, len(irr)):
            ip = inner_product(chi, irr[j])
            if ip != (1 if i == j else 0):
                raise ConsistencyError(f"row orthogonality failed at ({i},{j})")
    inv_class = inverse_class_map(G)
    for k in range(r):
        for l in range(r):
            s = Cyclotomic.zero()
            for chi in irr:
                s = s + chi.values[k] * chi.values[inv_class[l]]
            want = G.order // G.classes[k].size if k == l else 0
            if s != Cyclotomic.from_rational(want):
                raise ConsistencyError(f"column orthogonality failed at ({k},{l})")


# ---------------------------------------------------------------------------
# class-function algebra

def inner_product(theta: Character, psi: Character) -> Fraction:
    """(1/|G|) sum theta(g) conj(psi(g)); exact, and rational by contract."""
    if theta.group != psi.group:
        raise InputError("inner product of characters on different groups")
    G = theta.group
    s = Cyclotomic.zero()
    for cls, a, b in zip(G.classes, theta.values, psi.values):
        s = s + cls.size * a * b.conjugate()
    q = s.as_rational()
    if q is None:
        raise ConsistencyError("inner product is irrational; inputs were not "
                               "generalized characters")
    return Fraction(q) / G.order


def restrict(chi: Character, H) -> Character:
    """Restriction of chi to a subgroup (same point set)."""
    Hg = as_group(H)
    if not chi.group.contains(Hg):
        raise InputError("restrict: H is not a subgroup of the character's group")
    return Character(Hg, tuple(chi.value_at(c.members[0]) for c in Hg.classes))


def induce(H, theta: Character, G: Group) -> Character:
    """Induced class function theta^G via the class-fusion formula."""
    Hg = as_group(H)
    if theta.group != Hg:
        raise InputError("induce: character does not live on H")
    if not G.contains(Hg):
        raise InputError("induce: H is not a subgroup of G")
    values = []
    for k, cls in enumerate(G.classes):
        total = Cyclotomic.zero()
        cg = Fraction(G.order, cls.size)
        for j, hcls in enumerate(Hg.classes):
            if G.class_of[hcls.members[0]] == k:
                ch = Fraction(Hg.order, hcls.size)
                total = total + theta.values[j] * (cg / ch)
        values.append(total)
    return Character(G, tuple(values))


def constituents(chi: Character, H):
    """Decompose chi restricted to H into irreducibles of H with multiplicities."""
    Hg = as_group(H)
    res = restrict(chi, Hg)
    out = []
    for theta in character_table(Hg).irreducibles:
        m = inner_product(res, theta)
        if m:
            if m.denominator != 1 or m < 0:
                raise InputError("constituents: input is not a character")
            out.append((theta, int(m)))
    return out


def tensor(alpha: Character, beta: Character) -> Character:
    if alpha.group != beta.group:
        raise InputError("tensor: characters on different groups")
    return Character(alpha.group,
                     tuple(a * b for a, b in zip(alpha.values, beta.values)))


def is_character(chi: Character) -> bool:
    """True iff chi is a genuine (nonnegative-integral) character."""
    try:
        mults = [inner_product(chi, t) for t in character_table(chi.group)]
    except ConsistencyError:
        return False
    return (any(mults)
            and all(m.denominator == 1 and m >= 0 for m in mults))


def determinant_order(chi: Character) -> int:
    """Order of det of a representation affording chi, via exact recovery of
    the eigenvalue multiplicities on each class from the power maps."""
    if not is_character(chi):
        raise InputError("determinant_order: input is not a character")
    G = chi.group
    d = chi.degree
    result = 1
    for i, cls in enumerate(G.classes):
        m = cls.element_order
        exp_sum = 0
        for j in range(m):
            s = Cyclotomic.zero()
            for k in range(m):
                s = s + chi.values[power_map(G, k)[i]] * cyclo.root_of_unity(m, -j * k)
            nj = (s * Fraction(1, m)).as_rational()
            if nj is None or nj.denominator != 1 or nj < 0:
                raise InputError("determinant_order: eigenvalue multiplicities "
                                 "are not nonnegative integers")
            exp_sum += j * int(nj)
        t = exp_sum % m
        result = math.lcm(result, m // math.gcd(m, t) if t else 1)
    return result


def extends(theta: Character, chi: Character) -> bool:
    """True iff chi restricted to theta's group equals theta."""
    if not chi.group.contains(theta.group):
        raise InputError("extends: theta's group is not a subgroup")
    return restrict(chi, theta.group) == theta


def conjugate_character(chi: Character, g) -> Character:
    """The conjugate chi^g on the same group, defined when g normalizes it:
    chi^g(x) = chi(g x g^-1)."""
    if hasattr(g, "images"):
        g = g.images
    G = chi.group
    gi = [0] * len(g)
    for a, b in enumerate(g):
        gi[b] = a
    gi = tuple(gi)
    values = []
    for cls in G.classes:
        y = _conj_raw(cls.members[0], g, gi)
        values.append(chi.value_at(y))
    return Character(G, tuple(values))


def _conj_raw(x, g, gi):
    """g x g^-1 for raw tuples (gi = g^-1)."""
    return tuple(gi[x[g[p]]] for p in range(len(x)))
