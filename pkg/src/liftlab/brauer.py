"""Brauer characters of p-solvable groups, extracted through Fong-Swan.

In the p-solvable world every irreducible Brauer character appears among the
restrictions of ordinary irreducibles to p-regular classes, so IBr(G) is
computed as the set of restrictions that are not nonnegative-integer
combinations of the other restrictions.  Values are exact vectors on
p-regular classes; no modular module theory is involved.  Non-p-solvable
input is refused.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .chartab import Character, character_table
from .cyclo import Cyclotomic
from .errors import ConsistencyError, InputError, PreconditionError
from .exactla import LinearSolver
from .permgroup import Group, as_group, is_p_solvable


@dataclass(frozen=True)
class BrauerCharacter:
    """A class function on the p-regular classes of its group."""

    group: Group
    p: int
    values: tuple

    @cached_property
    def degree(self):
        d = self.values[0].as_rational()
        return int(d) if d is not None and d.denominator == 1 else d

    def serialize(self) -> str:
        return "[" + ", ".join(v.serialize() for v in self.values) + "]"

    def __repr__(self):
        return f"<BrauerCharacter p={self.p} deg {self.values[0].serialize()}>"


@dataclass(frozen=True)
class DecompositionMatrix:
    """Rows indexed by Irr(G), columns by IBr(G); chi^0 = sum d[chi][phi] phi."""

    group: Group
    p: int
    rows: tuple  # tuple of tuples of nonnegative ints


@dataclass(frozen=True)
class LiftSet:
    """The ordinary irreducibles restricting to a fixed Brauer character,
    optionally filtered by a vertex pair."""

    brauer: BrauerCharacter
    members: tuple
    vertex_filter: tuple = None

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _check_prime(p):
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise InputError(f"{p} is not prime")


@lru_cache(maxsize=None)
def p_regular_classes(G: Group, p: int):
    """Indices of classes whose element order is coprime to p."""
    _check_prime(p)
    return tuple(i for i, c in enumerate(G.classes) if c.element_order % p)


def restrict_to_p_regular(chi: Character, p: int) -> BrauerCharacter:
    idx = p_regular_classes(chi.group, p)
    return BrauerCharacter(chi.group, p, tuple(chi.values[i] for i in idx))


def _is_nonneg_combo(target, candidates):
    """Exact feasibility: is target a nonnegative-integer combination of the
    candidate value vectors?  Bounded DFS, coefficients capped by degree
    ratios (position 0 is the identity class)."""
    zero = Cyclotomic.zero()
    ordered = sorted(candidates, key=lambda c: -c[0].as_rational())

    def rec(vec, i):
        deg = vec[0].as_rational()
        if deg == 0:
            return all(v == zero for v in vec)
        if deg < 0 or i == len(ordered):
            return False
        cdeg = ordered[i][0].as_rational()
        for k in range(int(deg // cdeg), -1, -1):
            nxt = tuple(v - k * c for v, c in zip(vec, ordered[i])) if k else vec
            if rec(nxt, i + 1):
                return True
        return False

    return rec(tuple(target), 0)


@lru_cache(maxsize=None)
def ibr(G: Group, p: int):
    """IBr(G): restrictions minimal under nonnegative-integer combination."""
    _check_prime(p)
    if not is_p_solvable(G, p):
        raise PreconditionError(
            f"group is not {p}-solvable; Fong-Swan extraction unavailable")
    restrictions = []
    seen = set()
    for chi in character_table(G):
        b = restrict_to_p_regular(chi, p)
        if b.values not in seen:
            seen.add(b.values)
            restrictions.append(b)
    result = []
    for cand in restrictions:
        others = [o.values for o in restrictions if o.values != cand.values]
        if not _is_nonneg_combo(cand.values, others):
            result.append(cand)
    result.sort(key=lambda b: (b.degree, tuple(v.serialize() for v in b.values)))
    if len(result) != len(p_regular_classes(G, p)):
        raise ConsistencyError(
            f"got {len(result)} Brauer characters for "
            f"{len(p_regular_classes(G, p))} p-regular classes")
    return tuple(result)


@lru_cache(maxsize=None)
def _ibr_solver(G: Group, p: int) -> LinearSolver:
    """Exact solver over the flattened rational coordinates of IBr vectors."""
    basis = ibr(G, p)
    e = G.exponent
    columns = []
    for b in basis:
        col = []
        for v in b.values:
            col.extend(v.coords_at(e))
        columns.append(col)
    return LinearSolver(columns)


@lru_cache(maxsize=None)
def decomposition_matrix(G: Group, p: int) -> DecompositionMatrix:
    """Exact nonnegative-integer matrix with chi^0 = sum d[chi][phi] * phi."""
    basis = ibr(G, p)
    solver = _ibr_solver(G, p)
    e = G.exponent
    rows = []
    for chi in character_table(G):
        b = restrict_to_p_regular(chi, p)
        vec = []
        for v in b.values:
            vec.extend(v.coords_at(e))
        sol = solver.solve(vec)
        if sol is None:
            raise ConsistencyError("restriction lies outside the IBr span")
        row = []
        for x in sol:
            if x.denominator != 1 or x < 0:
                raise ConsistencyError(f"non-integral decomposition entry {x}")
            row.append(int(x))
        rows.append(tuple(row))
    for j, phi in enumerate(basis):
        witness = any(
            r[j] == 1 and sum(r) == 1
            and restrict_to_p_regular(chi, p) == phi
            for r, chi in zip(rows, character_table(G)))
        if not witness:
            raise ConsistencyError(
                f"no Fong-Swan lift witness for Brauer character {j}")
    return DecompositionMatrix(G, p, tuple(rows))


def lifts(phi: BrauerCharacter) -> LiftSet:
    """All ordinary irreducibles chi with chi^0 = phi."""
    G, p = phi.group, phi.p
    if phi not in set(ibr(G, p)):
        raise InputError("lifts: input is not an irreducible Brauer character")
    members = tuple(chi for chi in character_table(G)
                    if restrict_to_p_regular(chi, p) == phi)
    return LiftSet(phi, members)


def brauer_induce(eta: BrauerCharacter, G: Group) -> BrauerCharacter:
    """Induced Brauer character, by the class-fusion induction formula
    evaluated on p-regular classes."""
    T = eta.group
    p = eta.p
    if not G.contains(T):
        raise InputError("brauer_induce: the character's group is not a subgroup")
    t_idx = p_regular_classes(T, p)
    g_idx = p_regular_classes(G, p)
    values = []
    for k in g_idx:
        cls = G.classes[k]
        cg = Fraction(G.order, cls.size)
        total = Cyclotomic.zero()
        for pos, j in enumerate(t_idx):
            tcls = T.classes[j]
            if G.class_of[tcls.members[0]] == k:
                ch = Fraction(T.order, tcls.size)
                total = total + eta.values[pos] * (cg / ch)
        values.append(total)
    return BrauerCharacter(G, p, tuple(values))


def inducing_brauer(T, phi: BrauerCharacter):
    """All eta in IBr(T) with eta^G = phi."""
    Tg = as_group(T)
    G = phi.group
    if phi not in set(ibr(G, phi.p)):
        raise InputError("inducing_brauer: phi is not in IBr(G)")
    return tuple(eta for eta in ibr(Tg, phi.p)
                 if brauer_induce(eta, G) == phi)
