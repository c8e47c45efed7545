"""pi-special characters, p-special x p'-special factorizations, stability.

Speciality is checked directly against the definition: the degree must be a
pi-number and every irreducible constituent on every subnormal subgroup must
have pi-number determinantal order.  No chief-series shortcut is taken; the
subnormal sweep is cached per (character, pi) since it is the hottest path of
the nucleus search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .chartab import (Character, character_table, conjugate_character,
                      constituents, determinant_order, inner_product, restrict,
                      tensor)
from .errors import ConsistencyError, InputError, PreconditionError
from .permgroup import (Group, _conj, _p_part, as_group, is_pi_separable,
                        prime_factors, set_product)


@dataclass(frozen=True)
class Factorization:
    """chi = p_part * p_prime_part with the factors p- and p'-special;
    the pair is unique when it exists."""

    whole: Character
    p_part: Character
    p_prime_part: Character


def _is_pi_number(n: int, pi) -> bool:
    return all(q in pi for q in prime_factors(n))


@lru_cache(maxsize=None)
def is_pi_special(chi: Character, pi: frozenset) -> bool:
    """Degree and all subnormal constituent determinantal orders are pi-numbers."""
    G = chi.group
    if not is_pi_separable(G, pi):
        raise PreconditionError("group is not pi-separable")
    if not chi.is_irreducible:
        raise PreconditionError("is_pi_special needs an irreducible character")
    if not _is_pi_number(chi.degree, pi):
        return False
    from .permgroup import subnormal_subgroups
    for S in subnormal_subgroups(G):
        for theta, _ in constituents(chi, S):
            if not _is_pi_number(determinant_order(theta), pi):
                return False
    return True


def is_p_special(chi: Character, p: int) -> bool:
    return is_pi_special(chi, frozenset({p}))


def is_p_prime_special(chi: Character, p: int) -> bool:
    pi = frozenset(prime_factors(chi.group.order)) - {p}
    return is_pi_special(chi, pi)


@lru_cache(maxsize=None)
def factorize(chi: Character, p: int):
    """The unique p-special x p'-special factorization, or None.

    Uniqueness of the pair makes search-and-verify sound, so this scans all
    special pairs with matching degree product instead of implementing a
    constructive factorization."""
    G = chi.group
    if not chi.is_irreducible:
        raise PreconditionError("factorize needs an irreducible character")
    table = character_table(G)
    specials = [a for a in table if is_p_special(a, p)]
    prime_specials = [b for b in table if is_p_prime_special(b, p)]
    for a in specials:
        for b in prime_specials:
            if a.degree * b.degree == chi.degree and tensor(a, b) == chi:
                return Factorization(chi, a, b)
    return None


def special_product(alpha: Character, beta: Character, p: int) -> Character:
    """The product of a p-special and a p'-special character; irreducible."""
    if alpha.group != beta.group:
        raise PreconditionError("special_product: characters on different groups")
    if not is_p_special(alpha, p):
        raise PreconditionError("special_product: first factor is not p-special")
    if not is_p_prime_special(beta, p):
        raise PreconditionError("special_product: second factor is not p'-special")
    prod = tensor(alpha, beta)
    if inner_product(prod, prod) != 1:
        raise ConsistencyError("special product is reducible",
                               detail={"alpha": alpha.serialize(),
                                       "beta": beta.serialize()})
    return prod


@lru_cache(maxsize=None)
def is_G_stable(delta: Character, H: Group) -> bool:
    """True iff delta's values agree on every pair of its group's elements
    that are fused in H."""
    Q = delta.group
    if not H.contains(Q):
        raise InputError("is_G_stable: the character's group is not inside H")
    vals = {x: delta.value_at(x) for x in Q.elements}
    for g in H.elements:
        for x in Q.elements:
            y = _conj(x, g)
            if y in Q.element_set and vals[y] != vals[x]:
                return False
    return True


def p_special_extension(theta: Character, G: Group, p: int):
    """The unique p-special extension of theta to G, or None when theta is
    not G-stable (extension criterion for Sylow characters)."""
    P = theta.group
    if not G.contains(P) or P.order != _p_part(G.order, p):
        raise PreconditionError("p_special_extension: P is not a Sylow "
                                "p-subgroup of G")
    if not theta.is_irreducible:
        raise PreconditionError("p_special_extension: theta is not irreducible")
    if not is_G_stable(theta, G):
        return None
    found = [chi for chi in character_table(G)
             if is_p_special(chi, p) and restrict(chi, P) == theta]
    if len(found) != 1:
        raise ConsistencyError(
            f"expected exactly one p-special extension, found {len(found)}",
            detail={"theta": theta.serialize()})
    return found[0]


def nh_stability(N: Group, Q, delta: Character, H: Group, p: int = None):
    """Check that a stable Sylow character of N stays NH-stable and that its
    p-special extension to N is NH-invariant.

    Returns (True, extension) on success; a False first component would be a
    counterexample and is never expected.  Preconditions raise with the name
    of the failed clause.  The prime is inferred from |Q| when not given.
    """
    Qg = as_group(Q)
    if Qg != delta.group:
        raise PreconditionError("nh_stability: delta does not live on Q")
    if not N.contains(Qg):
        raise PreconditionError("nh_stability: Q is not contained in N")
    if not H.contains(Qg):
        raise PreconditionError("nh_stability: Q is not contained in H")
    if p is None:
        primes = prime_factors(Qg.order)
        if len(primes) != 1:
            raise PreconditionError(
                "nh_stability: cannot infer the prime from a trivial Q; pass p")
        p = primes[0]
    if _p_part(Qg.order, p) != Qg.order:
        raise PreconditionError("nh_stability: Q is not a p-group")
    if Qg.order != _p_part(N.order, p):
        raise PreconditionError("nh_stability: Q is not a Sylow p-subgroup of N")
    for g in H.generators:
        if frozenset(_conj(n, g.images) for n in N.elements) != N.element_set:
            raise PreconditionError("nh_stability: H does not normalize N")
    if not is_G_stable(delta, N):
        raise PreconditionError("nh_stability: delta does not extend to N")
    if not is_G_stable(delta, H):
        raise PreconditionError("nh_stability: delta is not H-stable")
    extension = p_special_extension(delta, N, p)
    NH = Group.from_elements(N.degree, set_product(N, H))
    stable = is_G_stable(delta, NH)
    invariant = all(conjugate_character(extension, g) == extension
                    for g in NH.generators)
    return (stable and invariant, extension)
