"""Finite permutation groups with the structural machinery for character work.

Groups are fully enumerated (desk scale, bounded by ``DEFAULT_ORDER_BOUND``),
and every structural search is exhaustive with conjugacy deduplication.  All
values are immutable after construction, and the module-level caches are
write-once with deterministic content, so concurrent reads are safe.

Internally a permutation is a tuple of 0-based images; the :class:`Permutation`
wrapper is used at API boundaries and in reports, where points are 1-based.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapacityError, InputError

DEFAULT_ORDER_BOUND = 512

_order_bound = [DEFAULT_ORDER_BOUND]


def set_order_bound(n: int):
    """Override the desk-scale capacity bound.  Call once, before any
    computation; cached results are keyed on the values seen at call time."""
    _order_bound[0] = int(n)


def get_order_bound() -> int:
    return _order_bound[0]


# ---------------------------------------------------------------------------
# raw permutation helpers (hot path: plain tuples, no wrappers)

def _mul(a, b):
    """Compose raw permutations, applying a first and then b."""
    return tuple(b[i] for i in a)


def _inv(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _conj(x, g):
    """x^g = g^-1 x g."""
    gi = _inv(g)
    return _mul(_mul(gi, x), g)


def _raw_order(a):
    n = len(a)
    seen = [False] * n
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        order = math.lcm(order, length)
    return order


def _raw_power(a, k):
    n = len(a)
    if k < 0:
        a, k = _inv(a), -k
    out = tuple(range(n))
    base = a
    while k:
        if k & 1:
            out = _mul(out, base)
        base = _mul(base, base)
        k >>= 1
    return out


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int):
    """Parse 1-based cycle notation like ``(1,2)(3,4)`` into a raw permutation.

    Cycles are applied left to right.  Whitespace is ignored inside the
    parentheses and points may be separated by commas or spaces.
    """
    stripped = _CYCLE_RE.sub("", text)
    if stripped.strip():
        raise InputError(f"unexpected text outside cycles: {stripped.strip()!r}")
    images = tuple(range(degree))
    for body in _CYCLE_RE.findall(text):
        tokens = body.replace(",", " ").split()
        if not tokens:
            continue
        try:
            pts = [int(t) - 1 for t in tokens]
        except ValueError:
            raise InputError(f"non-integer point in cycle ({body})") from None
        if len(set(pts)) != len(pts):
            raise InputError(f"repeated point in cycle ({body})")
        for p in pts:
            if not 0 <= p < degree:
                raise InputError(f"point {p + 1} out of range for degree {degree}")
        cyc = list(range(degree))
        for a, b in zip(pts, pts[1:]):
            cyc[a] = b
        cyc[pts[-1]] = pts[0]
        images = _mul(images, tuple(cyc))
    return images


def cycle_string(images) -> str:
    """Format a raw permutation in 1-based cycle notation; identity is ``()``."""
    n = len(images)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i] or images[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = images[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = images[j]
        parts.append("(" + ",".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) if parts else "()"


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}, stored as a tuple of 0-based images."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(len(imgs))):
            raise InputError(f"images are not a bijection on 1..{len(imgs)}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return cls(parse_cycles(text, degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(_mul(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(_inv(self.images))

    def __pow__(self, k: int) -> "Permutation":
        return Permutation(_raw_power(self.images, k))

    def order(self) -> int:
        return _raw_order(self.images)

    def __str__(self) -> str:
        return cycle_string(self.images)


@dataclass(frozen=True)
class ConjugacyClass:
    """One conjugacy class; ``members`` is the sorted tuple of raw elements."""

    representative: Permutation
    size: int
    element_order: int
    members: tuple

    def __repr__(self):
        return (f"ConjugacyClass(rep={self.representative}, size={self.size}, "
                f"order={self.element_order})")


def _closure(degree, gens, bound=None, track_words=False):
    """BFS closure of a generator list; optionally records one word per element.

    Words are (parent_element, generator_index) provenance links used by test
    oracles to evaluate multiplicative maps.
    """
    ident = tuple(range(degree))
    seen = {ident}
    words = {ident: None} if track_words else None
    frontier = [ident]
    gens = list(gens)
    while frontier:
        nxt = []
        for e in frontier:
            for gi, g in enumerate(gens):
                p = _mul(e, g)
                if p not in seen:
                    seen.add(p)
                    if bound is not None and len(seen) > bound:
                        raise CapacityError(
                            f"group order exceeds the configured bound {bound}")
                    if track_words:
                        words[p] = (e, gi)
                    nxt.append(p)
        frontier = nxt
    return (seen, words) if track_words else seen


class Group:
    """A finite permutation group, fully enumerated and immutable.

    Two groups are equal when they have the same degree and element set; the
    hash is precomputed so groups work as cache keys throughout the library.
    Subgroups live on the same point set as their parent.
    """

    __slots__ = ("degree", "generators", "elements", "element_set", "order",
                 "classes", "class_of", "exponent", "name", "_hash", "words")

    def __init__(self, degree, generators, elements, name=None, words=None):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.element_set = frozenset(elements)
        self.order = len(self.elements)
        self.name = name
        self.words = words
        self.classes = self._compute_classes()
        self.class_of = {}
        for idx, cls in enumerate(self.classes):
            for m in cls.members:
                self.class_of[m] = idx
        self.exponent = math.lcm(*(c.element_order for c in self.classes))
        self._hash = hash((degree, self.elements))

    def _compute_classes(self):
        gens = [g.images for g in self.generators]
        gen_invs = [_inv(g) for g in gens]
        unassigned = set(self.elements)
        raw_classes = []
        for e in self.elements:
            if e not in unassigned:
                continue
            orbit = {e}
            frontier = [e]
            while frontier:
                x = frontier.pop()
                for g, gi in zip(gens, gen_invs):
                    y = _mul(_mul(gi, x), g)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            unassigned -= orbit
            raw_classes.append(tuple(sorted(orbit)))
        raw_classes.sort(key=lambda ms: (_raw_order(ms[0]), len(ms), ms[0]))
        return tuple(
            ConjugacyClass(Permutation(ms[0]), len(ms), _raw_order(ms[0]), ms)
            for ms in raw_classes)

    @classmethod
    def from_elements(cls, degree, elements, name=None):
        """Build a group from a known closed element set, with a greedy
        small generating set (deterministic)."""
        elements = frozenset(elements)
        gens = []
        generated = {tuple(range(degree))}
        for e in sorted(elements):
            if e not in generated:
                gens.append(e)
                generated = _closure(degree, gens)
        if len(generated) != len(elements):
            raise InputError("element set is not closed under multiplication")
        return cls(degree, [Permutation(g) for g in gens], elements, name=name)

    def __eq__(self, other):
        return (isinstance(other, Group) and self.degree == other.degree
                and self.element_set == other.element_set)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = self.name or f"degree-{self.degree} group"
        return f"<Group {label} of order {self.order}>"

    def identity(self):
        return tuple(range(self.degree))

    def class_index(self, element) -> int:
        if isinstance(element, Permutation):
            element = element.images
        return self.class_of[element]

    def contains(self, other: "Group") -> bool:
        return (self.degree == other.degree
                and other.element_set <= self.element_set)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup together with its parent; the embedding is point-wise
    (both groups act on the same 1..n)."""

    parent: Group
    group: Group

    def __post_init__(self):
        if not self.parent.contains(self.group):
            raise InputError("subgroup elements are not contained in the parent")
        if self.parent.order % self.group.order:
            raise InputError("subgroup order does not divide the parent order")

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def index(self) -> int:
        return self.parent.order // self.group.order


def as_group(h) -> Group:
    """Accept either a Group or a Subgroup where the group itself is needed."""
    return h.group if isinstance(h, Subgroup) else h


def group_from_generators(degree: int, gens, name=None,
                          order_bound: int = DEFAULT_ORDER_BOUND) -> Group:
    """Generate a group from permutations of {1..degree}."""
    if degree < 1:
        raise InputError("degree must be at least 1 (trivial group has degree 1)")
    perms = []
    for g in gens:
        if not isinstance(g, Permutation):
            g = Permutation(tuple(g))
        if g.degree != degree:
            raise InputError(f"generator degree {g.degree} does not match {degree}")
        perms.append(g)
    elements, words = _closure(degree, [g.images for g in perms],
                               bound=order_bound, track_words=True)
    return Group(degree, perms, elements, name=name, words=words)


def conjugacy_classes(G: Group):
    return G.classes


@lru_cache(maxsize=None)
def power_map(G: Group, k: int):
    """Map class index -> class index of k-th powers."""
    k %= G.exponent
    return tuple(G.class_of[_raw_power(c.members[0], k)] for c in G.classes)


@lru_cache(maxsize=None)
def inverse_class_map(G: Group):
    return power_map(G, -1)


def _p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


@lru_cache(maxsize=None)
def sylow(G: Group, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown deterministically through normalizers."""
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise InputError(f"{p} is not prime")
    target = _p_part(G.order, p)
    current = frozenset({G.identity()})
    while len(current) < target:
        normalizing = [g for g in G.elements
                       if all(_conj(x, g) in current for x in current)]
        grown = False
        for y in normalizing:
            if y in current:
                continue
            o = _raw_order(y)
            if _p_part(o, p) == o:
                current = frozenset(_closure(G.degree, list(current) + [y]))
                grown = True
                break
        if not grown:  # cannot happen by Sylow theory; guard the loop anyway
            raise CapacityError("sylow growth stalled")
    return Subgroup(G, Group.from_elements(G.degree, current))


@lru_cache(maxsize=None)
def normalizer(G: Group, H) -> Subgroup:
    """N_G(H)."""
    Hg = as_group(H)
    if not G.contains(Hg):
        raise InputError("normalizer: H is not a subgroup of G")
    hgens = [g.images for g in Hg.generators] or [Hg.identity()]
    members = frozenset(g for g in G.elements
                        if all(_conj(h, g) in Hg.element_set for h in hgens))
    return Subgroup(G, Group.from_elements(G.degree, members))


@lru_cache(maxsize=None)
def centralizer(G: Group, x) -> Subgroup:
    """C_G(x)."""
    if isinstance(x, Permutation):
        x = x.images
    if x not in G.element_set:
        raise InputError("centralizer: element is not in G")
    members = frozenset(g for g in G.elements if _mul(g, x) == _mul(x, g))
    return Subgroup(G, Group.from_elements(G.degree, members))


@lru_cache(maxsize=None)
def derived_subgroup(H: Group) -> Group:
    """The commutator subgroup H'."""
    H = as_group(H)
    comms = set()
    for x in H.elements:
        xi = _inv(x)
        for y in H.elements:
            comms.add(_mul(_mul(_inv(y), _mul(xi, y)), x))
    return Group.from_elements(H.degree, _closure(H.degree, sorted(comms)))


@lru_cache(maxsize=None)
def subgroups_up_to_conjugacy(G: Group,
                              order_bound: int = DEFAULT_ORDER_BOUND):
    """One representative per conjugacy class of subgroups, exhaustively.

    Layered generation: start from the trivial group and close under
    extension of each class representative by one element.  Every subgroup
    class is reached because a chain of one-element extensions of any
    subgroup stays inside the orbit of some representative.
    """
    if G.order > order_bound:
        raise CapacityError(
            f"subgroup search bound {order_bound} exceeded: |G| = {G.order}")
    gens = [g.images for g in G.generators]
    trivial = frozenset({G.identity()})
    seen = {trivial}
    reps = [trivial]
    qi = 0
    while qi < len(reps):
        H = reps[qi]
        qi += 1
        for x in G.elements:
            if x in H:
                continue
            K = frozenset(_closure(G.degree, sorted(H) + [x]))
            if K in seen:
                continue
            orbit = {K}
            frontier = [K]
            while frontier:
                S = frontier.pop()
                for g in gens:
                    Sg = frozenset(_conj(s, g) for s in S)
                    if Sg not in orbit:
                        orbit.add(Sg)
                        frontier.append(Sg)
            seen |= orbit
            reps.append(min(orbit, key=sorted))
    reps.sort(key=lambda s: (len(s), sorted(s)))
    return tuple(Subgroup(G, Group.from_elements(G.degree, r)) for r in reps)


@lru_cache(maxsize=None)
def normal_subgroups(G: Group):
    """All normal subgroups: join closure of normal closures of the classes."""
    seeds = set()
    for cls in G.classes:
        seeds.add(frozenset(_closure(G.degree, cls.members)))
    found = {frozenset({G.identity()})} | seeds
    changed = True
    while changed:
        changed = False
        snapshot = sorted(found, key=sorted)
        for a in snapshot:
            for b in snapshot:
                join = frozenset(_closure(G.degree, sorted(a | b)))
                if join not in found:
                    found.add(join)
                    changed = True
    groups = [Group.from_elements(G.degree, s) for s in found]
    groups.sort(key=lambda H: (H.order, H.elements))
    return tuple(groups)


@lru_cache(maxsize=None)
def subnormal_subgroups(G: Group):
    """All subnormal subgroups, by recursing the normal lattices."""
    collected = {}

    def rec(H):
        if H.element_set in collected:
            return
        collected[H.element_set] = H
        for N in normal_subgroups(H):
            if N.order != H.order:
                rec(N)

    rec(G)
    out = sorted(collected.values(), key=lambda H: (H.order, H.elements))
    return tuple(out)


def _core_for(G: Group, keep) -> Group:
    """Join of all normal subgroups whose order satisfies ``keep``."""
    join = frozenset({G.identity()})
    for N in normal_subgroups(G):
        if keep(N.order):
            join = frozenset(_closure(G.degree, sorted(join | N.element_set)))
    return Group.from_elements(G.degree, join)


@lru_cache(maxsize=None)
def p_prime_core(G: Group, p: int) -> Group:
    """O_{p'}(G): the largest normal subgroup of order coprime to p."""
    return _core_for(G, lambda n: n % p != 0 or n == 1)


@lru_cache(maxsize=None)
def p_core(G: Group, p: int) -> Group:
    """O_p(G): the largest normal p-subgroup."""
    return _core_for(G, lambda n: _p_part(n, p) == n)


def prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _pi_part(n, pi):
    part = 1
    for p in pi:
        part *= _p_part(n, p)
    return part


def span(G: Group, elements) -> Group:
    """The subgroup of G generated by the given raw elements."""
    elements = sorted({tuple(e.images) if isinstance(e, Permutation) else tuple(e)
                       for e in elements})
    for e in elements:
        if e not in G.element_set:
            raise InputError("span: element is not in G")
    return Group.from_elements(G.degree, _closure(G.degree, elements))


def set_product(A: Group, B: Group):
    """The element-set product AB; callers check whether it is a subgroup."""
    return frozenset(_mul(a, b) for a in A.elements for b in B.elements)


def is_normal(G: Group, N: Group) -> bool:
    if not G.contains(N):
        return False
    return all(all(_conj(n, g.images) in N.element_set for n in N.elements)
               for g in G.generators)


@lru_cache(maxsize=None)
def quotient(G: Group, N: Group) -> Group:
    """G/N as a permutation group acting on the right cosets of N."""
    if not G.contains(N):
        raise InputError("quotient: N is not contained in G")
    coset_of = {}
    cosets = []
    for e in G.elements:
        if e in coset_of:
            continue
        coset = frozenset(_mul(n, e) for n in N.elements)
        idx = len(cosets)
        cosets.append(coset)
        for c in coset:
            coset_of[c] = idx
    order = sorted(range(len(cosets)), key=lambda i: min(cosets[i]))
    rank = {old: new for new, old in enumerate(order)}
    reps = [min(cosets[i]) for i in order]
    gens = []
    for g in G.generators:
        gens.append(Permutation(tuple(
            rank[coset_of[_mul(reps[i], g.images)]] for i in range(len(reps)))))
    return group_from_generators(max(1, len(reps)), gens)


@lru_cache(maxsize=None)
def is_pi_separable(G: Group, pi: frozenset) -> bool:
    """True iff every composition factor is a pi-group or a pi'-group."""
    if G.order == 1:
        return True
    A = _core_for(G, lambda n: math.gcd(n, math.prod(pi)) == 1 if pi else True)
    if A.order > 1:
        return is_pi_separable(quotient(G, A), pi)
    B = _core_for(G, lambda n: _pi_part(n, pi) == n)
    if B.order > 1:
        return is_pi_separable(quotient(G, B), pi)
    return False


def is_p_solvable(G: Group, p: int) -> bool:
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise InputError(f"{p} is not prime")
    return is_pi_separable(G, frozenset({p}))
