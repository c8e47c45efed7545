"""Nuclei, vertex pairs, Brauer-character vertices, and the claim verifiers.

A vertex pair for an ordinary irreducible is computed straight from the
definition: exhaust all subgroup representatives W, all factorable gamma in
Irr(W) inducing the character, and take (Syl_p(W), restriction of the
p-special factor).  Pairs are deduplicated by simultaneous conjugacy, with the
lexicographically least conjugate as the canonical representative, so set
comparisons across call sites are plain key comparisons.

Brauer vertices use the p'-degree-induction minimality characterization; the
order identity |Q| * phi(1)_p = |G|_p and conjugacy of all minimal candidates
are asserted as hard cross-checks.

Verifiers return :class:`VerifierReport` values whose witnesses are plain
JSON-safe dicts; a failing instance carries a complete counterexample payload.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .brauer import (BrauerCharacter, LiftSet, brauer_induce, ibr, lifts,
                     restrict_to_p_regular)
from .chartab import (Character, character_table, conjugate_character,
                      constituents, induce, inner_product, restrict)
from .errors import (ConsistencyError, InputError, PreconditionError,
                     UnsupportedPrimeError)
from .permgroup import (Group, Subgroup, _conj, _inv, _p_part, as_group,
                        derived_subgroup, is_normal, is_p_solvable, normalizer,
                        normal_subgroups, p_prime_core, set_product,
                        subgroups_up_to_conjugacy, sylow)
from .pspecial import Factorization, factorize, is_G_stable


@dataclass(frozen=True)
class Nucleus:
    """(W, gamma): gamma factorable in Irr(W) inducing the target irreducibly."""

    subgroup: Subgroup
    character: Character
    factorization: Factorization


@dataclass(frozen=True)
class VertexPair:
    """(Q, delta) in canonical conjugate form; key is the dedup serialization."""

    subgroup: Subgroup
    character: Character
    key: tuple = field(repr=False, default=None)


@dataclass
class VerifierReport:
    """Outcome of one verifier: counts plus per-instance witness payloads."""

    claim: str
    instances: int = 0
    passed: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def failed(self) -> int:
        return self.instances - self.passed

    @property
    def vacuous(self) -> int:
        return sum(1 for w in self.witnesses if w.get("vacuous"))

    def add(self, ok: bool, vacuous: bool = False, **data):
        self.instances += 1
        if ok:
            self.passed += 1
        self.witnesses.append({"passed": bool(ok), "vacuous": bool(vacuous),
                               **data})

    def extend(self, other: "VerifierReport"):
        self.instances += other.instances
        self.passed += other.passed
        self.witnesses.extend(other.witnesses)

    def to_dict(self) -> dict:
        return {"name": self.claim, "instances": self.instances,
                "passed": self.passed, "vacuous": self.vacuous,
                "witnesses": self.witnesses}


def _check_prime(p):
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise InputError(f"{p} is not prime")


def _check_odd_prime(p):
    _check_prime(p)
    if p == 2:
        raise UnsupportedPrimeError(
            "p = 2 is outside the verified statements (they assume p odd)")


# ---------------------------------------------------------------------------
# canonical forms for conjugacy comparisons

@lru_cache(maxsize=None)
def _canonical_subgroup_key(G: Group, Q: Group):
    best = None
    for g in G.elements:
        key = tuple(sorted(_conj(x, g) for x in Q.elements))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _canonical_pair(G: Group, Q: Group, delta: Character):
    """Lexicographically least G-conjugate of (Q, delta): returns
    (key, canonical Q, canonical delta)."""
    val_str = {x: delta.value_at(x).serialize() for x in Q.elements}
    best_key, best_g = None, None
    for g in G.elements:
        key = tuple(sorted((_conj(x, g), val_str[x]) for x in Q.elements))
        if best_key is None or key < best_key:
            best_key, best_g = key, g
    gi = _inv(best_g)
    Qc = Group.from_elements(G.degree,
                             frozenset(_conj(x, best_g) for x in Q.elements))
    values = tuple(delta.value_at(_conj(c.members[0], gi)) for c in Qc.classes)
    return best_key, Qc, Character(Qc, values)


def _pair_key(G: Group, Q, delta: Character):
    return _canonical_pair(G, as_group(Q), delta)[0]


# ---------------------------------------------------------------------------
# nuclei and vertex pairs of ordinary characters

@lru_cache(maxsize=None)
def nuclei(chi: Character, p: int, containing: Group = None):
    """All nuclei (W, gamma) of chi up to conjugacy, by exhaustive search."""
    _check_prime(p)
    G = chi.group
    if not chi.is_irreducible:
        raise PreconditionError("nuclei: chi is not irreducible")
    if not is_p_solvable(G, p):
        raise PreconditionError("nuclei: group is not p-solvable")
    if containing is not None and not is_normal(G, containing):
        raise PreconditionError("nuclei: the 'containing' subgroup is not normal")
    out = []
    for W in subgroups_up_to_conjugacy(G):
        Wg = W.group
        if containing is not None and not Wg.contains(containing):
            continue
        if (chi.degree * Wg.order) % G.order:
            continue
        target = chi.degree * Wg.order // G.order
        found = []
        for gamma in character_table(Wg):
            if gamma.degree != target:
                continue
            fac = factorize(gamma, p)
            if fac is None:
                continue
            if induce(Wg, gamma, G) == chi:
                found.append(gamma)
        if not found:
            continue
        # dedupe gamma under the action of N_G(W)
        norm_elems = normalizer(G, W).group.elements
        seen = set()
        for gamma in found:
            orbit = {conjugate_character(gamma, g) for g in norm_elems}
            canon = min(orbit, key=lambda c: c.serialize())
            if canon.values in seen:
                continue
            seen.add(canon.values)
            out.append(Nucleus(W, canon, factorize(canon, p)))
    return tuple(out)


@lru_cache(maxsize=None)
def vertex_pairs(chi: Character, p: int):
    """Vertex pairs of chi up to simultaneous conjugacy, canonical reps."""
    G = chi.group
    pairs = {}
    for nuc in nuclei(chi, p):
        Wg = nuc.subgroup.group
        Q = sylow(Wg, p).group
        delta = restrict(nuc.factorization.p_part, Q)
        key, Qc, dc = _canonical_pair(G, Q, delta)
        if key not in pairs:
            pairs[key] = VertexPair(Subgroup(G, Qc), dc, key)
    return tuple(pairs[k] for k in sorted(pairs))


def irr_with_vertex(G: Group, Q, delta: Character, p: int):
    """All chi in Irr(G) having (Q, delta) among their vertex pairs."""
    Qg = as_group(Q)
    if delta.group != Qg:
        raise InputError("irr_with_vertex: delta does not live on Q")
    if not delta.is_irreducible:
        raise InputError("irr_with_vertex: delta is not irreducible")
    key = _pair_key(G, Qg, delta)
    return tuple(chi for chi in character_table(G)
                 if any(vp.key == key for vp in vertex_pairs(chi, p)))


def lifts_with_vertex(phi: BrauerCharacter, Q, delta: Character) -> LiftSet:
    """L_phi(Q, delta): lifts of phi with vertex pair (Q, delta)."""
    Qg = as_group(Q)
    base = lifts(phi)
    with_vertex = set(irr_with_vertex(phi.group, Qg, delta, phi.p))
    members = tuple(chi for chi in base.members if chi in with_vertex)
    return LiftSet(phi, members, vertex_filter=(Qg, delta))


def stabilizer_of_character(H: Group, Q, delta: Character) -> Subgroup:
    """N_H(Q, delta): the elements of N_H(Q) fixing delta."""
    Qg = as_group(Q)
    if delta.group != Qg:
        raise InputError("stabilizer_of_character: delta does not live on Q")
    NQ = normalizer(H, Qg).group
    reps = [c.members[0] for c in Qg.classes]
    members = []
    for h in NQ.elements:
        hi = _inv(h)
        if all(delta.value_at(_conj(x, hi)) == delta.value_at(x) for x in reps):
            members.append(h)
    return Subgroup(H, Group.from_elements(H.degree, frozenset(members)))


# ---------------------------------------------------------------------------
# Brauer-character vertices

def _contained_up_to_conj(G: Group, A: Group, B: Group) -> bool:
    return any(all(_conj(a, g) in B.element_set for a in A.elements)
               for g in G.elements)


@lru_cache(maxsize=None)
def brauer_vertices(phi: BrauerCharacter):
    """Vertex subgroups of phi (single conjugacy class), computed by the
    p'-degree-induction minimality characterization with hard cross-checks."""
    G, p = phi.group, phi.p
    if phi not in set(ibr(G, p)):
        raise InputError("brauer_vertices: phi is not in IBr(G)")
    cands = {}
    for W in subgroups_up_to_conjugacy(G):
        Wg = W.group
        index = G.order // Wg.order
        if phi.degree % index:
            continue
        target = phi.degree // index
        if target % p == 0:
            continue
        for eta in ibr(Wg, p):
            if eta.degree == target and brauer_induce(eta, G) == phi:
                Q = sylow(Wg, p).group
                cands.setdefault(_canonical_subgroup_key(G, Q), Q)
                break
    if not cands:
        raise ConsistencyError("no p'-degree induction source found",
                               detail={"phi": phi.serialize()})
    groups = [cands[k] for k in sorted(cands)]
    minimal = [Q for Q in groups
               if not any(other.order < Q.order
                          and _contained_up_to_conj(G, other, Q)
                          for other in groups)]
    if len(minimal) != 1:
        raise ConsistencyError(
            "minimal vertex candidates are not all conjugate",
            detail={"phi": phi.serialize(),
                    "orders": [Q.order for Q in minimal]})
    Q = minimal[0]
    if Q.order * _p_part(phi.degree, p) != _p_part(G.order, p):
        raise ConsistencyError(
            "vertex order identity |Q| * phi(1)_p = |G|_p failed",
            detail={"phi": phi.serialize(), "Q_order": Q.order})
    return (Subgroup(G, Q),)


def _has_vertex(phi: BrauerCharacter, ambient: Group, Q: Group) -> bool:
    rep = brauer_vertices(phi)[0].group
    return (_canonical_subgroup_key(ambient, rep)
            == _canonical_subgroup_key(ambient, Q))


# ---------------------------------------------------------------------------
# the restriction bijection (G-stable linear vertex characters)

def wj_bijection(G: Group, Q, delta: Character, p: int):
    """The bijection chi -> chi^0 from the lift members of Irr(G|Q,delta)
    onto the Brauer characters with vertex Q, for delta linear and G-stable.

    The source is the set of lifts with (Q, delta) among their vertex pairs;
    for lifts the vertex-pair class is unique, so this is exactly the vertex-
    (Q, delta) set in the canonical-nucleus sense that the bijection needs
    (non-lift characters can share a generalized pair yet restrict reducibly)."""
    _check_prime(p)
    Qg = as_group(Q)
    if not is_p_solvable(G, p):
        raise PreconditionError("wj_bijection: group is not p-solvable")
    if _p_part(Qg.order, p) != Qg.order:
        raise PreconditionError("wj_bijection: Q is not a p-subgroup")
    if not (delta.group == Qg and delta.is_irreducible and delta.is_linear):
        raise PreconditionError("wj_bijection: delta is not linear irreducible")
    if not is_G_stable(delta, G):
        raise PreconditionError("wj_bijection: delta is not G-stable")
    brs = set(ibr(G, p))
    source = tuple(chi for chi in irr_with_vertex(G, Qg, delta, p)
                   if restrict_to_p_regular(chi, p) in brs)
    target = [phi for phi in ibr(G, p) if _has_vertex(phi, G, Qg)]
    mapping = {chi: restrict_to_p_regular(chi, p) for chi in source}
    image = set(mapping.values())
    if len(image) != len(source) or image != set(target):
        raise ConsistencyError(
            "restriction is not a bijection Irr(G|Q,delta) -> IBr(G|Q)",
            detail={"source": len(source), "image": len(image),
                    "target": len(target)})
    return mapping


# ---------------------------------------------------------------------------
# verifiers

def cl12_verify(chi: Character, p: int) -> VerifierReport:
    """All vertex pairs of a lift are linear and mutually conjugate (p odd)."""
    _check_odd_prime(p)
    G = chi.group
    if restrict_to_p_regular(chi, p) not in set(ibr(G, p)):
        raise PreconditionError("cl12_verify: chi is not a lift")
    vps = vertex_pairs(chi, p)
    linear = all(vp.character.degree == 1 for vp in vps)
    conjugate = len(vps) == 1
    report = VerifierReport("cl12")
    report.add(linear and conjugate,
               group=G.name or f"order{G.order}",
               chi_degree=chi.degree,
               pair_classes=len(vps),
               all_linear=linear)
    return report


def theoremA_verify(G: Group, p: int, phi: BrauerCharacter, Q, delta: Character,
                    N: Group) -> VerifierReport:
    """One instance of the lift-counting theorem: with T = N*N_G(Q,delta),
    (1) constituents of lift restrictions to N are factorable, (2) inducing
    the unique vertex-(Q,delta) lifts of I_phi(T|Q) is a bijection onto
    L_phi(Q,delta), (3) |L_phi(Q,delta)| is bounded by |N_G(Q):N_G(Q,delta)|;
    the proof's index identity and the Frattini factorization are asserted too."""
    _check_odd_prime(p)
    if not is_p_solvable(G, p):
        raise PreconditionError("theoremA: G is not p-solvable")
    Qg = as_group(Q)
    if phi.group != G or phi not in set(ibr(G, p)):
        raise PreconditionError("theoremA: phi is not in IBr(G)")
    if not _has_vertex(phi, G, Qg):
        raise PreconditionError("theoremA: Q is not a vertex of phi")
    if not (delta.group == Qg and delta.is_irreducible and delta.is_linear):
        raise PreconditionError("theoremA: delta is not a linear character of Q")
    if not is_normal(G, N):
        raise PreconditionError("theoremA: N is not normal in G")
    if not (N.contains(Qg) and _p_part(N.order, p) == Qg.order):
        raise PreconditionError("theoremA: Q is not a Sylow p-subgroup of N")
    if not is_G_stable(delta, N):
        raise PreconditionError("theoremA: delta does not extend to N")

    S = stabilizer_of_character(G, Qg, delta).group  # N_G(Q, delta)
    NQ = normalizer(G, Qg).group
    product = set_product(N, S)
    T = Group.from_elements(G.degree, product)  # N is normal, so NS is a group
    failures = []

    inter = N.element_set & NQ.element_set
    if N.order * NQ.order != G.order * len(inter):
        failures.append("Frattini factorization G = N*N_G(Q) failed")
    bound = NQ.order // S.order
    if G.order // T.order != bound:
        failures.append("index identity |G:T| = |N_G(Q):N_G(Q,delta)| failed")

    L = lifts_with_vertex(phi, Qg, delta).members
    for chi in L:
        for theta, _ in constituents(chi, N):
            if factorize(theta, p) is None:
                failures.append(
                    f"part (1): unfactorable constituent under chi of degree "
                    f"{chi.degree}")
                break

    inducing = tuple(eta for eta in ibr(T, p)
                     if _has_vertex(eta, T, Qg)
                     and brauer_induce(eta, G) == phi)
    images = []
    for eta in inducing:
        cand = lifts_with_vertex(eta, Qg, delta).members
        if len(cand) != 1:
            failures.append(
                f"part (2): {len(cand)} lifts of an inducing Brauer character "
                f"in Irr(T|Q,delta), expected exactly 1")
            continue
        lifted = induce(T, cand[0], G)
        if lifted not in set(L):
            failures.append("part (2): induced lift escapes L_phi(Q,delta)")
            continue
        images.append(lifted)
    if len(set(images)) != len(inducing):
        failures.append("part (2): the induction map is not injective")
    if set(images) != set(L):
        failures.append("part (2): the induction map is not onto L_phi(Q,delta)")
    if len(L) > bound:
        failures.append("part (3): |L_phi(Q,delta)| exceeds the index bound")

    report = VerifierReport("theoremA")
    report.add(not failures,
               vacuous=(not L and not inducing),
               group=G.name or f"order{G.order}", p=p,
               phi_degree=phi.degree, Q_order=Qg.order,
               delta=delta.serialize(), N_order=N.order, T_order=T.order,
               lift_count=len(L), inducing_count=len(inducing), bound=bound,
               failures=failures)
    return report


def theoremA_sweep(G: Group, p: int) -> VerifierReport:
    """All admissible (phi, Q, delta, N) instances of the theorem for (G, p)."""
    _check_odd_prime(p)
    if not is_p_solvable(G, p):
        raise PreconditionError("theoremA: G is not p-solvable")
    report = VerifierReport("theoremA")
    for phi in ibr(G, p):
        Qg = brauer_vertices(phi)[0].group
        for N in normal_subgroups(G):
            if not (N.contains(Qg) and _p_part(N.order, p) == Qg.order):
                continue
            for delta in character_table(Qg):
                if not delta.is_linear:
                    continue
                if not is_G_stable(delta, N):
                    continue
                report.extend(theoremA_verify(G, p, phi, Qg, delta, N))
    return report


def corollaryB_verify(G: Group, p: int) -> VerifierReport:
    """With K = O_{p'}(G) and N = KQ normal: per-delta bounds via the theorem,
    emptiness of L_phi(Q,delta) for nonlinear delta, and the aggregate bound
    |L_phi| <= |Q:Q'|."""
    _check_odd_prime(p)
    if not is_p_solvable(G, p):
        raise PreconditionError("corollaryB: G is not p-solvable")
    K = p_prime_core(G, p)
    report = VerifierReport("corollaryB")
    for phi in ibr(G, p):
        Qg = brauer_vertices(phi)[0].group
        N = Group.from_elements(G.degree, set_product(K, Qg))
        gname = G.name or f"order{G.order}"
        if not is_normal(G, N):
            report.add(True, vacuous=True, group=gname, p=p,
                       phi_degree=phi.degree, outcome="not-applicable",
                       K_order=K.order, KQ_order=N.order)
            continue
        for delta in character_table(Qg):
            if delta.is_linear:
                sub = theoremA_verify(G, p, phi, Qg, delta, N)
                for w in sub.witnesses:
                    w["K_order"] = K.order
                report.extend(sub)
            else:
                members = lifts_with_vertex(phi, Qg, delta).members
                report.add(len(members) == 0, vacuous=True, group=gname, p=p,
                           phi_degree=phi.degree, delta=delta.serialize(),
                           nonlinear_delta=True, lift_count=len(members))
        Lall = lifts(phi).members
        cossey_bound = Qg.order // derived_subgroup(Qg).order
        report.add(len(Lall) <= cossey_bound, group=gname, p=p,
                   phi_degree=phi.degree, aggregate=True,
                   lift_count=len(Lall), bound=cossey_bound)
    return report


def cossey_verify(G: Group, p: int) -> VerifierReport:
    """|L_phi| <= |Q:Q'| for every phi with vertex Q."""
    _check_odd_prime(p)
    if not is_p_solvable(G, p):
        raise PreconditionError("cossey: G is not p-solvable")
    report = VerifierReport("cossey")
    for phi in ibr(G, p):
        Qg = brauer_vertices(phi)[0].group
        bound = Qg.order // derived_subgroup(Qg).order
        count = len(lifts(phi).members)
        report.add(count <= bound, group=G.name or f"order{G.order}", p=p,
                   phi_degree=phi.degree, Q_order=Qg.order,
                   lift_count=count, bound=bound)
    return report


def cl12_sweep(G: Group, p: int) -> VerifierReport:
    """cl12_verify over every lift in Irr(G)."""
    _check_odd_prime(p)
    if not is_p_solvable(G, p):
        raise PreconditionError("cl12: G is not p-solvable")
    brs = set(ibr(G, p))
    report = VerifierReport("cl12")
    for chi in character_table(G):
        if restrict_to_p_regular(chi, p) in brs:
            report.extend(cl12_verify(chi, p))
    return report


def lemmaI52_verify(G: Group, p: int) -> VerifierReport:
    """Every p'-special character of a p'-index subgroup that induces
    irreducibly to a lift induces to a p'-special character."""
    from .pspecial import is_p_prime_special
    _check_odd_prime(p)
    if not is_p_solvable(G, p):
        raise PreconditionError("lemmaI52: G is not p-solvable")
    brs = set(ibr(G, p))
    report = VerifierReport("lemmaI52")
    for W in subgroups_up_to_conjugacy(G):
        Wg = W.group
        if (G.order // Wg.order) % p == 0:
            continue
        for beta in character_table(Wg):
            if not is_p_prime_special(beta, p):
                continue
            chi = induce(Wg, beta, G)
            if inner_product(chi, chi) != 1:
                continue
            if restrict_to_p_regular(chi, p) not in brs:
                continue
            report.add(is_p_prime_special(chi, p),
                       group=G.name or f"order{G.order}", p=p,
                       W_order=Wg.order, beta_degree=beta.degree,
                       chi_degree=chi.degree)
    return report


def lemmaA_verify(G: Group, p: int) -> VerifierReport:
    """At most |G:T| members of IBr(T) induce any fixed phi in IBr(G)."""
    _check_prime(p)
    if not is_p_solvable(G, p):
        raise PreconditionError("lemmaA: G is not p-solvable")
    targets = ibr(G, p)
    report = VerifierReport("lemmaA")
    for T in subgroups_up_to_conjugacy(G):
        Tg = T.group
        index = G.order // Tg.order
        induced = [brauer_induce(eta, G) for eta in ibr(Tg, p)]
        counts = [sum(1 for im in induced if im == phi) for phi in targets]
        ok = all(c <= index for c in counts)
        report.add(ok, group=G.name or f"order{G.order}", p=p,
                   T_order=Tg.order, index=index, inducing_counts=counts)
    return report


def lemma31_sweep(G: Group, p: int) -> VerifierReport:
    """wj_bijection over every conjugacy class of p-subgroups and every
    G-stable linear character of the representative."""
    _check_prime(p)
    if not is_p_solvable(G, p):
        raise PreconditionError("lemma31: G is not p-solvable")
    report = VerifierReport("lemma31")
    for W in subgroups_up_to_conjugacy(G):
        Qg = W.group
        if _p_part(Qg.order, p) != Qg.order:
            continue
        for delta in character_table(Qg):
            if not delta.is_linear or not is_G_stable(delta, G):
                continue
            mapping = wj_bijection(G, Qg, delta, p)
            report.add(True, group=G.name or f"order{G.order}", p=p,
                       Q_order=Qg.order, delta=delta.serialize(),
                       size=len(mapping))
    return report


def lemma32_sweep(G: Group, p: int) -> VerifierReport:
    """nh_stability over all N normal in G, stable Sylow characters of N, and
    subgroups H containing the Sylow subgroup with delta H-stable."""
    from .pspecial import nh_stability
    _check_prime(p)
    if not is_p_solvable(G, p):
        raise PreconditionError("lemma32: G is not p-solvable")
    report = VerifierReport("lemma32")
    all_subs = _all_subgroups(G)
    for N in normal_subgroups(G):
        Qg = sylow(N, p).group
        for delta in character_table(Qg):
            if not is_G_stable(delta, N):
                continue
            for H in all_subs:
                if not H.contains(Qg):
                    continue
                if not is_G_stable(delta, H):
                    continue
                ok, _ = nh_stability(N, Qg, delta, H, p)
                report.add(ok, group=G.name or f"order{G.order}", p=p,
                           N_order=N.order, Q_order=Qg.order,
                           delta=delta.serialize(), H_order=H.order)
    return report


@lru_cache(maxsize=None)
def _all_subgroups(G: Group):
    """Every subgroup of G (not just up to conjugacy)."""
    out = {}
    for W in subgroups_up_to_conjugacy(G):
        base = W.group.element_set
        todo = [base]
        while todo:
            S = todo.pop()
            if S in out:
                continue
            out[S] = Group.from_elements(G.degree, S)
            for g in G.generators:
                todo.append(frozenset(_conj(x, g.images) for x in S))
    return tuple(sorted(out.values(), key=lambda H: (H.order, H.elements)))
