"""Black-box finite group engine.

Groups are presented by an oracle over canonical byte keys: identity,
multiplication, inversion, and an optional bulk right-multiplication hook
that vectorized callers can supply.  Everything downstream (closures, normal
closures, derived and Frattini subgroups, coset counting, filtration and
Tits-axiom checks) works purely through the oracle, so the same engine
serves coordinate groups and matrix groups.

Enumeration uses multiplication only: in a finite group the submonoid
generated by a set is already a subgroup, so inverses never need to be
multiplied in.
"""

from dataclasses import dataclass

from .errors import ChainNotNested, EnumerationCapExceeded, NotAPGroup

DEFAULT_CAP = 2 ** 21


@dataclass(frozen=True)
class GroupOracle:
    identity: bytes
    mul: object  # (key, key) -> key
    inv: object  # key -> key
    mul_many: object = None  # optional: (list of keys, key) -> list of keys


def _bulk(oracle, keys, g):
    if oracle.mul_many is not None and len(keys) > 8:
        return oracle.mul_many(keys, g)
    mul = oracle.mul
    return [mul(k, g) for k in keys]


class FiniteGroupTable:
    """An enumerated (or generator-presented) subgroup over an oracle."""

    def __init__(self, oracle, generators, elements=None, p=None):
        self.oracle = oracle
        self.generators = tuple(generators)
        self.elements = tuple(elements) if elements is not None else None
        self.element_set = frozenset(self.elements) if elements is not None else None
        self.p = p

    @property
    def order(self):
        if self.elements is None:
            raise ValueError("group not enumerated")
        return len(self.elements)

    def __contains__(self, key):
        return key in self.element_set


class _Closure:
    """Incrementally grown subgroup closure with cap enforcement."""

    def __init__(self, oracle, cap):
        self.oracle = oracle
        self.cap = cap
        self.seen = {oracle.identity: None}
        self.gens = []
        self._genset = set()

    def _absorb(self, keys):
        novel = []
        seen = self.seen
        for k in keys:
            if k not in seen:
                if len(seen) >= self.cap:
                    raise EnumerationCapExceeded(
                        f"closure exceeded the cap of {self.cap} elements"
                    )
                seen[k] = None
                novel.append(k)
        return novel

    def add_generators(self, new_gens):
        fresh = [
            g
            for g in dict.fromkeys(new_gens)
            if g != self.oracle.identity and g not in self._genset
        ]
        if not fresh:
            return
        old = list(self.seen)
        self.gens.extend(fresh)
        self._genset.update(fresh)
        frontier = []
        for g in fresh:
            frontier.extend(self._absorb(_bulk(self.oracle, old, g)))
        while frontier:
            nxt = []
            for g in self.gens:
                nxt.extend(self._absorb(_bulk(self.oracle, frontier, g)))
            frontier = nxt


def closure(generators, oracle, cap=DEFAULT_CAP, p=None):
    """Subgroup generated by the given keys, enumerated breadth-first in a
    deterministic order."""
    state = _Closure(oracle, cap)
    state.add_generators(list(generators))
    return FiniteGroupTable(
        oracle, tuple(dict.fromkeys(generators)), tuple(state.seen), p=p
    )


def normal_closure(seeds, conjugators, oracle, cap=DEFAULT_CAP, p=None):
    """Smallest subgroup containing the seeds and invariant under conjugation
    by the conjugators.

    Only the running generator list is conjugated: if every generator's
    conjugate lies in the current closure, the whole closure is conjugation
    invariant (conjugation is an automorphism).  Closure under the given
    conjugators implies closure under their inverses, because an injective
    self-map of a finite set is a bijection.
    """
    state = _Closure(oracle, cap)
    seeds = [s for s in dict.fromkeys(seeds) if s != oracle.identity]
    state.add_generators(seeds)
    conjs = [(c, oracle.inv(c)) for c in dict.fromkeys(conjugators)]
    worklist = list(seeds)
    i = 0
    while i < len(worklist):
        t = worklist[i]
        i += 1
        for c, c_inv in conjs:
            x = oracle.mul(oracle.mul(c_inv, t), c)
            if x not in state.seen:
                worklist.append(x)
                state.add_generators([x])
    return FiniteGroupTable(oracle, tuple(worklist), tuple(state.seen), p=p)


def _power(oracle, key, n):
    out = oracle.identity
    for _ in range(n):
        out = oracle.mul(out, key)
    return out


def commutator(oracle, a, b):
    """a b a^-1 b^-1."""
    return oracle.mul(
        oracle.mul(oracle.mul(a, b), oracle.inv(a)), oracle.inv(b)
    )


def derived_subgroup(G, cap=DEFAULT_CAP):
    """Normal closure of the commutators of generator pairs."""
    gens = G.generators
    comms = [
        commutator(G.oracle, gens[i], gens[j])
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    ]
    return normal_closure(comms, gens, G.oracle, cap=cap, p=G.p)


def frattini_subgroup(G, cap=DEFAULT_CAP):
    """For a p-group: normal closure of generator commutators and p-th powers.

    Modulo the derived group the quotient is abelian, so the p-th powers of
    the generators generate its p-th power subgroup; together they generate
    the agreement subgroup of all maximal subgroups.
    """
    if G.p is None:
        raise NotAPGroup("the table carries no prime p")
    gens = G.generators
    seeds = [
        commutator(G.oracle, gens[i], gens[j])
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    ]
    seeds += [_power(G.oracle, g, G.p) for g in gens]
    return normal_closure(seeds, gens, G.oracle, cap=cap, p=G.p)


def subgroup_index(sub, group_generators, oracle, cap=DEFAULT_CAP):
    """Number of right cosets of an enumerated subgroup inside the group the
    given keys generate.  The subgroup must lie inside that group.

    Coset identification tests sub . candidate = sub . rep via
    rep . candidate^-1 in sub, evaluated in bulk across known reps.
    """
    sub_set = sub.element_set
    reps = [oracle.identity]
    frontier = [oracle.identity]
    while frontier:
        nxt = []
        for r in frontier:
            for g in group_generators:
                cand = oracle.mul(r, g)
                if cand in sub_set:
                    continue
                probes = _bulk(oracle, reps, oracle.inv(cand))
                if any(x in sub_set for x in probes):
                    continue
                if len(reps) >= cap:
                    raise EnumerationCapExceeded(
                        f"coset count exceeded the cap of {cap}"
                    )
                reps.append(cand)
                nxt.append(cand)
        frontier = nxt
    return len(reps)


def _log_exact(value, base):
    d = 0
    while value > 1:
        if value % base:
            return None
        value //= base
        d += 1
    return d if value == 1 else None


def frattini_quotient_dimension(G, cap=DEFAULT_CAP):
    """log_p of the index of the Frattini subgroup; the minimal number of
    generators of a finite p-group."""
    if G.p is None:
        raise NotAPGroup("the table carries no prime p")
    phi = frattini_subgroup(G, cap=cap)
    if G.elements is not None:
        if len(G.elements) % len(phi.elements):
            raise NotAPGroup("Frattini order does not divide the group order")
        index = len(G.elements) // len(phi.elements)
    else:
        index = subgroup_index(phi, G.generators, G.oracle, cap=cap)
    d = _log_exact(index, G.p)
    if d is None:
        raise NotAPGroup(f"Frattini index {index} is not a power of {G.p}")
    return d


def is_perfect(G, cap=DEFAULT_CAP):
    """True iff the derived subgroup is the whole group."""
    if G.elements is None:
        G = closure(G.generators, G.oracle, cap=cap, p=G.p)
    return derived_subgroup(G, cap=cap).order == G.order


def orders_are_p_powers(G, p, sample=None, seed=0):
    """Check that element orders are powers of p; exhaustive by default,
    sampled when a sample size is given."""
    import random

    keys = G.elements
    if sample is not None and sample < len(keys):
        rng = random.Random(seed)
        keys = [keys[rng.randrange(len(keys))] for _ in range(sample)]
    bound = _log_exact(len(G.elements), p)
    if bound is None:
        return False
    for k in keys:
        y = k
        steps = 0
        while y != G.oracle.identity:
            y = _power(G.oracle, y, p)
            steps += 1
            if steps > bound:
                return False
    return True


def check_filtration_lemma(G, chain, V):
    """Finite chain analog of the elementary refinement lemma.

    chain is K_1 superset ... superset K_n = {1}, each enumerated; V an
    enumerated subgroup.  Reports, for each i, whether K_i lies in V.K_{i+1}
    (tested as: some k' in K_{i+1} has k k'^-1 in V), whether the chain
    members are normal in G, and, when every inclusion holds, whether the
    conclusion K_1 subset of V holds.
    """
    oracle = G.oracle
    if len(chain) < 1:
        raise ChainNotNested("chain must contain at least one subgroup")
    for a, b in zip(chain, chain[1:]):
        if not b.element_set <= a.element_set:
            raise ChainNotNested("chain members are not nested")
    if chain[-1].element_set != {oracle.identity}:
        raise ChainNotNested("chain must end at the trivial subgroup")

    normal = []
    for K in chain:
        ok = all(
            oracle.mul(oracle.mul(g, k), oracle.inv(g)) in K.element_set
            for k in K.elements
            for g in G.generators
        )
        normal.append(ok)

    inclusions = []
    for K, K_next in zip(chain, chain[1:]):
        ok = all(
            any(
                oracle.mul(k, oracle.inv(kp)) in V.element_set
                for kp in K_next.elements
            )
            for k in K.elements
        )
        inclusions.append(ok)

    hypothesis = all(inclusions)
    conclusion = None
    if hypothesis:
        conclusion = chain[0].element_set <= V.element_set
    return {
        "normal": normal,
        "inclusions": inclusions,
        "hypothesis_holds": hypothesis,
        "conclusion_holds": conclusion,
    }


def verify_tits_axioms(G, B, N, s_reps, cap=DEFAULT_CAP):
    """Check the four building-block axioms for (G, B, N, S).

    Returns booleans T1..T4 plus whether the double cosets BwB partition G.
    T1: B and N generate G and B cap N is normal in N.  T2: the images of
    s_reps generate W = N/(B cap N) and are involutions.  T3: for all s, w:
    s B w lies in BwB union BswB.  T4: no s normalizes B into itself.
    """
    oracle = G.oracle
    b_set = B.element_set
    t_set = frozenset(k for k in N.elements if k in b_set)

    gen_union = closure(tuple(B.elements) + tuple(N.elements), oracle, cap=cap)
    t1 = gen_union.order == G.order and all(
        oracle.mul(oracle.mul(n, t), oracle.inv(n)) in t_set
        for n in N.elements
        for t in t_set
    )

    def coset_of(key):
        return frozenset(oracle.mul(t, key) for t in t_set)

    # W as the set of cosets T.n, each with a deterministic representative
    rep = {}
    for n in N.elements:
        c = coset_of(n)
        rep.setdefault(c, min(c))
    identity_coset = coset_of(oracle.identity)
    s_cosets = [coset_of(s) for s in s_reps]

    def coset_mul(w1, w2):
        return coset_of(oracle.mul(rep[w1], rep[w2]))

    generated = {identity_coset}
    frontier = [identity_coset]
    while frontier:
        nxt = []
        for w in frontier:
            for s in s_cosets:
                prod = coset_mul(w, s)
                if prod not in generated:
                    generated.add(prod)
                    nxt.append(prod)
        frontier = nxt
    t2 = len(generated) == len(rep) and all(
        s != identity_coset and coset_mul(s, s) == identity_coset for s in s_cosets
    )

    b_elems = tuple(B.elements)
    double_cosets = {}
    for w, n_w in rep.items():
        dc = set()
        for b1 in b_elems:
            left = oracle.mul(b1, n_w)
            dc.update(oracle.mul(left, b2) for b2 in b_elems)
        double_cosets[w] = frozenset(dc)

    t3 = all(
        oracle.mul(oracle.mul(rep[s], b), rep[w])
        in double_cosets[w] | double_cosets[coset_mul(s, w)]
        for s in s_cosets
        for w in rep
        for b in b_elems
    )

    t4 = all(
        any(oracle.mul(oracle.mul(rep[s], b), rep[s]) not in b_set for b in b_elems)
        for s in s_cosets
    )

    union_size = sum(len(dc) for dc in double_cosets.values())
    covered = set()
    for dc in double_cosets.values():
        covered.update(dc)
    bruhat = covered == set(G.elements) and union_size == G.order

    return {"T1": t1, "T2": t2, "T3": t3, "T4": t4, "bruhat_partition": bruhat}
