"""Root lattice, Weyl action, real/imaginary root decision, prenilpotent pairs.

Vectors live in the free abelian group on the GCM labels.  A simple
reflection acts by s.alpha = alpha - (sum_t n_t A[s][t]) alpha_s.  Real roots
form the Weyl orbit of the simple roots; positive imaginary roots are the
Weyl orbit of the fundamental cone (all pairings <= 0, connected support).
The decision procedure descends by height and is certificate-producing: a
real verdict carries a word replaying the vector from a simple root.
"""

from dataclasses import dataclass
from itertools import product

from .errors import NotRealRoot, UnknownLabel, ZeroVector

REAL = "real"
IMAGINARY = "imaginary"
NOT_ROOT = "not_root"

TRUE = "true"
FALSE = "false"
NOT_DECIDED = "not_decided"


@dataclass(frozen=True)
class RootVector:
    """Finitely supported integer vector over the label set.

    ``items`` is a sorted tuple of (label, coefficient) pairs with zero
    coefficients dropped, so equal vectors hash equal.
    """

    items: tuple

    @staticmethod
    def from_coords(coords):
        return RootVector(tuple(sorted((s, int(n)) for s, n in coords.items() if n != 0)))

    @property
    def coords(self):
        return dict(self.items)

    def coeff(self, s):
        for t, n in self.items:
            if t == s:
                return n
        return 0

    def is_zero(self):
        return not self.items

    def is_positive(self):
        return bool(self.items) and all(n > 0 for _, n in self.items)

    def is_negative(self):
        return bool(self.items) and all(n < 0 for _, n in self.items)

    def support(self):
        return [s for s, _ in self.items]

    def __neg__(self):
        return RootVector(tuple((s, -n) for s, n in self.items))

    def __add__(self, other):
        coords = dict(self.items)
        for s, n in other.items:
            coords[s] = coords.get(s, 0) + n
        return RootVector.from_coords(coords)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k):
        return RootVector(tuple((s, k * n) for s, n in self.items)) if k else RootVector(())

    def dense(self, labels):
        return [self.coeff(s) for s in labels]


def simple_root(s):
    return RootVector(((s, 1),))


def height(alpha):
    """Sum of the coordinates."""
    return sum(n for _, n in alpha.items)


def pairing(gcm, s, alpha):
    """sum_t n_t A[s][t]: the coefficient stripped off alpha_s by the reflection at s."""
    return sum(n * gcm.a(s, t) for t, n in alpha.items)


def simple_reflection(gcm, s, alpha):
    """alpha - (sum_t n_t A[s][t]) alpha_s.  Only the coordinate at s changes."""
    if s not in gcm.labels:
        raise UnknownLabel(f"unknown label {s!r}")
    p = pairing(gcm, s, alpha)
    if p == 0:
        return alpha
    coords = dict(alpha.items)
    coords[s] = coords.get(s, 0) - p
    return RootVector.from_coords(coords)


def weyl_apply(gcm, word, alpha):
    """Apply a word of simple reflections, rightmost letter first."""
    for s in reversed(tuple(word)):
        alpha = simple_reflection(gcm, s, alpha)
    return alpha


@dataclass(frozen=True)
class RootStatus:
    """Verdict of the root decision, with a witness for real roots.

    For tag == REAL the witness satisfies weyl_apply(gcm, word, alpha_simple)
    == alpha.  Other tags carry no witness.
    """

    tag: str
    word: tuple = None
    simple: object = None


def support_is_connected(gcm, alpha):
    supp = set(alpha.support())
    if not supp:
        return False
    start = next(iter(supp))
    seen = {start}
    stack = [start]
    while stack:
        s = stack.pop()
        for t in gcm.neighbors(s):
            if t in supp and t not in seen:
                seen.add(t)
                stack.append(t)
    return seen == supp


def root_status(gcm, alpha):
    """Decide real / imaginary / not-a-root by height descent.

    Positive case: repeatedly reflect at the lowest label with positive
    pairing (each step strictly lowers height).  Reaching a simple root gives
    a real verdict with the reflection word as witness; leaving the positive
    cone proves non-root; a local minimum is imaginary exactly when its
    support is connected.  Negative vectors reduce to their negation, with
    the witness extended by one letter (w(alpha_s) = -alpha implies
    (w,s)(alpha_s) = alpha).
    """
    if alpha.is_zero():
        raise ZeroVector("the zero vector is not a root candidate")
    if alpha.is_negative():
        st = root_status(gcm, -alpha)
        if st.tag == REAL:
            return RootStatus(tag=REAL, word=st.word + (st.simple,), simple=st.simple)
        return RootStatus(tag=st.tag)
    if not alpha.is_positive():
        return RootStatus(tag=NOT_ROOT)

    word = []
    current = alpha
    while True:
        if len(current.items) == 1 and current.items[0][1] == 1:
            return RootStatus(tag=REAL, word=tuple(word), simple=current.items[0][0])
        drop = None
        for s in gcm.labels:
            if current.coeff(s) != 0 and pairing(gcm, s, current) > 0:
                drop = s
                break
        if drop is None:
            if support_is_connected(gcm, current):
                return RootStatus(tag=IMAGINARY)
            return RootStatus(tag=NOT_ROOT)
        current = simple_reflection(gcm, drop, current)
        if not current.is_positive():
            # a positive root other than alpha_s stays positive under s
            return RootStatus(tag=NOT_ROOT)
        word.append(drop)


def positive_real_roots_up_to_height(gcm, bound):
    """All positive real roots of height <= bound.

    Breadth-first closure of the simple roots under simple reflections,
    pruned at |height| > bound.  Complete because a positive real root
    descends to a simple root through positive roots of strictly smaller
    height, so the reversed path lies inside the pruned region.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    seen = {simple_root(s) for s in gcm.labels}
    frontier = list(seen)
    while frontier:
        nxt = []
        for alpha in frontier:
            for s in gcm.labels:
                beta = simple_reflection(gcm, s, alpha)
                if beta not in seen and abs(height(beta)) <= bound:
                    seen.add(beta)
                    nxt.append(beta)
        frontier = nxt
    return {alpha for alpha in seen if alpha.is_positive()}


def positive_roots_up_to_height(gcm, bound):
    """All positive roots of height <= bound, as (vector, tag) pairs.

    Filters the full simplex {n_s >= 0, 1 <= sum n_s <= bound} through
    root_status; exponential in the rank, fine at desk scale.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    labels = gcm.labels
    out = set()
    for combo in product(range(bound + 1), repeat=len(labels)):
        total = sum(combo)
        if not 1 <= total <= bound:
            continue
        alpha = RootVector.from_coords(dict(zip(labels, combo)))
        st = root_status(gcm, alpha)
        if st.tag != NOT_ROOT:
            out.add((alpha, st.tag))
    return out


@dataclass(frozen=True)
class PrenilpotencyResult:
    """Three-valued answer with certificates.

    TRUE carries a word sending both roots positive and a word sending both
    negative.  FALSE carries either the closed finite pair-orbit in which no
    qualifying word exists, or (for an exact opposite pair) the algebraic
    reason.  NOT_DECIDED means the search bound was exhausted first and is
    never downgraded to FALSE.
    """

    verdict: str
    positive_witness: tuple = None
    negative_witness: tuple = None
    closed_orbit: frozenset = None
    reason: str = None
    search_bound: int = None


def default_search_bound(gcm, alpha, beta):
    return abs(height(alpha)) + abs(height(beta)) + 2 * gcm.size


def is_prenilpotent_pair(gcm, alpha, beta, search_bound=None):
    """Decide whether some w makes both roots positive and some w' both negative.

    Breadth-first search on the diagonal Weyl action on the pair, memoizing
    visited pairs.  The orbit closing without both certificates refutes;
    hitting the depth bound returns NOT_DECIDED.  The exact opposite pair is
    refuted directly: w(-alpha) = -w(alpha) can never be positive alongside
    w(alpha).
    """
    for v in (alpha, beta):
        if root_status(gcm, v).tag != REAL:
            raise NotRealRoot(f"{dict(v.items)!r} is not a real root")
    if search_bound is None:
        search_bound = default_search_bound(gcm, alpha, beta)
    if beta == -alpha:
        return PrenilpotencyResult(
            verdict=FALSE,
            reason="opposite roots: images under any word are negatives of each other",
            search_bound=search_bound,
        )

    start = (alpha, beta)
    seen = {start: ()}
    frontier = [start]
    pos_witness = None
    neg_witness = None

    def check(pair, word):
        nonlocal pos_witness, neg_witness
        a, b = pair
        if pos_witness is None and a.is_positive() and b.is_positive():
            pos_witness = word
        if neg_witness is None and a.is_negative() and b.is_negative():
            neg_witness = word

    check(start, ())
    depth = 0
    while frontier and (pos_witness is None or neg_witness is None):
        if depth >= search_bound:
            return PrenilpotencyResult(verdict=NOT_DECIDED, search_bound=search_bound)
        nxt = []
        for pair in frontier:
            word = seen[pair]
            for s in gcm.labels:
                moved = (
                    simple_reflection(gcm, s, pair[0]),
                    simple_reflection(gcm, s, pair[1]),
                )
                if moved not in seen:
                    seen[moved] = (s,) + word
                    check(moved, seen[moved])
                    nxt.append(moved)
        frontier = nxt
        depth += 1
    if pos_witness is not None and neg_witness is not None:
        return PrenilpotencyResult(
            verdict=TRUE,
            positive_witness=pos_witness,
            negative_witness=neg_witness,
            search_bound=search_bound,
        )
    # orbit closed with a certificate missing: certified refutation
    return PrenilpotencyResult(
        verdict=FALSE,
        closed_orbit=frozenset(seen),
        reason="pair orbit closed without a simultaneous positive and negative image",
        search_bound=search_bound,
    )


def roots_to_json(gcm, tagged_roots):
    """JSON-ready dump: [{"coords", "height", "status"}], sorted by (height, coords)."""
    rows = [
        {"coords": alpha.dense(gcm.labels), "height": height(alpha), "status": tag}
        for alpha, tag in tagged_roots
    ]
    rows.sort(key=lambda r: (r["height"], r["coords"]))
    return rows
