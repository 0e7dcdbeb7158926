"""Height-truncated exponential group over F_q.

Elements are coefficient vectors over F_q in the graded basis of a truncated
positive Lie algebra; multiplication is the BCH series, which terminates
because every bracket of total height above the cutoff vanishes.  The series
denominators only involve primes up to the cutoff, so the law is exact
whenever p exceeds the cutoff.

The same series evaluator runs in two scalar domains: concrete field codes
for one-off products, and polynomials in the left factor's coordinates for
compiling right-multiplication by a fixed element into numpy table lookups.
That compiled form feeds the bulk hook of the black-box group engine.
"""

import time

import numpy as np

from .bch import bch_lyndon_terms
from .errors import (
    CharacteristicTooSmall,
    EnumerationCapExceeded,
    HeightExceedsCutoff,
    HypothesisViolated,
    NotPositiveRealRoot,
)
from .fields import PrimeField, rref
from .gcm import GeneralizedCartanMatrix, validate_gcm
from .lie import build_positive_part, standard_factorization
from .pgroup import (
    DEFAULT_CAP,
    FiniteGroupTable,
    GroupOracle,
    _log_exact,
    _power,
    closure,
    commutator,
    normal_closure,
    subgroup_index,
)
from .roots import REAL, positive_real_roots_up_to_height, root_status, simple_root


class _CodeOps:
    """Scalar arithmetic on F_q integer codes."""

    def __init__(self, fq):
        self.fq = fq
        self.zero = 0

    def add(self, a, b):
        return self.fq.add(a, b)

    def sub(self, a, b):
        return self.fq.sub(a, b)

    def mul(self, a, b):
        return self.fq.mul(a, b)

    def scale(self, c, a):
        # c is a prime-subfield constant, hence a valid code below p
        return self.fq.mul(c, a)

    def is_zero(self, a):
        return a == 0


class _PolyOps:
    """Scalar arithmetic on polynomials over F_q in the coordinate variables.

    A polynomial is a dict mapping a sorted tuple of variable indices (with
    multiplicity) to a nonzero code.
    """

    def __init__(self, fq):
        self.fq = fq
        self.zero = {}

    def add(self, f, g):
        out = dict(f)
        for m, c in g.items():
            s = self.fq.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return out

    def sub(self, f, g):
        return self.add(f, {m: self.fq.neg(c) for m, c in g.items()})

    def mul(self, f, g):
        out = {}
        fq = self.fq
        for m1, c1 in f.items():
            for m2, c2 in g.items():
                m = tuple(sorted(m1 + m2))
                s = fq.add(out.get(m, 0), fq.mul(c1, c2))
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return out

    def scale(self, c, f):
        fq = self.fq
        out = {}
        for m, cf in f.items():
            s = fq.mul(c, cf)
            if s:
                out[m] = s
        return out

    def is_zero(self, f):
        return not f


class UnipotentModel:
    """Finite group exp(n) for a truncated Serre-presented positive part n
    over F_q, with vectors of field codes as elements."""

    def __init__(self, gcm, fq, cutoff):
        if fq.p <= cutoff:
            raise CharacteristicTooSmall(
                f"series denominators need p > {cutoff}, got p = {fq.p}"
            )
        self.gcm = gcm
        self.fq = fq
        self.cutoff = cutoff
        self.algebra = build_positive_part(gcm, cutoff, PrimeField(fq.p))
        self.dim = self.algebra.dimension
        self.heights = tuple(
            self.algebra.height_of(i) for i in range(self.dim)
        )
        self.identity = (0,) * self.dim
        # flattened structure constants: (i, j) with i < j -> ((k, c), ...)
        self._sc = {
            key: tuple((k, int(c)) for k, c in pairs)
            for key, pairs in self.algebra.structure.items()
            if pairs
        }
        # series terms as (Lyndon word over {left, right}, coefficient code)
        self._terms = tuple(
            (word, fq.from_fraction(coeff))
            for word, coeff in bch_lyndon_terms(cutoff)
        )
        self._code_ops = _CodeOps(fq)
        self._poly_ops = _PolyOps(fq)
        self._compiled = {}

    def _bracket_vec(self, ops, a, b):
        out = [ops.zero] * self.dim
        for (i, j), entries in self._sc.items():
            term = ops.sub(ops.mul(a[i], b[j]), ops.mul(a[j], b[i]))
            if ops.is_zero(term):
                continue
            for k, c in entries:
                out[k] = ops.add(out[k], ops.scale(c, term))
        return out

    def _word_value(self, ops, word, values):
        got = values.get(word)
        if got is not None:
            return got
        u, v = standard_factorization(word)
        out = self._bracket_vec(
            ops, self._word_value(ops, u, values), self._word_value(ops, v, values)
        )
        values[word] = out
        return out

    def _combine(self, ops, x, y):
        values = {(0,): x, (1,): y}
        out = [ops.zero] * self.dim
        for word, c in self._terms:
            v = self._word_value(ops, word, values)
            for k in range(self.dim):
                if not ops.is_zero(v[k]):
                    out[k] = ops.add(out[k], ops.scale(c, v[k]))
        return out

    def multiply(self, x, y):
        return tuple(self._combine(self._code_ops, list(x), list(y)))

    def inverse(self, x):
        # every series term of length 2 or more vanishes on (x, -x)
        return tuple(self.fq.neg(c) for c in x)

    def power(self, x, n):
        out = self.identity
        base = x if n >= 0 else self.inverse(x)
        for _ in range(abs(n)):
            out = self.multiply(out, base)
        return out

    def _compile_right_mul(self, gkey):
        fn = self._compiled.get(gkey)
        if fn is not None:
            return fn
        ops = self._poly_ops
        xs = [{(i,): 1} for i in range(self.dim)]
        ys = [{(): c} if c else {} for c in gkey]
        polys = self._combine(ops, xs, ys)
        steps = [
            tuple((c, m) for m, c in sorted(poly.items())) for poly in polys
        ]
        fq = self.fq
        dim = self.dim

        def fn(X):
            MUL, ADD = fq.MUL, fq.ADD
            n = X.shape[0]
            out = np.zeros((n, dim), dtype=np.uint8)
            for k, terms in enumerate(steps):
                acc = np.zeros(n, dtype=np.uint8)
                for c, m in terms:
                    t = np.full(n, c, dtype=np.uint8)
                    for v in m:
                        t = MUL[t, X[:, v]]
                    acc = ADD[acc, t]
                out[:, k] = acc
            return out

        if len(self._compiled) >= 512:
            self._compiled.clear()
        self._compiled[gkey] = fn
        return fn

    def oracle(self):
        dim = self.dim
        fq = self.fq

        def mul(a, b):
            return bytes(self._combine(self._code_ops, list(a), list(b)))

        def inv(a):
            return bytes(fq.neg(c) for c in a)

        def mul_many(keys, g):
            fn = self._compile_right_mul(bytes(g))
            X = np.frombuffer(b"".join(keys), dtype=np.uint8).reshape(
                len(keys), dim
            )
            flat = fn(X).tobytes()
            return [flat[i * dim : (i + 1) * dim] for i in range(len(keys))]

        return GroupOracle(
            identity=bytes(dim), mul=mul, inv=inv, mul_many=mul_many
        )

    def key(self, x):
        return bytes(x)

    def element(self, key):
        return tuple(key)


def bch_multiply(model, x, y):
    """Group product of two coefficient vectors."""
    return model.multiply(x, y)


def root_group_element(model, gamma, a):
    """Element with coefficient a on the basis vector of a positive real
    root and zero elsewhere."""
    status = root_status(model.gcm, gamma)
    if status.tag != REAL or not gamma.is_positive():
        raise NotPositiveRealRoot(
            f"{gamma.dense(model.gcm.labels)} is not a positive real root"
        )
    ht = sum(n for _, n in gamma.items)
    if ht > model.cutoff:
        raise HeightExceedsCutoff(
            f"height {ht} exceeds the cutoff {model.cutoff}"
        )
    index = model.algebra.by_degree[gamma][0]
    out = [0] * model.dim
    out[index] = a
    return tuple(out)


def frattini_dimension_linear(model):
    """dim of the group modulo its Frattini subgroup, computed as
    r * dim(n / [n, n]) by ranking the bracket span over the prime field."""
    fld = PrimeField(model.fq.p)
    rows = []
    for (i, j), entries in model._sc.items():
        row = [0] * model.dim
        for k, c in entries:
            row[k] = c
        rows.append(row)
    _, pivots = rref(rows, fld)
    return model.fq.r * (model.dim - len(pivots))


def standard_generators(model):
    """One element per (simple root, F_q basis vector) pair."""
    out = []
    for s in model.gcm.labels:
        alpha = simple_root(s)
        for code in model.fq.basis:
            out.append(root_group_element(model, alpha, code))
    return out


def _non_simple_real_root_elements(model):
    out = []
    for gamma in sorted(
        positive_real_roots_up_to_height(model.gcm, model.cutoff),
        key=lambda g: (sum(n for _, n in g.items), g.items),
    ):
        if sum(n for _, n in gamma.items) == 1:
            continue
        for code in model.fq.basis:
            out.append(root_group_element(model, gamma, code))
    return out


def verify_theorem1(gcm, fq, cutoff, cap=DEFAULT_CAP):
    """Frattini-subgroup verification on one truncated instance.

    Reports the first-homology dimension three ways (black-box subgroup
    computation, bracket-span linear algebra, and the predicted value
    size * r), whether the Frattini subgroup equals the derived subgroup,
    the orders of both sides of the non-simple real-root comparison, and
    whether the standard generators generate the whole group.
    """
    if not isinstance(gcm, GeneralizedCartanMatrix):
        gcm = validate_gcm(gcm)
    max_off = max(
        (-gcm.rows[i][j] for i in range(gcm.size) for j in range(gcm.size) if i != j),
        default=0,
    )
    if fq.p <= max_off:
        raise HypothesisViolated(
            f"p = {fq.p} must exceed the largest off-diagonal size {max_off}"
        )
    t0 = time.perf_counter()
    model = UnipotentModel(gcm, fq, cutoff)
    oracle = model.oracle()
    p = fq.p
    gens = [model.key(g) for g in standard_generators(model)]
    full_order = fq.q ** model.dim

    comms = [
        commutator(oracle, gens[i], gens[j])
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    ]
    powers = [_power(oracle, g, p) for g in gens]

    if full_order <= cap:
        G = closure(gens, oracle, cap=cap, p=p)
        generators_generate = G.order == full_order
        derived = normal_closure(comms, gens, oracle, cap=cap, p=p)
        frattini = normal_closure(comms + powers, gens, oracle, cap=cap, p=p)
        frattini_eq_derived = derived.element_set == frattini.element_set
        index = G.order // frattini.order
    else:
        derived = normal_closure(comms, gens, oracle, cap=cap, p=p)
        if all(x == oracle.identity for x in powers):
            # adding identities to the seeds cannot change the closure
            frattini = derived
            frattini_eq_derived = True
        else:
            frattini = normal_closure(
                comms + powers, gens, oracle, cap=cap, p=p
            )
            frattini_eq_derived = derived.element_set == frattini.element_set
        index = subgroup_index(frattini, gens, oracle, cap=cap)
        generators_generate = frattini.order * index == full_order

    h1_blackbox = _log_exact(index, p)
    rhs_gens = [model.key(g) for g in _non_simple_real_root_elements(model)]
    rhs = closure(rhs_gens, oracle, cap=cap, p=p)

    elapsed_ms = int(round((time.perf_counter() - t0) * 1000))
    return {
        "gcm": [list(row) for row in gcm.rows],
        "q": fq.q,
        "H": cutoff,
        "h1_blackbox": h1_blackbox,
        "h1_linear": frattini_dimension_linear(model),
        "h1_predicted": gcm.size * fq.r,
        "frattini_eq_derived": frattini_eq_derived,
        "thm_ii_lhs_order": frattini.order,
        "thm_ii_rhs_order": rhs.order,
        "generators_generate": generators_generate,
        "elapsed_ms": elapsed_ms,
        "caveat": (
            "finite height-truncated model; group-level claims are checked "
            "in the truncation, not in the full pro-p group"
        ),
    }


def height_filtration(model, oracle=None, cap=DEFAULT_CAP):
    """Subgroups U_i of vectors supported in heights >= i, for i = 1..H+1,
    each enumerated through the group engine."""
    oracle = oracle or model.oracle()
    out = []
    for i in range(1, model.cutoff + 2):
        gens = []
        for idx in range(model.dim):
            if model.heights[idx] >= i:
                for code in model.fq.basis:
                    vec = [0] * model.dim
                    vec[idx] = code
                    gens.append(bytes(vec))
        out.append(closure(gens, oracle, cap=cap, p=model.fq.p))
    return out
