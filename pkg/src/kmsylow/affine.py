"""Iwahori-level Sylow model inside SL_m over F_q[t]/(t^k).

The Sylow p-subgroup is the set of determinant-one matrices that reduce to
unipotent upper-triangular matrices mod t.  Generators are superdiagonal
elementaries plus the corner elementary carrying an explicit factor t;
the corner matrix without that factor fails the mod-t membership test.

Right multiplication by a fixed matrix is linear in the entry coefficients,
so it compiles to additions of table-lookup columns; that compiled form
backs the bulk hook of the group engine.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EnumerationCapExceeded, TruncationTooShallow
from .pgroup import (
    DEFAULT_CAP,
    FiniteGroupTable,
    GroupOracle,
    closure,
    frattini_quotient_dimension,
)


class TruncatedPolyRing:
    """F_q[t]/(t^k); elements are length-k tuples of field codes, constant
    term first."""

    def __init__(self, fq, k):
        if k < 1:
            raise ValueError("truncation order must be at least 1")
        self.fq = fq
        self.k = k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self.t = (0, 1) + (0,) * (k - 2) if k >= 2 else self.zero

    def add(self, a, b):
        fq = self.fq
        return tuple(fq.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        fq = self.fq
        return tuple(fq.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        fq = self.fq
        return tuple(fq.neg(x) for x in a)

    def mul(self, a, b):
        fq = self.fq
        out = [0] * self.k
        for i, x in enumerate(a):
            if not x:
                continue
            for j in range(self.k - i):
                y = b[j]
                if y:
                    out[i + j] = fq.add(out[i + j], fq.mul(x, y))
        return tuple(out)

    def monomial(self, code, degree=0):
        """code * t^degree, truncated."""
        out = [0] * self.k
        if degree < self.k:
            out[degree] = code
        return tuple(out)


class AffineMatrixGroup:
    """Matrix arithmetic for SL_m over a truncated polynomial ring, with
    byte keys and a compiled bulk multiplication hook."""

    def __init__(self, m, fq, k):
        if m < 2:
            raise ValueError("matrix size must be at least 2")
        self.m = m
        self.fq = fq
        self.k = k
        self.ring = TruncatedPolyRing(fq, k)
        self.identity = tuple(
            tuple(self.ring.one if i == j else self.ring.zero for j in range(m))
            for i in range(m)
        )
        self._compiled = {}

    def elementary(self, i, j, ring_value):
        """identity + ring_value * E_{i,j} (zero-based positions)."""
        rows = [list(row) for row in self.identity]
        rows[i][j] = self.ring.add(rows[i][j], ring_value)
        return tuple(tuple(row) for row in rows)

    def mul(self, A, B):
        ring = self.ring
        m = self.m
        out = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = ring.zero
                for l in range(m):
                    acc = ring.add(acc, ring.mul(A[i][l], B[l][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def det(self, A):
        return _det(self.ring, [list(row) for row in A])

    def inverse(self, A):
        """Adjugate; valid because determinants are constrained to one."""
        ring = self.ring
        m = self.m
        if self.det(A) != ring.one:
            raise ValueError("matrix determinant is not one")
        out = [[ring.zero] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                minor = [
                    [A[r][c] for c in range(m) if c != j]
                    for r in range(m)
                    if r != i
                ]
                cof = _det(ring, minor)
                if (i + j) % 2:
                    cof = ring.neg(cof)
                out[j][i] = cof
        return tuple(tuple(row) for row in out)

    def key(self, A):
        return bytes(c for row in A for entry in row for c in entry)

    def element(self, key):
        m, k = self.m, self.k
        it = iter(key)
        return tuple(
            tuple(tuple(next(it) for _ in range(k)) for _ in range(m))
            for _ in range(m)
        )

    def reduce_to(self, A, smaller):
        """Image under the coefficient-truncation homomorphism onto the
        group over F_q[t]/(t^k') for k' <= k."""
        kk = smaller.k
        return tuple(tuple(entry[:kk] for entry in row) for row in A)

    def _compile_right_mul(self, gkey):
        fn = self._compiled.get(gkey)
        if fn is not None:
            return fn
        g = self.element(gkey)
        m, k = self.m, self.k

        def pos(i, j, d):
            return (i * m + j) * k + d

        terms = []
        for i in range(m):
            for j in range(m):
                for d in range(k):
                    acc = []
                    for l in range(m):
                        for e in range(d + 1):
                            c = g[l][j][d - e]
                            if c:
                                acc.append((pos(i, l, e), c))
                    terms.append(acc)
        fq = self.fq

        def fn(X):
            MUL, ADD = fq.MUL, fq.ADD
            n = X.shape[0]
            out = np.zeros((n, m * m * k), dtype=np.uint8)
            for idx, acc in enumerate(terms):
                col = np.zeros(n, dtype=np.uint8)
                for src, c in acc:
                    col = ADD[col, MUL[c, X[:, src]]]
                out[:, idx] = col
            return out

        if len(self._compiled) >= 512:
            self._compiled.clear()
        self._compiled[gkey] = fn
        return fn

    def oracle(self):
        width = self.m * self.m * self.k

        def mul(a, b):
            return self.key(self.mul(self.element(a), self.element(b)))

        def inv(a):
            return self.key(self.inverse(self.element(a)))

        def mul_many(keys, g):
            fn = self._compile_right_mul(bytes(g))
            X = np.frombuffer(b"".join(keys), dtype=np.uint8).reshape(
                len(keys), width
            )
            flat = fn(X).tobytes()
            return [flat[i * width : (i + 1) * width] for i in range(len(keys))]

        return GroupOracle(
            identity=self.key(self.identity), mul=mul, inv=inv, mul_many=mul_many
        )


def _det(ring, rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = ring.zero
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = ring.mul(rows[0][j], _det(ring, minor))
        out = ring.sub(out, term) if j % 2 else ring.add(out, term)
    return out


def iwahori_sylow_membership(group, A):
    """True iff the matrix is unipotent upper-triangular mod t."""
    one = group.fq.one
    for i in range(group.m):
        for j in range(group.m):
            c0 = A[i][j][0]
            if i == j:
                if c0 != one:
                    return False
            elif i > j and c0 != 0:
                return False
    return True


def sylow_generators(m, fq, k):
    """Superdiagonal elementaries 1 + v_l E_{i,i+1} plus the corner
    elementaries 1 + v_l t E_{m,1}; m*r matrices in total."""
    group = AffineMatrixGroup(m, fq, k)
    out = []
    for i in range(m - 1):
        for code in fq.basis:
            out.append(group.elementary(i, i + 1, group.ring.monomial(code, 0)))
    for code in fq.basis:
        out.append(group.elementary(m - 1, 0, group.ring.monomial(code, 1)))
    return out


def sylow_order(m, fq, k):
    """q^(m(m-1)/2) * q^((m^2-1)(k-1)): the mod-t unipotent count times the
    size of the kernel of reduction mod t."""
    return fq.q ** (m * (m - 1) // 2) * fq.q ** ((m * m - 1) * (k - 1))


def sylow_table(m, fq, k, cap=DEFAULT_CAP, group=None):
    """Enumerated Sylow subgroup as a group-engine table."""
    group = group or AffineMatrixGroup(m, fq, k)
    oracle = group.oracle()
    gens = [group.key(A) for A in sylow_generators(m, fq, k)]
    return group, closure(gens, oracle, cap=cap, p=fq.p)


def verify_generation(m, fq, k, cap=DEFAULT_CAP):
    """True iff the standard generators produce exactly the matrices passing
    the membership test: the closure has the predicted order and every
    closure element passes membership."""
    expected = sylow_order(m, fq, k)
    if expected > cap:
        raise EnumerationCapExceeded(
            f"Sylow order {expected} exceeds the cap of {cap}"
        )
    group, table = sylow_table(m, fq, k, cap=cap)
    if table.order != expected:
        return False
    return all(
        iwahori_sylow_membership(group, group.element(key))
        for key in table.elements
    )


def frattini_dimension_affine(m, fq, k, cap=DEFAULT_CAP):
    """Black-box Frattini quotient dimension of the enumerated Sylow."""
    _, table = sylow_table(m, fq, k, cap=cap)
    return frattini_quotient_dimension(table, cap=cap)


def commutator_identity_check(fq, r_val, s_val, m_exp, n_exp, K):
    """Compare [1 + r t^m E12, 1 + s t^n E21] in SL_2 over F_q[t]/(t^K)
    against the closed form

        [[1 + u + u^2,  -r^2 s t^(2m+n)],
         [r s^2 t^(m+2n),  1 - u]]        with u = r s t^(m+n).
    """
    if K <= 3 * max(m_exp, n_exp):
        raise TruncationTooShallow(
            f"need K > {3 * max(m_exp, n_exp)} to keep every displayed entry"
        )
    group = AffineMatrixGroup(2, fq, K)
    ring = group.ring
    x = group.elementary(0, 1, ring.monomial(r_val, m_exp))
    y = group.elementary(1, 0, ring.monomial(s_val, n_exp))
    lhs = group.mul(
        group.mul(group.mul(x, y), group.inverse(x)), group.inverse(y)
    )
    u = ring.mul(ring.monomial(r_val, m_exp), ring.monomial(s_val, n_exp))
    r2s = fq.mul(fq.mul(r_val, r_val), s_val)
    rs2 = fq.mul(r_val, fq.mul(s_val, s_val))
    rhs = (
        (
            ring.add(ring.add(ring.one, u), ring.mul(u, u)),
            ring.neg(ring.monomial(r2s, 2 * m_exp + n_exp)),
        ),
        (
            ring.monomial(rs2, m_exp + 2 * n_exp),
            ring.sub(ring.one, u),
        ),
    )
    return lhs == rhs


@dataclass(frozen=True)
class SubgroupDescription:
    predicate: object  # matrix -> bool
    table: FiniteGroupTable


def congruence_subgroup(m, fq, k, i, cap=DEFAULT_CAP, precomputed=None):
    """Matrices of the Sylow congruent to the identity mod t^i, together
    with the membership predicate.  The chain K_1 > ... > K_k = 1 refines
    the Sylow."""
    if not 1 <= i <= k:
        raise ValueError("congruence level must satisfy 1 <= i <= k")
    group, table = precomputed or sylow_table(m, fq, k, cap=cap)
    identity = group.identity

    def predicate(A):
        for a in range(m):
            for b in range(m):
                if A[a][b][:i] != identity[a][b][:i]:
                    return False
        return True

    members = tuple(
        key for key in table.elements if predicate(group.element(key))
    )
    sub = FiniteGroupTable(table.oracle, (), members, p=fq.p)
    return SubgroupDescription(predicate=predicate, table=sub)


def enumerate_special_linear(m, fq, cap=DEFAULT_CAP):
    """All of SL_m(F_q) by brute filtering, with elementary transvections
    as the recorded generating set."""
    import itertools

    group = AffineMatrixGroup(m, fq, 1)
    if fq.q ** (m * m) > cap * 8:
        raise EnumerationCapExceeded(
            f"q^(m^2) = {fq.q ** (m * m)} is too large to filter"
        )
    elements = []
    one = group.ring.one
    for codes in itertools.product(range(fq.q), repeat=m * m):
        A = tuple(
            tuple((codes[i * m + j],) for j in range(m)) for i in range(m)
        )
        if group.det(A) == one:
            elements.append(group.key(A))
    gens = []
    for i in range(m):
        for j in range(m):
            if i != j:
                for code in fq.basis:
                    gens.append(
                        group.key(group.elementary(i, j, (code,)))
                    )
    oracle = group.oracle()
    table = FiniteGroupTable(oracle, tuple(gens), tuple(elements), p=fq.p)
    return group, table


def borel_subgroup(group, table):
    """Upper-triangular members of an enumerated matrix group table."""
    members = tuple(
        key
        for key in table.elements
        if all(
            group.element(key)[i][j] == group.ring.zero
            for i in range(group.m)
            for j in range(i)
        )
    )
    return FiniteGroupTable(table.oracle, (), members, p=table.p)


def monomial_subgroup(group, table):
    """Members with exactly one nonzero entry in every row and column."""
    zero = group.ring.zero

    def is_monomial(A):
        for i in range(group.m):
            if sum(1 for j in range(group.m) if A[i][j] != zero) != 1:
                return False
        for j in range(group.m):
            if sum(1 for i in range(group.m) if A[i][j] != zero) != 1:
                return False
        return True

    members = tuple(
        key for key in table.elements if is_monomial(group.element(key))
    )
    return FiniteGroupTable(table.oracle, (), members, p=table.p)


def weyl_representatives(group):
    """One rotation block [[0,1],[-1,0]] per adjacent transposition."""
    out = []
    ring = group.ring
    for i in range(group.m - 1):
        rows = [list(row) for row in group.identity]
        rows[i][i] = ring.zero
        rows[i + 1][i + 1] = ring.zero
        rows[i][i + 1] = ring.one
        rows[i + 1][i] = ring.neg(ring.one)
        out.append(group.key(tuple(tuple(row) for row in rows)))
    return out
