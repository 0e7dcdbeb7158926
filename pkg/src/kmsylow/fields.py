"""Exact scalar arithmetic: rationals, prime fields, table-driven F_q.

The Lie-algebra layer does Gaussian elimination over a field protocol
(RationalField or PrimeField).  The group layers work over F_q through
FqConfig, which encodes field elements as integers 0..q-1 in the power basis
of a deterministically chosen irreducible polynomial, and exposes numpy
lookup tables for vectorized arithmetic.
"""

from fractions import Fraction

import numpy as np


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """Field protocol over Fraction scalars."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / Fraction(a)

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def from_fraction(fr):
        return Fraction(fr)


QQ = RationalField()


class PrimeField:
    """Z/pZ with elements the ints 0..p-1."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.char

    def sub(self, a, b):
        return (a - b) % self.char

    def mul(self, a, b):
        return (a * b) % self.char

    def neg(self, a):
        return (-a) % self.char

    def inv(self, a):
        a %= self.char
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.char - 2, self.char)

    def from_int(self, n):
        return n % self.char

    def from_fraction(self, fr):
        fr = Fraction(fr)
        if fr.denominator % self.char == 0:
            raise ZeroDivisionError(f"denominator {fr.denominator} vanishes mod {self.char}")
        return self.mul(fr.numerator % self.char, self.inv(fr.denominator % self.char))


def rref(rows, fld):
    """Reduced row echelon form over a field protocol.

    Returns (reduced nonzero rows, pivot column indices); pivot columns are
    strictly increasing and each pivot entry is 1.
    """
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    out = []
    pivots = []
    for row in rows:
        for prow, pcol in zip(out, pivots):
            c = row[pcol]
            if c != fld.zero:
                row = [fld.sub(a, fld.mul(c, b)) for a, b in zip(row, prow)]
        lead = next((j for j in range(ncols) if row[j] != fld.zero), None)
        if lead is None:
            continue
        scale = fld.inv(row[lead])
        row = [fld.mul(scale, a) for a in row]
        for i, (prow, pcol) in enumerate(zip(out, pivots)):
            c = prow[lead]
            if c != fld.zero:
                out[i] = [fld.sub(a, fld.mul(c, b)) for a, b in zip(prow, row)]
        pos = next((i for i, pc in enumerate(pivots) if pc > lead), len(pivots))
        out.insert(pos, row)
        pivots.insert(pos, lead)
    return out, pivots


def reduce_against(vec, rows, pivots, fld):
    """Subtract the RREF rows to clear the pivot coordinates of vec."""
    vec = list(vec)
    for row, pcol in zip(rows, pivots):
        c = vec[pcol]
        if c != fld.zero:
            vec = [fld.sub(a, fld.mul(c, b)) for a, b in zip(vec, row)]
    return vec


def _poly_mul_mod(a, b, modulus, p):
    # coefficient tuples over Z/pZ, reduced mod the monic polynomial
    # x^r + modulus[r-1] x^(r-1) + ... + modulus[0]
    r = len(modulus)
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, r - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i, mi in enumerate(modulus):
                prod[d - r + i] = (prod[d - r + i] - c * mi) % p
    return tuple(prod[:r]) if len(prod) >= r else tuple(prod) + (0,) * (r - len(prod))


def _poly_divides(d, f, p):
    # True iff monic d divides monic f over Z/pZ; coefficient lists low-to-high
    f = list(f)
    while len(f) >= len(d):
        c = f[-1]
        if c:
            shift = len(f) - len(d)
            for i, di in enumerate(d):
                f[shift + i] = (f[shift + i] - c * di) % p
        f.pop()
    return all(c == 0 for c in f)


def _monic_polys(p, deg):
    def rec(k):
        if k == 0:
            yield ()
            return
        for tail in rec(k - 1):
            for c in range(p):
                yield (c,) + tail

    for low in rec(deg):
        yield list(low) + [1]


def smallest_irreducible(p, r):
    """Low coefficients (c_0..c_{r-1}) of the first irreducible monic
    x^r + sum c_i x^i in integer-encoding order of (c_0, c_1, ...)."""
    if r == 1:
        return (0,)
    divisors = [d for deg in range(1, r // 2 + 1) for d in _monic_polys(p, deg)]
    for code in range(p ** r):
        low = []
        c = code
        for _ in range(r):
            low.append(c % p)
            c //= p
        f = low + [1]
        if all(not _poly_divides(d, f, p) for d in divisors):
            return tuple(low)
    raise AssertionError("no irreducible polynomial found")


class FqConfig:
    """F_q = F_p[x]/(f), q = p^r, with elements encoded as ints.

    The element sum a_i x^i is encoded as sum a_i p^i, so codes run over
    0..q-1, the prime subfield is the codes 0..p-1, and the power basis
    v_1 = 1, v_2 = x, ..., v_r = x^(r-1) has codes 1, p, ..., p^(r-1).
    Lookup tables (numpy uint8) drive both scalar and bulk arithmetic.
    """

    def __init__(self, p, r=1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if r < 1:
            raise ValueError("r must be >= 1")
        q = p ** r
        if q > 256:
            raise ValueError("q > 256 not supported by the uint8 tables")
        self.p = p
        self.r = r
        self.q = q
        self.poly = smallest_irreducible(p, r)
        self.zero = 0
        self.one = 1

        decode = self.decode
        add_rows = [[self.encode(tuple((x + y) % p for x, y in zip(decode(a), decode(b))))
                     for b in range(q)] for a in range(q)]
        mul_rows = [[self.encode(_poly_mul_mod(decode(a), decode(b), self.poly, p))
                     for b in range(q)] for a in range(q)]
        self._add = add_rows
        self._mul = mul_rows
        self._neg = [self.encode(tuple((-x) % p for x in decode(a))) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = next(b for b in range(1, q) if mul_rows[a][b] == 1)
        self._inv = inv
        self.ADD = np.array(add_rows, dtype=np.uint8)
        self.MUL = np.array(mul_rows, dtype=np.uint8)
        self.NEG = np.array(self._neg, dtype=np.uint8)
        self.INV = np.array(inv, dtype=np.uint8)

    def encode(self, coeffs):
        code = 0
        for i, c in enumerate(coeffs):
            code += (c % self.p) * self.p ** i
        return code

    def decode(self, code):
        out = []
        for _ in range(self.r):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    @property
    def basis(self):
        """Codes of v_1 = 1, v_2, ..., v_r."""
        return [self.p ** i for i in range(self.r)]

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, fr):
        fr = Fraction(fr)
        if fr.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator {fr.denominator} vanishes mod {self.p}")
        num = fr.numerator % self.p
        den_inv = self._inv[fr.denominator % self.p]
        return self._mul[num][den_inv]
