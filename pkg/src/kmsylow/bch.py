"""Exact Baker-Campbell-Hausdorff series, truncated by total weight.

z = log(exp x exp y) is computed in the free associative algebra on two
letters over the rationals, words above the weight cutoff dropped, then
rewritten into the Lyndon bracket basis.  All coefficients are exact
Fractions; a denominator of a weight-w term has prime factors <= w, so the
series reduces mod p whenever p exceeds the truncation weight.
"""

from fractions import Fraction
from functools import lru_cache

from .lie import lyndon_words, to_lyndon_coordinates
from .fields import QQ

X = (0,)
Y = (1,)


def _mul_truncated(f, g, max_len):
    out = {}
    for wf, cf in f.items():
        for wg, cg in g.items():
            if len(wf) + len(wg) > max_len:
                continue
            w = wf + wg
            out[w] = out.get(w, Fraction(0)) + cf * cg
    return {w: c for w, c in out.items() if c}


def _exp_letter(letter, max_len):
    out = {(): Fraction(1)}
    fact = 1
    for k in range(1, max_len + 1):
        fact *= k
        out[letter * k] = Fraction(1, fact)
    return out


def _log_one_plus(u, max_len):
    out = {}
    power = {(): Fraction(1)}
    for k in range(1, max_len + 1):
        power = _mul_truncated(power, u, max_len)
        sign = Fraction((-1) ** (k + 1), k)
        for w, c in power.items():
            out[w] = out.get(w, Fraction(0)) + sign * c
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def bch_lyndon_terms(max_weight):
    """The series as ((lyndon word over {0,1}, Fraction), ...) up to max_weight.

    Each word stands for its standard bracketing with x = letter 0 and
    y = letter 1; the weight-1 terms are x and y themselves.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    prod = _mul_truncated(_exp_letter(X, max_weight), _exp_letter(Y, max_weight), max_weight)
    u = {w: c for w, c in prod.items() if w}
    z = _log_one_plus(u, max_weight)
    terms = []
    for length in range(1, max_weight + 1):
        words = sorted(lyndon_words(2, length))
        index = {w: i for i, w in enumerate(words)}
        component = {w: c for w, c in z.items() if len(w) == length}
        vec = to_lyndon_coordinates(component, words, index, QQ)
        for w, c in zip(words, vec):
            if c:
                terms.append((w, c))
    return tuple(terms)
