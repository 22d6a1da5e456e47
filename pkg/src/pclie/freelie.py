"""Free Lie algebra in the Lyndon basis, realized inside the free associative algebra.

Letters are generator indices ordered so that a *larger* index is a *smaller*
letter (``a_n < ... < a_1``).  With this order the degree-2 basis monomial on
``{i, j}``, ``i > j``, is ``[a_i, a_j]``, which matches the first-letter-larger
convention of the metabelian basis.

Lie elements are converted to Lyndon coordinates by peeling: the smallest
associative word in a standard bracketing ``P_w`` is ``w`` itself with
coefficient 1.  Coordinates are integers.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from math import comb

from .errors import InvariantViolation
from .terms import Word


def letter_key(w: Word) -> tuple[int, ...]:
    """Comparison key realizing the letter order ``a_n < ... < a_1``."""
    return tuple(-i for i in w)


def is_lyndon(w: Word) -> bool:
    k = letter_key(w)
    return all(k < k[i:] + k[:i] for i in range(1, len(k)))


def lyndon_words(n: int, max_len: int) -> list[Word]:
    """All Lyndon words of length <= max_len on n letters (Duval's generator)."""
    out = []
    # symbol s in 0..n-1 stands for letter n - s, so symbol order = letter order
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(n - s for s in w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    return out


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """``w = uv`` with ``v`` the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no proper factorization")


def format_lyndon(w: Word) -> str:
    """Standard bracketing, printed with left-normed sugar."""
    return _fmt(w)


def _fmt(w: Word) -> str:
    if len(w) == 1:
        return f"a{w[0]}"
    items = []
    node = w
    while len(node) > 1:
        u, v = standard_factorization(node)
        items.append(_fmt(v))
        node = u
    items.append(_fmt(node))
    return "[" + ",".join(reversed(items)) + "]"


@lru_cache(maxsize=None)
def expansion(w: Word) -> dict:
    """Associative polynomial of the standard bracketing ``P_w``."""
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    return commutator(expansion(u), expansion(v))


def commutator(p: dict, q: dict) -> dict:
    out: dict = defaultdict(int)
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] += x * y
            out[b + a] -= x * y
    return {k: c for k, c in out.items() if c}


def lyndon_coordinates(poly: dict) -> dict:
    """Coordinates of an associative Lie polynomial in the Lyndon basis."""
    poly = dict(poly)
    out = {}
    while poly:
        w = min(poly, key=letter_key)
        c = poly[w]
        if not is_lyndon(w):
            raise InvariantViolation(f"leading word {w} of a Lie element is not Lyndon")
        out[w] = c
        for u, x in expansion(w).items():
            s = poly.get(u, 0) - c * x
            if s:
                poly[u] = s
            else:
                del poly[u]
    return out


@lru_cache(maxsize=None)
def bracket_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    """``[P_u, P_v]`` in Lyndon coordinates, as sorted (word, coeff) pairs."""
    coords = lyndon_coordinates(commutator(expansion(u), expansion(v)))
    return tuple(sorted(coords.items()))


def _mobius(k: int) -> int:
    result, d = 1, 2
    while d * d <= k:
        if k % d == 0:
            k //= d
            if k % d == 0:
                return 0
            result = -result
        d += 1
    return -result if k > 1 else result


def witt_dimension(n: int, d: int) -> int:
    """Dimension of the degree-d part of the free Lie algebra on n generators."""
    total = sum(_mobius(d // e) * n**e for e in range(1, d + 1) if d % e == 0)
    return total // d


def free_dimension_upto(n: int, m: int) -> int:
    return sum(witt_dimension(n, d) for d in range(1, m + 1))


def multidegrees(n: int, d: int):
    """All length-n nonnegative vectors summing to d, lexicographically."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in multidegrees(n - 1, d - first):
            yield (first,) + rest


def count_multidegrees(n: int, d: int) -> int:
    return comb(d + n - 1, n - 1)
