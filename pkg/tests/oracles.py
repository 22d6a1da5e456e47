"""Independent reference computations used by the tests.

Nothing here imports the engines' linear algebra or rewriting code.

The free metabelian Lie algebra is modelled by its faithful representation
``a_i -> (t_i, e_i)`` in ``V + W``, where ``V`` is spanned by the variables
``t_1..t_n`` (abelian) and ``W`` is the free module over ``K[t_1..t_n]`` with
basis ``e_i``.  The bracket is ``[(v, w), (v', w')] = (0, v.w' - v'.w)``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from pclie.terms import Bracket, Gen, Sum


def _mul_linear(v: dict, w: dict) -> dict:
    out: dict = {}
    for k, c in v.items():
        for (i, exps), x in w.items():
            e = list(exps)
            e[k - 1] += 1
            key = (i, tuple(e))
            out[key] = out.get(key, 0) + c * x
    return {k: x for k, x in out.items() if x}


class Rep:
    """Element of the representation: linear part and module part."""

    def __init__(self, lin: dict, mod: dict):
        self.lin = {k: x for k, x in lin.items() if x}
        self.mod = {k: x for k, x in mod.items() if x}

    @classmethod
    def gen(cls, i: int, n: int) -> Rep:
        return cls({i: 1}, {(i, (0,) * n): 1})

    def bracket(self, other: Rep) -> Rep:
        a = _mul_linear(self.lin, other.mod)
        b = _mul_linear(other.lin, self.mod)
        for k, x in b.items():
            a[k] = a.get(k, 0) - x
        return Rep({}, a)

    def scaled(self, c) -> Rep:
        return Rep({k: c * x for k, x in self.lin.items()}, {k: c * x for k, x in self.mod.items()})

    def plus(self, other: Rep) -> Rep:
        lin, mod = dict(self.lin), dict(self.mod)
        for k, x in other.lin.items():
            lin[k] = lin.get(k, 0) + x
        for k, x in other.mod.items():
            mod[k] = mod.get(k, 0) + x
        return Rep(lin, mod)

    def vector(self) -> dict:
        v = {("v", k): x for k, x in self.lin.items()}
        v.update({("w",) + k: x for k, x in self.mod.items()})
        return v

    def is_zero(self) -> bool:
        return not self.lin and not self.mod


def rep_of_term(t, n: int) -> Rep:
    if isinstance(t, Gen):
        return Rep.gen(t.index, n)
    if isinstance(t, Bracket):
        return rep_of_term(t.left, n).bracket(rep_of_term(t.right, n))
    if isinstance(t, Sum):
        out = Rep({}, {})
        for c, s in t.terms:
            out = out.plus(rep_of_term(s, n).scaled(c))
        return out
    raise TypeError(t)


def rep_of_word(word, n: int) -> Rep:
    r = Rep.gen(word[0], n)
    for i in word[1:]:
        r = r.bracket(Rep.gen(i, n))
    return r


def dense_rank(vectors: list[dict]) -> int:
    """Plain Gaussian elimination over Fraction on dict vectors."""
    cols = sorted({k for v in vectors for k in v}, key=repr)
    rows = [[Fraction(v.get(c, 0)) for c in cols] for v in vectors]
    rank = 0
    for c in range(len(cols)):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def letters_of(d) -> list[int]:
    return [i for i, k in enumerate(d, 1) for _ in range(k)]


def free_metabelian_dim(d) -> int:
    """Rank of all left-normed words of multidegree d in the representation."""
    n = len(d)
    words = set(permutations(letters_of(d)))
    return dense_rank([rep_of_word(w, n).vector() for w in words])


def metabelian_quotient_dim(edges, d) -> int:
    """dim of the multidegree-d part of M(A;G), from the representation."""
    n = len(d)
    letters = letters_of(d)
    words = set(permutations(letters))
    free = [rep_of_word(w, n).vector() for w in words]
    rels = []
    if len(letters) >= 2:
        for i, j in edges:
            rest = list(letters)
            if i in rest:
                rest.remove(i)
                if j in rest:
                    rest.remove(j)
                    for tail in set(permutations(rest)):
                        rels.append(rep_of_word((i, j) + tail, n).vector())
    return dense_rank(free) - dense_rank(rels)


def mobius(k: int) -> int:
    mu, p = 1, 2
    while k > 1:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            mu = -mu
        p += 1
    return mu


def necklace(n: int, d: int) -> int:
    return sum(mobius(d // e) * n**e for e in range(1, d + 1) if d % e == 0) // d
