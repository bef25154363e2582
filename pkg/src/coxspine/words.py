"""Arithmetic in the universal Coxeter group W_n and its automorphisms.

W_n is the free product of n copies of Z/2 with involutive generators
x_1, ..., x_n.  A word is a tuple of 1-based generator indices with no two
consecutive entries equal; the empty tuple is the identity.  Automorphisms
are stored as a permutation plus one conjugator word per generator:
x_j -> w_j x_{perm(j)} w_j^{-1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

Word = tuple  # tuple of ints in 1..n


def reduce_word(letters: Iterable[int]) -> Word:
    """Freely reduce a letter sequence (each generator is an involution)."""
    out = []
    for a in letters:
        if out and out[-1] == a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def multiply(a: Word, b: Word) -> Word:
    return reduce_word(itertools.chain(a, b))


def invert(a: Word) -> Word:
    # every letter is its own inverse
    return tuple(reversed(a))


def conjugate(g: Word, w: Word) -> Word:
    """Reduced form of w g w^-1."""
    return reduce_word(itertools.chain(w, g, reversed(w)))


class ConjGen(NamedTuple):
    """A conjugate w x_core w^-1 of a generator, in canonical form.

    The conjugator never ends with the core letter: w x_i w^-1 and
    (w x_i) x_i (w x_i)^-1 are the same element, so the trailing core
    letter is stripped.
    """

    core: int
    conj: Word = ()

    def expand(self) -> Word:
        # reduced by construction: conj does not end with core
        return self.conj + (self.core,) + tuple(reversed(self.conj))

    def __str__(self):
        return ".".join("x%d" % i for i in self.expand())


def conj_gen(core: int, conj: Iterable[int] = ()) -> ConjGen:
    w = reduce_word(conj)
    while w and w[-1] == core:
        w = w[:-1]
    return ConjGen(core, w)


def parse_conj_gen(word: Word) -> ConjGen:
    """Parse a reduced word known to be conjugate to a generator."""
    if len(word) % 2 == 0 or word != tuple(reversed(word))[:]:
        raise ValueError("not an odd palindrome: %r" % (word,))
    half = len(word) // 2
    return conj_gen(word[half], word[:half])


def conjugate_cg(c: ConjGen, w: Word) -> ConjGen:
    """The conjugate w c w^-1 as a canonical ConjGen."""
    return conj_gen(c.core, multiply(w, c.conj))


@dataclass(frozen=True)
class Automorphism:
    """x_j -> conj[j-1] x_{perm[j-1]} conj[j-1]^-1.

    Each conjugator is reduced and does not end with the image core letter
    (same canonical choice as ConjGen).
    """

    n: int
    perm: tuple
    conj: tuple

    def image(self, j: int) -> Word:
        w = self.conj[j - 1]
        return w + (self.perm[j - 1],) + tuple(reversed(w))

    def image_cg(self, j: int) -> ConjGen:
        return ConjGen(self.perm[j - 1], self.conj[j - 1])

    def sort_key(self):
        return (self.perm, self.conj)


def make_automorphism(n: int, perm: Iterable[int], conj: Iterable[Word]) -> Automorphism:
    perm = tuple(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("not a permutation of 1..%d: %r" % (n, perm))
    canon = []
    for j, w in enumerate(conj, start=1):
        cg = conj_gen(perm[j - 1], w)
        canon.append(cg.conj)
    if len(canon) != n:
        raise ValueError("expected %d conjugators" % n)
    return Automorphism(n, perm, tuple(canon))


def identity(n: int) -> Automorphism:
    return Automorphism(n, tuple(range(1, n + 1)), ((),) * n)


def inner(n: int, w: Word) -> Automorphism:
    """The inner automorphism g -> w g w^-1."""
    return make_automorphism(n, range(1, n + 1), [w] * n)


def sigma(n: int, j: int, i: int) -> Automorphism:
    """Partial conjugation sending x_j to x_i x_j x_i, fixing the rest."""
    if i == j:
        raise ValueError("sigma requires i != j")
    conj = [() for _ in range(n)]
    conj[j - 1] = (i,)
    return make_automorphism(n, range(1, n + 1), conj)


def transposition(n: int, i: int, j: int) -> Automorphism:
    """The automorphism switching x_i and x_j, fixing the rest."""
    if i == j:
        raise ValueError("transposition requires i != j")
    perm = list(range(1, n + 1))
    perm[i - 1], perm[j - 1] = j, i
    return make_automorphism(n, perm, [()] * n)


def apply_word(f: Automorphism, w: Word) -> Word:
    return reduce_word(itertools.chain.from_iterable(f.image(a) for a in w))


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """(f o g)(x_j) = f(g(x_j))."""
    if f.n != g.n:
        raise ValueError("rank mismatch")
    perm = []
    conj = []
    for j in range(1, f.n + 1):
        pj = g.perm[j - 1]
        perm.append(f.perm[pj - 1])
        conj.append(multiply(apply_word(f, g.conj[j - 1]), f.conj[pj - 1]))
    return make_automorphism(f.n, perm, conj)


def whitehead_move(n: int, i: int, moved: Iterable[int]) -> Automorphism:
    """Conjugate x_j by x_i for every j in `moved` (i not in moved)."""
    conj = [() for _ in range(n)]
    for j in moved:
        if j == i:
            raise ValueError("twistor cannot be moved")
        conj[j - 1] = (i,)
    return make_automorphism(n, range(1, n + 1), conj)


def _basis_length(f: Automorphism) -> int:
    return sum(len(f.image(j)) for j in range(1, f.n + 1))


def inverse(f: Automorphism) -> Automorphism:
    """Invert by peak-reduction: left-compose Whitehead moves until only a
    permutation remains, then undo the permutation."""
    n = f.n
    cur = f
    moves = []
    total = _basis_length(cur)
    while total > n:
        best = None
        for i in range(1, n + 1):
            others = [j for j in range(1, n + 1) if j != i]
            for r in range(1, n):
                for sub in itertools.combinations(others, r):
                    m = whitehead_move(n, i, sub)
                    cand = compose(m, cur)
                    t = _basis_length(cand)
                    if t < total and (best is None or t < best[0]):
                        best = (t, m, cand)
        if best is None:
            raise RuntimeError("descent stalled; input is not an automorphism "
                               "in permutation-conjugator form")
        total, m, cur = best
        moves.append(m)
    # cur = E o f is a pure permutation p; f^-1 = p^-1 o E
    inv_perm = [0] * n
    for j in range(1, n + 1):
        inv_perm[cur.perm[j - 1] - 1] = j
    out = make_automorphism(n, inv_perm, [()] * n)
    for m in reversed(moves):
        out = compose(out, m)
    return out


def is_inner(f: Automorphism) -> Optional[Word]:
    """Return the reduced w with f = (g -> w g w^-1) if f is inner.

    Conjugator coordinates determine w only up to a trailing x_j, so each
    coordinate admits two candidates; w must lie in every candidate set.
    """
    if f.perm != tuple(range(1, f.n + 1)):
        return None
    candidates = None
    for j in range(1, f.n + 1):
        w = f.conj[j - 1]
        here = {w, multiply(w, (j,))}
        candidates = here if candidates is None else candidates & here
        if not candidates:
            return None
    return min(candidates, key=lambda w: (len(w), w))


def outer_normal_form(f: Automorphism) -> Automorphism:
    """Canonical representative of the outer class of f.

    Left-composes with an inner automorphism so the n-th conjugator is
    empty; the two such representatives (they differ by inner-by the n-th
    image core) are tie-broken by sort key.
    """
    w = f.conj[f.n - 1]
    base = compose(inner(f.n, invert(w)), f)
    alt = compose(inner(f.n, (base.perm[f.n - 1],)), base)
    return min(base, alt, key=Automorphism.sort_key)


def same_outer_class(f: Automorphism, g: Automorphism) -> bool:
    return outer_normal_form(f) == outer_normal_form(g)
