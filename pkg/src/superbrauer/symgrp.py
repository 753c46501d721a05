"""Permutations, the rational group algebra of Sym_r, and Young-symmetrizer ideals.

Permutations act on ``{1, ..., r}`` and compose right-to-left:
``(p * q)(i) == p(q(i))``.  A permutation serialises as its one-line image
list, so ``[2, 1, 3]`` sends 1 to 2, 2 to 1 and fixes 3.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property
from math import factorial, prod

from .exactalg import Rational, as_rational


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, r: int) -> "Permutation":
        return cls(tuple(range(1, r + 1)))

    @classmethod
    def from_cycles(cls, r: int, *cycles: Iterable[int]) -> "Permutation":
        images = list(range(1, r + 1))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def transposition(cls, r: int, i: int, j: int) -> "Permutation":
        return cls.from_cycles(r, (i, j))

    @classmethod
    def simple(cls, r: int, i: int) -> "Permutation":
        """The simple reflection s_i = (i, i+1)."""
        if not 1 <= i < r:
            raise ValueError(f"s_{i} is not a generator of Sym_{r}")
        return cls.transposition(r, i, i + 1)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose_perm(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images, 1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, 1))

    @cached_property
    def sign(self) -> int:
        return sign(self)

    def inversions(self) -> list[tuple[int, int]]:
        """Pairs (i, j), i < j, with p(i) > p(j)."""
        im = self.images
        r = len(im)
        return [(i + 1, j + 1) for i in range(r) for j in range(i + 1, r) if im[i] > im[j]]

    def embed(self, r: int) -> "Permutation":
        """View as an element of Sym_r fixing the symbols above the current degree."""
        if r < self.degree:
            raise DegreeMismatch(f"cannot embed Sym_{self.degree} into Sym_{r}")
        return Permutation(self.images + tuple(range(self.degree + 1, r + 1)))

    def to_json(self) -> list[int]:
        return list(self.images)

    @classmethod
    def from_json(cls, obj: Iterable[int]) -> "Permutation":
        return cls(tuple(int(x) for x in obj))

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def compose_perm(p: Permutation, q: Permutation) -> Permutation:
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    pi = p.images
    return _fast_perm(tuple(pi[x - 1] for x in q.images))


def _fast_perm(images: tuple[int, ...]) -> Permutation:
    # skips validation for images produced by composing valid permutations
    obj = object.__new__(Permutation)
    object.__setattr__(obj, "images", images)
    return obj


def sign(p: Permutation) -> int:
    seen = [False] * p.degree
    parity = 0
    for start in range(p.degree):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p.images[i] - 1
            length += 1
        parity += length - 1
    return -1 if parity % 2 else 1


def symmetric_group(r: int) -> list[Permutation]:
    """All of Sym_r in lexicographic one-line order."""
    return [_fast_perm(t) for t in itertools.permutations(range(1, r + 1))]


def symmetric_group_on(symbols: Iterable[int], r: int) -> list[Permutation]:
    """Sym(symbols) as a subgroup of Sym_r fixing everything else."""
    symbols = sorted(symbols)
    out = []
    for arrangement in itertools.permutations(symbols):
        images = list(range(1, r + 1))
        for s, t in zip(symbols, arrangement):
            images[s - 1] = t
        out.append(_fast_perm(tuple(images)))
    return out


def product_group(factors: list[list[Permutation]]) -> list[Permutation]:
    """All products of one element from each factor (factors must commute)."""
    out = factors[0]
    for f in factors[1:]:
        out = [a * b for a in out for b in f]
    return out


def simple_word(p: Permutation) -> list[int]:
    """Indices i_1..i_k with s_{i_1} * ... * s_{i_k} == p (a reduced word)."""
    images = list(p.images)
    word: list[int] = []
    # peel right descents: p = (p * s_i) * s_i with p(i) > p(i+1)
    while True:
        for i in range(len(images) - 1):
            if images[i] > images[i + 1]:
                images[i], images[i + 1] = images[i + 1], images[i]
                word.append(i + 1)
                break
        else:
            break
    word.reverse()
    return word


# group algebra -----------------------------------------------------------------


class GroupAlgebraElement:
    """Finite formal Q-linear combination of permutations of a fixed degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[Permutation, Rational] | None = None):
        self.degree = degree
        clean = {}
        for p, c in (terms or {}).items():
            if p.degree != degree:
                raise DegreeMismatch(f"term of degree {p.degree} in element of degree {degree}")
            if c:
                clean[p] = as_rational(c)
        self.terms = clean

    @classmethod
    def _trusted(cls, degree: int, terms: dict) -> "GroupAlgebraElement":
        obj = cls.__new__(cls)
        obj.degree = degree
        obj.terms = terms
        return obj

    @classmethod
    def from_perm(cls, p: Permutation, coeff: Rational = 1) -> "GroupAlgebraElement":
        return cls(p.degree, {p: coeff})

    @classmethod
    def one(cls, r: int) -> "GroupAlgebraElement":
        return cls.from_perm(Permutation.identity(r))

    @classmethod
    def zero(cls, r: int) -> "GroupAlgebraElement":
        return cls(r)

    def coefficient(self, p: Permutation) -> Rational:
        return self.terms.get(p, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: "GroupAlgebraElement"):
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            v = out.get(p, 0) + c
            if v:
                out[p] = as_rational(v)
            else:
                out.pop(p, None)
        return GroupAlgebraElement._trusted(self.degree, out)

    def __neg__(self) -> "GroupAlgebraElement":
        return self.scale(-1)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def scale(self, c: Rational) -> "GroupAlgebraElement":
        c = as_rational(c)
        if not c:
            return GroupAlgebraElement(self.degree)
        return GroupAlgebraElement._trusted(self.degree, {p: as_rational(c * v) for p, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Permutation):
            other = GroupAlgebraElement.from_perm(other)
        if isinstance(other, GroupAlgebraElement):
            return algebra_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Permutation):
            return algebra_mul(GroupAlgebraElement.from_perm(other), self)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        shown = ", ".join(f"{c}*{list(p.images)}" for p, c in sorted(self.terms.items())[:6])
        more = "" if len(self.terms) <= 6 else f", ... ({len(self.terms)} terms)"
        return f"GroupAlgebraElement({self.degree}: {shown}{more})"

    def anti_involution(self) -> "GroupAlgebraElement":
        """Linear extension of p -> p^{-1}."""
        return GroupAlgebraElement._trusted(self.degree, {p.inverse(): c for p, c in self.terms.items()})

    def to_vector(self, index: Mapping[Permutation, int]) -> dict[int, Rational]:
        return {index[p]: c for p, c in self.terms.items()}


def algebra_mul(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    a._check(b)
    out: dict[Permutation, Rational] = {}
    for p, c in a.terms.items():
        pi = p.images
        for q, d in b.terms.items():
            key = _fast_perm(tuple(pi[x - 1] for x in q.images))
            out[key] = out.get(key, 0) + c * d
    return GroupAlgebraElement._trusted(a.degree, {p: as_rational(v) for p, v in out.items() if v})


def alpha_plus(H: Iterable[Permutation], r: int | None = None) -> GroupAlgebraElement:
    H = list(H)
    degree = r if r is not None else H[0].degree
    return GroupAlgebraElement(degree, {h: 1 for h in H})


def alpha_minus(H: Iterable[Permutation], r: int | None = None) -> GroupAlgebraElement:
    H = list(H)
    degree = r if r is not None else H[0].degree
    return GroupAlgebraElement(degree, {h: h.sign for h in H})


def rectangle_tableau(rows: int, cols: int) -> list[list[int]]:
    """The row-reading standard tableau of a rows x cols rectangle."""
    return [[i * cols + j + 1 for j in range(cols)] for i in range(rows)]


def young_symmetrizer(m: int, ell: int, r: int) -> GroupAlgebraElement:
    """e(m, ell) = alpha^+(R) alpha^-(C) for the (m+1) x (ell+1) rectangle, inside Sym_r.

    Unnormalised: it has integer coefficients and squares to
    ``(N!/f) * e`` where N is the number of boxes and f the number of
    standard tableaux of the rectangle.
    """
    boxes = (m + 1) * (ell + 1)
    if r < boxes:
        raise ValueError(f"Sym_{r} is too small for a {m + 1}x{ell + 1} rectangle")
    tab = rectangle_tableau(m + 1, ell + 1)
    R = product_group([symmetric_group_on(row, r) for row in tab])
    C = product_group([symmetric_group_on(col, r) for col in zip(*tab)])
    return algebra_mul(alpha_plus(R, r), alpha_minus(C, r))


def hyperoctahedral(d: int) -> list[Permutation]:
    """The centraliser C of (12)(34)...(2d-1,2d) in Sym_{2d}, sorted."""
    out = []
    for blocks in itertools.permutations(range(d)):
        for flips in itertools.product((0, 1), repeat=d):
            images = [0] * (2 * d)
            for k, (b, f) in enumerate(zip(blocks, flips)):
                lo, hi = 2 * b + 1, 2 * b + 2
                if f:
                    lo, hi = hi, lo
                images[2 * k] = lo
                images[2 * k + 1] = hi
            out.append(Permutation(tuple(images)))
    return sorted(out)


def hyperoctahedral_generators(d: int) -> list[Permutation]:
    """(12) together with (2i-1, 2i+1)(2i, 2i+2) for i = 1..d-1."""
    gens = [Permutation.transposition(2 * d, 1, 2)]
    for i in range(1, d):
        gens.append(Permutation.from_cycles(2 * d, (2 * i - 1, 2 * i + 1), (2 * i, 2 * i + 2)))
    return gens


def symmetrizer_C(d: int) -> GroupAlgebraElement:
    C = hyperoctahedral(d)
    w = Fraction(1, len(C))
    return GroupAlgebraElement(2 * d, {s: w for s in C})


# partitions ----------------------------------------------------------------------


def is_partition(parts) -> bool:
    return all(p > 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


@cache
def partitions(n: int, max_part: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def contains_rect(mu, rows: int, cols: int) -> bool:
    if rows <= 0 or cols <= 0:
        return True
    return len(mu) >= rows and mu[rows - 1] >= cols


def conjugate(mu) -> tuple[int, ...]:
    return tuple(sum(1 for p in mu if p > j) for j in range(mu[0])) if mu else ()


def num_standard_tableaux(mu) -> int:
    """f^mu by the hook length formula."""
    mu = tuple(mu)
    if not is_partition(mu):
        raise ValueError(f"not a partition: {mu}")
    conj = conjugate(mu)
    hooks = prod((mu[i] - j - 1) + (conj[j] - i - 1) + 1 for i in range(len(mu)) for j in range(mu[i]))
    return factorial(sum(mu)) // hooks


def ideal_partitions(m: int, n: int, d: int) -> list[tuple[int, ...]]:
    return [mu for mu in partitions(2 * d) if contains_rect(mu, m + 1, 2 * n + 1)]


def ideal_dimension(m: int, n: int, d: int) -> int:
    """dim I(m, n) in Q Sym_{2d}: sum of (f^mu)^2 over mu containing (m+1) x (2n+1)."""
    return sum(num_standard_tableaux(mu) ** 2 for mu in ideal_partitions(m, n, d))


def ideal_generator(m: int, n: int, d: int) -> GroupAlgebraElement:
    """The rectangle symmetrizer e(m, 2n) embedded in Sym_{2d}."""
    return young_symmetrizer(m, 2 * n, 2 * d)


def ideal_spanning_stream(m: int, n: int, d: int, seed: int = 0, exhaustive: bool = False) -> Iterator[GroupAlgebraElement]:
    """Yield elements p * e(m, 2n) * q of the ideal I(m, n).

    The first element is e(m, 2n) itself.  Random pairs (p, q) come from a
    ``random.Random(seed)`` generator, so the stream is reproducible; with
    ``exhaustive=True`` all pairs are enumerated in lexicographic order
    instead.  Nothing is yielded when 2d < (m+1)(2n+1).
    """
    r = 2 * d
    if r < (m + 1) * (2 * n + 1):
        return
    e = ideal_generator(m, n, d)
    if exhaustive:
        group = symmetric_group(r)
        for p in group:
            left = algebra_mul(GroupAlgebraElement.from_perm(p), e)
            for q in group:
                yield algebra_mul(left, GroupAlgebraElement.from_perm(q))
        return
    yield e
    rng = random.Random(seed)
    symbols = list(range(1, r + 1))
    while True:
        p = Permutation(tuple(rng.sample(symbols, r)))
        q = Permutation(tuple(rng.sample(symbols, r)))
        yield algebra_mul(algebra_mul(GroupAlgebraElement.from_perm(p), e), GroupAlgebraElement.from_perm(q))


def two_sided_closure(generators: Iterable[GroupAlgebraElement], r: int, tracker) -> int:
    """Grow ``tracker`` (indexed by lexicographic rank in Sym_r) to the two-sided ideal.

    Repeatedly multiplies new span vectors by simple reflections on both sides;
    returns the final rank.  ``tracker`` needs ``span_add`` and ``rank``.
    """
    group = symmetric_group(r)
    index = {p: i for i, p in enumerate(group)}
    simples = [GroupAlgebraElement.from_perm(Permutation.simple(r, i)) for i in range(1, r)]
    queue = []
    for g in generators:
        if tracker.span_add(g.to_vector(index)):
            queue.append(g)
    while queue:
        x = queue.pop()
        for s in simples:
            for y in (algebra_mul(s, x), algebra_mul(x, s)):
                if tracker.span_add(y.to_vector(index)):
                    queue.append(y)
    return tracker.rank
