"""Brauer diagrams as morphisms of the Brauer category.

A diagram ``p -> q`` is a perfect matching on the points ``1..p`` (sources,
left to right along the bottom) and ``p+1..p+q`` (targets, left to right
along the top).  ``compose(D2, D1, delta)`` stacks ``D2`` on top of ``D1``
and turns every closed loop into a factor ``delta``.

A permutation ``pi`` of degree r is the diagram joining source ``i`` to
target ``pi(i)``.  The right action of ``pi`` on a diagram ``D: r -> 0`` is
``compose(D, perm_to_diagram(pi))``.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

from .exactalg import Rational, as_rational, rational_to_str
from .symgrp import (
    GroupAlgebraElement,
    Permutation,
    algebra_mul,
    simple_word,
    symmetrizer_C,
)


class ArityError(ValueError):
    pass


class DeltaMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class BrauerDiagram:
    p: int
    q: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = self.p + self.q
        if n % 2:
            raise ValueError(f"p + q = {n} is odd")
        seen = sorted(x for arc in self.arcs for x in arc)
        if seen != list(range(1, n + 1)):
            raise ValueError(f"arcs {self.arcs} are not a perfect matching of 1..{n}")
        if any(a >= b for a, b in self.arcs) or list(self.arcs) != sorted(self.arcs):
            raise ValueError(f"arcs {self.arcs} are not in canonical form")

    @classmethod
    def from_arcs(cls, p: int, q: int, arcs: Iterable[Iterable[int]]) -> "BrauerDiagram":
        canon = tuple(sorted(tuple(sorted(a)) for a in arcs))
        return cls(p, q, canon)

    @classmethod
    def _from_partner(cls, p: int, q: int, partner: list[int]) -> "BrauerDiagram":
        # partner is 1-based, partner[0] unused
        arcs = tuple((i, partner[i]) for i in range(1, p + q + 1) if i < partner[i])
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "q", q)
        object.__setattr__(obj, "arcs", arcs)
        return obj

    @cached_property
    def partner(self) -> tuple[int, ...]:
        """partner[i] is the point joined to i (index 0 unused)."""
        out = [0] * (self.p + self.q + 1)
        for a, b in self.arcs:
            out[a] = b
            out[b] = a
        return tuple(out)

    @property
    def n_points(self) -> int:
        return self.p + self.q

    def is_source(self, i: int) -> bool:
        return i <= self.p

    def horizontal_source_arcs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in self.arcs if b <= self.p]

    def horizontal_target_arcs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in self.arcs if a > self.p]

    def through_strands(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in self.arcs if a <= self.p < b]

    def to_json_obj(self) -> dict:
        return {"p": self.p, "q": self.q, "arcs": [list(a) for a in self.arcs]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "BrauerDiagram":
        return cls.from_arcs(int(obj["p"]), int(obj["q"]), obj["arcs"])

    def __repr__(self) -> str:
        return f"BrauerDiagram({self.p}->{self.q}, {[list(a) for a in self.arcs]})"


def _matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points)):
        rest = points[1:k] + points[k + 1:]
        for m in _matchings(rest):
            yield [(first, points[k])] + m


def enumerate_diagrams(p: int, q: int) -> list[BrauerDiagram]:
    """All (p+q-1)!! diagrams p -> q, in lexicographic order of their arc lists."""
    if (p + q) % 2:
        return []
    return [BrauerDiagram(p, q, tuple(m)) for m in _matchings(list(range(1, p + q + 1)))]


def diagram_index(p: int, q: int) -> dict[BrauerDiagram, int]:
    return {D: i for i, D in enumerate(enumerate_diagrams(p, q))}


def compose_diagrams(D2: BrauerDiagram, D1: BrauerDiagram) -> tuple[BrauerDiagram, int]:
    """Stack D2 (q -> t) on top of D1 (p -> q); return (diagram, number of loops)."""
    if D1.q != D2.p:
        raise ArityError(f"cannot compose {D2.p}->{D2.q} after {D1.p}->{D1.q}")
    p, q, t = D1.p, D1.q, D2.q
    P1 = D1.partner
    P2 = D2.partner
    n_out = p + t
    partner = [0] * (n_out + 1)
    used_middle = [False] * (q + 1)

    def walk_from_d1(x: int) -> int:
        # x is a point of D1; follow arcs until leaving the middle layer
        while True:
            y = P1[x]
            if y <= p:
                return y
            k = y - p  # middle point k
            used_middle[k] = True
            z = P2[k]
            if z > q:
                return p + (z - q)
            used_middle[z] = True
            x = p + z

    def walk_from_d2(x: int) -> int:
        while True:
            y = P2[x]
            if y > q:
                return p + (y - q)
            used_middle[y] = True
            z = P1[p + y]
            if z <= p:
                return z
            used_middle[z - p] = True
            x = z - p

    for i in range(1, p + 1):
        if not partner[i]:
            j = walk_from_d1(i)
            partner[i] = j
            partner[j] = i
    for j in range(q + 1, q + t + 1):
        out = p + (j - q)
        if not partner[out]:
            k = walk_from_d2(j)
            partner[out] = k
            partner[k] = out
    loops = 0
    for k in range(1, q + 1):
        if used_middle[k]:
            continue
        loops += 1
        x = k
        while True:
            used_middle[x] = True
            y = P2[x]
            used_middle[y] = True
            x = P1[p + y] - p
            if used_middle[x]:
                break
    return BrauerDiagram._from_partner(p, t, partner), loops


class HomElement:
    """A Q-linear combination of diagrams p -> q with loop parameter delta."""

    __slots__ = ("p", "q", "delta", "terms")

    def __init__(self, p: int, q: int, delta: int, terms: Mapping[BrauerDiagram, Rational] | None = None):
        self.p = p
        self.q = q
        self.delta = int(delta)
        clean = {}
        for D, c in (terms or {}).items():
            if (D.p, D.q) != (p, q):
                raise ArityError(f"diagram {D.p}->{D.q} in Hom({p}, {q})")
            if c:
                clean[D] = as_rational(c)
        self.terms = clean

    @classmethod
    def _trusted(cls, p, q, delta, terms) -> "HomElement":
        obj = cls.__new__(cls)
        obj.p, obj.q, obj.delta, obj.terms = p, q, delta, terms
        return obj

    @classmethod
    def from_diagram(cls, D: BrauerDiagram, delta: int, coeff: Rational = 1) -> "HomElement":
        return cls(D.p, D.q, delta, {D: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: "HomElement"):
        if (self.p, self.q) != (other.p, other.q):
            raise ArityError("hom-spaces differ")
        if self.delta != other.delta:
            raise DeltaMismatch(f"delta {self.delta} vs {other.delta}")

    def __add__(self, other: "HomElement") -> "HomElement":
        self._check(other)
        out = dict(self.terms)
        for D, c in other.terms.items():
            v = out.get(D, 0) + c
            if v:
                out[D] = as_rational(v)
            else:
                out.pop(D, None)
        return HomElement._trusted(self.p, self.q, self.delta, out)

    def scale(self, c: Rational) -> "HomElement":
        c = as_rational(c)
        if not c:
            return HomElement(self.p, self.q, self.delta)
        return HomElement._trusted(self.p, self.q, self.delta, {D: as_rational(c * v) for D, v in self.terms.items()})

    def __neg__(self) -> "HomElement":
        return self.scale(-1)

    def __sub__(self, other: "HomElement") -> "HomElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomElement):
            return NotImplemented
        return (self.p, self.q, self.delta) == (other.p, other.q, other.delta) and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.q, self.delta, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"HomElement({self.p}->{self.q}, delta={self.delta}, {len(self.terms)} terms)"

    def to_vector(self, index: Mapping[BrauerDiagram, int] | None = None) -> dict[int, Rational]:
        if index is None:
            index = diagram_index(self.p, self.q)
        return {index[D]: c for D, c in self.terms.items()}

    @classmethod
    def from_vector(cls, p: int, q: int, delta: int, vec, diagrams: list[BrauerDiagram] | None = None) -> "HomElement":
        if diagrams is None:
            diagrams = enumerate_diagrams(p, q)
        items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
        return cls(p, q, delta, {diagrams[i]: c for i, c in items if c})

    def to_json_obj(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "delta": self.delta,
            "terms": [{"arcs": [list(a) for a in D.arcs], "coeff": rational_to_str(c)} for D, c in sorted(self.terms.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "HomElement":
        p, q = int(obj["p"]), int(obj["q"])
        terms: dict[BrauerDiagram, Rational] = {}
        for t in obj["terms"]:
            D = BrauerDiagram.from_arcs(p, q, t["arcs"])
            terms[D] = terms.get(D, 0) + as_rational(t["coeff"])
        return cls(p, q, int(obj["delta"]), terms)


def _as_hom(x, delta: int) -> HomElement:
    if isinstance(x, HomElement):
        if x.delta != delta:
            raise DeltaMismatch(f"delta {x.delta} vs {delta}")
        return x
    return HomElement.from_diagram(x, delta)


def compose(D2, D1, delta: int) -> HomElement:
    """D2 after D1, bilinear in diagrams and HomElements; loops become delta."""
    a = _as_hom(D2, delta)
    b = _as_hom(D1, delta)
    if b.q != a.p:
        raise ArityError(f"cannot compose {a.p}->{a.q} after {b.p}->{b.q}")
    out: dict[BrauerDiagram, Rational] = {}
    for X, c in a.terms.items():
        for Y, e in b.terms.items():
            D, loops = compose_diagrams(X, Y)
            out[D] = out.get(D, 0) + c * e * delta**loops
    return HomElement._trusted(b.p, a.q, delta, {D: as_rational(v) for D, v in out.items() if v})


def tensor_diagrams(A: BrauerDiagram, B: BrauerDiagram) -> BrauerDiagram:
    """Place B to the right of A."""
    def relabel_a(x):
        return x if x <= A.p else x + B.p

    def relabel_b(x):
        return x + A.p if x <= B.p else x + A.p + A.q

    arcs = [(relabel_a(a), relabel_a(b)) for a, b in A.arcs] + [(relabel_b(a), relabel_b(b)) for a, b in B.arcs]
    return BrauerDiagram.from_arcs(A.p + B.p, A.q + B.q, arcs)


def tensor(x: HomElement, y: HomElement) -> HomElement:
    if x.delta != y.delta:
        raise DeltaMismatch("delta mismatch")
    out: dict[BrauerDiagram, Rational] = {}
    for A, c in x.terms.items():
        for B, e in y.terms.items():
            D = tensor_diagrams(A, B)
            out[D] = out.get(D, 0) + c * e
    return HomElement(x.p + y.p, x.q + y.q, x.delta, out)


def identity_diagram(r: int) -> BrauerDiagram:
    return BrauerDiagram(r, r, tuple((i, r + i) for i in range(1, r + 1)))


def d0(d: int) -> BrauerDiagram:
    """The 2d -> 0 diagram with arcs {2k-1, 2k}."""
    return BrauerDiagram(2 * d, 0, tuple((2 * k - 1, 2 * k) for k in range(1, d + 1)))


def perm_to_diagram(pi: Permutation) -> BrauerDiagram:
    r = pi.degree
    return BrauerDiagram.from_arcs(r, r, [(i, r + pi(i)) for i in range(1, r + 1)])


def diagram_to_perm(D: BrauerDiagram) -> Permutation:
    if D.p != D.q or D.horizontal_source_arcs():
        raise ValueError("diagram is not a permutation")
    images = [0] * D.p
    for a, b in D.arcs:
        images[a - 1] = b - D.p
    return Permutation(tuple(images))


def right_act(D: BrauerDiagram, pi: Permutation) -> BrauerDiagram:
    """D * pi for D: r -> 0, i.e. compose(D, perm_to_diagram(pi)) without loops.

    Points i, j are joined in the result exactly when pi(i), pi(j) are joined in D.
    """
    if D.q != 0 or D.p != pi.degree:
        raise ArityError("right action needs D: r -> 0 and pi in Sym_r")
    inv = [0] * (D.p + 1)
    for i, x in enumerate(pi.images, 1):
        inv[x] = i
    partner = [0] * (D.p + 1)
    for a, b in D.arcs:
        ia, ib = inv[a], inv[b]
        partner[ia] = ib
        partner[ib] = ia
    return BrauerDiagram._from_partner(D.p, 0, partner)


def act_on_group_algebra(D: BrauerDiagram, x: GroupAlgebraElement, delta: int) -> HomElement:
    """D * x for D: 2d -> 0 and x in Q Sym_2d, as an element of B_{2d}^0."""
    out: dict[BrauerDiagram, Rational] = {}
    for pi, c in x.terms.items():
        E = right_act(D, pi)
        out[E] = out.get(E, 0) + c
    return HomElement._trusted(D.p, 0, delta, {E: as_rational(v) for E, v in out.items() if v})


def act_hom_on_perm(x: HomElement, pi: Permutation) -> HomElement:
    return HomElement._trusted(x.p, x.q, x.delta, {right_act(D, pi): c for D, c in x.terms.items()})


def canonical_perm(D: BrauerDiagram) -> Permutation:
    """The canonical pi_D with D = D0 * pi_D: arcs a_k < b_k sorted give pi(a_k) = 2k-1, pi(b_k) = 2k."""
    if D.q != 0:
        raise ArityError("canonical_perm needs a diagram 2d -> 0")
    images = [0] * D.p
    for k, (a, b) in enumerate(D.arcs, 1):
        images[a - 1] = 2 * k - 1
        images[b - 1] = 2 * k
    return Permutation(tuple(images))


def chi(D: BrauerDiagram) -> GroupAlgebraElement:
    """e(C) * pi_D in Q Sym_2d."""
    pi = canonical_perm(D)
    eC = symmetrizer_C(D.p // 2)
    return algebra_mul(eC, GroupAlgebraElement.from_perm(pi))


def bend_diagram(D: BrauerDiagram) -> BrauerDiagram:
    """Bend the leftmost source point up to become the new leftmost target point."""
    if D.p == 0:
        raise ArityError("no source point to bend")
    p = D.p

    def relabel(x: int) -> int:
        if x == 1:
            return p
        if x <= p:
            return x - 1
        return x

    return BrauerDiagram.from_arcs(p - 1, D.q + 1, [(relabel(a), relabel(b)) for a, b in D.arcs])


def bend_U(x, times: int = 1):
    """The bending isomorphism B_p^q -> B_{p-1}^{q+1}, applied ``times`` times."""
    for _ in range(times):
        if isinstance(x, HomElement):
            x = HomElement._trusted(x.p - 1, x.q + 1, x.delta, {bend_diagram(D): c for D, c in x.terms.items()})
            if x.p < 0:
                raise ArityError("no source point to bend")
        else:
            x = bend_diagram(x)
    return x


# generator words -------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorWord:
    """A word in the Brauer generators; letters are ("s", i) or ("e", i).

    The word [x1, x2, ..., xk] denotes the composite x1 o x2 o ... o xk, so
    the rightmost letter acts first.
    """

    degree: int
    letters: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for kind, i in self.letters:
            if kind not in ("s", "e") or not 1 <= i <= self.degree - 1:
                raise ValueError(f"bad letter {kind}_{i} for degree {self.degree}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"{k}{i}" for k, i in self.letters) or "1"


def generator_diagram(kind: str, i: int, d: int) -> BrauerDiagram:
    if kind == "s":
        return perm_to_diagram(Permutation.simple(d, i))
    if kind == "e":
        arcs = [(i, i + 1), (d + i, d + i + 1)] + [(j, d + j) for j in range(1, d + 1) if j not in (i, i + 1)]
        return BrauerDiagram.from_arcs(d, d, arcs)
    raise ValueError(f"unknown generator {kind}")


def evaluate_word(word: GeneratorWord, delta: int) -> HomElement:
    result = HomElement.from_diagram(identity_diagram(word.degree), delta)
    for kind, i in word.letters:
        result = compose(result, generator_diagram(kind, i, word.degree), delta)
    return result


def factorize(D: BrauerDiagram, layout: str = "left") -> GeneratorWord:
    """A word sigma . (e e ... e) . tau evaluating to D with no loops.

    tau (applied first) moves the j-th bottom horizontal arc to the j-th
    adjacent pair of slots and the through strands, in source order, to the
    remaining slots; sigma carries those slots to the top arcs and strand
    targets.  With ``layout="left"`` the pairs are (1,2), (3,4), ... and the
    strands follow; with ``layout="right"`` the strands come first and the
    pairs fill the last 2k slots.  Both give valid, generally different, words.
    """
    if D.p != D.q:
        raise ArityError("factorize needs a diagram d -> d")
    if layout not in ("left", "right"):
        raise ValueError(f"unknown layout {layout!r}")
    d = D.p
    bottom = D.horizontal_source_arcs()
    top = D.horizontal_target_arcs()
    strands = D.through_strands()
    k = len(bottom)
    pair_start = 0 if layout == "left" else d - 2 * k
    strand_start = 2 * k if layout == "left" else 0
    tau = [0] * (d + 1)
    sigma = [0] * (d + 1)
    for j, (a, b) in enumerate(bottom, 1):
        tau[a], tau[b] = pair_start + 2 * j - 1, pair_start + 2 * j
    for j, (a, b) in enumerate(top, 1):
        sigma[pair_start + 2 * j - 1], sigma[pair_start + 2 * j] = a - d, b - d
    for t, (a, b) in enumerate(strands, 1):
        tau[a] = strand_start + t
        sigma[strand_start + t] = b - d
    sigma_p = Permutation(tuple(sigma[1:]))
    tau_p = Permutation(tuple(tau[1:]))
    letters = [("s", i) for i in simple_word(sigma_p)]
    letters += [("e", pair_start + 2 * j - 1) for j in range(1, k + 1)]
    letters += [("s", i) for i in simple_word(tau_p)]
    return GeneratorWord(d, tuple(letters))
