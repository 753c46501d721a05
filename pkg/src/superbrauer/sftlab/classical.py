"""Classical relation families (purely even or purely odd V) and the lowest kernel degree."""

from __future__ import annotations

import random
from itertools import combinations

from ..brauercat import BrauerDiagram, HomElement, act_on_group_algebra, bend_U, d0, enumerate_diagrams, perm_to_diagram, right_act
from ..exactalg import SparseRationalMatrix, nullspace_basis, rank
from ..symgrp import (
    GroupAlgebraElement,
    Permutation,
    algebra_mul,
    alpha_minus,
    symmetric_group,
    symmetric_group_on,
    young_symmetrizer,
)
from .pipelines import kappa_matrix, kernel_kappa
from .reports import ResourceLimitError, Timer, VerificationReport


def _matchings(points: list[int]):
    if not points:
        yield []
        return
    a = points[0]
    for k in range(1, len(points)):
        rest = points[1:k] + points[k + 1:]
        for m in _matchings(rest):
            yield [(a, points[k])] + m


def orth_relations(m: int, d: int) -> list[dict[int, int]]:
    """Relation vectors sum_sigma eps(sigma) [sigma(s_i) -- s'_i] over B_{2d}^0.

    S and S' run over disjoint (m+1)-subsets in lexicographic order, sigma over
    Sym(S) in lexicographic one-line order, and the complement of S u S' over
    its perfect matchings.
    """
    r = 2 * d
    k = m + 1
    if 2 * k > r:
        return []
    index = {D: i for i, D in enumerate(enumerate_diagrams(r, 0))}
    points = list(range(1, r + 1))
    out = []
    perms = symmetric_group(k)
    for S in combinations(points, k):
        others = [p for p in points if p not in S]
        for S2 in combinations(others, k):
            rest = [p for p in others if p not in S2]
            for base in _matchings(rest):
                vec: dict[int, int] = {}
                for sigma in perms:
                    arcs = [(S[sigma.images[i] - 1], S2[i]) for i in range(k)] + base
                    j = index[BrauerDiagram.from_arcs(r, 0, arcs)]
                    vec[j] = vec.get(j, 0) + sigma.sign
                vec = {j: v for j, v in vec.items() if v}
                if vec:
                    out.append(vec)
    return out


def symp_relations(n: int, d: int) -> list[dict[int, int]]:
    """Relation vectors sum_{sigma in Sym(S)} D sigma for |S| = 2n+1 and D in B_{2d}^0."""
    r = 2 * d
    k = 2 * n + 1
    if k > r:
        return []
    diagrams = enumerate_diagrams(r, 0)
    index = {D: i for i, D in enumerate(diagrams)}
    out = []
    for S in combinations(range(1, r + 1), k):
        group = symmetric_group_on(S, r)
        for D in diagrams:
            vec: dict[int, int] = {}
            for sigma in group:
                j = index[right_act(D, sigma)]
                vec[j] = vec.get(j, 0) + 1
            vec = {j: v for j, v in vec.items() if v}
            if vec:
                out.append(vec)
    return out


def _verify_family(claim: str, m: int, n: int, d: int, relations, vanish_bound: int, seed: int, pairs: int) -> VerificationReport:
    report = VerificationReport(claim, {"m": m, "n": n, "d": d})
    with Timer() as t:
        K = kappa_matrix(m, n, d)
        kernel = nullspace_basis(K)
        for vec in relations:
            if K.matvec(vec):
                report.falsify("relation vector not in Ker(kappa)", vec)
                break
        rel_rank = rank(SparseRationalMatrix.from_columns(K.n_cols, relations)) if relations else 0
        report.dims = {"n_diagrams": K.n_cols, "kernel_dim": len(kernel), "relations": len(relations), "relation_rank": rel_rank}
        if rel_rank != len(kernel):
            report.falsify("relations do not span Ker(kappa)", {"relation_rank": rel_rank, "kernel_dim": len(kernel)})
        if d <= vanish_bound and kernel:
            report.falsify("Ker(kappa) nonzero below the vanishing bound", kernel[0])
        if claim == "classical-orth" and d <= m:
            zero = _antisymmetrizer_images_vanish(m, d, seed, pairs)
            report.witnesses["antisymmetrizer_pairs_checked"] = pairs
            if zero is not None:
                report.falsify("D0 p alpha^-(m+1) q is nonzero", zero)
        if report.status != "falsified":
            report.status = "verified"
    report.elapsed_ms = t.ms
    return report


def _antisymmetrizer_images_vanish(m: int, d: int, seed: int, pairs: int):
    """Return a nonzero D0 p alpha^-(m+1) q as a witness, or None if all vanish."""
    r = 2 * d
    if m + 1 > r:
        return None
    a = alpha_minus([p.embed(r) for p in symmetric_group(m + 1)], r)
    rng = random.Random(seed)
    symbols = list(range(1, r + 1))
    D0 = d0(d)
    for _ in range(pairs):
        p = GroupAlgebraElement.from_perm(Permutation(tuple(rng.sample(symbols, r))))
        q = GroupAlgebraElement.from_perm(Permutation(tuple(rng.sample(symbols, r))))
        x = act_on_group_algebra(D0, algebra_mul(algebra_mul(p, a), q), m)
        if not x.is_zero():
            return x.to_json_obj()
    return None


def classical_relations_orth(m: int, d: int, seed: int = 0, pairs: int = 20):
    rels = orth_relations(m, d)
    return rels, _verify_family("classical-orth", m, 0, d, rels, m, seed, pairs)


def classical_relations_symp(n: int, d: int):
    rels = symp_relations(n, d)
    return rels, _verify_family("classical-symp", 0, n, d, rels, n, 0, 0)


def lowest_element(m: int, n: int) -> tuple[HomElement, HomElement]:
    """The element D (e (x) 1_d) with d = (m+1)(2n+1) and its image under U^d.

    D joins i to 2d+1-i and e = e(m, 2n) in Sym_d.  Returns (element of
    B_{2d}^0, element of B_d^d).
    """
    d = (m + 1) * (2 * n + 1)
    delta = m - 2 * n
    D = BrauerDiagram.from_arcs(2 * d, 0, [(i, 2 * d + 1 - i) for i in range(1, d + 1)])
    e = young_symmetrizer(m, 2 * n, d)
    x = GroupAlgebraElement._trusted(2 * d, {p.embed(2 * d): c for p, c in e.terms.items()})
    elem = act_on_group_algebra(D, x, delta)
    return elem, bend_U(elem, d)


def lowest_element_expected(m: int, n: int) -> HomElement:
    """w0 e* w0 as a combination of permutation diagrams in B_d^d (e* the anti-involution)."""
    d = (m + 1) * (2 * n + 1)
    w0 = Permutation(tuple(range(d, 0, -1)))
    e = young_symmetrizer(m, 2 * n, d).anti_involution()
    terms: dict = {}
    for p, c in e.terms.items():
        D = perm_to_diagram(w0 * p * w0)
        terms[D] = terms.get(D, 0) + c
    return HomElement(d, d, m - 2 * n, terms)


def lowest_kernel_degree(m: int, n: int, d_max: int = 8) -> dict:
    """Experiment: smallest d with Ker(kappa) != 0, scanning d = 1..d_max within the row budget."""
    dims = {}
    for d in range(1, d_max + 1):
        try:
            dims[d] = kernel_kappa(m, n, d).kernel_dim
        except ResourceLimitError:
            return {"m": m, "n": n, "dims": dims, "lowest_d": None, "stopped_at": d,
                    "guess_(m+1)(n+1)": (m + 1) * (n + 1)}
        if dims[d]:
            return {"m": m, "n": n, "dims": dims, "lowest_d": d, "guess_(m+1)(n+1)": (m + 1) * (n + 1)}
    return {"m": m, "n": n, "dims": dims, "lowest_d": None, "guess_(m+1)(n+1)": (m + 1) * (n + 1)}


__all__ = [
    "classical_relations_orth",
    "classical_relations_symp",
    "lowest_element",
    "lowest_element_expected",
    "lowest_kernel_degree",
    "orth_relations",
    "symp_relations",
]

