import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superbrauer.brauercat import (
    DeltaMismatch,
    GeneratorWord,
    HomElement,
    canonical_perm,
    compose,
    d0,
    enumerate_diagrams,
    factorize,
    generator_diagram,
    identity_diagram,
    right_act,
)
from superbrauer.osprep import (
    GradedSpace,
    SuperSpace,
    TensorOperator,
    bracket0,
    delta_pi_end_form,
    delta_pi_functional,
    derivation_action,
    eta_hom,
    gamma_i,
    invariant_functionals,
    kappa_from_perm,
    kappa_functional,
    koszul_permute,
    matrix_super_commutator,
    osp_basis,
    osp_dimension,
    pairing,
    sign_J,
    sign_n,
    super_commutator,
    varpi,
    varpi_algebra,
    word_operator,
)
from superbrauer.exactalg import SparseRationalMatrix
from superbrauer.symgrp import Permutation, hyperoctahedral, hyperoctahedral_generators, simple_word, symmetric_group, symmetrizer_C

SPACES = [(1, 1), (2, 1), (0, 1), (3, 0), (1, 0)]


def bubble_action(space, pi, idx):
    """Oracle for varpi(pi) e_idx: apply varpi(s_i) letter by letter, each a super flip."""
    state = {tuple(idx): 1}
    for i in reversed(simple_word(pi)):
        new = {}
        for w, c in state.items():
            w = list(w)
            s = -1 if space.parity[w[i - 1]] and space.parity[w[i]] else 1
            w[i - 1], w[i] = w[i], w[i - 1]
            new[tuple(w)] = c * s
        state = new
    ((w, c),) = state.items()
    return c, w


def test_form_examples():
    S = SuperSpace(1, 1)
    assert S.form(1, 1) == 1
    assert S.form(2, 3) == -1 and S.form(3, 2) == 1
    assert S.form(2, 2) == 0
    with pytest.raises(IndexError):
        S.form(0, 1)


@pytest.mark.parametrize("m,n", SPACES)
def test_form_supersymmetric(m, n):
    S = SuperSpace(m, n)
    for a in range(1, S.dim + 1):
        for b in range(1, S.dim + 1):
            pa, pb = S.parity[a - 1], S.parity[b - 1]
            assert S.form(a, b) == (-1) ** (pa * pb) * S.form(b, a)
            if pa != pb:
                assert S.form(a, b) == 0


def test_dual_basis_examples():
    assert SuperSpace(1, 0).dual_basis() == ((1,),)
    M = SuperSpace(1, 1).dual_basis()
    assert M[1] == (0, 0, 1)
    assert M[2] == (0, -1, 0)
    S = SuperSpace(2, 1)
    M = S.dual_basis()
    for a in range(S.dim):
        for b in range(S.dim):
            assert sum(M[a][c] * S.eta[c][b] for c in range(S.dim)) == (1 if a == b else 0)


def test_sign_examples():
    assert sign_J((0, 0, 0), (0, 0, 0)) == 1
    assert sign_J((1, 1), (1, 1)) == -1
    assert sign_J((0, 1, 1), (1, 0, 1)) == 1
    with pytest.raises(ValueError):
        sign_J((1,), (1, 0))
    t = Permutation((2, 1))
    assert sign_n(Permutation.identity(2), (1, 1)) == 1
    assert sign_n(t, (1, 1)) == -1
    assert sign_n(t, (0, 1)) == 1


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_koszul_sign_matches_both_readings(data):
    r = data.draw(st.integers(1, 6))
    pi = Permutation(tuple(data.draw(st.permutations(range(1, r + 1)))))
    S = SuperSpace(1, 1)
    idx = tuple(data.draw(st.lists(st.integers(0, 2), min_size=r, max_size=r)))
    s, out = koszul_permute(pi, idx, S.parity)
    assert (s, out) == bubble_action(S, pi, idx)
    assert s == sign_n(pi, S.parities(idx))
    assert s == sign_n(pi.inverse(), S.parities(out))


def test_literal_input_reading_is_not_a_homomorphism():
    # sign n(pi^{-1}, input) is the other candidate reading; it breaks varpi(pq) = varpi(p)varpi(q)
    S = SuperSpace(1, 1)

    def op(pi):
        r = pi.degree
        rows = {}
        for col, idx in enumerate(itertools.product(range(S.dim), repeat=r)):
            _, out = koszul_permute(pi, idx, S.parity)
            rows[S.flat(out)] = {col: sign_n(pi.inverse(), S.parities(idx))}
        return SparseRationalMatrix(S.dim**r, S.dim**r, rows)

    G = symmetric_group(3)
    assert any(op(p * q) != op(p) @ op(q) for p in G for q in G)


def test_varpi_examples():
    S = SuperSpace(1, 1)
    s1 = Permutation.simple(2, 1)
    V = varpi(S, s1)
    assert V.apply((1, 2)) == {(2, 1): -1}
    assert V.apply((0, 1)) == {(1, 0): 1}
    assert (V @ V) == TensorOperator.identity(S, 2)


@pytest.mark.parametrize("m,n", [(1, 1), (0, 1), (2, 1)])
def test_varpi_homomorphism(m, n):
    S = SuperSpace(m, n)
    G = symmetric_group(3)
    for p in G:
        for q in G:
            assert varpi(S, p * q) == varpi(S, p) @ varpi(S, q)


def test_gamma_examples():
    S = SuperSpace(1, 0)
    assert gamma_i(S, 1, 2).apply((0, 0)) == {(0, 0): 1}
    S = SuperSpace(1, 1)
    g = gamma_i(S, 1, 2)
    assert g.apply((1, 2)) == {(0, 0): -1, (1, 2): -1, (2, 1): 1}
    with pytest.raises(ValueError):
        gamma_i(S, 2, 2)


@pytest.mark.parametrize("m,n", SPACES)
def test_gamma_squared(m, n):
    S = SuperSpace(m, n)
    g = gamma_i(S, 1, 2)
    assert g @ g == g.scale(m - 2 * n)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_gamma_commutes_with_osp(m, n):
    S = SuperSpace(m, n)
    for r, i in ((2, 1), (3, 2)):
        g = gamma_i(S, i, r)
        for X, p in osp_basis(S):
            A = derivation_action(S, X, p, r)
            assert g @ A == A @ g


def test_eta_examples():
    S = SuperSpace(1, 1)
    assert eta_hom(S, identity_diagram(3)) == TensorOperator.identity(S, 3)
    assert eta_hom(S, generator_diagram("e", 1, 2)) == gamma_i(S, 1, 2)
    w1 = GeneratorWord(2, (("s", 1), ("e", 1)))
    w2 = GeneratorWord(2, (("e", 1),))
    assert word_operator(S, w1) == word_operator(S, w2)
    with pytest.raises(DeltaMismatch):
        eta_hom(S, HomElement.from_diagram(identity_diagram(2), 1))


def test_eta_factorization_independent():
    rng = random.Random(7)
    S = SuperSpace(1, 1)
    diagrams = enumerate_diagrams(3, 3)
    for D in rng.sample(diagrams, 10):
        assert factorize(D, "left") != factorize(D, "right") or len(D.horizontal_source_arcs()) == 0
        a = eta_hom(S, D, grouped=False, layout="left")
        b = eta_hom(S, D, grouped=False, layout="right")
        assert a == b


@pytest.mark.parametrize("m,n", [(1, 1), (0, 1)])
def test_eta_multiplicative(m, n):
    S = SuperSpace(m, n)
    rng = random.Random(3)
    B = enumerate_diagrams(3, 3)
    for _ in range(25):
        a, b = rng.choice(B), rng.choice(B)
        assert eta_hom(S, compose(a, b, S.delta)) == eta_hom(S, a) @ eta_hom(S, b)


def kappa_oracle(S, pi):
    out = {}
    for idx in itertools.product(range(S.dim), repeat=pi.degree):
        s, w = bubble_action(S, pi, idx)
        v = s * bracket0(S, w)
        if v:
            out[S.flat(idx)] = v
    return out


def test_kappa_examples():
    assert kappa_functional(SuperSpace(1, 0), d0(1)).vector == {0: 1}
    S = SuperSpace(1, 1)
    k = kappa_functional(S, d0(1))
    assert dict(k.vector) == {S.flat((0, 0)): 1, S.flat((1, 2)): -1, S.flat((2, 1)): 1}
    assert kappa_from_perm(S, Permutation((2, 1))) == k
    with pytest.raises(ValueError):
        kappa_functional(S, identity_diagram(1))


@pytest.mark.parametrize("m,n", [(1, 1), (0, 1), (2, 0)])
def test_kappa_matches_oracle_and_is_representative_free(m, n):
    S = SuperSpace(m, n)
    for D in enumerate_diagrams(4, 0):
        k = kappa_functional(S, D)
        assert dict(k.vector) == kappa_oracle(S, canonical_perm(D))
        for pi in symmetric_group(4):
            if right_act(d0(2), pi) == D:
                assert kappa_from_perm(S, pi) == k


def test_bracket_is_C_invariant():
    S = SuperSpace(1, 1)
    for d in (1, 2, 3):
        b = {}
        for idx in itertools.product(range(S.dim), repeat=2 * d):
            v = bracket0(S, idx)
            if v:
                b[S.flat(idx)] = v
        for sigma in hyperoctahedral_generators(d):
            assert varpi(S, sigma).matrix.vecmat(b) == b


def test_varpi_eC_idempotent():
    S = SuperSpace(1, 1)
    for d in (1, 2):
        P = varpi_algebra(S, symmetrizer_C(d))
        assert P @ P == P


def test_delta_pi_examples():
    S = SuperSpace(1, 1)
    M = delta_pi_functional(S, Permutation.identity(1))
    assert M.to_dense() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    M = delta_pi_functional(S, Permutation((2, 1)))
    assert M[S.flat((1, 2)), S.flat((2, 1))] == 1
    assert M[S.flat((1, 2)), S.flat((2, 1))] == sign_J((1, 1), (1, 1)) * sign_n(Permutation((2, 1)), (1, 1))


def test_slide_identity():
    S = SuperSpace(1, 1)
    rng = random.Random(11)
    for _ in range(300):
        r = rng.randint(1, 4)
        pi = Permutation(tuple(rng.sample(range(1, r + 1), r)))
        phi = tuple(rng.randrange(S.dim) for _ in range(r))
        v = tuple(rng.randrange(S.dim) for _ in range(r))
        s1, phi2 = koszul_permute(pi, phi, S.parity)
        s2, v2 = koszul_permute(pi.inverse(), v, S.parity)
        assert s1 * pairing(S, phi2, v) == s2 * pairing(S, phi, v2)


def test_commuting_square():
    """Averaging delta_{sigma pi_D} over C equals pairing the projected dual tensor."""
    S = SuperSpace(1, 1)
    for d in (1, 2):
        C = hyperoctahedral(d)
        P = varpi_algebra(S, symmetrizer_C(d)).matrix
        for D in enumerate_diagrams(2 * d, 0):
            pi = canonical_perm(D)
            lhs = None
            for s in C:
                M = delta_pi_functional(S, s * pi)
                lhs = M if lhs is None else lhs + M
            lhs = lhs.scale(Fraction(1, len(C)))
            # <e(C) phi, varpi(pi) w> with the projector acting on the dual side
            pair = delta_pi_functional(S, Permutation.identity(2 * d))
            rhs = P.transpose() @ pair @ varpi(S, pi).matrix
            assert lhs == rhs


def test_end_form_examples():
    S = SuperSpace(1, 1)
    I = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    for w in itertools.product(range(3), repeat=2):
        assert delta_pi_end_form(S, Permutation.identity(2), [I], [0], w) == S.eta[w[0]][w[1]]
    E11 = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
    assert delta_pi_end_form(S, Permutation.identity(2), [E11], [0], (0, 0)) == 1
    with pytest.raises(ValueError):
        delta_pi_end_form(S, Permutation.identity(2), [I], None, (0, 0))
    odd = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    with pytest.raises(ValueError):
        delta_pi_end_form(S, Permutation.identity(2), [odd], [0], (0, 0))


def test_end_form_identity_matches_kappa():
    S = SuperSpace(1, 1)
    I = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    for pi in symmetric_group(4):
        k = kappa_from_perm(S, pi)
        for w in itertools.product(range(3), repeat=4):
            assert delta_pi_end_form(S, pi, [I, I], [0, 0], w) == k.value(w)


def test_end_form_odd_signs():
    """Brute-force the J sign for odd endomorphisms on a few inputs."""
    S = SuperSpace(1, 1)
    X = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]  # odd: e_2 -> e_1
    Y = [[0, 0, 0], [0, 0, 0], [1, 0, 0]]  # odd: e_1 -> e_3
    pi = Permutation.identity(4)
    # (w1, X w2)(w3, Y w4) with sign (-1)^{[X][w1] + [Y]([w1]+[w2]+[w3])}
    for w in itertools.product(range(3), repeat=4):
        base = sum(X[c][w[1]] * S.eta[w[0]][c] for c in range(3)) * sum(Y[c][w[3]] * S.eta[w[2]][c] for c in range(3))
        par = S.parities(w)
        sgn = (-1) ** (par[0] + par[0] + par[1] + par[2])
        assert delta_pi_end_form(S, pi, [X, Y], [1, 1], w) == sgn * base


def check_osp(S, X, p):
    for v in range(S.dim):
        for w in range(S.dim):
            lhs = sum(X[c][v] * S.eta[c][w] for c in range(S.dim))
            rhs = sum(X[c][w] * S.eta[v][c] for c in range(S.dim))
            if lhs + (-1) ** (p * S.parity[v]) * rhs != 0:
                return False
    return True


def test_osp_examples():
    assert osp_basis(SuperSpace(1, 0)) == []
    b = osp_basis(SuperSpace(0, 1))
    assert len(b) == 3 and all(p == 0 for _, p in b)
    b = osp_basis(SuperSpace(1, 1))
    assert sorted(p for _, p in b) == [0, 0, 0, 1, 1]


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (0, 1), (3, 0), (1, 2), (0, 2), (2, 2)])
def test_osp_dimension_and_condition(m, n):
    S = SuperSpace(m, n)
    basis = osp_basis(S)
    assert len(basis) == osp_dimension(m, n)
    for X, p in basis:
        assert check_osp(S, X, p)


def test_derivation_examples():
    S = SuperSpace(1, 1)
    for X, p in osp_basis(S):
        A = derivation_action(S, X, p, 1)
        assert A.matrix.to_dense() == [list(row) for row in X]
    with pytest.raises(ValueError):
        derivation_action(S, [[0, 1, 0], [0, 0, 0], [0, 0, 0]], 0, 1)


def test_derivation_is_super_lie_homomorphism():
    S = SuperSpace(1, 1)
    basis = osp_basis(S)
    for (X, px), (Y, py) in itertools.product(basis, repeat=2):
        Z, pz = matrix_super_commutator(X, px, Y, py)
        lhs = derivation_action(S, Z, pz, 2)
        rhs = super_commutator(derivation_action(S, X, px, 2), px, derivation_action(S, Y, py, 2), py)
        assert lhs == rhs


def test_kappa_invariant_small():
    S = SuperSpace(1, 1)
    for d in (1, 2):
        for D in enumerate_diagrams(2 * d, 0):
            k = kappa_functional(S, D)
            for X, p in osp_basis(S):
                assert k.after(derivation_action(S, X, p, 2 * d)).is_zero()


def test_invariant_dimensions():
    S = SuperSpace(1, 1)
    assert len(invariant_functionals(S, 1)) == 0
    assert len(invariant_functionals(S, 2)) == 1
    assert len(invariant_functionals(S, 3)) == 0
    # the Lie superalgebra alone leaves one cubic invariant; the reflection e_1 -> -e_1 removes it
    assert len(invariant_functionals(S, 3, component_group=False)) == 1


def test_operator_json_header():
    S = SuperSpace(1, 1)
    obj = json.loads(gamma_i(S, 1, 2).to_json())
    assert obj["header"] == {"m": 1, "n": 1, "r": 2, "order": "row-major"}
    assert obj["matrix"]["n_rows"] == 9


def test_graded_space_indexing():
    V = GradedSpace(1, 2)
    for k, idx in enumerate(V.multi_indices(3)):
        assert V.flat(idx) == k
        assert V.unflat(k, 3) == idx
