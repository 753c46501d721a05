"""The orthosymplectic superspace (m|2n), its tensor powers and their invariants.

Basis vectors e_1..e_{m+2n} are even for indices 1..m and odd afterwards.
In code, basis indices and multi-indices are 0-based; ``SuperSpace.form``
takes the 1-based labels used in the mathematics.  Tensors of rank r are
indexed row-major with the first tensor slot slowest, which is the order of
``itertools.product(range(dim), repeat=r)``.

An operator matrix stores the image of basis tensor ``w`` in column ``w``.
Functionals are stored as their values on the basis of T^r(V).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .brauercat import BrauerDiagram, DeltaMismatch, HomElement, canonical_perm, factorize
from .exactalg import Rational, SparseRationalMatrix, as_rational, nullspace_basis
from .symgrp import GroupAlgebraElement, Permutation


class GradedSpace:
    """A Z/2-graded space with ``even`` even and ``odd`` odd basis vectors (no form)."""

    def __init__(self, even: int, odd: int):
        if even < 0 or odd < 0:
            raise ValueError("dimensions must be non-negative")
        self.even = even
        self.odd = odd
        self.dim = even + odd
        self.parity = tuple([0] * even + [1] * odd)

    def __repr__(self) -> str:
        return f"GradedSpace({self.even}|{self.odd})"

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and (self.even, self.odd) == (other.even, other.odd)

    def __hash__(self):
        return hash((type(self).__name__, self.even, self.odd))

    def multi_indices(self, r: int) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.dim), repeat=r))

    def flat(self, idx: Sequence[int]) -> int:
        out = 0
        for i in idx:
            out = out * self.dim + i
        return out

    def unflat(self, k: int, r: int) -> tuple[int, ...]:
        out = []
        for _ in range(r):
            k, i = divmod(k, self.dim)
            out.append(i)
        return tuple(reversed(out))

    def parities(self, idx: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.parity[i] for i in idx)


class SuperSpace(GradedSpace):
    """The superspace of sdim (m|2n) with the standard supersymmetric form."""

    def __init__(self, m: int, n: int):
        super().__init__(m, 2 * n)
        self.m = m
        self.n = n

    def __repr__(self) -> str:
        return f"SuperSpace({self.m}|{2 * self.n})"

    @property
    def delta(self) -> int:
        return self.m - 2 * self.n

    @cached_property
    def eta(self) -> tuple[tuple[int, ...], ...]:
        dim = self.dim
        rows = [[0] * dim for _ in range(dim)]
        for a in range(self.m):
            rows[a][a] = 1
        for k in range(self.n):
            a = self.m + 2 * k
            rows[a][a + 1] = -1
            rows[a + 1][a] = 1
        return tuple(tuple(r) for r in rows)

    @cached_property
    def eta_inverse(self) -> tuple[tuple[int, ...], ...]:
        # eta is orthogonal (eta^T eta = 1), so its inverse is its transpose
        return tuple(zip(*self.eta))

    @cached_property
    def form_support(self) -> tuple[tuple[int, int, int], ...]:
        """(a, b, eta_ab) for the nonzero entries of eta, 0-based."""
        return tuple((a, b, v) for a, row in enumerate(self.eta) for b, v in enumerate(row) if v)

    def form(self, a: int, b: int) -> int:
        """(e_a, e_b) for 1-based labels a, b."""
        if not (1 <= a <= self.dim and 1 <= b <= self.dim):
            raise IndexError(f"basis labels must lie in 1..{self.dim}")
        return self.eta[a - 1][b - 1]

    def dual_basis(self) -> tuple[tuple[int, ...], ...]:
        """Row a holds the coefficients of e_a^* in the basis e_c."""
        return self.eta_inverse

    @cached_property
    def casimir(self) -> tuple[tuple[int, int, Rational], ...]:
        """c_0 = sum_a e_a (x) e_a^* as (c, k, coefficient) triples."""
        M = self.eta_inverse
        return tuple((a, k, M[a][k]) for a in range(self.dim) for k in range(self.dim) if M[a][k])


def form_value(S: SuperSpace, a: int, b: int) -> int:
    return S.form(a, b)


def dual_basis(S: SuperSpace):
    return S.dual_basis()


# sign calculus -----------------------------------------------------------------


def sign_J(a: Sequence[int], b: Sequence[int]) -> int:
    """(-1)^{sum_{i>j} a_i b_j}."""
    if len(a) != len(b):
        raise ValueError("parity sequences differ in length")
    total = 0
    prefix = 0
    for ai, bi in zip(a, b):
        total += ai * prefix
        prefix += bi
    return -1 if total % 2 else 1


def sign_n(sigma: Permutation, parities: Sequence[int]) -> int:
    """(-1)^{n(sigma, v)}: sum of [v_i][v_j] over inversions i < j, sigma(i) > sigma(j)."""
    if sigma.degree != len(parities):
        raise ValueError("permutation degree does not match parity sequence")
    im = sigma.images
    r = len(im)
    total = 0
    for i in range(r):
        if parities[i]:
            for j in range(i + 1, r):
                if parities[j] and im[i] > im[j]:
                    total += 1
    return -1 if total % 2 else 1


def koszul_permute(pi: Permutation, idx: Sequence[int], parity: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Action of varpi(pi) on a basis tensor: slot i moves to position pi(i).

    Returns (sign, permuted multi-index).  The sign counts the odd pairs whose
    order is reversed, i.e. (-1)^{n(pi, v)} on the input tensor, which equals
    (-1)^{n(pi^{-1}, w)} on the output tensor w.
    """
    r = len(idx)
    out = [0] * r
    for i, x in enumerate(idx):
        out[pi.images[i] - 1] = x
    im = pi.images
    total = 0
    for i in range(r):
        if parity[idx[i]]:
            for j in range(i + 1, r):
                if parity[idx[j]] and im[i] > im[j]:
                    total += 1
    return (-1 if total % 2 else 1), tuple(out)


# tensor operators --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TensorOperator:
    space: GradedSpace
    r: int
    matrix: SparseRationalMatrix

    def __post_init__(self):
        size = self.space.dim ** self.r
        if self.matrix.shape != (size, size):
            raise ValueError(f"operator matrix must be {size}x{size}")

    @classmethod
    def identity(cls, space: GradedSpace, r: int) -> "TensorOperator":
        return cls(space, r, SparseRationalMatrix.identity(space.dim ** r))

    @classmethod
    def zero(cls, space: GradedSpace, r: int) -> "TensorOperator":
        size = space.dim ** r
        return cls(space, r, SparseRationalMatrix(size, size))

    def _check(self, other: "TensorOperator"):
        if self.space != other.space or self.r != other.r:
            raise ValueError("operators live on different tensor powers")

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        self._check(other)
        return TensorOperator(self.space, self.r, self.matrix @ other.matrix)

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        self._check(other)
        return TensorOperator(self.space, self.r, self.matrix + other.matrix)

    def __sub__(self, other: "TensorOperator") -> "TensorOperator":
        self._check(other)
        return TensorOperator(self.space, self.r, self.matrix - other.matrix)

    def scale(self, c: Rational) -> "TensorOperator":
        return TensorOperator(self.space, self.r, self.matrix.scale(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return self.space == other.space and self.r == other.r and self.matrix == other.matrix

    __hash__ = None

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def apply(self, idx: Sequence[int]) -> dict[tuple[int, ...], Rational]:
        """Image of a basis tensor as {multi-index: coefficient}."""
        col = self.space.flat(idx)
        return {self.space.unflat(i, self.r): row[col] for i, row in self.matrix.rows() if col in row}

    def column_vector(self) -> dict[int, Rational]:
        """vec(A): entry (i, j) at position i * size + j."""
        size = self.matrix.n_cols
        return {i * size + j: v for (i, j), v in self.matrix.entries.items()}

    def to_json_obj(self) -> dict:
        header = {"r": self.r, "order": "row-major"}
        if isinstance(self.space, SuperSpace):
            header.update(m=self.space.m, n=self.space.n)
        else:
            header.update(even=self.space.even, odd=self.space.odd)
        return {"header": header, "matrix": self.matrix.to_json_obj()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


@dataclass(frozen=True, eq=False)
class TensorFunctional:
    space: GradedSpace
    r: int
    vector: Mapping[int, Rational]

    def value(self, idx: Sequence[int]) -> Rational:
        return self.vector.get(self.space.flat(idx), 0)

    def after(self, op: TensorOperator) -> "TensorFunctional":
        """The functional v -> self(op v)."""
        if op.space != self.space or op.r != self.r:
            raise ValueError("operator and functional live on different tensor powers")
        return TensorFunctional(self.space, self.r, op.matrix.vecmat(self.vector))

    def is_zero(self) -> bool:
        return not self.vector

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorFunctional):
            return NotImplemented
        return self.space == other.space and self.r == other.r and dict(self.vector) == dict(other.vector)

    __hash__ = None

    def to_json_obj(self) -> dict:
        size = self.space.dim ** self.r
        header = {"r": self.r, "order": "row-major"}
        if isinstance(self.space, SuperSpace):
            header.update(m=self.space.m, n=self.space.n)
        mat = SparseRationalMatrix(1, size, {0: dict(self.vector)})
        return {"header": header, "matrix": mat.to_json_obj()}


# the actions -----------------------------------------------------------------


@lru_cache(maxsize=4096)
def _varpi_cached(space: GradedSpace, images: tuple[int, ...]) -> TensorOperator:
    pi = Permutation(images)
    r = len(images)
    rows: dict[int, dict[int, int]] = {}
    for col, idx in enumerate(itertools.product(range(space.dim), repeat=r)):
        s, out = koszul_permute(pi, idx, space.parity)
        rows[space.flat(out)] = {col: s}
    return TensorOperator(space, r, SparseRationalMatrix._trusted(space.dim**r, space.dim**r, rows))


def varpi(space: GradedSpace, pi: Permutation, r: int | None = None) -> TensorOperator:
    """The signed permutation action of pi on T^r(V)."""
    if r is not None and r != pi.degree:
        pi = pi.embed(r)
    return _varpi_cached(space, pi.images)


def varpi_algebra(space: GradedSpace, x: GroupAlgebraElement) -> TensorOperator:
    size = space.dim ** x.degree
    acc = SparseRationalMatrix(size, size)
    for pi, c in x.terms.items():
        acc = acc + varpi(space, pi).matrix.scale(c)
    return TensorOperator(space, x.degree, acc)


def tau(space: GradedSpace) -> TensorOperator:
    """The super flip v (x) w -> (-1)^{[v][w]} w (x) v on V (x) V."""
    dim = space.dim
    rows = {}
    for a in range(dim):
        for b in range(dim):
            s = -1 if space.parity[a] and space.parity[b] else 1
            rows[b * dim + a] = {a * dim + b: s}
    return TensorOperator(space, 2, SparseRationalMatrix._trusted(dim * dim, dim * dim, rows))


@lru_cache(maxsize=256)
def gamma_i(S: SuperSpace, i: int, r: int) -> TensorOperator:
    """id^{i-1} (x) gamma (x) id^{r-i-1}, gamma(v (x) w) = (v, w) c_0.

    gamma is even, so no Koszul sign arises from the identity factors.
    """
    if not 1 <= i <= r - 1:
        raise ValueError(f"gamma_{i} needs 1 <= i <= r-1 = {r - 1}")
    eta = S.eta
    c0 = S.casimir
    size = S.dim**r
    rows: dict[int, dict[int, Rational]] = {}
    for col, idx in enumerate(itertools.product(range(S.dim), repeat=r)):
        f = eta[idx[i - 1]][idx[i]]
        if not f:
            continue
        for c, k, coeff in c0:
            out = idx[: i - 1] + (c, k) + idx[i + 1:]
            row = rows.setdefault(S.flat(out), {})
            row[col] = row.get(col, 0) + f * coeff
    return TensorOperator(S, r, SparseRationalMatrix(size, size, rows))


def _generator_operator(S: SuperSpace, kind: str, i: int, r: int) -> TensorOperator:
    if kind == "s":
        return varpi(S, Permutation.simple(r, i))
    return gamma_i(S, i, r)


def word_operator(S: SuperSpace, word, grouped: bool = True) -> TensorOperator:
    """Evaluate a GeneratorWord with s_i -> varpi(s_i), e_i -> gamma_i.

    With ``grouped`` consecutive s-letters are multiplied in Sym_r first and
    sent through varpi once; this relies on varpi being a homomorphism.
    """
    r = word.degree
    result = None
    run: Permutation | None = None

    def flush():
        nonlocal result, run
        if run is not None:
            op = varpi(S, run)
            result = op if result is None else result @ op
            run = None

    for kind, i in word.letters:
        if grouped and kind == "s":
            s = Permutation.simple(r, i)
            run = s if run is None else run * s
            continue
        flush()
        op = _generator_operator(S, kind, i, r)
        result = op if result is None else result @ op
    flush()
    return result if result is not None else TensorOperator.identity(S, r)


def eta_hom(S: SuperSpace, x, grouped: bool = True, layout: str = "left") -> TensorOperator:
    """The Brauer-algebra representation B_r(m-2n) -> End(T^r(V)).

    Each diagram is written as a generator word by ``factorize`` (with the
    given layout) and the word is evaluated on generator images.
    """
    if isinstance(x, BrauerDiagram):
        x = HomElement.from_diagram(x, S.delta)
    if x.delta != S.delta:
        raise DeltaMismatch(f"HomElement has delta {x.delta}, superspace needs {S.delta}")
    if x.p != x.q:
        raise ValueError("eta_hom needs an element of B_r^r")
    r = x.p
    size = S.dim**r
    acc = SparseRationalMatrix(size, size)
    for D, c in x.terms.items():
        acc = acc + word_operator(S, factorize(D, layout), grouped).matrix.scale(c)
    return TensorOperator(S, r, acc)


# invariant functionals ----------------------------------------------------------


def bracket0(S: SuperSpace, idx: Sequence[int]) -> int:
    """<w>_0 = (w_1, w_2)(w_3, w_4)... on a basis tensor."""
    out = 1
    for k in range(0, len(idx), 2):
        out *= S.eta[idx[k]][idx[k + 1]]
        if not out:
            return 0
    return out


def kappa_from_perm(S: SuperSpace, pi: Permutation) -> TensorFunctional:
    """kappa_pi(v) = <varpi(pi) v>_0 on all basis tensors of T^{2d}(V)."""
    r = pi.degree
    if r % 2:
        raise ValueError("kappa needs an even tensor degree")
    d = r // 2
    support = S.form_support
    vec: dict[int, Rational] = {}
    for choice in itertools.product(support, repeat=d):
        w = []
        value = 1
        for a, b, v in choice:
            w += [a, b]
            value *= v
        # v_i = w_{pi(i)}
        idx = tuple(w[pi.images[i] - 1] for i in range(r))
        s, _ = koszul_permute(pi, idx, S.parity)
        vec[S.flat(idx)] = s * value
    return TensorFunctional(S, r, vec)


def kappa_functional(S: SuperSpace, D: BrauerDiagram, pi: Permutation | None = None) -> TensorFunctional:
    """kappa_D, evaluated through canonical_perm(D) unless a representative is given."""
    if D.q != 0:
        raise ValueError("kappa_D needs a diagram 2d -> 0")
    if pi is None:
        pi = canonical_perm(D)
    return kappa_from_perm(S, pi)


def pairing_sign(space: GradedSpace, phi: Sequence[int], v: Sequence[int]) -> int:
    return sign_J(space.parities(phi), space.parities(v))


def pairing(space: GradedSpace, phi: Sequence[int], v: Sequence[int]) -> int:
    """<eps_phi, e_v> for basis tensors of T^r(V*) and T^r(V)."""
    if tuple(phi) != tuple(v):
        return 0
    return pairing_sign(space, phi, v)


def delta_pi_functional(space: GradedSpace, pi: Permutation, r: int | None = None) -> SparseRationalMatrix:
    """Matrix of delta_pi(eps_psi (x) e_w) = <eps_psi, varpi(pi) e_w>; rows psi, columns w."""
    if r is not None and r != pi.degree:
        pi = pi.embed(r)
    r = pi.degree
    size = space.dim**r
    rows = {}
    for col, idx in enumerate(itertools.product(range(space.dim), repeat=r)):
        s, out = koszul_permute(pi, idx, space.parity)
        rows[space.flat(out)] = {col: s * pairing_sign(space, out, out)}
    return SparseRationalMatrix._trusted(size, size, rows)


def delta_pi_end_form(
    S: SuperSpace,
    pi: Permutation,
    A: Sequence[Sequence[Sequence[Rational]]],
    A_parities: Sequence[int] | None,
    w: Sequence[int],
) -> Rational:
    """delta_pi realised on End(V)^{(x) d} (x) T^{2d}(V), on a basis tensor w.

    Each A_k is a dim x dim matrix acting by A e_b = sum_c A[c][b] e_c and
    must be homogeneous of the declared parity.
    """
    d = len(A)
    if A_parities is None or len(A_parities) != d:
        raise ValueError("declare one parity per endomorphism")
    if pi.degree != 2 * d or len(w) != 2 * d:
        raise ValueError("need pi in Sym_2d and a tensor of length 2d")
    for Ak, pk in zip(A, A_parities):
        for c in range(S.dim):
            for b in range(S.dim):
                if Ak[c][b] and (S.parity[c] + S.parity[b]) % 2 != pk:
                    raise ValueError("endomorphism is not homogeneous of the declared parity")
    s, wp = koszul_permute(pi, w, S.parity)
    par = S.parities(wp)
    J = 0
    for i in range(d):
        J += A_parities[i] * sum(par[: 2 * i + 1])
    value: Rational = -s if J % 2 else s
    eta = S.eta
    for k in range(d):
        a, b = wp[2 * k], wp[2 * k + 1]
        # (e_a, A e_b) = sum_c A[c][b] eta[a][c]
        value *= sum(A[k][c][b] * eta[a][c] for c in range(S.dim))
        if not value:
            return 0
    return as_rational(value)


# Lie superalgebra oracles -------------------------------------------------------


def osp_basis(S: SuperSpace) -> list[tuple[tuple[tuple[Rational, ...], ...], int]]:
    """Homogeneous basis of osp(V): X with (Xv, w) + (-1)^{[X][v]} (v, Xw) = 0."""
    dim = S.dim
    eta = S.eta
    par = S.parity
    out = []
    for xpar in (0, 1):
        slots = [(c, v) for c in range(dim) for v in range(dim) if (par[c] + par[v]) % 2 == xpar]
        pos = {s: k for k, s in enumerate(slots)}
        eqs = []
        for v in range(dim):
            for w in range(dim):
                sgn = -1 if xpar and par[v] else 1
                row: dict[int, int] = {}
                for c in range(dim):
                    if eta[c][w] and (c, v) in pos:
                        row[pos[(c, v)]] = row.get(pos[(c, v)], 0) + eta[c][w]
                    if eta[v][c] and (c, w) in pos:
                        row[pos[(c, w)]] = row.get(pos[(c, w)], 0) + sgn * eta[v][c]
                row = {k: x for k, x in row.items() if x}
                if row:
                    eqs.append(row)
        if not slots:
            continue
        M = SparseRationalMatrix(len(eqs), len(slots), dict(enumerate(eqs)))
        for vec in nullspace_basis(M):
            X = [[0] * dim for _ in range(dim)]
            for k, x in enumerate(vec):
                if x:
                    c, v = slots[k]
                    X[c][v] = x
            out.append((tuple(tuple(r) for r in X), xpar))
    return out


def osp_dimension(m: int, n: int) -> int:
    return m * (m - 1) // 2 + n * (2 * n + 1) + 2 * m * n


def derivation_action(space: GradedSpace, X: Sequence[Sequence[Rational]], xpar: int, r: int) -> TensorOperator:
    """sum_i id^{i-1} (x) X (x) id^{r-i} with the Koszul factor (-1)^{[X]([v_1]+...+[v_{i-1}])}."""
    dim = space.dim
    for c in range(dim):
        for b in range(dim):
            if X[c][b] and (space.parity[c] + space.parity[b]) % 2 != xpar:
                raise ValueError("X is not homogeneous of the declared parity")
    cols_of = [[(c, X[c][b]) for c in range(dim) if X[c][b]] for b in range(dim)]
    size = dim**r
    rows: dict[int, dict[int, Rational]] = {}
    for col, idx in enumerate(itertools.product(range(dim), repeat=r)):
        prefix = 0
        for i, b in enumerate(idx):
            s = -1 if xpar and prefix % 2 else 1
            for c, x in cols_of[b]:
                out = idx[:i] + (c,) + idx[i + 1:]
                row = rows.setdefault(space.flat(out), {})
                row[col] = row.get(col, 0) + s * x
            prefix += space.parity[b]
    return TensorOperator(space, r, SparseRationalMatrix(size, size, rows))


def super_commutator(A: TensorOperator, pa: int, B: TensorOperator, pb: int) -> TensorOperator:
    sgn = -1 if pa and pb else 1
    return (A @ B) - (B @ A).scale(sgn)


def matrix_super_commutator(X, px: int, Y, py: int):
    dim = len(X)
    sgn = -1 if px and py else 1
    XY = [[sum(X[i][k] * Y[k][j] for k in range(dim)) for j in range(dim)] for i in range(dim)]
    YX = [[sum(Y[i][k] * X[k][j] for k in range(dim)) for j in range(dim)] for i in range(dim)]
    return tuple(tuple(as_rational(XY[i][j] - sgn * YX[i][j]) for j in range(dim)) for i in range(dim)), (px + py) % 2


def invariant_functionals(S: SuperSpace, r: int, component_group: bool = True) -> list[list[Rational]]:
    """Basis of functionals on T^r(V) killed by every osp(V) derivation.

    With ``component_group`` they must also be fixed by the reflection
    e_1 -> -e_1 (an element of O(m) x Sp(2n) outside the identity component),
    which is needed for the group invariants when m > 0.
    """
    size = S.dim**r
    blocks = [derivation_action(S, X, p, r).matrix for X, p in osp_basis(S)]
    if component_group and S.m > 0:
        refl = [[0] * S.dim for _ in range(S.dim)]
        for a in range(S.dim):
            refl[a][a] = -1 if a == 0 else 1
        g = _group_action(S, refl, r)
        blocks.append(g - SparseRationalMatrix.identity(size))
    # f is invariant iff f @ B = 0 for each block, i.e. B^T f^T = 0
    rows: dict[int, dict[int, Rational]] = {}
    offset = 0
    for B in blocks:
        for i, row in B.transpose().rows():
            rows[offset + i] = row
        offset += size
    stacked = SparseRationalMatrix(offset, size, rows)
    return nullspace_basis(stacked)


def _group_action(space: GradedSpace, g, r: int) -> SparseRationalMatrix:
    """g (x) ... (x) g for an even g, as a matrix on T^r(V)."""
    dim = space.dim
    cols_of = [[(c, g[c][b]) for c in range(dim) if g[c][b]] for b in range(dim)]
    size = dim**r
    rows: dict[int, dict[int, Rational]] = {}
    for col, idx in enumerate(itertools.product(range(dim), repeat=r)):
        for choice in itertools.product(*(cols_of[b] for b in idx)):
            out = tuple(c for c, _ in choice)
            coeff = 1
            for _, x in choice:
                coeff *= x
            row = rows.setdefault(space.flat(out), {})
            row[col] = row.get(col, 0) + coeff
    return SparseRationalMatrix(size, size, rows)
