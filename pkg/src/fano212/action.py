"""Cyclic group actions on P3 x P3 preserving a triple of (1,1)-forms.

A swap action is the normal form sigma(x, y) = (y, D x) with
D = diag(w^r0, ..., w^r3) for w a primitive n-th root of unity; a diagonal
action fixes both factors with weight tuples (weights, weights2).  The module
validates declared orders, diagonalises the action on the pencil of forms,
decides the rank of the invariant Picard sublattice, and generates random
equivariant instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import Cyclotomic, as_power_of_root, cyc, root_of_unity
from .linalg import matrix_rank, nullspace, rref, solve
from .model import ModelTriple, model_from_matrices, determinantal_quartic, \
    quartic_smooth, validate_model, InvalidModel


class InvalidAction(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class PencilNotInvariant(ValueError):
    """The span of the three forms is not preserved by the action."""


class GenerationError(RuntimeError):
    """The instance generator could not satisfy its constraints."""


@dataclass(frozen=True)
class ActionSpec:
    order: int
    weights: tuple
    swap: bool = True
    weights2: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(w % self.order for w in self.weights))
        if self.weights2 is not None:
            object.__setattr__(
                self, "weights2", tuple(w % self.order for w in self.weights2)
            )


@dataclass(frozen=True)
class InvariantPencil:
    matrices: tuple  # three 4x4 grids of Cyclotomic, eigenvectors of the action
    exponents: tuple  # s_j with sigma . F_j = w^{s_j} F_j
    order: int
    swap: bool
    weights: tuple
    weights2: tuple | None = None


@dataclass(frozen=True)
class DivisorClass:
    """a*H + b*E in the rank-two Picard lattice Z H + Z E."""

    a: int
    b: int

    def __add__(self, other):
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return DivisorClass(-self.a, -self.b)

    def __rmul__(self, k: int):
        return DivisorClass(k * self.a, k * self.b)

    def __str__(self):
        parts = []
        if self.a:
            parts.append("H" if self.a == 1 else ("-H" if self.a == -1 else "%dH" % self.a))
        if self.b:
            sign = "+" if self.b > 0 and parts else ""
            parts.append(sign + ("E" if self.b == 1 else ("-E" if self.b == -1 else "%dE" % self.b)))
        return "".join(parts) if parts else "0"


H = DivisorClass(1, 0)
E = DivisorClass(0, 1)
MINUS_K = DivisorClass(4, -1)


# -- order bookkeeping ----------------------------------------------------------


def _diag_projective_order(weights, n: int) -> int:
    """Smallest k with diag(w^{k r_i}) scalar."""
    for k in range(1, n + 1):
        if len({(k * w) % n for w in weights}) == 1:
            return k
    return n


def projective_order(spec: ActionSpec) -> int:
    """Order of sigma as an automorphism of P3 x P3.

    A swap never acts as the identity, so a swap action has order twice the
    projective order of D; a diagonal action has the lcm of the two factor
    orders.  Computed by brute force over powers.
    """
    n = spec.order
    if spec.swap:
        return 2 * _diag_projective_order(spec.weights, n)
    if spec.weights2 is None:
        raise InvalidAction("missing-weights2", "diagonal action needs two weight tuples")
    ka = _diag_projective_order(spec.weights, n)
    kb = _diag_projective_order(spec.weights2, n)
    return ka * kb // gcd(ka, kb)


def validate_action(spec: ActionSpec) -> None:
    n = spec.order
    if n < 1:
        raise InvalidAction("bad-order", "order must be positive")
    if len(spec.weights) != 4:
        raise InvalidAction("bad-weights", "expected four weights")
    if spec.swap:
        if n % 2:
            raise InvalidAction("odd-order", "a swap action has even order, got %d" % n)
        if len({w % 2 for w in spec.weights}) > 1:
            true_order = projective_order(spec)
            raise InvalidAction(
                "parity",
                "swap weights must share parity; the declared order %d is wrong "
                "(computed projective order %d)" % (n, true_order),
            )
        if spec.weights2 is not None:
            raise InvalidAction("extra-weights2", "swap actions take a single weight tuple")
    else:
        if spec.weights2 is None:
            raise InvalidAction("missing-weights2", "diagonal action needs two weight tuples")
        if len(spec.weights2) != 4:
            raise InvalidAction("bad-weights", "expected four weights in the second tuple")
    true_order = projective_order(spec)
    if true_order != n:
        raise InvalidAction(
            "order-mismatch",
            "declared order %d but sigma has projective order %d" % (n, true_order),
        )


# -- action on the pencil of forms ----------------------------------------------


def _action_image(mat, spec: ActionSpec):
    """Image of the form matrix M under sigma: D M^T for a swap, A M B for a
    diagonal action with A = diag(w^a_i), B = diag(w^b_i)."""
    n = spec.order
    if spec.swap:
        d = [root_of_unity(n, r) for r in spec.weights]
        return tuple(
            tuple(d[i] * mat[j][i] for j in range(4)) for i in range(4)
        )
    a = [root_of_unity(n, r) for r in spec.weights]
    b = [root_of_unity(n, r) for r in spec.weights2]
    return tuple(
        tuple(a[i] * mat[i][j] * b[j] for j in range(4)) for i in range(4)
    )


def action_on_forms(m: ModelTriple, spec: ActionSpec):
    """3x3 matrix S with image(M_j) = sum_i S[i][j] M_i, or an error when the
    span of the pencil is not preserved."""
    validate_action(spec)
    cols = [[m.matrices[i][j][k] for i in range(3)] for j in range(4) for k in range(4)]
    s_columns = []
    for j in range(3):
        image = _action_image(m.matrices[j], spec)
        rhs = [image[r][c] for r in range(4) for c in range(4)]
        x = solve(cols, rhs)
        if x is None:
            raise PencilNotInvariant(
                "the action does not preserve the span of the three forms "
                "(form %d maps outside the pencil)" % (j + 1)
            )
        s_columns.append(x)
    return [[s_columns[j][i] for j in range(3)] for i in range(3)]


def _char_poly_3x3(s):
    """Coefficients (c0, c1, c2, 1) of det(t*I - S)."""
    tr = s[0][0] + s[1][1] + s[2][2]
    c2 = -tr
    minors = (
        s[1][1] * s[2][2] - s[1][2] * s[2][1]
        + s[0][0] * s[2][2] - s[0][2] * s[2][0]
        + s[0][0] * s[1][1] - s[0][1] * s[1][0]
    )
    from .linalg import det

    c0 = -det(s)
    return (c0, minors, c2, cyc(1))


def invariant_pencil(m: ModelTriple, spec: ActionSpec) -> InvariantPencil:
    """Diagonalise the action on the pencil: an eigenbasis M'_j together with
    the exponents s_j of the eigenvalues w^{s_j}."""
    s = action_on_forms(m, spec)
    n = spec.order
    coeffs = _char_poly_3x3(s)
    roots = []
    for k in range(n):
        lam = root_of_unity(n, k)
        value = ((coeffs[3] * lam + coeffs[2]) * lam + coeffs[1]) * lam + coeffs[0]
        if value.is_zero():
            roots.append(k)
    vectors = []
    exponents = []
    for k in roots:
        lam = root_of_unity(n, k)
        shifted = [
            [s[i][j] - (lam if i == j else cyc(0)) for j in range(3)]
            for i in range(3)
        ]
        for vec in nullspace(shifted):
            vectors.append(vec)
            exponents.append(k)
    if len(vectors) != 3:
        raise PencilNotInvariant(
            "action on the pencil is not diagonalisable over the declared "
            "root-of-unity eigenvalues (found %d eigenvectors)" % len(vectors)
        )
    matrices = []
    for vec in vectors:
        matrices.append(
            tuple(
                tuple(
                    vec[0] * m.matrices[0][j][k]
                    + vec[1] * m.matrices[1][j][k]
                    + vec[2] * m.matrices[2][j][k]
                    for k in range(4)
                )
                for j in range(4)
            )
        )
    return InvariantPencil(
        matrices=tuple(matrices),
        exponents=tuple(exponents),
        order=n,
        swap=spec.swap,
        weights=spec.weights,
        weights2=spec.weights2,
    )


def pencil_eigen_check(pencil: InvariantPencil) -> bool:
    """Direct check of the eigen-relation defining the invariant pencil."""
    spec = ActionSpec(pencil.order, pencil.weights, pencil.swap, pencil.weights2)
    for mat, s in zip(pencil.matrices, pencil.exponents):
        image = _action_image(mat, spec)
        lam = root_of_unity(pencil.order, s)
        for j in range(4):
            for k in range(4):
                if not (image[j][k] - lam * mat[j][k]).is_zero():
                    return False
    return True


# -- Picard lattice --------------------------------------------------------------


def is_gfano(spec: ActionSpec) -> bool:
    """The invariant Picard lattice has rank one exactly when the action
    swaps the two hyperplane classes."""
    return spec.swap


def picard_involution(c: DivisorClass) -> DivisorClass:
    """The lattice involution exchanging the two blowdown structures:
    H -> 3H - E, E -> 8H - 3E."""
    return DivisorClass(3 * c.a + 8 * c.b, -c.a - 3 * c.b)


def involution_fixed_lattice():
    """Primitive generator of the rank-one fixed lattice of the involution,
    found as the integer kernel of (iota - id)."""
    # rows of iota - id acting on (a, b)
    m00, m01 = 3 - 1, 8
    m10, m11 = -1, -3 - 1
    # integer kernel of [[2, 8], [-1, -4]]
    # solve 2a + 8b = 0 and -a - 4b = 0 over Z
    a, b = -m01 // gcd(m00, m01), m00 // gcd(m00, m01)
    if m10 * a + m11 * b != 0:
        raise AssertionError("involution has no rank-one fixed lattice")
    if a < 0:
        a, b = -a, -b
    return DivisorClass(a, b)


def invariant_sublattice(swap: bool):
    """Generators of the invariant Picard sublattice: rank one, spanned by
    the anticanonical class, for a swap; rank two otherwise."""
    if swap:
        return [involution_fixed_lattice()]
    return [H, E]


# -- random equivariant instances -------------------------------------------------


def transpose_twist_eigenbasis(n: int, weights, s: int):
    """Basis of the w^s-eigenspace of M -> D M^T on 4x4 matrices."""
    basis = []
    for i in range(4):
        if (weights[i] - s) % n == 0:
            mat = [[cyc(0)] * 4 for _ in range(4)]
            mat[i][i] = cyc(1)
            basis.append(tuple(tuple(row) for row in mat))
    for i in range(4):
        for j in range(i + 1, 4):
            if (weights[i] + weights[j] - 2 * s) % n == 0:
                mat = [[cyc(0)] * 4 for _ in range(4)]
                mat[i][j] = root_of_unity(n, weights[i])
                mat[j][i] = root_of_unity(n, s)
                basis.append(tuple(tuple(row) for row in mat))
    return basis


def diagonal_twist_eigenbasis(n: int, weights, weights2, s: int):
    """Basis of the w^s-eigenspace of M -> A M B on 4x4 matrices."""
    basis = []
    for i in range(4):
        for j in range(4):
            if (weights[i] + weights2[j] - s) % n == 0:
                mat = [[cyc(0)] * 4 for _ in range(4)]
                mat[i][j] = cyc(1)
                basis.append(tuple(tuple(row) for row in mat))
    return basis


def _random_combination(basis, rng, n):
    mat = [[cyc(0, n)] * 4 for _ in range(4)]
    for b in basis:
        c = rng.randint(-3, 3)
        if c:
            for j in range(4):
                for k in range(4):
                    mat[j][k] = mat[j][k] + b[j][k] * c
    return tuple(tuple(row) for row in mat)


def _mix_basis(mats, rng):
    """Random invertible integer change of basis of the pencil."""
    while True:
        mix = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        det = (
            mix[0][0] * (mix[1][1] * mix[2][2] - mix[1][2] * mix[2][1])
            - mix[0][1] * (mix[1][0] * mix[2][2] - mix[1][2] * mix[2][0])
            + mix[0][2] * (mix[1][0] * mix[2][1] - mix[1][1] * mix[2][0])
        )
        if det != 0:
            break
    mixed = []
    for i in range(3):
        mat = [[cyc(0)] * 4 for _ in range(4)]
        for j in range(3):
            c = mix[i][j]
            if c:
                for r in range(4):
                    for k in range(4):
                        mat[r][k] = mat[r][k] + mats[j][r][k] * c
        mixed.append(tuple(tuple(row) for row in mat))
    return tuple(mixed)


def random_equivariant_model(
    n: int, weights, exponents, seed: int, attempts: int = 50, mix: bool = True
):
    """A ModelTriple on which the swap action with the given weights acts with
    the prescribed form exponents, found by drawing from exact eigenspaces and
    resampling until the determinantal quartic is smooth.

    Returns (model, spec).  Deterministic in the seed.
    """
    spec = ActionSpec(order=n, weights=tuple(weights), swap=True)
    bases = []
    for s in exponents:
        basis = transpose_twist_eigenbasis(n, spec.weights, s % n)
        if not basis:
            raise GenerationError(
                "the eigenspace for exponent %d mod %d is zero" % (s, n)
            )
        bases.append(basis)
    validate_action(spec)
    rng = random.Random(seed)
    failure = "no draw attempted"
    for _ in range(attempts):
        mats = tuple(_random_combination(b, rng, n) for b in bases)
        if mix:
            candidate = _mix_basis(mats, rng)
        else:
            candidate = mats
        try:
            model = ModelTriple(candidate, n)
            validate_model(model)
            q = determinantal_quartic(model)
        except InvalidModel as exc:
            failure = str(exc)
            continue
        if not quartic_smooth(q):
            failure = "determinantal quartic is singular"
            continue
        return model, spec
    raise GenerationError(
        "no smooth instance in %d attempts (last failure: %s)" % (attempts, failure)
    )


def random_diagonal_model(
    n: int, weights, weights2, exponents, seed: int, attempts: int = 50, mix: bool = True
):
    """Diagonal (non-swap) counterpart of random_equivariant_model."""
    spec = ActionSpec(order=n, weights=tuple(weights), swap=False, weights2=tuple(weights2))
    bases = []
    for s in exponents:
        basis = diagonal_twist_eigenbasis(n, spec.weights, spec.weights2, s % n)
        if not basis:
            raise GenerationError(
                "the eigenspace for exponent %d mod %d is zero" % (s, n)
            )
        bases.append(basis)
    validate_action(spec)
    rng = random.Random(seed)
    failure = "no draw attempted"
    for _ in range(attempts):
        mats = tuple(_random_combination(b, rng, n) for b in bases)
        if mix:
            candidate = _mix_basis(mats, rng)
        else:
            candidate = mats
        try:
            model = ModelTriple(candidate, n)
            validate_model(model)
            q = determinantal_quartic(model)
        except InvalidModel as exc:
            failure = str(exc)
            continue
        if not quartic_smooth(q):
            failure = "determinantal quartic is singular"
            continue
        return model, spec
    raise GenerationError(
        "no smooth instance in %d attempts (last failure: %s)" % (attempts, failure)
    )
