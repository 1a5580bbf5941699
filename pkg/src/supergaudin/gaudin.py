"""Casimir tensors and quadratic/cubic Gaudin Hamiltonians as exact matrices.

Hamiltonians act per weight space of a tensor product; all matrices are
rational once the points z are rational.  The central-extension convention
is assembled honestly from the extended Casimir tensor (with its K terms)
acting through the iota-twisted generator actions, so the relation between
the two conventions is something the test suite verifies rather than a
definition.
"""

from fractions import Fraction

from .algebra import BasisElement
from .indices import HalfIndex
from .linalg import (
    SpanBuilder,
    commutator,
    mat_mul,
    max_abs,
    squarefree_certificate,
)
from .modules import TensorModule

K_SYMBOL = "K"


class CasimirTensor:
    """A list of two-site terms (coefficient, left op, right op)."""

    __slots__ = ("index_set", "central", "terms")

    def __init__(self, index_set, central, terms):
        object.__setattr__(self, "index_set", index_set)
        object.__setattr__(self, "central", central)
        object.__setattr__(self, "terms", tuple(terms))

    def __setattr__(self, name, value):
        raise AttributeError("CasimirTensor is immutable")

    def __len__(self):
        return len(self.terms)


def casimir(index_set, central=False):
    """The Casimir symmetric tensor of a flavor.

    sum over i, j of (-1)^{2j} E_{i,j} (x) E_{j,i}, and with central=True
    also -(K (x) E_i + E_i (x) K) over the negative indices i.
    """
    terms = []
    members = list(index_set)
    for i in members:
        for j in members:
            coeff = -1 if j.parity else 1
            terms.append((Fraction(coeff), BasisElement(i, j), BasisElement(j, i)))
    if central:
        for i in members:
            if i.doubled < 0:
                diag = BasisElement(i, i)
                terms.append((Fraction(-1), K_SYMBOL, diag))
                terms.append((Fraction(-1), diag, K_SYMBOL))
    return CasimirTensor(index_set, central, terms)


def _iota_diag_correction(gen, level):
    # the extended E_a acts on a plain realization through iota^{-1}:
    # iota(E_a) = E_a - (-1)^{parity(a)} K for a < 0, so pulling the
    # extended unit back ADDS (-1)^{parity(a)} times the K scalar
    if gen.is_diagonal and gen.row.doubled < 0:
        sign = -1 if gen.row.parity else 1
        return sign * level
    return 0


def _slot_block(tensor, op, slot, w, levels, twisted):
    """Block of a one-slot operator on the w-space; None if zero.

    ``op`` is a BasisElement or the K symbol.  With ``twisted`` the
    diagonal units act through iota (plain action plus a central scalar).
    """
    d = tensor.dim(w)
    if op == K_SYMBOL:
        c = levels[slot]
        if not c:
            return None
        return (w, [[c if i == j else Fraction(0) for j in range(d)] for i in range(d)])
    res = tensor.slot_act(op, slot, w)
    if twisted:
        c = _iota_diag_correction(op, levels[slot])
        if c:
            if res is None:
                return (w, [[c if i == j else Fraction(0) for j in range(d)] for i in range(d)])
            target, block = res
            block = [row[:] for row in block]
            for i in range(d):
                block[i][i] += c
            return (target, block)
    return res


def _compose_slots(tensor, ops_and_slots, w, levels, twisted):
    """Matrix of a product of one-slot operators on the w-space.

    ``ops_and_slots`` lists (op, slot) left to right as written; the
    rightmost factor acts first.  Returns None if anything vanishes, and
    requires the net weight shift to be zero.
    """
    d = tensor.dim(w)
    if not d:
        return None
    current_w = w
    block = None
    for op, slot in reversed(ops_and_slots):
        res = _slot_block(tensor, op, slot, current_w, levels, twisted)
        if res is None:
            return None
        current_w, step = res
        block = step if block is None else mat_mul(step, block)
    if current_w != w:
        raise ValueError("operator product does not preserve the weight")
    return block


def apply_pair_op(tensor, cas, i, j, w, vectors):
    """Apply the two-site tensor on slots (i, j) to columns of the w-space.

    Slots are 1-based as in the Hamiltonian formulas.
    """
    ell = len(tensor.factors)
    if not (1 <= i <= ell and 1 <= j <= ell) or i == j:
        raise ValueError("slots must be distinct and within 1..%d" % ell)
    mat = pair_matrix(tensor, cas, i, j, w, levels=None)
    if mat is None:
        return [[Fraction(0)] * tensor.dim(w) for _ in vectors]
    return [[sum(row[k] * vec[k] for k in range(len(vec))) for row in mat] for vec in vectors]


def pair_matrix(tensor, cas, i, j, w, levels=None):
    """Exact matrix of the (i, j) two-site Casimir action on the w-space."""
    twisted = cas.central
    if levels is None:
        levels = [f.level for f in tensor.factors]
    total = None
    for coeff, left, right in cas.terms:
        block = _compose_slots(tensor, [(left, i - 1), (right, j - 1)], w, levels, twisted)
        if block is None:
            continue
        if total is None:
            total = [[coeff * x for x in row] for row in block]
        else:
            for r, row in enumerate(block):
                trow = total[r]
                for c, x in enumerate(row):
                    if x:
                        trow[c] += coeff * x
    return total


class HamiltonianFamily:
    """A z-parameterized commuting family on the weight spaces of a tensor.

    kind is "quadratic", "cubicC" or "cubicD"; the convention is "plain"
    (no K terms) or "central" (extended Casimir through iota).
    """

    def __init__(self, tensor, z, kind, convention, levels, matrix_fn):
        z = tuple(Fraction(x) for x in z)
        if len(set(z)) != len(z):
            raise ValueError("z points must be pairwise distinct")
        if len(z) != len(tensor.factors):
            raise ValueError("need one z point per tensor factor")
        if len(z) < 2:
            raise ValueError("need at least two sites")
        self.tensor = tensor
        self.z = z
        self.kind = kind
        self.convention = convention
        self.levels = levels
        self._matrix_fn = matrix_fn
        self._cache = {}

    @property
    def ell(self):
        return len(self.z)

    def matrix(self, i, w):
        """Exact matrix of the i-th Hamiltonian (1-based) on the w-space."""
        if not 1 <= i <= self.ell:
            raise ValueError("site index out of range")
        key = (i, w)
        if key not in self._cache:
            self._cache[key] = self._matrix_fn(i, w)
        return self._cache[key]

    def matrices(self, w):
        return [self.matrix(i, w) for i in range(1, self.ell + 1)]

    def restricted(self, i, space):
        """Matrix of the i-th Hamiltonian on an invariant subspace basis."""
        return restrict_to_basis(self.matrix(i, space.weight), space.basis)


def restrict_to_basis(mat, basis):
    """Express an operator on the span of basis columns; error if not invariant."""
    from .linalg import ColumnSolver

    columns = [list(map(Fraction, vec)) for vec in basis]
    solver = ColumnSolver(columns, nrows=len(mat))
    out = [[Fraction(0)] * len(basis) for _ in range(len(basis))]
    for jcol, vec in enumerate(columns):
        img = [sum(mat[r][k] * vec[k] for k in range(len(vec))) for r in range(len(mat))]
        coords = solver.solve(img)
        if coords is None:
            raise ValueError("subspace is not invariant under the operator")
        for r, c in enumerate(coords):
            out[r][jcol] = c
    return out


def quadratic_family(tensor, z, convention="plain", levels=None):
    """The quadratic Hamiltonians H^i = sum_{j != i} Omega^{(ij)} / (z_i - z_j)."""
    if convention not in ("plain", "central"):
        raise ValueError("convention must be plain or central")
    cas = casimir(tensor.index_set, central=(convention == "central"))
    if levels is None:
        levels = [f.level for f in tensor.factors]
    levels = [Fraction(x) for x in levels]
    zf = tuple(Fraction(x) for x in z)

    def matrix_fn(i, w):
        d = tensor.dim(w)
        total = [[Fraction(0)] * d for _ in range(d)]
        for j in range(1, len(zf) + 1):
            if j == i:
                continue
            block = pair_matrix(tensor, cas, i, j, w, levels=levels)
            if block is None:
                continue
            scale = 1 / (zf[i - 1] - zf[j - 1])
            for r in range(d):
                trow = total[r]
                brow = block[r]
                for c in range(d):
                    if brow[c]:
                        trow[c] += scale * brow[c]
        return total

    return HamiltonianFamily(tensor, zf, "quadratic", convention, levels, matrix_fn)


def _cubic_sign(r, s, t):
    # (-1)^{2(s+t)(2(r+t)+1)} reduced mod 2 through index parities
    e = (s.parity ^ t.parity) & (r.parity ^ t.parity ^ 1)
    return -1 if e else 1


def cubic_family(tensor, z, kind):
    """The cubic Hamiltonians extracted from the degree-three supertrace.

    kind "C" has the double-pole and two-site-squared terms; kind "D" is
    the single 1/(z_i - z_j) sum.  Defined for p = q = 0 flavors only.
    """
    iset = tensor.index_set
    if kind not in ("C", "D"):
        raise ValueError("kind must be C or D")
    if iset.flavor == "super":
        if iset.p or iset.q:
            raise ValueError("cubic Hamiltonians need p = q = 0")
    elif iset.flavor == "classical":
        if iset.p:
            raise ValueError("cubic Hamiltonians need p = 0")
    else:
        raise ValueError("cubic Hamiltonians are not defined for this flavor")
    members = list(iset)
    levels = [f.level for f in tensor.factors]
    zf = tuple(Fraction(x) for x in z)
    ell = len(zf)

    def matrix_fn(i, w):
        d = tensor.dim(w)
        total = [[Fraction(0)] * d for _ in range(d)]

        def accumulate(ops, scale):
            block = _compose_slots(tensor, ops, w, levels, False)
            if block is None:
                return
            for r in range(d):
                trow = total[r]
                brow = block[r]
                for c in range(d):
                    if brow[c]:
                        trow[c] += scale * brow[c]

        i0 = i - 1
        for r in members:
            for s in members:
                for t in members:
                    sign = _cubic_sign(r, s, t)
                    e_rs = BasisElement(r, s)
                    e_tr = BasisElement(t, r)
                    e_st = BasisElement(s, t)
                    if kind == "D":
                        for j0 in range(ell):
                            if j0 == i0:
                                continue
                            accumulate(
                                [(e_rs, j0), (e_tr, i0), (e_st, i0)],
                                Fraction(sign) / (zf[i0] - zf[j0]),
                            )
                        continue
                    for j0 in range(ell):
                        if j0 == i0:
                            continue
                        for k0 in range(ell):
                            if k0 == i0 or k0 == j0:
                                continue
                            accumulate(
                                [(e_rs, i0), (e_tr, j0), (e_st, k0)],
                                Fraction(sign) / ((zf[i0] - zf[j0]) * (zf[i0] - zf[k0])),
                            )
                        sq = Fraction(sign) / (zf[i0] - zf[j0]) ** 2
                        accumulate([(e_rs, i0), (e_tr, j0), (e_st, j0)], sq)
                        accumulate([(e_rs, j0), (e_tr, i0), (e_st, i0)], -sq)
        return total

    return HamiltonianFamily(tensor, zf, "cubic%s" % kind, "plain", levels, matrix_fn)


def central_shift(p, q, levels, z, i, flavor="super"):
    """Scalar offset between plain and central-convention Hamiltonians.

    Super flavor: (p - q) sum_{j != i} d_i d_j / (z_i - z_j); classical
    flavor: -p times the same sum.  Sites are 1-based.
    """
    z = [Fraction(x) for x in z]
    levels = [Fraction(x) for x in levels]
    total = Fraction(0)
    for j in range(1, len(z) + 1):
        if j == i:
            continue
        total += levels[i - 1] * levels[j - 1] / (z[i - 1] - z[j - 1])
    if flavor == "super":
        return (p - q) * total
    if flavor == "classical":
        return -p * total
    raise ValueError("flavor must be super or classical")


def commutator_residual(A, B):
    """Exact max-norm of [A, B]."""
    return max_abs(commutator(A, B))


def family_commutator_residual(fam_a, fam_b, w):
    """Max over site pairs of the exact norm of commutators on a weight space."""
    worst = Fraction(0)
    for i in range(1, fam_a.ell + 1):
        for j in range(1, fam_b.ell + 1):
            r = commutator_residual(fam_a.matrix(i, w), fam_b.matrix(j, w))
            if r > worst:
                worst = r
    return worst


class JointDiagonalization:
    """Outcome of a joint diagonalization attempt on one space."""

    def __init__(self, certificates, eigenvalues, basis, residual):
        self.certificates = certificates
        self.eigenvalues = eigenvalues
        self.basis = basis
        self.residual = residual

    @property
    def all_certified(self):
        return all(ok for ok, _ in self.certificates)


def joint_diagonalize(mats, rng, tol=1e-9):
    """Certify and jointly diagonalize a commuting family of rational matrices.

    Exact part: pairwise commutators must vanish and every member must have
    a squarefree annihilating polynomial (the squarefree part of its
    characteristic polynomial), which certifies diagonalizability over the
    complex numbers.  Floating part: eigenvectors of a random real
    combination, checked to diagonalize each member within tol.
    """
    import numpy as np

    n = len(mats[0]) if mats else 0
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            if commutator_residual(mats[a], mats[b]):
                raise ValueError("family does not commute exactly")
    certificates = [squarefree_certificate(m) for m in mats]
    if n == 0:
        return JointDiagonalization(certificates, [[] for _ in mats], np.zeros((0, 0)), 0.0)
    coeffs = [rng.uniform(1, 2) for _ in mats]
    combo = np.zeros((n, n))
    for c, m in zip(coeffs, mats):
        combo += c * np.array([[float(x) for x in row] for row in m])
    _, vecs = np.linalg.eig(combo)
    basis = vecs
    inv = np.linalg.inv(basis)
    eigenvalues = []
    residual = 0.0
    for m in mats:
        fm = np.array([[float(x) for x in row] for row in m])
        diag = inv @ fm @ basis
        off = diag - np.diag(np.diag(diag))
        residual = max(residual, float(np.max(np.abs(off))))
        eigenvalues.append([complex(x) for x in np.diag(diag)])
    if residual > tol:
        raise ValueError("joint basis fails to diagonalize within %g" % tol)
    return JointDiagonalization(certificates, eigenvalues, basis, residual)


def cyclic_vector_test(matrices, dim, rng, trials=3):
    """Exact Krylov-span test for a cyclic vector of the generated algebra.

    Applies the matrices repeatedly to a random rational vector and closes
    the span; succeeds if some trial spans the whole space.  Returns
    (found, profile) where the profile lists the span dimension reached in
    each trial.
    """
    profile = []
    for _ in range(trials):
        vec = [Fraction(rng.randint(-5, 5)) for _ in range(dim)]
        if not any(vec):
            vec[0] = Fraction(1)
        span = SpanBuilder(dim)
        span.add(vec)
        frontier = [vec]
        while frontier:
            nxt = []
            for v in frontier:
                for m in matrices:
                    img = [sum(m[r][k] * v[k] for k in range(dim)) for r in range(dim)]
                    if any(img) and span.add(img):
                        nxt.append(img)
            frontier = nxt
            if len(span) == dim:
                break
        profile.append(len(span))
        if len(span) == dim:
            return True, profile
    return False, profile
