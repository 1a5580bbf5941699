"""Weight-graded module realizations with exact action matrices.

Every module exposes the same surface: a weight-to-dimension map and, for
every matrix unit E_{a,b} of its index set, an exact block matrix from
each weight space to the shifted one.  Diagonal units act by the weight,
so only off-diagonal blocks are ever stored.

Vectors inside a weight space carry the parity of their weight (the sum of
the coefficients on half-odd indices, mod 2); this is what feeds the
Koszul signs of tensor products.
"""

from fractions import Fraction

from .algebra import BasisElement, star_omega, supercommutator, AlgebraElement
from .indices import HalfIndex, IndexSet
from .linalg import ColumnSolver, SpanBuilder, nullspace, rref
from .partitions import Partition
from .weights import Weight, eps, weight_classical, weight_super


class WeightModule:
    """Base class; subclasses fill dims and off-diagonal blocks."""

    index_set: IndexSet
    level: Fraction
    provenance: str

    def weights(self):
        return sorted(self._dims, key=Weight.sort_key)

    def dim(self, w):
        return self._dims.get(w, 0)

    @property
    def total_dim(self):
        return sum(self._dims.values())

    def has_weight(self, w):
        return w in self._dims

    def act(self, gen, w):
        """Block of E_{gen} from the w-space; (target_weight, matrix) or None.

        Diagonal units act by the scalar w(E_a); off-diagonal blocks come
        from the subclass.  A missing or empty target gives None.
        """
        if gen.row not in self.index_set or gen.col not in self.index_set:
            raise ValueError("%r is outside %r" % (gen, self.index_set))
        d = self._dims.get(w, 0)
        if not d:
            return None
        if gen.is_diagonal:
            c = w(gen.row)
            return (w, [[Fraction(c) if i == j else Fraction(0) for j in range(d)] for i in range(d)])
        target = w + gen.weight_shift()
        if target not in self._dims:
            return None
        block = self._block(gen, w)
        if block is None:
            return None
        return (target, block)

    def act_element(self, x, w, vectors):
        """Apply an AlgebraElement to column vectors of the w-space.

        Returns a dict target_weight -> list of columns.  The central
        coefficient acts by the module level.
        """
        out = {}
        ncols = len(vectors)
        if x.central:
            scale = x.central * self.level
            if scale:
                out[w] = [[scale * v for v in col] for col in vectors]
        for gen, coeff in x.basis_terms():
            res = self.act(gen, w)
            if res is None:
                continue
            target, block = res
            cols = [
                [coeff * sum(block[i][k] * col[k] for k in range(len(col))) for i in range(len(block))]
                for col in vectors
            ]
            if target in out:
                out[target] = [
                    [a + b for a, b in zip(c1, c2)] for c1, c2 in zip(out[target], cols)
                ]
            else:
                out[target] = cols
        for key in [k for k, cols in out.items() if all(not v for col in cols for v in col)]:
            del out[key]
        return out


def _matvec(block, vec):
    return [sum(row[k] * vec[k] for k in range(len(vec))) for row in block]


class NaturalModule(WeightModule):
    """The natural module: one basis vector per index, weight e(i)."""

    provenance = "natural"

    def __init__(self, index_set):
        self.index_set = index_set
        self.level = Fraction(0)
        self._dims = {eps(h.value): 1 for h in index_set}

    def _block(self, gen, w):
        # E_{a,b} v_r = delta_{b,r} v_a
        if w == eps(gen.col.value):
            return [[1]]
        return None


class TensorModule(WeightModule):
    """Tensor product with Koszul signs; weights add, levels add."""

    provenance = "tensor"

    def __init__(self, factors):
        if not factors:
            raise ValueError("need at least one factor")
        iset = factors[0].index_set
        for f in factors:
            if f.index_set != iset:
                raise ValueError("tensor factors must share an index set")
        self.index_set = iset
        self.factors = list(factors)
        self.level = sum((f.level for f in factors), Fraction(0))
        basis = {}
        stack = [((), Weight({}, 0))]
        for f in factors:
            fweights = f.weights()
            nxt = []
            for prefix, tot in stack:
                for fw in fweights:
                    for k in range(f.dim(fw)):
                        nxt.append((prefix + ((fw, k),), tot + fw))
            stack = nxt
        for tup, tot in stack:
            basis.setdefault(tot, []).append(tup)
        self._basis = basis
        for w in self._basis:
            self._basis[w].sort(key=lambda tup: tuple((fw.sort_key(), k) for fw, k in tup))
        self._dims = {w: len(v) for w, v in self._basis.items()}
        self._index = {
            w: {tup: i for i, tup in enumerate(tups)} for w, tups in self._basis.items()
        }
        self._block_cache = {}
        self._sparse_cache = {}
        self._sum_cache = {}

    def basis_tuples(self, w):
        return self._basis.get(w, [])

    def slot_act_sparse(self, gen, slot, w):
        """Column-sparse block of the one-slot operator gen^{(slot)}.

        Returns (target_weight, nrows, columns) with one [(row, value), ...]
        list per source basis column, or None if the operator vanishes.
        The Koszul sign is (-1) to the parity of gen times the total parity
        of the factors before the slot.
        """
        key = (gen.key(), slot, w)
        if key in self._sparse_cache:
            return self._sparse_cache[key]
        src = self._basis.get(w)
        result = None
        if src:
            target = w + gen.weight_shift() if not gen.is_diagonal else w
            tindex = self._index.get(target)
            if tindex is not None:
                cols = []
                wrote = False
                factor = self.factors[slot]
                gp = gen.parity
                for tup in src:
                    fw, k = tup[slot]
                    res = factor.act(gen, fw)
                    entries = []
                    if res is not None:
                        ftarget, fblock = res
                        if gp:
                            pref = sum(tup[j][0].parity for j in range(slot)) & 1
                            sign = -1 if pref else 1
                        else:
                            sign = 1
                        for r in range(len(fblock)):
                            val = fblock[r][k]
                            if val:
                                newtup = tup[:slot] + ((ftarget, r),) + tup[slot + 1 :]
                                entries.append((tindex[newtup], sign * val))
                                wrote = True
                    cols.append(entries)
                if wrote:
                    result = (target, len(tindex), cols)
        self._sparse_cache[key] = result
        return result

    def slot_act(self, gen, slot, w):
        """Dense block of gen^{(slot)}; (target_weight, matrix) or None."""
        key = (gen.key(), slot, w)
        if key in self._block_cache:
            return self._block_cache[key]
        sparse = self.slot_act_sparse(gen, slot, w)
        result = None
        if sparse is not None:
            target, nrows, cols = sparse
            block = [[0] * len(cols) for _ in range(nrows)]
            for c, entries in enumerate(cols):
                for r, val in entries:
                    block[r][c] += val
            result = (target, block)
        self._block_cache[key] = result
        return result

    def apply_diagonal_sparse(self, gen, w, vec):
        """Apply the diagonal action of gen to one vector via sparse blocks."""
        target = w if gen.is_diagonal else w + gen.weight_shift()
        out = None
        for slot in range(len(self.factors)):
            sparse = self.slot_act_sparse(gen, slot, w)
            if sparse is None:
                continue
            _, nrows, cols = sparse
            if out is None:
                out = [0] * nrows
            for c, v in enumerate(vec):
                if v:
                    for r, val in cols[c]:
                        out[r] += val * v
        if out is None or not any(out):
            return None
        return target, out

    def slot_apply(self, gen, slot, w, vectors):
        """Apply gen^{(slot)} to columns of the w-space."""
        res = self.slot_act(gen, slot, w)
        if res is None:
            return None
        target, block = res
        return target, [_matvec(block, v) for v in vectors]

    def _block(self, gen, w):
        # diagonal action Delta(gen) = sum over slots
        key = (gen.key(), w)
        if key in self._sum_cache:
            return self._sum_cache[key]
        total = None
        for slot in range(len(self.factors)):
            res = self.slot_act(gen, slot, w)
            if res is None:
                continue
            _, block = res
            if total is None:
                total = [row[:] for row in block]
            else:
                total = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(total, block)]
        self._sum_cache[key] = total
        return total


class ExplicitModule(WeightModule):
    """A module given by explicit dims and off-diagonal blocks."""

    def __init__(self, index_set, level, dims, blocks, provenance, labels=None):
        self.index_set = index_set
        self.level = Fraction(level)
        self._dims = {w: d for w, d in dims.items() if d}
        self._blocks = blocks
        self.provenance = provenance
        self.labels = labels or {}

    def _block(self, gen, w):
        return self._blocks.get((gen.key(), w))


def tensor_product(factors):
    return TensorModule(factors)


def _position(index_set):
    return {h.doubled: i for i, h in enumerate(index_set)}


class _VermaBuilder:
    """PBW machinery for ordinary (full Borel) Verma modules.

    Monomials are non-decreasing tuples of lowering-generator indices in a
    canonical order (root height, then row position); products are applied
    left to right onto the highest weight vector, so position 0 acts last.
    Normal ordering is the usual straightening recursion, memoized.
    """

    def __init__(self, index_set, xi):
        self.index_set = index_set
        self.xi = xi
        pos = _position(index_set)
        members = list(index_set)
        lowering = []
        for bi, b in enumerate(members):
            for ai, a in enumerate(members):
                if ai > bi:
                    lowering.append((ai - bi, ai, (a.doubled, b.doubled)))
        lowering.sort()
        self.gens = [key for _, _, key in lowering]
        self.gen_index = {key: i for i, key in enumerate(self.gens)}
        self.gen_parity = [((r & 1) ^ (c & 1)) for r, c in self.gens]
        self.gen_shift = [
            BasisElement(HalfIndex(r), HalfIndex(c)).weight_shift() for r, c in self.gens
        ]
        self.pos = pos
        self._act_memo = {}
        self._ins_memo = {}
        self._bracket_memo = {}

    def mono_weight(self, mono):
        w = self.xi
        for g in mono:
            w = w + self.gen_shift[g]
        return w

    def _bracket(self, key1, key2):
        memo_key = (key1, key2)
        if memo_key not in self._bracket_memo:
            x = AlgebraElement({key1: 1})
            y = AlgebraElement({key2: 1})
            self._bracket_memo[memo_key] = supercommutator(x, y)
        return self._bracket_memo[memo_key]

    def _elem_act(self, elem, mono):
        out = {}
        for (r, c), coeff in elem.terms.items():
            for mm, v in self.act((r, c), mono).items():
                val = coeff * v
                if val:
                    out[mm] = out.get(mm, 0) + val
        return {k: v for k, v in out.items() if v}

    def act(self, key, mono):
        """Apply the matrix unit with the given (row, col) key to a monomial.

        Returns a dict monomial -> coefficient in the PBW basis.
        """
        memo_key = (key, mono)
        cached = self._act_memo.get(memo_key)
        if cached is not None:
            return cached
        r, c = key
        if not mono:
            if r == c:
                val = self.xi(r)
                out = {(): Fraction(val)} if val else {}
            elif self.pos[r] > self.pos[c]:
                out = {(self.gen_index[key],): Fraction(1)}
            else:
                out = {}
        else:
            head, rest = mono[0], mono[1:]
            hkey = self.gens[head]
            out = dict(self._elem_act(self._bracket(key, hkey), rest))
            sign = -1 if (((r & 1) ^ (c & 1)) and self.gen_parity[head]) else 1
            for mm, v in self.act(key, rest).items():
                for m2, v2 in self.insert(head, mm).items():
                    val = sign * v * v2
                    if val:
                        out[m2] = out.get(m2, 0) + val
            out = {k: v for k, v in out.items() if v}
        self._act_memo[memo_key] = out
        return out

    def insert(self, g, mono):
        """Normal-ordered product of generator g with an ordered monomial."""
        if not mono or g < mono[0]:
            return {(g,) + mono: Fraction(1)}
        if g == mono[0]:
            if self.gen_parity[g]:
                return {}
            return {(g,) + mono: Fraction(1)}
        memo_key = (g, mono)
        cached = self._ins_memo.get(memo_key)
        if cached is not None:
            return cached
        head, rest = mono[0], mono[1:]
        out = dict(self._elem_act(self._bracket(self.gens[g], self.gens[head]), rest))
        sign = -1 if (self.gen_parity[g] and self.gen_parity[head]) else 1
        for mm, v in self.insert(g, rest).items():
            for m2, v2 in self.insert(head, mm).items():
                val = sign * v * v2
                if val:
                    out[m2] = out.get(m2, 0) + val
        out = {k: v for k, v in out.items() if v}
        self._ins_memo[memo_key] = out
        return out

    def monomials(self, depth):
        """All ordered monomials of length <= depth (odd generators square to 0)."""
        out = [()]
        frontier = [()]
        for _ in range(depth):
            nxt = []
            for mono in frontier:
                start = mono[-1] if mono else 0
                for g in range(start, len(self.gens)):
                    if self.gen_parity[g] and mono and mono[-1] == g:
                        continue
                    nxt.append(mono + (g,))
            out.extend(nxt)
            frontier = nxt
        return out

    def deficit_height(self, w):
        """Height of xi - w in the simple-root cone; None if outside."""
        members = list(self.index_set)
        diff = self.xi - w
        total = 0
        partial = 0
        for h in members[:-1]:
            partial += diff(h)
            if partial < 0:
                return None
            total += partial
        partial += diff(members[-1])
        if partial != 0 or diff.level != 0:
            return None
        return total


class _TruncatedVerma(WeightModule):
    """Span of the PBW monomials of length <= depth.

    Weight spaces whose deficit height exceeds the depth hold only part of
    the true Verma weight space; those are listed (per the contract) but
    any action query whose result cannot be represented in the stored
    basis raises instead of silently dropping terms.
    """

    provenance = "verma"

    def __init__(self, index_set, xi, depth):
        self.index_set = index_set
        self.level = xi.level
        self.highest_weight = xi
        self.depth = depth
        self._builder = _VermaBuilder(index_set, xi)
        by_weight = {}
        for mono in self._builder.monomials(depth):
            by_weight.setdefault(self._builder.mono_weight(mono), []).append(mono)
        self.labels = {w: sorted(m) for w, m in by_weight.items()}
        self._dims = {w: len(m) for w, m in self.labels.items()}
        self._index = {
            w: {mono: i for i, mono in enumerate(monos)} for w, monos in self.labels.items()
        }
        self.complete = {
            w
            for w in self.labels
            if (lambda h: h is not None and h <= depth)(self._builder.deficit_height(w))
        }
        self._block_cache = {}

    def act(self, gen, w):
        # the base class treats a missing target as zero, which is wrong
        # when the target was cut off by the depth truncation: probe the
        # straightened action and refuse when anything nonzero leaves
        if gen.row not in self.index_set or gen.col not in self.index_set:
            raise ValueError("%r is outside %r" % (gen, self.index_set))
        if w not in self._dims or gen.is_diagonal:
            return WeightModule.act(self, gen, w)
        target = w + gen.weight_shift()
        if target not in self._dims:
            for mono in self.labels[w]:
                if self._builder.act(gen.key(), mono):
                    raise ValueError(
                        "action of %r on the %r space leaves the depth-%d band"
                        % (gen, w, self.depth)
                    )
            return None
        return WeightModule.act(self, gen, w)

    def _block(self, gen, w):
        key = (gen.key(), w)
        if key in self._block_cache:
            return self._block_cache[key]
        target = w + gen.weight_shift()
        tind = self._index.get(target)
        block = None
        if tind is not None:
            monos = self.labels[w]
            block = [[Fraction(0)] * len(monos) for _ in range(len(tind))]
            wrote = False
            for col, mono in enumerate(monos):
                for mm, v in self._builder.act(gen.key(), mono).items():
                    row = tind.get(mm)
                    if row is None:
                        raise ValueError(
                            "action of %r on the %r space leaves the depth-%d band"
                            % (gen, w, self.depth)
                        )
                    block[row][col] += v
                    wrote = wrote or bool(v)
            if not wrote:
                block = None
        self._block_cache[key] = block
        return block


def verma_truncated(index_set, xi, depth):
    """Ordinary Verma module spanned by lowering monomials of length <= depth."""
    return _TruncatedVerma(index_set, xi, depth)


def gram_matrix(verma, w):
    """Contravariant form of the PBW basis of one Verma weight space.

    <M v | N v> = the coefficient of the empty monomial in omega(M) N v,
    where omega reverses the monomial and transposes each factor with the
    star-structure signs.
    """
    builder = verma._builder
    monos = verma.labels[w]
    gram = [[Fraction(0)] * len(monos) for _ in range(len(monos))]
    for j, right in enumerate(monos):
        vec = {right: Fraction(1)}
        results = {}
        for i, left in enumerate(monos):
            cur = dict(vec)
            for g in left:
                key = builder.gens[g]
                omega_elem = star_omega(AlgebraElement({key: 1}))
                nxt = {}
                for mono, coeff in cur.items():
                    for mm, v in builder._elem_act(omega_elem, mono).items():
                        val = coeff * v
                        if val:
                            nxt[mm] = nxt.get(mm, 0) + val
                cur = nxt
                if not cur:
                    break
            results[i] = cur.get((), Fraction(0))
        for i in range(len(monos)):
            gram[i][j] = Fraction(results[i])
    return gram


def is_psd(gram):
    """Exact positive-semidefiniteness of a symmetric rational matrix.

    Uses the alternating-sign test on det(tI - G): all eigenvalues are
    nonnegative iff (-1)^(n-k) c_k >= 0 for every coefficient.
    """
    from .linalg import charpoly

    p = charpoly(gram)
    n = len(p) - 1
    return all(((-1) ** (n - k)) * p[k] >= 0 for k in range(n + 1))


def _is_dominant_classical(index_set, xi):
    members = list(index_set)
    vals = [xi(h) for h in members]
    return all(a >= b for a, b in zip(vals, vals[1:])) and all(
        isinstance(v, int) for v in vals
    )


def _is_unitarizable_super(index_set, xi):
    from .weights import unitarizable_weight
    from .partitions import GeneralizedPartition

    from .partitions import partition_from_hook_data

    q, m, p, n = index_set.q, index_set.m, index_set.p, index_set.n
    plus_rows = [xi(2 * i) for i in range(1, m + 1)]
    plus_cols = [xi(2 * j - 1) for j in range(1, n + 1)]
    top = sum(abs(v) for v in xi.coeffs.values()) + q + p + 1
    for d in range(1, top + max(m, 1) * (n + 1) + 2):
        # coefficients carry -<lam^-_r - q> - d on e(-r) and -(lam^-)'_s + d
        # on e(-s+1/2); a wrong d shows up as negative reconstructed data
        minus_rows = [d - xi(-2 * s + 1) for s in range(1, q + 1)]
        minus_cols = [-xi(-2 * r) - d for r in range(1, p + 1)]
        if any(x < 0 for x in minus_rows) or any(x < 0 for x in minus_cols):
            continue
        try:
            lam_plus = partition_from_hook_data(m, n, plus_rows, plus_cols)
            lam_minus = partition_from_hook_data(q, p, minus_rows, minus_cols).conjugate()
        except ValueError:
            continue
        if len(lam_plus) + len(lam_minus) > d:
            continue
        parts = list(lam_plus.parts) + [0] * (d - len(lam_plus) - len(lam_minus)) + [
            -x for x in reversed(lam_minus.parts)
        ]
        try:
            gen = GeneralizedPartition(parts)
            cand = unitarizable_weight(gen, p, q, m, n)
        except (ValueError, IndexError):
            continue
        if cand.coeffs == xi.coeffs:
            return True
    return False


def irreducible_truncated(index_set, xi, depth):
    """Irreducible quotient of the truncated Verma by the Gram radical.

    Accepts unitarizable super-flavor weights and dominant-integral
    classical weights; anything else is rejected (the radical is not known
    to cut out the irreducible there).
    """
    if any(not isinstance(v, int) for v in xi.coeffs.values()):
        raise ValueError("highest weight must be integral")
    if index_set.flavor == "classical":
        if not _is_dominant_classical(index_set, xi):
            raise ValueError("classical flavor needs a dominant integral weight")
    elif index_set.flavor == "super":
        if not _is_unitarizable_super(index_set, xi):
            raise ValueError("super flavor needs a unitarizable weight")
    else:
        raise ValueError("unsupported flavor for irreducible realization")
    verma = verma_truncated(index_set, xi, depth)
    # only weight spaces of deficit height <= depth hold the full Verma
    # space; quotient dimensions elsewhere would be wrong
    full = [w for w in verma.weights() if w in verma.complete]
    grams = {w: gram_matrix(verma, w) for w in full}
    pivots = {}
    radicals = {}
    for w, g in grams.items():
        red, piv = rref(g)
        pivots[w] = piv
        radicals[w] = nullspace(g, len(g))
    dims = {w: len(p) for w, p in pivots.items() if p}
    solvers = {}
    for w in dims:
        tdim = verma.dim(w)
        columns = [
            [Fraction(1) if r == p else Fraction(0) for r in range(tdim)]
            for p in pivots[w]
        ] + [[Fraction(x) for x in vec] for vec in radicals[w]]
        solvers[w] = ColumnSolver(columns, nrows=tdim)
    blocks = {}
    members = list(index_set)
    for a in members:
        for b in members:
            if a == b:
                continue
            gen = BasisElement(a, b)
            for w in dims:
                target = w + gen.weight_shift()
                if target not in dims:
                    continue
                res = verma.act(gen, w)
                if res is None:
                    continue
                _, vblock = res
                tpiv = pivots[target]
                tdim = verma.dim(target)
                solver = solvers[target]
                block = [[Fraction(0)] * len(pivots[w]) for _ in range(len(tpiv))]
                wrote = False
                for cnew, csrc in enumerate(pivots[w]):
                    img = [vblock[r][csrc] for r in range(tdim)]
                    coords = solver.solve(img)
                    if coords is None:
                        raise RuntimeError("Gram radical is not invariant")
                    for rr in range(len(tpiv)):
                        block[rr][cnew] = coords[rr]
                        wrote = wrote or bool(coords[rr])
                if wrote:
                    blocks[(gen.key(), w)] = block
    module = ExplicitModule(index_set, xi.level, dims, blocks, "irreducible")
    module.highest_weight = xi
    module.depth = depth
    module.grams = grams
    return module


class SingularSpace:
    """Joint kernel of the simple raising operators inside one weight space."""

    __slots__ = ("module", "weight", "basis")

    def __init__(self, module, weight, basis):
        object.__setattr__(self, "module", module)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("SingularSpace is immutable")

    @property
    def dim(self):
        return len(self.basis)


def singular_space(module, mu):
    """Exact kernel of the stacked simple raising operators on the mu-space."""
    d = module.dim(mu)
    if not d:
        return SingularSpace(module, mu, [])
    rows = []
    for a, b in module.index_set.simple_pairs():
        res = module.act(BasisElement(a, b), mu)
        if res is None:
            continue
        rows.extend(res[1])
    if not rows:
        basis = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    else:
        basis = nullspace(rows, d)
    return SingularSpace(module, mu, basis)


def polynomial_highest_weight(index_set, lam):
    """Hook weight of a partition for a p = q = 0 flavor."""
    if index_set.flavor == "super":
        if index_set.p or index_set.q:
            raise ValueError("polynomial modules need p = q = 0")
        return weight_super(lam, Partition(), 0, 0, index_set.m, 0, index_set.n)
    if index_set.flavor == "classical":
        if index_set.p:
            raise ValueError("polynomial modules need p = 0")
        return weight_classical(lam, Partition(), 0, 0, index_set.n)
    raise ValueError("unsupported flavor for polynomial modules")


_POLY_CACHE = {}


def polynomial_module(index_set, lam):
    """Irreducible polynomial module as a cyclic submodule of a tensor power.

    Realized inside the |lam|-th tensor power of the natural module: take
    the first echelon basis vector of the singular space at the hook
    weight of lam and close it under the simple lowering operators.
    Results are memoized (modules are immutable once built).
    """
    cache_key = (index_set, lam)
    if cache_key in _POLY_CACHE:
        return _POLY_CACHE[cache_key]
    module = _build_polynomial_module(index_set, lam)
    _POLY_CACHE[cache_key] = module
    return module


def _build_polynomial_module(index_set, lam):
    hw = polynomial_highest_weight(index_set, lam)
    size = lam.size
    if size == 0:
        raise ValueError("the empty partition labels the trivial module")
    nat = NaturalModule(index_set)
    amb = TensorModule([nat] * size)
    sing = singular_space(amb, hw)
    if not sing.dim:
        raise RuntimeError("no highest weight vector found at %r" % (hw,))
    spans = {hw: SpanBuilder(amb.dim(hw))}
    spans[hw].add(sing.basis[0])
    frontier = [(hw, list(sing.basis[0]))]
    lowering = [BasisElement(b, a) for a, b in index_set.simple_pairs()]
    while frontier:
        w, vec = frontier.pop()
        for gen in lowering:
            res = amb.apply_diagonal_sparse(gen, w, vec)
            if res is None:
                continue
            target, img = res
            if target not in spans:
                spans[target] = SpanBuilder(amb.dim(target))
            if spans[target].add(img):
                frontier.append((target, img))
    bases = {w: sb.basis() for w, sb in spans.items() if len(sb)}
    dims = {w: len(b) for w, b in bases.items()}
    solvers = {w: ColumnSolver(basis, nrows=amb.dim(w)) for w, basis in bases.items()}
    blocks = {}
    members = list(index_set)
    for a in members:
        for b in members:
            if a == b:
                continue
            gen = BasisElement(a, b)
            shift = gen.weight_shift()
            for w, basis in bases.items():
                target = w + shift
                images = [amb.apply_diagonal_sparse(gen, w, vec) for vec in basis]
                if all(img is None for img in images):
                    continue
                if target not in bases:
                    raise RuntimeError("cyclic submodule is not invariant")
                solver = solvers[target]
                sub = [[Fraction(0)] * len(basis) for _ in range(dims[target])]
                wrote = False
                for j, res in enumerate(images):
                    if res is None:
                        continue
                    coords = solver.solve(res[1])
                    if coords is None:
                        raise RuntimeError("cyclic submodule is not invariant")
                    for i, cval in enumerate(coords):
                        sub[i][j] = cval
                        wrote = wrote or bool(cval)
                if wrote:
                    blocks[(gen.key(), w)] = sub
    module = ExplicitModule(index_set, 0, dims, blocks, "polynomial")
    module.highest_weight = hw
    module.shape = lam
    module.ambient = amb
    module.embeddings = bases
    return module


def truncate_module(module, smaller):
    """Weight-band restriction of a module to a smaller index set."""
    from .weights import in_lattice

    dims = {w: d for w, d in module._dims.items() if in_lattice(w, smaller)}
    blocks = {}
    members = list(smaller)
    for a in members:
        for b in members:
            if a == b:
                continue
            gen = BasisElement(a, b)
            for w in dims:
                res = module.act(gen, w)
                if res is None:
                    continue
                target, block = res
                if target in dims and any(any(row) for row in block):
                    blocks[(gen.key(), w)] = block
    out = ExplicitModule(smaller, module.level, dims, blocks, "truncation")
    return out
