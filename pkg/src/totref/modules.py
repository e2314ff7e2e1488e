"""Finitely presented modules and certified module-level checks.

A module is a cokernel presentation: M = A^g / (column span of rho).  On the
graded backend rho carries a twist layout, so M inherits generator degrees
and finite dimensional graded slices.  The checks in this file are exact at
a declared scope: exhaustive on the finite backend, degree bounded on the
graded one.
"""

from __future__ import annotations

from . import _fp, _zn
from .errors import (DimensionMismatch, InvalidResolution, NotAComplex,
                     TotrefError, WrongBackend)
from .linalg import (Matrix, _flatten_columns, _flatten_vector,
                     _twist_layout, check_exact_at, column_span_size, hstack,
                     infer_degrees, slice_matrix, solve_right)
from .report import FAIL, PASS, VerificationReport
from .rings import (DEFAULT_DEGREE_BOUND, FiniteLocalRing,
                    GradedMonomialRing, ideal_membership, scope_degree,
                    scope_exhaustive)


class PresentedModule:
    """M = Coker(rho), with rho's rows indexing the generators of M."""

    def __init__(self, ring, rho: Matrix, label: str = "M"):
        if rho.ring.key != ring.key:
            raise TotrefError("presentation over a different ring")
        if isinstance(ring, GradedMonomialRing):
            rho = infer_degrees(rho)
        self.ring = ring
        self.rho = rho
        self.label = label
        self.ngens = rho.nrows
        self.gen_degs = rho.row_degs
        self._solver = None

    @classmethod
    def free(cls, ring, n: int = 1, degs=None, label: str = "A") -> "PresentedModule":
        degs = tuple(degs) if degs is not None else \
            ((0,) * n if isinstance(ring, GradedMonomialRing) else None)
        col_degs = (degs[0],) if degs is not None else None
        rho = Matrix.zeros(ring, n, 1, degs, col_degs)
        return cls(ring, rho, label)

    def __repr__(self):
        return f"<module {self.label}: {self.ngens} generators>"

    # -- coset arithmetic (finite backend) ----------------------------------

    def _span_solver(self) -> _zn.SpanSolver:
        if self._solver is None:
            if not isinstance(self.ring, FiniteLocalRing):
                raise WrongBackend("coset enumeration needs the finite backend")
            cols, height = _flatten_columns(self.rho)
            self._solver = _zn.SpanSolver(cols, self.ring.n, height)
        return self._solver

    def canonical_rep(self, column: Matrix) -> tuple[int, ...]:
        """Canonical coordinates of the coset of ``column`` in M."""
        vec = _flatten_vector(self.ring,
                              [column.entries[i][0] for i in range(self.ngens)])
        return self._span_solver().reduce(vec)

    def size(self) -> int:
        """Cardinality of M, finite backend only."""
        if not isinstance(self.ring, FiniteLocalRing):
            raise WrongBackend("cardinality needs the finite backend")
        total = self.ring.carrier_size() ** self.ngens
        return total // self._span_solver().span_size()

    def slice_dim(self, d: int) -> int:
        if not isinstance(self.ring, GradedMonomialRing):
            raise WrongBackend("graded slices need the graded backend")
        _, _, free_dim = _twist_layout(self.ring, self.gen_degs, d)
        if free_dim == 0:
            return 0
        sl = slice_matrix(self.rho, d)
        return free_dim - (_fp.rank(sl, self.ring.p) if sl.size else 0)

    def contains_in_relations(self, column: Matrix, bound=None) -> bool:
        """Whether a generator column represents 0 in M."""
        return solve_right(self.rho, column, bound) is not None


def hilbert_function(module: PresentedModule, lo: int, hi: int) -> list[int]:
    return [module.slice_dim(d) for d in range(lo, hi + 1)]


def minimal_generator_count(module: PresentedModule) -> int:
    """mu(M) over the local ring: generators minus residue rank of rho."""
    ring = module.ring
    rho = module.rho
    mat = _fp.zeros(rho.nrows, rho.ncols)
    for i in range(rho.nrows):
        for j in range(rho.ncols):
            mat[i, j] = ring.residue(rho.entries[i][j])
    return rho.nrows - _fp.rank(mat, ring.p)


def fitting_ideal(module: PresentedModule, j: int) -> list:
    """Generators of the j-th Fitting ideal of M (minors of size g - j)."""
    size = module.ngens - j
    if size <= 0:
        return [module.ring.one()]
    rho = module.rho
    if size > rho.nrows or size > rho.ncols:
        return []
    seen = []
    for minor in rho.minors(size):
        if not minor.is_zero and minor not in seen:
            seen.append(minor)
    return seen


def ideals_equal(ring, gens1, gens2, bound=None) -> bool:
    for e in gens1:
        if not ideal_membership(ring, e, list(gens2), bound)[0]:
            return False
    for e in gens2:
        if not ideal_membership(ring, e, list(gens1), bound)[0]:
            return False
    return True


# ---------------------------------------------------------------------------
# maps between presented modules

class ModuleMap:
    """A map M -> N given by a matrix on generator columns."""

    def __init__(self, source: PresentedModule, target: PresentedModule,
                 psi: Matrix):
        if psi.shape != (target.ngens, source.ngens):
            raise DimensionMismatch(
                f"map matrix must be {target.ngens} x {source.ngens}")
        self.source = source
        self.target = target
        self.psi = psi

    def well_defined(self, bound=None) -> tuple[bool, Matrix | None]:
        """Find a lift xi with psi * rho_src = rho_tgt * xi."""
        product = self.psi * self.source.rho
        xi = solve_right(self.target.rho, product, bound)
        return xi is not None, xi

    def is_zero_map(self, bound=None) -> bool:
        return solve_right(self.target.rho, self.psi, bound) is not None

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        if other.target is not self.source and \
                other.target.rho.entries != self.source.rho.entries:
            raise DimensionMismatch("maps are not composable")
        return ModuleMap(other.source, self.target, self.psi * other.psi)

    # -- scope-exact injectivity / surjectivity -----------------------------

    def _sizes_finite(self) -> tuple[int, int, int]:
        stacked = _hstack_mats(self.psi, self.target.rho)
        image_plus_rel = column_span_size(stacked)
        rel = self.target._span_solver().span_size()
        induced_image = image_plus_rel // rel
        return induced_image, self.source.size(), self.target.size()

    def is_injective(self, bound=None) -> bool:
        if isinstance(self.source.ring, FiniteLocalRing):
            induced_image, src, _ = self._sizes_finite()
            return induced_image == src
        return self._graded_ranks_ok(bound, want="inj")

    def is_surjective(self, bound=None) -> bool:
        if isinstance(self.source.ring, FiniteLocalRing):
            induced_image, _, tgt = self._sizes_finite()
            return induced_image == tgt
        return self._graded_ranks_ok(bound, want="surj")

    def is_bijective(self, bound=None) -> bool:
        if isinstance(self.source.ring, FiniteLocalRing):
            induced_image, src, tgt = self._sizes_finite()
            return induced_image == src == tgt
        return self._graded_ranks_ok(bound, want="bij")

    def _graded_ranks_ok(self, bound, want: str) -> bool:
        ring = self.source.ring
        if bound is None:
            bound = DEFAULT_DEGREE_BOUND
        psi = self.psi
        if psi.row_degs is None or psi.col_degs is None:
            psi = psi.with_degrees(self.target.gen_degs, self.source.gen_degs)
        stacked = _hstack_mats(psi, self.target.rho)
        start = min(min(self.source.gen_degs), min(self.target.gen_degs))
        for d in range(start, bound + 1):
            sl_all = slice_matrix(stacked, d)
            sl_rel = slice_matrix(self.target.rho, d)
            rank_all = _fp.rank(sl_all, ring.p) if sl_all.size else 0
            rank_rel = _fp.rank(sl_rel, ring.p) if sl_rel.size else 0
            dim_image = rank_all - rank_rel
            if want in ("inj", "bij"):
                if dim_image != self.source.slice_dim(d):
                    return False
            if want in ("surj", "bij"):
                if dim_image != self.target.slice_dim(d):
                    return False
        return True


def _hstack_mats(a: Matrix, b: Matrix) -> Matrix:
    if a.row_degs is not None and b.row_degs is not None \
            and a.row_degs != b.row_degs:
        raise DimensionMismatch("cannot stack maps with different codomain "
                                "twists")
    return hstack([a, b])


# ---------------------------------------------------------------------------
# isomorphism by explicit witness

def verify_iso_witness(source: PresentedModule, target: PresentedModule,
                       p_matrix: Matrix, s_matrix: Matrix | None = None,
                       bound=None,
                       name: str = "isomorphism-witness") -> VerificationReport:
    """Certify source = target via a generator change P invertible on cosets.

    Checks P rho_src = rho_tgt S (S solved for when not supplied), then
    finds V with P V = I modulo the target relations and checks that V
    descends and that V P = I modulo the source relations, so the two
    induced maps are mutually inverse module isomorphisms.  P need not be
    square: a presentation with redundant generators admits a rectangular
    change of generators.
    """
    ring = source.ring
    scope = (scope_exhaustive() if isinstance(ring, FiniteLocalRing)
             else scope_degree(bound if bound is not None
                               else DEFAULT_DEGREE_BOUND))
    # twist layouts are re-derived per solve; witnesses stay layout-free
    p_matrix = p_matrix.without_degrees()
    rho_src = source.rho.without_degrees()
    rho_tgt = target.rho.without_degrees()
    details: dict = {"P": repr(p_matrix)}
    if s_matrix is None:
        s_matrix = solve_right(rho_tgt, p_matrix * rho_src, bound)
        if s_matrix is None:
            details["failure"] = "P does not carry relations into relations"
            return VerificationReport(name, FAIL, scope, details)
    else:
        s_matrix = s_matrix.without_degrees()
    details["S"] = repr(s_matrix)
    if (p_matrix * rho_src).entries != (rho_tgt * s_matrix).entries:
        details["failure"] = "P rho != rho' S"
        return VerificationReport(name, FAIL, scope, details)
    stacked = hstack([p_matrix, rho_tgt])
    solution = solve_right(stacked, Matrix.identity(ring, target.ngens),
                           bound)
    if solution is None:
        details["failure"] = "P has no right inverse modulo the target " \
                             "relations"
        return VerificationReport(name, FAIL, scope, details)
    p_inv = Matrix(ring,
                   [solution.entries[i] for i in range(source.ngens)])
    details["P_inverse"] = repr(p_inv)
    if solve_right(rho_src, p_inv * rho_tgt, bound) is None:
        details["failure"] = "P^-1 does not carry relations into relations"
        return VerificationReport(name, FAIL, scope, details)
    residual = p_inv * p_matrix - Matrix.identity(ring, source.ngens)
    if not residual.is_zero and \
            solve_right(rho_src, residual, bound) is None:
        details["failure"] = "P^-1 P is not the identity on cosets"
        return VerificationReport(name, FAIL, scope, details)
    return VerificationReport(name, PASS, scope, details)


# ---------------------------------------------------------------------------
# duals and resolutions

def dual_presentation(module: PresentedModule,
                      next_matrix: Matrix,
                      label: str | None = None) -> PresentedModule:
    """Presentation of Hom(M, A) for M with a periodic complete resolution.

    For M = Coker(rho) sitting in an exact two-periodic complex whose next
    differential is ``next_matrix``, dualizing the complex exhibits
    Hom(M, A) as Coker(rho transposed).  The composite rho * next must
    vanish; exactness of the ambient complex is the caller's certificate.
    """
    if module.rho.ncols != next_matrix.nrows:
        raise DimensionMismatch("next differential has the wrong shape")
    if not (module.rho * next_matrix).is_zero:
        raise NotAComplex("rho composed with the next differential is nonzero")
    rho_dual = module.rho.transpose()
    return PresentedModule(module.ring, rho_dual,
                           label or f"dual({module.label})")


def validate_resolution(module: PresentedModule, differentials: list[Matrix],
                        bound=None) -> VerificationReport:
    """Check that d_1, d_2, ... resolve M: d_1 = rho and exact at each F_i."""
    if not differentials or differentials[0].entries != module.rho.entries:
        raise InvalidResolution("first differential must be the presentation")
    rep = VerificationReport("resolution-valid", PASS,
                             scope_exhaustive()
                             if isinstance(module.ring, FiniteLocalRing)
                             else scope_degree(bound if bound is not None
                                               else DEFAULT_DEGREE_BOUND))
    for i in range(len(differentials) - 1):
        outgoing = differentials[i]
        incoming = differentials[i + 1]
        try:
            sub = check_exact_at(incoming, outgoing, bound,
                                 name=f"exact-at-step-{i + 1}")
        except NotAComplex as ex:
            raise InvalidResolution(str(ex)) from ex
        rep.add(sub)
    if not rep.passed:
        raise InvalidResolution(
            f"claimed resolution is not exact: {rep.first_failure()}")
    return rep


def ext_vanishing(module: PresentedModule, differentials: list[Matrix],
                  i_max: int, bound=None,
                  name: str = "ext-vanishing") -> VerificationReport:
    """Certify Ext^i(M, A) = 0 for 1 <= i <= i_max from a free resolution.

    ``differentials`` must contain d_1 .. d_(i_max+1); the resolution is
    validated first and a failing validation raises InvalidResolution.
    Each vanishing claim is the exactness of the dualized complex at F_i*.
    """
    if len(differentials) < i_max + 1:
        raise InvalidResolution(
            f"need {i_max + 1} differentials to reach Ext^{i_max}")
    rep = VerificationReport(name, PASS,
                             scope_exhaustive()
                             if isinstance(module.ring, FiniteLocalRing)
                             else scope_degree(bound if bound is not None
                                               else DEFAULT_DEGREE_BOUND))
    rep.add(validate_resolution(module, differentials, bound))
    for i in range(1, i_max + 1):
        incoming = differentials[i - 1].transpose()
        outgoing = differentials[i].transpose()
        rep.add(check_exact_at(incoming, outgoing, bound,
                               name=f"ext-{i}-vanishes"))
    return rep


# ---------------------------------------------------------------------------
# finite backend isomorphism invariants

def finite_module_invariants(module: PresentedModule) -> tuple[int, ...]:
    """The sizes |p^j M| for 0 <= j < k, a complete invariant over Z/p^k.

    Finitely generated Z/p^k modules are finite abelian p-groups, and the
    multiset of cyclic summands is determined by these sizes.  Only valid
    for the plain Z/p^k backend (no ring extension).
    """
    ring = module.ring
    if not isinstance(ring, FiniteLocalRing) or ring.ext_degree != 1:
        raise WrongBackend("size invariants need the plain Z/p^k backend")
    sizes = []
    rel_size = module._span_solver().span_size()
    for j in range(ring.k):
        scale = Matrix.identity(ring, module.ngens) * (ring.p ** j)
        stacked = _hstack_mats(scale, module.rho)
        sizes.append(column_span_size(stacked) // rel_size)
    return tuple(sizes)


def finite_modules_isomorphic(m1: PresentedModule, m2: PresentedModule) \
        -> tuple[bool, tuple[int, ...], tuple[int, ...]]:
    inv1 = finite_module_invariants(m1)
    inv2 = finite_module_invariants(m2)
    return inv1 == inv2, inv1, inv2
