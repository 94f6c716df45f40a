"""Chain complexes, projective covers, syzygies, and stable hom machinery.

Module stalks in the singularity category are compared through a
stabilizing colimit: the hom space at stage n is the stable hom between
n-th syzygies, the transitions lift maps through projective covers, and a
table is declared stabilized once the last few transitions are bijective.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Algebra,
    AlgebraError,
    HomSpace,
    LeftModule,
    RightModule,
    _ModuleBase,
    direct_sum,
    hom_space,
    is_module_map,
    projective_left,
    quotient_module,
    simple_modules,
    submodule,
    top_and_radical,
)
from .fp import Mat, Subspace, hstack, quotient_basis

# -- bounded complexes -------------------------------------------------------


class BoundedComplex:
    """A finite family of modules with differentials d^n : X^n -> X^{n+1}."""

    def __init__(self, algebra: Algebra, objects: dict[int, _ModuleBase],
                 diffs: dict[int, Mat], validate: bool = True):
        self.algebra = algebra
        self.objects = {n: m for n, m in objects.items() if m.dim}
        self.diffs = {n: d for n, d in diffs.items()
                      if n in self.objects and (n + 1) in self.objects}
        if validate:
            self._validate()

    @classmethod
    def stalk(cls, module: _ModuleBase, degree: int = 0) -> "BoundedComplex":
        return cls(module.algebra, {degree: module}, {}, validate=False)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.objects)

    def module_at(self, n: int) -> _ModuleBase:
        mod = self.objects.get(n)
        return mod if mod is not None else LeftModule.zero(self.algebra)

    def diff_at(self, n: int) -> Mat:
        d = self.diffs.get(n)
        if d is not None:
            return d
        return Mat.zeros(self.algebra.p, self.module_at(n + 1).dim, self.module_at(n).dim)

    def shift(self, k: int) -> "BoundedComplex":
        """Degrees move by k and differentials pick up the sign (-1)^k."""
        sign = 1 if k % 2 == 0 else -1
        objects = {n - k: m for n, m in self.objects.items()}
        diffs = {n - k: d.scale(sign) for n, d in self.diffs.items()}
        return BoundedComplex(self.algebra, objects, diffs, validate=False)

    def _validate(self) -> None:
        for n, d in self.diffs.items():
            src, tgt = self.module_at(n), self.module_at(n + 1)
            if d.shape != (tgt.dim, src.dim):
                raise AlgebraError(f"differential at degree {n} has shape {d.shape}")
            if not is_module_map(src, tgt, d):
                raise AlgebraError(f"differential at degree {n} is not a module map")
        for n in self.diffs:
            if (n + 1) in self.diffs:
                if not (self.diffs[n + 1] @ self.diffs[n]).is_zero():
                    raise AlgebraError(f"d^2 != 0 at degree {n}")

    def __repr__(self):
        dims = {n: self.objects[n].dim for n in self.degrees}
        return f"BoundedComplex({dims})"


@dataclass(frozen=True)
class ChainMap:
    source: BoundedComplex
    target: BoundedComplex
    maps: dict[int, Mat]

    def map_at(self, n: int) -> Mat:
        m = self.maps.get(n)
        if m is not None:
            return m
        return Mat.zeros(self.source.algebra.p,
                         self.target.module_at(n).dim, self.source.module_at(n).dim)

    def check(self) -> None:
        for n in set(self.source.degrees) | set(self.target.degrees):
            lhs = self.target.diff_at(n) @ self.map_at(n)
            rhs = self.map_at(n + 1) @ self.source.diff_at(n)
            if lhs != rhs:
                raise AlgebraError(f"chain map squares fail at degree {n}")
            src, tgt = self.source.module_at(n), self.target.module_at(n)
            if not is_module_map(src, tgt, self.map_at(n)):
                raise AlgebraError(f"chain map is not a module map at degree {n}")


def mapping_cone(f: ChainMap) -> tuple[BoundedComplex, ChainMap, ChainMap]:
    """Cone of a chain map plus the natural projection to the shifted source
    and the inclusion of the target."""
    f.check()
    x, y = f.source, f.target
    alg = x.algebra
    degrees = sorted(set(d - 1 for d in x.degrees) | set(y.degrees))
    objects, diffs = {}, {}
    proj_maps, incl_maps = {}, {}
    for n in degrees:
        xm, ym = x.module_at(n + 1), y.module_at(n)
        d = xm.dim + ym.dim
        if d == 0:
            continue
        action = np.zeros((alg.dim, d, d), dtype=np.int64)
        for i in range(alg.dim):
            action[i, :xm.dim, :xm.dim] = xm.action[i]
            action[i, xm.dim:, xm.dim:] = ym.action[i]
        objects[n] = LeftModule(alg, action, validate=False)
        eye = np.eye(d, dtype=np.int64)
        proj_maps[n] = Mat(alg.p, eye[:xm.dim, :])
        incl_maps[n] = Mat(alg.p, eye[:, xm.dim:])
    for n in degrees:
        if n not in objects or (n + 1) not in objects:
            continue
        xm, ym = x.module_at(n + 1), y.module_at(n)
        xn, yn = x.module_at(n + 2), y.module_at(n + 1)
        top = np.hstack([(-x.diff_at(n + 1).a) % alg.p,
                         np.zeros((xn.dim, ym.dim), dtype=np.int64)])
        bot = np.hstack([f.map_at(n + 1).a, y.diff_at(n).a])
        diffs[n] = Mat(alg.p, np.vstack([top, bot]))
    cone = BoundedComplex(alg, objects, diffs)
    shifted = x.shift(1)
    projection = ChainMap(cone, shifted, proj_maps)
    inclusion = ChainMap(y, cone, incl_maps)
    projection.check()
    inclusion.check()
    return cone, projection, inclusion


@dataclass(frozen=True)
class HomologyData:
    module: _ModuleBase
    kernel_inclusion: Mat   # basis of ker d^n inside X^n
    projection: Mat         # kernel coords -> homology coords
    section: Mat


def homology_at(c: BoundedComplex, n: int) -> HomologyData:
    mod = c.module_at(n)
    ker = Subspace(c.algebra.p, mod.dim, c.diff_at(n).kernel())
    kmod, inc = submodule(mod, ker)
    img = c.diff_at(n - 1)
    if img.cols and ker.dim:
        in_k = inc.solve_matrix(img)
        if in_k is None:
            raise AlgebraError("image does not lie in the kernel")
        bspace = in_k.T.row_space()
    else:
        bspace = Subspace.zero(c.algebra.p, ker.dim)
    hmod, proj, sect = quotient_module(kmod, bspace)
    return HomologyData(hmod, inc, proj, sect)


def homology(c: BoundedComplex) -> dict[int, _ModuleBase]:
    return {n: homology_at(c, n).module for n in c.degrees}


def induced_on_homology(f: ChainMap, n: int,
                        hx: HomologyData | None = None,
                        hy: HomologyData | None = None) -> Mat:
    hx = hx or homology_at(f.source, n)
    hy = hy or homology_at(f.target, n)
    if hx.module.dim == 0 or hy.module.dim == 0:
        return Mat.zeros(f.source.algebra.p, hy.module.dim, hx.module.dim)
    reps = hx.kernel_inclusion @ hx.section
    mapped = f.map_at(n) @ reps
    in_k = hy.kernel_inclusion.solve_matrix(mapped)
    if in_k is None:
        raise AlgebraError("chain map does not preserve cycles")
    return hy.projection @ in_k


def is_quasi_iso(f: ChainMap) -> bool:
    for n in sorted(set(f.source.degrees) | set(f.target.degrees)):
        hx, hy = homology_at(f.source, n), homology_at(f.target, n)
        if hx.module.dim != hy.module.dim:
            return False
        if hx.module.dim and not induced_on_homology(f, n, hx, hy).is_invertible():
            return False
    return True


@dataclass(frozen=True)
class Triangle:
    """Triangle data from a degreewise short exact sequence of complexes.

    The connecting morphism is carried as the roof (quasi_iso, projection):
    cone -> Z is invertible up to quasi-isomorphism and cone -> X[1] is the
    natural projection.
    """

    f: ChainMap
    g: ChainMap
    cone: BoundedComplex
    quasi_iso: ChainMap
    projection: ChainMap


def ses_to_triangle(f: ChainMap, g: ChainMap) -> Triangle:
    f.check()
    g.check()
    alg = f.source.algebra
    for n in set(f.source.degrees) | set(f.target.degrees) | set(g.target.degrees):
        fn, gn = f.map_at(n), g.map_at(n)
        if (gn @ fn).rows and not (gn @ fn).is_zero():
            raise AlgebraError(f"g o f != 0 at degree {n}")
        if fn.rank() != f.source.module_at(n).dim:
            raise AlgebraError(f"first map not injective at degree {n}")
        if gn.rank() != g.target.module_at(n).dim:
            raise AlgebraError(f"second map not surjective at degree {n}")
        if fn.rank() + gn.rank() != f.target.module_at(n).dim:
            raise AlgebraError(f"sequence not exact at degree {n}")
    cone, projection, _ = mapping_cone(f)
    tmaps = {}
    for n in cone.degrees:
        xm = f.source.module_at(n + 1)
        zn = g.target.module_at(n)
        gn = g.map_at(n)
        tmaps[n] = Mat(alg.p, np.hstack([
            np.zeros((zn.dim, xm.dim), dtype=np.int64), gn.a]))
    t = ChainMap(cone, g.target, tmaps)
    t.check()
    if not is_quasi_iso(t):
        raise AlgebraError("collapse map from the cone is not a quasi-isomorphism")
    return Triangle(f, g, cone, t, projection)


# -- projective covers and syzygies -----------------------------------------


@dataclass(frozen=True)
class Cover:
    projective: _ModuleBase
    map: Mat
    vertices: tuple[int, ...]


def projective_cover(m: _ModuleBase) -> Cover:
    """Minimal projective cover: one summand A*e_v per simple in the top."""
    alg = m.algebra
    if m.dim == 0:
        return Cover(type(m).zero(alg), Mat.zeros(alg.p, 0, 0), ())
    tr = top_and_radical(m)
    right_mod = isinstance(m, RightModule)
    summands, columns, vertices = [], [], []
    for v, e in enumerate(alg.idempotents):
        ev_top = tr.projection @ m.act_matrix(e) @ tr.section
        weight_space = ev_top.column_space()
        if weight_space.dim == 0:
            continue
        proj_mod, _ = _indecomposable_projective(alg, v, right_mod)
        lift_map = m.act_matrix(e) @ tr.section
        for w in weight_space.basis.a:
            # e acts as the identity on its weight space of the top, so this
            # lift lands in e*M and projects back onto w
            u = lift_map.apply(w)
            summands.append(proj_mod)
            vertices.append(v)
            columns.append(_generated_columns(m, alg, v, u, right_mod))
    if not summands:
        raise AlgebraError("nonzero module with zero top")
    total, _, _ = direct_sum(summands) if len(summands) > 1 else (summands[0], None, None)
    cover = hstack(columns)
    if cover.rank() != m.dim:
        raise AlgebraError("projective cover candidate is not surjective")
    rad_p = top_and_radical(total).radical_space
    ker = Subspace(alg.p, total.dim, cover.kernel())
    if not rad_p.contains_space(ker):
        raise AlgebraError("cover kernel escapes the radical (cover not minimal)")
    if not is_module_map(total, m, cover):
        raise AlgebraError("cover map is not a module map")
    return Cover(total, cover, tuple(vertices))


def _indecomposable_projective(alg: Algebra, v: int, right: bool):
    if right:
        space = alg.left_mult_matrix(alg.idempotents[v]).column_space()
        return submodule(alg.regular_right_module(), space)
    return projective_left(alg, v)


def _generated_columns(m: _ModuleBase, alg: Algebra, v: int, u: np.ndarray, right: bool) -> Mat:
    """Columns of the cover map on the summand generated by u at vertex v."""
    if right:
        space = alg.left_mult_matrix(alg.idempotents[v]).column_space()
    else:
        space = alg.right_mult_matrix(alg.idempotents[v]).column_space()
    cols = [m.act_matrix(b).apply(u) for b in space.basis.a]
    return Mat(alg.p, np.array(cols).T)


def syzygy_module(m: _ModuleBase) -> tuple[_ModuleBase, Mat, Cover]:
    """Kernel of the minimal cover, with its inclusion into the cover."""
    cov = projective_cover(m)
    ker = Subspace(m.p, cov.projective.dim, cov.map.kernel()) if m.dim else \
        Subspace.zero(m.p, cov.projective.dim)
    omega, inc = submodule(cov.projective, ker)
    return omega, inc, cov


def syzygy(m: _ModuleBase, n: int) -> _ModuleBase:
    cur = m
    for _ in range(n):
        cur = syzygy_module(cur)[0]
    return cur


def is_projective(m: _ModuleBase) -> bool:
    if m.dim == 0:
        return True
    return syzygy_module(m)[0].dim == 0


# -- projective-summand stripping --------------------------------------------


@dataclass(frozen=True)
class Strip:
    core: _ModuleBase
    stripped: _ModuleBase
    vertices: tuple[int, ...]
    to_core: Mat     # retraction M -> core
    from_core: Mat   # section core -> M


def strip_projectives(m: _ModuleBase) -> Strip:
    """Split off indecomposable projective summands until none remain.

    A summand A*e_v is detected from a basis pair (f, g) whose composite
    g o f is invertible; this is complete because the endomorphism ring of
    an indecomposable projective over a basic algebra is local.
    """
    alg = m.algebra
    right_mod = isinstance(m, RightModule)
    core = m
    to_core = Mat.identity(alg.p, m.dim)
    from_core = Mat.identity(alg.p, m.dim)
    vertices: list[int] = []
    projectives = [_indecomposable_projective(alg, v, right_mod)[0]
                   for v in range(len(alg.idempotents))]
    progress = True
    while progress and core.dim:
        progress = False
        for v, proj in enumerate(projectives):
            if proj.dim > core.dim:
                continue
            split = _find_split(proj, core)
            if split is None:
                continue
            e = split
            ker = Subspace(alg.p, core.dim, e.kernel())
            new_core, inc = submodule(core, ker)
            retract = inc.solve_matrix(Mat.identity(alg.p, core.dim) - e)
            if retract is None:
                raise AlgebraError("splitting idempotent retraction failed")
            to_core = retract @ to_core
            from_core = from_core @ inc
            core = new_core
            vertices.append(v)
            progress = True
            break
    if vertices:
        stripped, _, _ = direct_sum([projectives[v] for v in vertices]) \
            if len(vertices) > 1 else (projectives[vertices[0]], None, None)
    else:
        stripped = type(m).zero(alg)
    return Strip(core, stripped, tuple(vertices), to_core, from_core)


def _find_split(proj: _ModuleBase, m: _ModuleBase) -> Mat | None:
    """Idempotent on m with image a copy of proj, or None."""
    to_m = hom_space(proj, m)
    if to_m.dim == 0:
        return None
    from_m = hom_space(m, proj)
    for f in to_m.mats:
        for g in from_m.mats:
            u = g @ f
            if u.is_invertible():
                return f @ u.inverse() @ g
    return None


# -- stable hom spaces --------------------------------------------------------


@dataclass(frozen=True)
class StableHom:
    """Hom(M, N) modulo maps factoring through a projective.

    Any map through a projective factors through the cover of the target
    (projectives lift along the cover surjection), so the factoring
    subspace is the image of Hom(M, P(N)) under composition with the cover.
    """

    hom: HomSpace
    stable_dim: int
    mats: tuple[Mat, ...]          # representatives of a stable basis
    _proj: Mat                     # hom coords -> stable coords
    _sect: Mat

    @property
    def dim(self) -> int:
        return self.stable_dim

    def stable_coords(self, mat: Mat) -> np.ndarray:
        c = self.hom.coords_of(mat)
        if c is None:
            raise AlgebraError("matrix is not a module map in this hom space")
        return self._proj.apply(c)


def stable_hom(m: _ModuleBase, n: _ModuleBase, cover_n: Cover | None = None) -> StableHom:
    h = hom_space(m, n)
    if h.dim == 0:
        z = Mat.zeros(m.p, 0, 0)
        return StableHom(h, 0, (), z, z)
    cov = cover_n or projective_cover(n)
    through = hom_space(m, cov.projective)
    fact_rows = [(cov.map @ u) for u in through.mats]
    coords = []
    for fmat in fact_rows:
        c = h.coords_of(fmat)
        if c is None:
            raise AlgebraError("factoring map missing from the hom space")
        coords.append(c)
    fact = Subspace.from_rows(m.p, h.dim, np.array(coords).reshape(-1, h.dim)) \
        if coords else Subspace.zero(m.p, h.dim)
    proj, sect = quotient_basis(h.dim, fact)
    mats = tuple(h.element(sect.a[:, i]) for i in range(proj.rows))
    return StableHom(h, proj.rows, mats, proj, sect)


def lift_through_covers(f: Mat, cov_src: Cover, cov_tgt: Cover) -> Mat:
    """F with cover_tgt o F = f o cover_src, found in Hom(P_src, P_tgt)."""
    hp = hom_space(cov_src.projective, cov_tgt.projective)
    p = cov_src.map.p
    if hp.dim == 0:
        lift = Mat.zeros(p, cov_tgt.projective.dim, cov_src.projective.dim)
        if (cov_tgt.map @ lift) != (f @ cov_src.map):
            raise AlgebraError("no lift exists through the covers")
        return lift
    cols = Mat(p, np.array([(cov_tgt.map @ h).a.reshape(-1) for h in hp.mats]).T)
    rhs = (f @ cov_src.map).a.reshape(-1)
    sol = cols.solve(rhs)
    if sol is None:
        raise AlgebraError("no lift exists through the covers")
    return hp.element(sol)


def syzygy_map(f: Mat, src_data, tgt_data) -> Mat:
    """Induced map on syzygies; well defined modulo projective factors.

    ``src_data``/``tgt_data`` are (omega, inclusion, cover) triples as
    returned by syzygy_module.
    """
    omega_s, inc_s, cov_s = src_data
    omega_t, inc_t, cov_t = tgt_data
    lift = lift_through_covers(f, cov_s, cov_t)
    restricted = inc_t.solve_matrix(lift @ inc_s)
    if restricted is None:
        raise AlgebraError("cover lift does not preserve the syzygy")
    return restricted


# -- randomized isomorphism testing ------------------------------------------


@dataclass(frozen=True)
class IsoResult:
    verdict: str                      # "iso" | "not_iso" | "undetermined"
    witness: Mat | None = None
    detail: str = ""

    @property
    def is_iso(self) -> bool:
        return self.verdict == "iso"


def iso_invariants(m: _ModuleBase) -> tuple:
    """Cheap Krull-Schmidt style invariants: dimension, idempotent weights,
    radical filtration, and hom profiles against the simples."""
    alg = m.algebra
    weights = tuple(int(m.act_matrix(e).rank()) for e in alg.idempotents)
    series = []
    cur = m
    while cur.dim:
        tr = top_and_radical(cur)
        series.append(cur.dim)
        if tr.radical.dim == cur.dim:
            raise AlgebraError("radical filtration does not terminate")
        cur = tr.radical
    profile = []
    if isinstance(m, LeftModule):
        for s in simple_modules(alg):
            profile.append((hom_space(s, m).dim, hom_space(m, s).dim))
    return (m.dim, weights, tuple(series), tuple(profile))


def module_iso_test(m: _ModuleBase, n: _ModuleBase, trials: int = 64,
                    seed: int = 0) -> IsoResult:
    if m.dim != n.dim:
        return IsoResult("not_iso", detail=f"dim {m.dim} != {n.dim}")
    if m.dim == 0:
        return IsoResult("iso", Mat.zeros(m.p, 0, 0), "both zero")
    if (m.action == n.action).all():
        return IsoResult("iso", Mat.identity(m.p, m.dim), "identical presentations")
    inv_m, inv_n = iso_invariants(m), iso_invariants(n)
    if inv_m != inv_n:
        return IsoResult("not_iso", detail=f"invariants differ: {inv_m} vs {inv_n}")
    h = hom_space(m, n)
    if h.dim == 0:
        return IsoResult("not_iso", detail="no nonzero homomorphisms")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        cand = h.element(rng.integers(0, m.p, size=h.dim))
        if cand.is_invertible():
            return IsoResult("iso", cand, "random witness")
    return IsoResult("undetermined",
                     detail=f"no invertible combination found in {trials} trials")


# -- bounded projective dimension ---------------------------------------------


@dataclass(frozen=True)
class PdResult:
    finite: bool
    value: int | None
    trace: tuple[int, ...]           # dims of stripped syzygies, stage 0 first
    periodic: tuple[int, int] | None
    bound: int

    @property
    def proven_infinite(self) -> bool:
        return not self.finite and self.periodic is not None


def projdim_bounded(m: _ModuleBase, bound: int = 20, seed: int = 0) -> PdResult:
    """Projective dimension by syzygy iteration up to a bound.

    Syzygies are stripped of projective summands along the way (which does
    not change later syzygies up to isomorphism); a repeat among the
    stripped syzygy classes certifies infinite projective dimension.
    """
    cores = [strip_projectives(m).core]
    trace = [cores[0].dim]
    if cores[0].dim == 0:
        return PdResult(True, 0, tuple(trace), None, bound)
    for d in range(1, bound + 1):
        nxt = strip_projectives(syzygy_module(cores[-1])[0]).core
        trace.append(nxt.dim)
        if nxt.dim == 0:
            return PdResult(True, d, tuple(trace), None, bound)
        for j, old in enumerate(cores):
            if old.dim == nxt.dim and module_iso_test(old, nxt, seed=seed).is_iso:
                return PdResult(False, None, tuple(trace), (j, d), bound)
        cores.append(nxt)
    return PdResult(False, None, tuple(trace), None, bound)


@dataclass(frozen=True)
class GlobalDimension:
    verdict: str                      # "finite" | "infinite" | "undetermined"
    value: int | None
    per_simple: tuple[PdResult, ...]


def global_dimension(alg: Algebra, bound: int = 20, seed: int = 0) -> GlobalDimension:
    results = tuple(projdim_bounded(s, bound, seed) for s in simple_modules(alg))
    if any(r.proven_infinite for r in results):
        return GlobalDimension("infinite", None, results)
    if all(r.finite for r in results):
        return GlobalDimension("finite", max(r.value for r in results), results)
    return GlobalDimension("undetermined", None, results)


# -- singularity-category hom tables -------------------------------------------


@dataclass(frozen=True)
class StableHomTable:
    stage_dims: tuple[tuple[int, int], ...]
    transition_ranks: tuple[int, ...]
    transitions_bijective: tuple[bool, ...]
    stabilized: bool
    window: int
    value: int | None
    capped: bool

    @property
    def trace(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.stage_dims)


def dsg_hom(m: _ModuleBase, n: _ModuleBase, shift: int = 0, max_stage: int = 24,
            window: int = 4, dim_cap: int = 20000) -> StableHomTable:
    """Hom table between module stalks in the singularity category model.

    Stage k compares stable Hom(O^{k+s} M, O^k N) (s folded into whichever
    side the sign dictates); transitions are syzygy lifts.  The table is
    stabilized when the last ``window`` transitions are bijective, and the
    reported value is the stabilized dimension.
    """
    if max_stage < window or window < 2:
        raise ValueError("need max_stage >= window >= 2")
    left = strip_projectives(m).core
    right = strip_projectives(n).core
    for _ in range(shift if shift > 0 else 0):
        left = strip_projectives(syzygy_module(left)[0]).core
    for _ in range(-shift if shift < 0 else 0):
        right = strip_projectives(syzygy_module(right)[0]).core

    stage_dims: list[tuple[int, int]] = []
    ranks: list[int] = []
    bij: list[bool] = []
    capped = False
    cur = stable_hom(left, right)
    for stage in range(max_stage + 1):
        stage_dims.append((stage, cur.dim))
        if stage == max_stage:
            break
        if max(left.dim, right.dim) > dim_cap:
            capped = True
            break
        omega_l = syzygy_module(left)
        omega_r = syzygy_module(right)
        strip_l = strip_projectives(omega_l[0])
        strip_r = strip_projectives(omega_r[0])
        nxt_left, nxt_right = strip_l.core, strip_r.core
        nxt = stable_hom(nxt_left, nxt_right)
        cols = []
        for f in cur.mats:
            lifted = syzygy_map(f, omega_l, omega_r)
            stripped = strip_r.to_core @ lifted @ strip_l.from_core
            cols.append(nxt.stable_coords(stripped))
        t = Mat(m.p, np.array(cols, dtype=np.int64).reshape(len(cols), -1).T) \
            if cols else Mat.zeros(m.p, nxt.dim, 0)
        ranks.append(t.rank())
        bij.append(t.rank() == cur.dim == nxt.dim)
        left, right, cur = nxt_left, nxt_right, nxt
    enough = len(bij) >= window
    stabilized = enough and all(bij[-window:]) and not capped
    value = stage_dims[-1][1] if stabilized else None
    return StableHomTable(tuple(stage_dims), tuple(ranks), tuple(bij),
                          stabilized, window, value, capped)
