"""Sub-bifunctors of the extension bifunctor, and their relative homology.

A test module determines two collections of short exact sequences:

* covariant flavor: the sequences whose epi stays surjective after applying
  maps-from-the-test-module (every map out of the test module lifts);
* contravariant flavor: the sequences whose mono stays "surjective on
  restrictions" after applying maps-to-the-test-module (every map into the
  test module extends).

Each collection is closed under pullback and pushout, so it cuts a subgroup
out of every first extension group and carries its own homological algebra:
enough relative projectives and injectives, resolutions built from
add-approximations, derived extension groups, and relative projective and
injective dimensions.  Everything here is layered on the absolute machinery
in homology: the relative resolutions reuse the same lazy Resolution class
with an approximation step instead of a cover, and relative extension
dimensions come from the same hom-complex rank computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exact_linalg import Matrix, QQ
from .path_algebra import AlgebraError
from .rep import (
    Module,
    Morphism,
    ShortExactSequence,
    assemble_from_components,
    assemble_into_components,
    cogenerator_module,
    cokernel,
    direct_sum,
    enumerate_indecomposables_nakayama,
    hom_basis,
    hom_dim,
    hom_space,
    kernel,
    regular_module,
    zero_module,
)
from .homology import (
    Resolution,
    dtr,
    ext1_space,
    ext_dim,
    in_add,
    minimal_left_approximation,
    minimal_right_approximation,
    resolution_cohomology_dim,
    syzygy_lift,
    trd,
)

VARIANCES = ("covariant", "contravariant")


class SubBifunctor:
    """A sub-bifunctor of the first extension bifunctor, cut out by a module.

    variance "covariant" keeps the sequences that stay exact under maps from
    the test module; "contravariant" keeps those that stay exact under maps
    into it.  The relative projectives are the summands of
    projectives_module() and the relative injectives the summands of
    injectives_module(); both collections contain the absolute ones, so
    approximation covers and hulls always exist.
    """

    __slots__ = ("variance", "module", "_cache")

    def __init__(self, variance: str, module: Module):
        if variance not in VARIANCES:
            raise AlgebraError(f"unknown functor variance {variance!r}")
        self.variance = variance
        self.module = module
        self._cache: dict = {}

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<{self.variance} extension sub-bifunctor, test module dims {self.module.dims}>"

    @property
    def algebra(self):
        return self.module.algebra

    def projectives_module(self) -> Module:
        """A module whose summand closure is exactly the relative projectives."""
        mod = self._cache.get("projectives")
        if mod is None:
            if self.variance == "covariant":
                extra = self.module
            else:
                extra = trd(self.module)
            mod = direct_sum(self.algebra, [regular_module(self.algebra), extra])
            self._cache["projectives"] = mod
        return mod

    def injectives_module(self) -> Module:
        """A module whose summand closure is exactly the relative injectives."""
        mod = self._cache.get("injectives")
        if mod is None:
            if self.variance == "covariant":
                extra = dtr(self.module)
            else:
                extra = self.module
            mod = direct_sum(self.algebra, [cogenerator_module(self.algebra), extra])
            self._cache["injectives"] = mod
        return mod


def covariant_functor(module: Module) -> SubBifunctor:
    return SubBifunctor("covariant", module)


def contravariant_functor(module: Module) -> SubBifunctor:
    return SubBifunctor("contravariant", module)


# -- membership tests for a single short exact sequence ------------------------


def is_F_exact(eta: ShortExactSequence, f: SubBifunctor) -> bool:
    """Whether eta belongs to the functor's class of sequences (rank test).

    Covariant: the induced map Hom(test, middle) -> Hom(test, quotient) must
    be surjective.  Contravariant: Hom(middle, test) -> Hom(sub, test) must
    be surjective.
    """
    m = f.module
    if f.variance == "covariant":
        sp_out = hom_space(m, eta.quotient)
        if sp_out.dim == 0:
            return True
        sp_mid = hom_space(m, eta.middle)
        cols = [sp_out.coords(eta.g @ b) for b in sp_mid.basis]
    else:
        sp_out = hom_space(eta.sub, m)
        if sp_out.dim == 0:
            return True
        sp_mid = hom_space(eta.middle, m)
        cols = [sp_out.coords(b @ eta.f) for b in sp_mid.basis]
    if not cols:
        return False
    return Matrix.from_columns(cols).rank() == sp_out.dim


def is_F_exact_by_dims(eta: ShortExactSequence, f: SubBifunctor) -> bool:
    """Membership by dimension count: hom is left exact, so the sequence is
    functor-exact exactly when the middle hom dimension is the sum of the
    outer two."""
    m = f.module
    if f.variance == "covariant":
        return hom_dim(m, eta.middle) == hom_dim(m, eta.sub) + hom_dim(m, eta.quotient)
    return hom_dim(eta.middle, m) == hom_dim(eta.sub, m) + hom_dim(eta.quotient, m)


def is_F_exact_by_pairing(eta: ShortExactSequence, f: SubBifunctor) -> bool:
    """Membership by extension classes: the sequence is functor-exact exactly
    when its pullback along every map test -> quotient (covariant), resp. its
    pushout along every map sub -> test (contravariant), splits."""
    m = f.module
    if f.variance == "covariant":
        space_m = ext1_space(m, eta.sub)
        if space_m.dim == 0:
            return True
        space_c = ext1_space(eta.quotient, eta.sub)
        psi = space_c.cocycle_of(eta)
        for phi in hom_basis(m, eta.quotient):
            kappa = syzygy_lift(phi)
            if any(c != 0 for c in space_m.reduce(psi @ kappa)):
                return False
        return True
    space_push = ext1_space(eta.quotient, m)
    if space_push.dim == 0:
        return True
    space_c = ext1_space(eta.quotient, eta.sub)
    psi = space_c.cocycle_of(eta)
    for alpha in hom_basis(eta.sub, m):
        if any(c != 0 for c in space_push.reduce(alpha @ psi)):
            return False
    return True


def F_subgroup_dim(c: Module, a: Module, f: SubBifunctor) -> int:
    """Dimension of the functor's subgroup of the extension group of (c, a).

    A class belongs to the subgroup when all its pullbacks to the test module
    (covariant), resp. pushouts into it (contravariant), vanish; the subgroup
    is the kernel of the linear map collecting those classes.
    """
    space = ext1_space(c, a)
    if space.dim == 0:
        return 0
    unit = [QQ(0)] * space.dim
    reps = []
    for i in range(space.dim):
        unit[i] = QQ(1)
        reps.append(space.representative(unit))
        unit[i] = QQ(0)
    cols: list[list] = [[] for _ in range(space.dim)]
    m = f.module
    if f.variance == "covariant":
        space_m = ext1_space(m, a)
        if space_m.dim:
            for phi in hom_basis(m, c):
                kappa = syzygy_lift(phi)
                for col, rep in zip(cols, reps):
                    col.extend(space_m.reduce(rep @ kappa))
    else:
        space_push = ext1_space(c, m)
        if space_push.dim:
            for alpha in hom_basis(a, m):
                for col, rep in zip(cols, reps):
                    col.extend(space_push.reduce(alpha @ rep))
    if not cols[0]:
        return space.dim
    return space.dim - Matrix.from_columns(cols).rank()


# -- relative projectives, injectives and approximations ------------------------


def in_F_projectives(x: Module, f: SubBifunctor, seed: int = 0) -> bool:
    return in_add(x, f.projectives_module(), seed=seed)


def in_F_injectives(x: Module, f: SubBifunctor, seed: int = 0) -> bool:
    return in_add(x, f.injectives_module(), seed=seed)


@dataclass(frozen=True)
class ApproximationResult:
    """An add-approximation together with its minimality status.

    morphism: the approximating map (into x for right, out of x for left);
    minimal: True only when minimality is certified by construction;
    kernel_or_cokernel: the kernel of a right approximation, the cokernel of
    a left one -- the next object in the corresponding resolution.
    """

    morphism: Morphism
    minimal: bool
    kernel_or_cokernel: Module


def _canonical_right_approximation(x: Module, m: Module) -> Morphism:
    """The evaluation map from one copy of m per hom-basis element."""
    basis = hom_basis(m, x)
    if not basis:
        return Morphism.zero(zero_module(x.algebra), x)
    src = direct_sum(x.algebra, [m] * len(basis))
    return assemble_from_components(src, x, basis)


def _canonical_left_approximation(x: Module, m: Module) -> Morphism:
    """The coevaluation map into one copy of m per hom-basis element."""
    basis = hom_basis(x, m)
    if not basis:
        return Morphism.zero(x, zero_module(x.algebra))
    tgt = direct_sum(x.algebra, [m] * len(basis))
    return assemble_into_components(x, tgt, basis)


def right_approximation(
    x: Module, m: Module, minimize: bool = True, seed: int = 0
) -> ApproximationResult:
    """A right add(m)-approximation of x: every map from a summand-of-m
    factors through it.  minimize=True certifies minimality; otherwise the
    canonical evaluation map is returned with no minimality claim."""
    if minimize:
        g = minimal_right_approximation(x, m, seed=seed)
    else:
        g = _canonical_right_approximation(x, m)
    ker, _ = kernel(g)
    return ApproximationResult(g, bool(minimize), ker)


def left_approximation(
    x: Module, m: Module, minimize: bool = True, seed: int = 0
) -> ApproximationResult:
    """A left add(m)-approximation of x: every map into a summand-of-m
    factors through it."""
    if minimize:
        g = minimal_left_approximation(x, m, seed=seed)
    else:
        g = _canonical_left_approximation(x, m)
    coker, _ = cokernel(g)
    return ApproximationResult(g, bool(minimize), coker)


# -- relative resolutions and derived extension groups --------------------------


def F_resolution(
    x: Module, f: SubBifunctor, depth: int = 0, minimize: bool = True, seed: int = 0
) -> Resolution:
    """Resolution of x by relative projectives, built from right
    approximations (lazy; at least `depth` terms are materialized up front).

    Every step is onto because the relative projectives contain the absolute
    ones, and every step sequence is functor-exact by the approximation
    property; a non-surjective step is an internal error.  minimize=False
    uses the canonical evaluation-map steps, whose terms grow by a factor of
    roughly the generator's size per step -- practical only at shallow depth.
    """
    key = ("resolution", id(x), bool(minimize))
    entry = f._cache.get(key)
    if entry is None:
        pm = f.projectives_module()

        def step(mod: Module) -> Morphism:
            if minimize:
                g = minimal_right_approximation(mod, pm, seed=seed)
            else:
                g = _canonical_right_approximation(mod, pm)
            if not g.is_epi():
                raise AlgebraError(
                    "internal error: relative projective approximation is not onto"
                )
            return g

        entry = (Resolution(x, step, "relative projective"), x)
        f._cache[key] = entry
    res = entry[0]
    if depth > 0:
        res.ensure_terms(depth)
    return res


def F_coresolution(
    x: Module, f: SubBifunctor, depth: int = 0, minimize: bool = True, seed: int = 0
) -> Resolution:
    """Coresolution of x by relative injectives, built from left
    approximations; the dual of F_resolution."""
    key = ("coresolution", id(x), bool(minimize))
    entry = f._cache.get(key)
    if entry is None:
        im = f.injectives_module()

        def step(mod: Module) -> Morphism:
            if minimize:
                g = minimal_left_approximation(mod, im, seed=seed)
            else:
                g = _canonical_left_approximation(mod, im)
            if not g.is_mono():
                raise AlgebraError(
                    "internal error: relative injective approximation is not one-to-one"
                )
            return g

        entry = (Resolution(x, step, "relative injective"), x)
        f._cache[key] = entry
    res = entry[0]
    if depth > 0:
        res.ensure_terms(depth)
    return res


def resolution_step_sequence(res: Resolution, i: int) -> ShortExactSequence:
    """The i-th step of a resolution as a short exact sequence (i >= 1).

    Chain flavor: 0 -> syzygy(i) -> terms[i-1] -> syzygy(i-1) -> 0.
    Cochain flavor: 0 -> cosyzygy(i-1) -> terms[i-1] -> cosyzygy(i) -> 0.
    """
    if i < 1:
        raise AlgebraError("resolution steps start at index 1")
    _, edge = res.syzygy_edge(i)
    step = res.step_onto(i - 1)
    if res._cochain:
        return ShortExactSequence(step, edge)
    return ShortExactSequence(edge, step)


def ext_F_dim(
    i: int,
    c: Module,
    a: Module,
    f: SubBifunctor,
    via: str = "projective",
    minimize: bool = True,
) -> int:
    """Dimension of the functor's i-th derived extension group of (c, a).

    via="projective" resolves c by relative projectives; via="injective"
    coresolves a by relative injectives.  The two routes agree (relative
    balance) and the second is kept as an independent cross-check.  Degree 1
    always equals F_subgroup_dim(c, a, f).
    """
    if i < 0:
        raise AlgebraError("ext degree must be >= 0")
    if i == 0:
        return hom_dim(c, a)
    if via == "projective":
        return resolution_cohomology_dim(F_resolution(c, f, minimize=minimize), i, a)
    if via == "injective":
        return resolution_cohomology_dim(F_coresolution(a, f, minimize=minimize), i, c)
    raise AlgebraError(f"unknown ext route {via!r}")


def pd_F_le(
    x: Module, f: SubBifunctor, n: int, minimize: bool = True, seed: int = 0
) -> bool:
    """Whether the relative projective dimension of x is at most n."""
    if x.total_dim == 0:
        return True
    if n < 0:
        return False
    res = F_resolution(x, f, minimize=minimize, seed=seed)
    return in_F_projectives(res.syzygy(n), f, seed=seed)


def id_F_le(
    x: Module, f: SubBifunctor, n: int, minimize: bool = True, seed: int = 0
) -> bool:
    """Whether the relative injective dimension of x is at most n."""
    if x.total_dim == 0:
        return True
    if n < 0:
        return False
    res = F_coresolution(x, f, minimize=minimize, seed=seed)
    return in_F_injectives(res.syzygy(n), f, seed=seed)


def gldim_F_le(
    f: SubBifunctor,
    n: int,
    witnesses: Sequence[Module] | None = None,
    minimize: bool = True,
    seed: int = 0,
) -> bool:
    """Whether every witness has relative projective dimension at most n.

    With witnesses=None the complete list of indecomposables is enumerated
    (only available for Nakayama quivers); then the answer is the exact
    relative global dimension bound.  With an explicit witness list the
    result certifies only those modules.
    """
    if witnesses is None:
        witnesses = enumerate_indecomposables_nakayama(f.algebra)
    if not witnesses:
        raise AlgebraError("witness list must be nonempty")
    return all(pd_F_le(x, f, n, minimize=minimize, seed=seed) for x in witnesses)


# -- agreement of relative and absolute extension groups ------------------------


@dataclass
class AgreementReport:
    """Outcome of check_absolute_relative_agreement.

    orthogonality_failures lists (degree, dimension) pairs where the
    vanishing hypothesis fails; mismatches lists
    (side, sample_index, degree, relative_dim, absolute_dim) tuples.  ok is
    True when the hypotheses hold and no mismatch was found; a failed
    hypothesis is reported here, never raised.
    """

    generator_ok: bool
    cogenerator_ok: bool
    orthogonality_failures: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)
    comparisons: int = 0

    @property
    def hypothesis_ok(self) -> bool:
        return self.generator_ok and self.cogenerator_ok and not self.orthogonality_failures

    @property
    def ok(self) -> bool:
        return self.hypothesis_ok and not self.mismatches


def check_absolute_relative_agreement(
    m2: Module,
    m1: Module,
    k: int,
    sample: Sequence[Module],
    minimize: bool = True,
    seed: int = 0,
) -> AgreementReport:
    """Check that extension-vanishing makes relative and absolute agree.

    Hypotheses: m2 generates (all projectives in add m2), m1 cogenerates
    (all injectives in add m1), and the extension groups of (m2, m1) vanish
    in degrees 1..k.  Conclusions checked on the sample, in degrees 1..k:
    the covariant functor of m2 gives relative extension groups of (c, m1)
    matching the absolute ones, and the contravariant functor of m1 does the
    same for (m2, d).  k=0 is vacuous.  Hypothesis failures are recorded in
    the report, not raised; conclusions are skipped when a hypothesis fails.
    """
    algebra = m2.algebra
    generator_ok = all(
        in_add(p, m2, seed=seed)
        for p in regular_module(algebra).summands
    )
    cogenerator_ok = all(
        in_add(i, m1, seed=seed)
        for i in cogenerator_module(algebra).summands
    )
    report = AgreementReport(generator_ok, cogenerator_ok)
    for i in range(1, k + 1):
        d = ext_dim(i, m2, m1)
        if d:
            report.orthogonality_failures.append((i, d))
    if not report.hypothesis_ok:
        return report
    f_cov = covariant_functor(m2)
    f_con = contravariant_functor(m1)
    for idx, c in enumerate(sample):
        for i in range(1, k + 1):
            rel = ext_F_dim(i, c, m1, f_cov, minimize=minimize)
            absolute = ext_dim(i, c, m1)
            report.comparisons += 1
            if rel != absolute:
                report.mismatches.append(("covariant", idx, i, rel, absolute))
    for idx, d_mod in enumerate(sample):
        for i in range(1, k + 1):
            rel = ext_F_dim(i, m2, d_mod, f_con, minimize=minimize)
            absolute = ext_dim(i, m2, d_mod)
            report.comparisons += 1
            if rel != absolute:
                report.mismatches.append(("contravariant", idx, i, rel, absolute))
    return report
