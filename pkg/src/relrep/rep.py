"""Finite dimensional representations of a bound quiver algebra.

A module is a dimension vector plus one exact matrix per arrow; a morphism is
one matrix per vertex commuting with the arrow action.  Everything is plain
linear algebra over QQ.

Hom spaces are computed by solving the commutation system.  Three structural
fast paths avoid assembling large systems when the source or target is built
from standard pieces (direct sums, cyclic quotients of projectives, duals of
such): they produce the same bases, just block by block.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Iterable, Sequence

from .exact_linalg import (
    Matrix,
    QQ,
    block_diag,
    hstack,
    intersect_kernels,
    rational,
    subspace_sum,
    vstack,
)
from .path_algebra import AlgebraError, AlgebraPresentation, Path


class ExpressionError(ValueError):
    """Raised for malformed module expressions."""


class CyclicHint:
    """Marks a module as generated by one vector over a single vertex.

    The module is a quotient of the projective at ``vertex`` by the paths of
    length >= ``power`` (power None means no constraint, i.e. the projective
    itself).  ``sections`` embed each vertex space back into the projective's
    path coordinates; ``generator`` is the class of the trivial path.
    """

    __slots__ = ("vertex", "power", "sections", "generator")

    def __init__(self, vertex: int, power: int | None, sections, generator: Matrix):
        self.vertex = vertex
        self.power = power
        self.sections = sections
        self.generator = generator


class Module:
    """A representation: vertex dimensions plus an exact matrix per arrow.

    The matrix for an arrow a: i -> j has shape dims[j] x dims[i] and acts on
    column vectors.  Instances are immutable by convention; identity is object
    identity (no structural __eq__), which keeps them usable as cache keys.
    """

    __slots__ = (
        "algebra",
        "dims",
        "arrow_maps",
        "summands",
        "_offsets",
        "hint",
        "_dual_of",
        "_proj_paths",
        "_proj_vertex",
        "_cache",
    )

    def __init__(
        self,
        algebra: AlgebraPresentation,
        dims: Sequence[int],
        arrow_maps: Sequence[Matrix],
        validate: bool = True,
    ) -> None:
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.quiver.vertex_count:
            raise AlgebraError("dimension vector length mismatch")
        if any(d < 0 for d in self.dims):
            raise AlgebraError("negative dimension")
        arrow_maps = tuple(arrow_maps)
        if len(arrow_maps) != len(algebra.quiver.arrows):
            raise AlgebraError("need one matrix per arrow")
        for idx, a in enumerate(algebra.quiver.arrows):
            m = arrow_maps[idx]
            if m.rows != self.dims[a.target] or m.cols != self.dims[a.source]:
                raise AlgebraError(
                    f"arrow {a.name}: expected shape "
                    f"{self.dims[a.target]}x{self.dims[a.source]}, got {m.rows}x{m.cols}"
                )
        self.arrow_maps = arrow_maps
        self.summands: tuple[Module, ...] | None = None
        self._offsets = None
        self.hint: CyclicHint | None = None
        self._dual_of: Module | None = None
        self._proj_paths = None
        self._proj_vertex = None
        self._cache: dict = {}
        if validate:
            self._validate_relations()

    # -- structure ----------------------------------------------------------

    def _validate_relations(self) -> None:
        for rel in self.algebra.relations:
            acc = None
            for coeff, path in rel.terms:
                term = self.action(path).scale(coeff)
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                raise AlgebraError("arrow maps violate a defining relation")
        bound = self.algebra.nilpotency_bound
        for path in self.algebra.quiver.paths_of_length(bound):
            if not self.action(path).is_zero():
                raise AlgebraError(
                    f"arrow maps violate nilpotency: length-{bound} path acts nonzero"
                )

    def action(self, path: Path) -> Matrix:
        """The matrix of a path acting on this module (first arrow first)."""
        cache = self._cache.setdefault("action", {})
        m = cache.get(path)
        if m is None:
            m = Matrix.identity(self.dims[path.source])
            for idx in path.arrows:
                m = self.arrow_maps[idx] @ m
            cache[path] = m
        return m

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def structurally_equal(self, other: "Module") -> bool:
        """Same algebra, dims and matrices (not isomorphism)."""
        return (
            self.algebra is other.algebra
            and self.dims == other.dims
            and all(a == b for a, b in zip(self.arrow_maps, other.arrow_maps))
        )

    def offsets(self) -> list[tuple[int, ...]]:
        """offsets()[s][v]: start of summand s inside vertex space v."""
        if self.summands is None or self._offsets is None:
            raise AlgebraError("module has no registered summand layout")
        return self._offsets

    def __repr__(self) -> str:
        return f"Module(dims={self.dims})"


class Morphism:
    """A homomorphism of representations: one matrix per vertex."""

    __slots__ = ("source", "target", "maps")

    def __init__(
        self,
        source: Module,
        target: Module,
        maps: Sequence[Matrix],
        validate: bool = True,
    ) -> None:
        if source.algebra is not target.algebra:
            raise AlgebraError("morphism endpoints live over different algebras")
        self.source = source
        self.target = target
        self.maps = tuple(maps)
        if len(self.maps) != len(source.dims):
            raise AlgebraError("need one matrix per vertex")
        for v, m in enumerate(self.maps):
            if m.rows != target.dims[v] or m.cols != source.dims[v]:
                raise AlgebraError(
                    f"vertex {v}: expected {target.dims[v]}x{source.dims[v]}, "
                    f"got {m.rows}x{m.cols}"
                )
        if validate:
            self._validate_commutes()

    @classmethod
    def _make(cls, source: Module, target: Module, maps) -> "Morphism":
        return cls(source, target, maps, validate=False)

    def _validate_commutes(self) -> None:
        for idx, a in enumerate(self.source.algebra.quiver.arrows):
            lhs = self.maps[a.target] @ self.source.arrow_maps[idx]
            rhs = self.target.arrow_maps[idx] @ self.maps[a.source]
            if not (lhs == rhs):
                raise AlgebraError(f"maps do not commute with arrow {a.name}")

    # -- algebra of morphisms ------------------------------------------------

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition self after other (usual g @ f reading)."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise AlgebraError("composition shape mismatch")
        return Morphism._make(
            other.source,
            self.target,
            tuple(g @ f for g, f in zip(self.maps, other.maps)),
        )

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism._make(
            self.source, self.target, tuple(a + b for a, b in zip(self.maps, other.maps))
        )

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism._make(
            self.source, self.target, tuple(a - b for a, b in zip(self.maps, other.maps))
        )

    def scale(self, c) -> "Morphism":
        c = rational(c)
        return Morphism._make(self.source, self.target, tuple(m.scale(c) for m in self.maps))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)

    def is_mono(self) -> bool:
        return all(m.kernel_basis().cols == 0 for m in self.maps)

    def is_epi(self) -> bool:
        return all(m.rank() == m.rows for m in self.maps)

    def is_iso(self) -> bool:
        return all(m.rows == m.cols and m.rank() == m.rows for m in self.maps)

    def flat(self) -> list:
        out = []
        for m in self.maps:
            out.extend(m.flatten())
        return out

    @classmethod
    def identity(cls, module: Module) -> "Morphism":
        return cls._make(module, module, tuple(Matrix.identity(d) for d in module.dims))

    @classmethod
    def zero(cls, source: Module, target: Module) -> "Morphism":
        return cls._make(
            source,
            target,
            tuple(Matrix.zeros(t, s) for t, s in zip(target.dims, source.dims)),
        )

    @classmethod
    def from_flat(cls, source: Module, target: Module, vec: Sequence) -> "Morphism":
        maps = []
        pos = 0
        for v in range(len(source.dims)):
            r, c = target.dims[v], source.dims[v]
            maps.append(
                Matrix(r, c, [[vec[pos + i * c + j] for j in range(c)] for i in range(r)])
            )
            pos += r * c
        return cls._make(source, target, tuple(maps))

    def __repr__(self) -> str:
        return f"Morphism({self.source.dims} -> {self.target.dims})"


class ShortExactSequence:
    """0 -> A -f-> B -g-> C -> 0, validated at construction."""

    __slots__ = ("f", "g")

    def __init__(self, f: Morphism, g: Morphism) -> None:
        if f.target is not g.source and f.target.dims != g.source.dims:
            raise AlgebraError("middle terms do not match")
        if not f.is_mono():
            raise AlgebraError("first map is not injective")
        if not g.is_epi():
            raise AlgebraError("second map is not surjective")
        for gv, fv in zip(g.maps, f.maps):
            if not (gv @ fv).is_zero():
                raise AlgebraError("composite g o f is nonzero")
            # f mono gives rank fv = cols fv; exactness needs rank fv = dim ker gv
            if fv.cols != gv.cols - gv.rank():
                raise AlgebraError("sequence is not exact in the middle")
        self.f = f
        self.g = g

    @property
    def sub(self) -> Module:
        return self.f.source

    @property
    def middle(self) -> Module:
        return self.f.target

    @property
    def quotient(self) -> Module:
        return self.g.target

    def __repr__(self) -> str:
        return (
            f"SES({self.sub.dims} -> {self.middle.dims} -> {self.quotient.dims})"
        )


# -- constructions ----------------------------------------------------------


def zero_module(algebra: AlgebraPresentation) -> Module:
    v = algebra.quiver.vertex_count
    maps = [
        Matrix.zeros(0, 0)
        for _ in algebra.quiver.arrows
    ]
    return Module(algebra, (0,) * v, maps, validate=False)


def proj_module(algebra: AlgebraPresentation, vertex: int) -> Module:
    """The indecomposable projective at a vertex, on its path basis."""
    cache = algebra._cache.setdefault("proj", {})
    if vertex in cache:
        return cache[vertex]
    quiver = algebra.quiver
    per_vertex: list[list[Path]] = [[] for _ in range(quiver.vertex_count)]
    for idx in algebra.basis_by_source[vertex]:
        p = algebra.basis[idx]
        per_vertex[p.target].append(p)
    pos = {p: k for w in range(quiver.vertex_count) for k, p in enumerate(per_vertex[w])}
    dims = [len(per_vertex[w]) for w in range(quiver.vertex_count)]
    maps = []
    for idx, a in enumerate(quiver.arrows):
        m = Matrix.zeros(dims[a.target], dims[a.source])
        for col, p in enumerate(per_vertex[a.source]):
            ext = quiver.concat(p, quiver.arrow_path(idx))
            coords = algebra.reduce_path(ext)
            for bi, c in enumerate(coords):
                if c != 0:
                    q = algebra.basis[bi]
                    m._data[pos[q]][col] = c
        maps.append(m)
    mod = Module(algebra, dims, maps, validate=False)
    mod._proj_paths = tuple(tuple(ps) for ps in per_vertex)
    mod._proj_vertex = vertex
    gen = Matrix.zeros(dims[vertex], 1)
    gen._data[pos[quiver.trivial_path(vertex)]][0] = QQ(1)
    mod.hint = CyclicHint(
        vertex,
        None,
        tuple(Matrix.identity(d) for d in dims),
        gen,
    )
    cache[vertex] = mod
    return mod


def inj_module(algebra: AlgebraPresentation, vertex: int) -> Module:
    """The indecomposable injective at a vertex: dual of the opposite projective."""
    cache = algebra._cache.setdefault("inj", {})
    if vertex in cache:
        return cache[vertex]
    mod = dualize(proj_module(algebra.opposite(), vertex))
    cache[vertex] = mod
    return mod


def simple_module(algebra: AlgebraPresentation, vertex: int) -> Module:
    cache = algebra._cache.setdefault("simple", {})
    if vertex in cache:
        return cache[vertex]
    mod, _ = radical_quotient(proj_module(algebra, vertex), 1)
    cache[vertex] = mod
    return mod


def regular_module(algebra: AlgebraPresentation) -> Module:
    """The algebra as a module: direct sum of all indecomposable projectives."""
    cached = algebra._cache.get("regular")
    if cached is None:
        cached = direct_sum(
            algebra, [proj_module(algebra, v) for v in range(algebra.quiver.vertex_count)]
        )
        algebra._cache["regular"] = cached
    return cached


def cogenerator_module(algebra: AlgebraPresentation) -> Module:
    """Direct sum of all indecomposable injectives."""
    cached = algebra._cache.get("cogenerator")
    if cached is None:
        cached = direct_sum(
            algebra, [inj_module(algebra, v) for v in range(algebra.quiver.vertex_count)]
        )
        algebra._cache["cogenerator"] = cached
    return cached


def direct_sum(algebra: AlgebraPresentation, parts: Sequence[Module]) -> Module:
    parts = list(parts)
    for p in parts:
        if p.algebra is not algebra:
            raise AlgebraError("direct sum over mixed algebras")
    v = algebra.quiver.vertex_count
    dims = tuple(sum(p.dims[w] for p in parts) for w in range(v))
    maps = []
    for idx in range(len(algebra.quiver.arrows)):
        maps.append(block_diag([p.arrow_maps[idx] for p in parts]))
    mod = Module(algebra, dims, maps, validate=False)
    mod.summands = tuple(parts)
    offs = []
    running = [0] * v
    for p in parts:
        offs.append(tuple(running))
        running = [running[w] + p.dims[w] for w in range(v)]
    mod._offsets = offs
    return mod


def summand_injection(sum_module: Module, s: int) -> Morphism:
    parts = sum_module.summands
    offs = sum_module._offsets[s]
    part = parts[s]
    maps = []
    for w in range(len(sum_module.dims)):
        m = Matrix.zeros(sum_module.dims[w], part.dims[w])
        for k in range(part.dims[w]):
            m._data[offs[w] + k][k] = QQ(1)
        maps.append(m)
    return Morphism._make(part, sum_module, tuple(maps))


def summand_projection(sum_module: Module, s: int) -> Morphism:
    parts = sum_module.summands
    offs = sum_module._offsets[s]
    part = parts[s]
    maps = []
    for w in range(len(sum_module.dims)):
        m = Matrix.zeros(part.dims[w], sum_module.dims[w])
        for k in range(part.dims[w]):
            m._data[k][offs[w] + k] = QQ(1)
        maps.append(m)
    return Morphism._make(sum_module, part, tuple(maps))


def assemble_from_components(sum_source: Module, target: Module, comps: Sequence[Morphism]) -> Morphism:
    """Morphism out of a direct sum with the given restrictions to summands."""
    plist = sum_source.summands
    if plist is None or len(comps) != len(plist):
        raise AlgebraError("component count mismatch")
    maps = []
    for w in range(len(sum_source.dims)):
        blocks = [c.maps[w] for c in comps]
        if blocks:
            maps.append(hstack(blocks))
        else:
            maps.append(Matrix.zeros(target.dims[w], 0))
    return Morphism._make(sum_source, target, tuple(maps))


def assemble_into_components(source: Module, sum_target: Module, comps: Sequence[Morphism]) -> Morphism:
    plist = sum_target.summands
    if plist is None or len(comps) != len(plist):
        raise AlgebraError("component count mismatch")
    maps = []
    for w in range(len(source.dims)):
        blocks = [c.maps[w] for c in comps]
        if blocks:
            maps.append(vstack(blocks))
        else:
            maps.append(Matrix.zeros(0, source.dims[w]))
    return Morphism._make(source, sum_target, tuple(maps))


# -- kernels, images, quotients ---------------------------------------------


def kernel(f: Morphism) -> tuple[Module, Morphism]:
    """Kernel submodule with its inclusion."""
    algebra = f.source.algebra
    bases = [m.kernel_basis() for m in f.maps]
    dims = [b.cols for b in bases]
    maps = []
    for idx, a in enumerate(algebra.quiver.arrows):
        img = f.source.arrow_maps[idx] @ bases[a.source]
        sol = bases[a.target].solve_right(img)
        if sol is None:
            raise AlgebraError("kernel is not closed under the arrow action")
        maps.append(sol)
    ker = Module(algebra, dims, maps, validate=False)
    incl = Morphism._make(ker, f.source, tuple(bases))
    return ker, incl


def quotient_by_subspaces(
    module: Module, sub_bases: Sequence[Matrix]
) -> tuple[Module, Morphism, tuple[Matrix, ...]]:
    """Quotient by an arrow-stable family of subspaces.

    Returns the quotient, the projection, and per-vertex sections s_v with
    proj_v @ s_v = id (used to transport morphisms along the quotient).
    """
    algebra = module.algebra
    v_count = len(module.dims)
    projs = []
    sections = []
    for w in range(v_count):
        s = sub_bases[w]
        n = module.dims[w]
        if s.cols == 0:
            projs.append(Matrix.identity(n))
            sections.append(Matrix.identity(n))
            continue
        _, pivots = s.transpose().rref()
        pivot_set = set(pivots)
        complement = [j for j in range(n) if j not in pivot_set]
        ident = Matrix.identity(n)
        t = hstack([s, ident.take_columns(complement)])
        if t.rows != t.cols or not t.is_invertible():
            raise AlgebraError("subspace basis is not independent")
        t_inv = t.inverse()
        projs.append(t_inv.take_rows(range(s.cols, n)))
        sections.append(ident.take_columns(complement))
    dims = [p.rows for p in projs]
    maps = []
    for idx, a in enumerate(algebra.quiver.arrows):
        maps.append(projs[a.target] @ module.arrow_maps[idx] @ sections[a.source])
    quot = Module(algebra, dims, maps, validate=False)
    proj = Morphism._make(module, quot, tuple(projs))
    return quot, proj, tuple(sections)


def cokernel(f: Morphism) -> tuple[Module, Morphism]:
    images = [m.column_space_basis() for m in f.maps]
    quot, proj, _ = quotient_by_subspaces(f.target, images)
    return quot, proj


def image(f: Morphism) -> tuple[Module, Morphism]:
    """Image submodule of the target with its inclusion."""
    algebra = f.source.algebra
    bases = [m.column_space_basis() for m in f.maps]
    dims = [b.cols for b in bases]
    maps = []
    for idx, a in enumerate(algebra.quiver.arrows):
        img = f.target.arrow_maps[idx] @ bases[a.source]
        sol = bases[a.target].solve_right(img)
        if sol is None:
            raise AlgebraError("image is not closed under the arrow action")
        maps.append(sol)
    im = Module(algebra, dims, maps, validate=False)
    incl = Morphism._make(im, f.target, tuple(bases))
    return im, incl


def radical_subspaces(module: Module, power: int = 1) -> list[Matrix]:
    """Per-vertex bases of rad^power(M) = span of images of length-power paths."""
    algebra = module.algebra
    v_count = len(module.dims)
    paths = algebra.quiver.paths_of_length(power)
    per_vertex: list[list[Matrix]] = [[] for _ in range(v_count)]
    for p in paths:
        m = module.action(p)
        if m.cols and not m.is_zero():
            per_vertex[p.target].append(m)
    return [
        subspace_sum(module.dims[w], per_vertex[w]) for w in range(v_count)
    ]


def socle_subspaces(module: Module) -> list[Matrix]:
    """Per-vertex bases of the largest semisimple submodule."""
    algebra = module.algebra
    out = []
    for v in range(len(module.dims)):
        arrows_out = algebra.quiver.arrows_from[v]
        if not arrows_out:
            out.append(Matrix.identity(module.dims[v]))
        else:
            out.append(intersect_kernels([module.arrow_maps[i] for i in arrows_out]))
    return out


def radical_quotient(module: Module, power: int) -> tuple[Module, Morphism]:
    """M / rad^power M with its projection."""
    if power < 1:
        raise AlgebraError("radical power must be >= 1")
    subs = radical_subspaces(module, power)
    quot, proj, sections = quotient_by_subspaces(module, subs)
    parent = module.hint
    if parent is not None:
        eff_power = power if parent.power is None else min(power, parent.power)
        new_sections = tuple(
            ps @ qs for ps, qs in zip(parent.sections, sections)
        )
        quot.hint = CyclicHint(
            parent.vertex,
            eff_power,
            new_sections,
            proj.maps[parent.vertex] @ parent.generator,
        )
    return quot, proj


def top(module: Module) -> tuple[Module, Morphism]:
    return radical_quotient(module, 1)


def loewy_length(module: Module) -> int:
    k = 0
    current = module.dims
    while any(d > 0 for d in current):
        k += 1
        subs = radical_subspaces(module, k)
        current = tuple(s.cols for s in subs)
        if k > module.total_dim + 1:
            raise AlgebraError("radical series does not terminate")
    return k


# -- duality -----------------------------------------------------------------


def dualize(module: Module) -> Module:
    """The QQ-dual as a module over the opposite algebra; an exact duality."""
    if module._dual_of is not None:
        return module._dual_of
    op = module.algebra.opposite()
    if module.summands is not None:
        dual = direct_sum(op, [dualize(s) for s in module.summands])
    else:
        maps = [m.transpose() for m in module.arrow_maps]
        dual = Module(op, module.dims, maps, validate=False)
    dual._dual_of = module
    module._dual_of = dual
    return dual


def dualize_morphism(f: Morphism) -> Morphism:
    return Morphism._make(
        dualize(f.target), dualize(f.source), tuple(m.transpose() for m in f.maps)
    )


# -- hom spaces ---------------------------------------------------------------


class HomSpace:
    """A basis of Hom(X, Y) plus exact coordinate extraction."""

    __slots__ = ("source", "target", "basis", "_coords")

    def __init__(self, source, target, basis, coords: Callable[[Morphism], list]):
        self.source = source
        self.target = target
        self.basis = basis
        self._coords = coords

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, f: Morphism) -> list:
        return self._coords(f)

    def from_coords(self, cs: Sequence) -> Morphism:
        f = Morphism.zero(self.source, self.target)
        for c, b in zip(cs, self.basis):
            if c != 0:
                f = f + b.scale(c)
        return f


def _hom_raw(x: Module, y: Module) -> HomSpace:
    algebra = x.algebra
    v_count = len(x.dims)
    var_offsets = []
    total = 0
    for v in range(v_count):
        var_offsets.append(total)
        total += x.dims[v] * y.dims[v]
    rows = []
    for idx, a in enumerate(algebra.quiver.arrows):
        i, j = a.source, a.target
        xa = x.arrow_maps[idx]
        ya = y.arrow_maps[idx]
        # f_j @ X_a - Y_a @ f_i = 0, entry (r, c): r in Y_j, c in X_i
        for r in range(y.dims[j]):
            for c in range(x.dims[i]):
                row = [QQ(0)] * total
                for k in range(x.dims[j]):
                    coeff = xa[k, c]
                    if coeff != 0:
                        row[var_offsets[j] + r * x.dims[j] + k] += coeff
                for k in range(y.dims[i]):
                    coeff = ya[r, k]
                    if coeff != 0:
                        row[var_offsets[i] + k * x.dims[i] + c] -= coeff
                if any(e != 0 for e in row):
                    rows.append(row)
    if rows:
        system = Matrix.from_rows(rows)
        kern = system.kernel_basis()
    else:
        kern = Matrix.identity(total)
    basis = [
        Morphism.from_flat(x, y, [kern[i, j] for i in range(total)])
        for j in range(kern.cols)
    ]

    # coords solves kern @ c = flat(f); the basis has full column rank, so a
    # left inverse computed once turns every later call into one mat-vec.
    solver: list[Matrix] = []

    def coords(f: Morphism) -> list:
        if kern.cols == 0:
            if not f.is_zero():
                raise AlgebraError("morphism not in hom space")
            return []
        if not solver:
            solver.append(kern.left_inverse())
        flat = f.flat()
        rows = solver[0]._data
        return [
            sum((c * flat[j] for j, c in enumerate(row) if c != 0), QQ(0))
            for row in rows
        ]

    return HomSpace(x, y, basis, coords)


def _hom_sum_source(x: Module, y: Module) -> HomSpace:
    children = [hom_space(s, y) for s in x.summands]
    injections = [summand_injection(x, s) for s in range(len(x.summands))]
    basis = []
    for s, child in enumerate(children):
        offs = x._offsets[s]
        part = x.summands[s]
        for b in child.basis:
            maps = []
            for w in range(len(x.dims)):
                m = Matrix.zeros(y.dims[w], x.dims[w])
                bm = b.maps[w]
                for r in range(bm.rows):
                    for c in range(bm.cols):
                        val = bm[r, c]
                        if val != 0:
                            m._data[r][offs[w] + c] = val
                maps.append(m)
            basis.append(Morphism._make(x, y, tuple(maps)))

    def coords(f: Morphism) -> list:
        out = []
        for s, child in enumerate(children):
            out.extend(child.coords(f @ injections[s]))
        return out

    return HomSpace(x, y, basis, coords)


def _hom_sum_target(x: Module, y: Module) -> HomSpace:
    children = [hom_space(x, t) for t in y.summands]
    projections = [summand_projection(y, t) for t in range(len(y.summands))]
    basis = []
    for t, child in enumerate(children):
        offs = y._offsets[t]
        for b in child.basis:
            maps = []
            for w in range(len(x.dims)):
                m = Matrix.zeros(y.dims[w], x.dims[w])
                bm = b.maps[w]
                for r in range(bm.rows):
                    for c in range(bm.cols):
                        val = bm[r, c]
                        if val != 0:
                            m._data[offs[w] + r][c] = val
                maps.append(m)
            basis.append(Morphism._make(x, y, tuple(maps)))

    def coords(f: Morphism) -> list:
        out = []
        for t, child in enumerate(children):
            out.extend(child.coords(projections[t] @ f))
        return out

    return HomSpace(x, y, basis, coords)


def _cyclic_constraints(algebra: AlgebraPresentation, y: Module, vertex: int, power: int | None):
    if power is None:
        return None
    paths = [p for p in algebra.quiver.paths_of_length(power) if p.source == vertex]
    mats = [y.action(p) for p in paths]
    mats = [m for m in mats if m.rows]
    if not mats:
        return None
    return vstack(mats)


def morphism_from_generator(source: Module, target: Module, u: Matrix) -> Morphism:
    """The morphism out of a cyclic module sending its generator to u.

    The caller guarantees u satisfies the source's defining constraints
    (automatic when the source is a projective).
    """
    hint = source.hint
    if hint is None:
        raise AlgebraError("source module is not cyclic-hinted")
    proj = proj_module(source.algebra, hint.vertex)
    maps = []
    for w in range(len(source.dims)):
        cols = [target.action(p) @ u for p in proj._proj_paths[w]]
        if cols:
            phi_p = hstack(cols)
        else:
            phi_p = Matrix.zeros(target.dims[w], 0)
        maps.append(phi_p @ hint.sections[w])
    return Morphism._make(source, target, tuple(maps))


def _hom_cyclic_source(x: Module, y: Module) -> HomSpace:
    algebra = x.algebra
    hint = x.hint
    v0 = hint.vertex
    constraints = _cyclic_constraints(algebra, y, v0, hint.power)
    if constraints is None:
        gens = Matrix.identity(y.dims[v0])
    else:
        gens = constraints.kernel_basis()
    basis = []
    for col in range(gens.cols):
        basis.append(morphism_from_generator(x, y, gens.column_vector(col)))

    def coords(f: Morphism) -> list:
        u = f.maps[v0] @ hint.generator
        if gens.cols == 0:
            if not u.is_zero():
                raise AlgebraError("morphism not in hom space")
            return []
        sol = gens.solve_right(u)
        if sol is None:
            raise AlgebraError("morphism not in hom space")
        return [sol[i, 0] for i in range(sol.rows)]

    return HomSpace(x, y, basis, coords)


def _hom_dual_target(x: Module, y: Module) -> HomSpace:
    # Hom(X, D Z) is the dual of Hom(Z, D X), computed on the opposite side
    z = y._dual_of
    op_space = hom_space(z, dualize(x))
    basis = [dualize_morphism(g) for g in op_space.basis]

    def coords(f: Morphism) -> list:
        return op_space.coords(dualize_morphism(f))

    return HomSpace(x, y, basis, coords)


def _has_structure(m: Module) -> bool:
    return m.summands is not None or m.hint is not None


def hom_space(x: Module, y: Module) -> HomSpace:
    """Basis of Hom(x, y), choosing the cheapest correct decomposition.

    Results are cached on the source module (modules are immutable), so the
    per-space solvers built lazily inside amortize across the whole run.
    """
    if x.algebra is not y.algebra:
        raise AlgebraError("hom between modules over different algebras")
    cache = x._cache.setdefault("homspaces", {})
    entry = cache.get(id(y))
    if entry is not None:
        return entry[0]
    if x.summands is not None:
        space = _hom_sum_source(x, y)
    elif y.summands is not None:
        space = _hom_sum_target(x, y)
    elif x.hint is not None:
        space = _hom_cyclic_source(x, y)
    elif y._dual_of is not None and _has_structure(y._dual_of):
        space = _hom_dual_target(x, y)
    else:
        space = _hom_raw(x, y)
    cache[id(y)] = (space, y)
    return space


def hom_basis(x: Module, y: Module) -> list[Morphism]:
    return hom_space(x, y).basis


def hom_dim(x: Module, y: Module) -> int:
    return len(hom_space(x, y).basis)


# -- isomorphism testing -------------------------------------------------------


def _radical_fingerprint(m: Module) -> tuple:
    out = [m.dims]
    k = 1
    while True:
        subs = radical_subspaces(m, k)
        dims = tuple(s.cols for s in subs)
        out.append(dims)
        if all(d == 0 for d in dims):
            break
        k += 1
        if k > m.total_dim + 1:
            break
    out.append(tuple(s.cols for s in socle_subspaces(m)))
    return tuple(out)


def is_isomorphic(x: Module, y: Module, seed: int = 0) -> bool:
    """Exact isomorphism test.

    Sound negatives come from structural fingerprints; positives come from a
    seeded random search for an invertible combination of a hom basis, with a
    deterministic exhaustive fallback over a small coefficient grid (capped;
    beyond the cap a deeper randomized round decides).
    """
    if x is y:
        return True
    if x.algebra is not y.algebra:
        return False
    if x.dims != y.dims:
        return False
    if x.total_dim == 0:
        return True
    if _radical_fingerprint(x) != _radical_fingerprint(y):
        return False
    hom_xy = hom_space(x, y)
    k = hom_xy.dim
    if k == 0:
        return False
    if hom_dim(y, x) != k:
        return False
    de_x = hom_dim(x, x)
    if de_x != hom_dim(y, y) or de_x != k:
        # an isomorphism identifies all four spaces
        return False

    def try_coeffs(cs) -> bool:
        f = hom_xy.from_coords([QQ(c) for c in cs])
        return f.is_iso()

    rng = random.Random(seed)
    for _ in range(32):
        if try_coeffs([rng.randint(-8, 8) for _ in range(k)]):
            return True
    if 5**k <= 200_000:
        for cs in itertools.product(range(-2, 3), repeat=k):
            if try_coeffs(cs):
                return True
        return False
    for _ in range(512):
        if try_coeffs([rng.randint(-32, 32) for _ in range(k)]):
            return True
    return False


# -- Nakayama enumeration -------------------------------------------------------


def enumerate_indecomposables_nakayama(algebra: AlgebraPresentation) -> list[Module]:
    """All indecomposables of a Nakayama algebra: radical quotients of projectives.

    Ordered by vertex, then by Loewy length ascending.
    """
    if not algebra.quiver.is_nakayama():
        raise AlgebraError("complete enumeration is only available for Nakayama quivers")
    out = []
    for v in range(algebra.quiver.vertex_count):
        p = proj_module(algebra, v)
        ll = loewy_length(p)
        for j in range(1, ll + 1):
            if j == ll:
                out.append(p)
            else:
                out.append(radical_quotient(p, j)[0])
    return out


# -- module expressions ----------------------------------------------------------


def parse_module_expression(algebra: AlgebraPresentation, text: str) -> Module:
    """Parse expressions like ``P(1)+P(2)+S(1)+P(3)/rad^2`` (vertices 1-based).

    Atoms: P(i) projective, I(i) injective, S(i) simple; an atom may carry a
    single /rad^k quotient; terms are combined with '+' into a direct sum.
    """
    terms = [t.strip() for t in text.split("+")]
    if not terms or any(not t for t in terms):
        raise ExpressionError(f"empty term in module expression {text!r}")
    mods = []
    for term in terms:
        mods.append(_parse_term(algebra, term))
    if len(mods) == 1:
        return mods[0]
    return direct_sum(algebra, mods)


def _parse_term(algebra: AlgebraPresentation, term: str) -> Module:
    rad_power = None
    body = term
    if "/" in term:
        body, _, suffix = term.partition("/")
        body = body.strip()
        suffix = suffix.strip()
        if not suffix.startswith("rad^"):
            raise ExpressionError(f"unknown quotient suffix in {term!r}")
        try:
            rad_power = int(suffix[4:])
        except ValueError:
            raise ExpressionError(f"bad radical power in {term!r}") from None
        if rad_power < 1:
            raise ExpressionError(f"radical power must be >= 1 in {term!r}")
    if len(body) < 4 or body[0] not in "PIS" or body[1] != "(" or body[-1] != ")":
        raise ExpressionError(f"malformed atom {body!r}")
    try:
        vertex = int(body[2:-1])
    except ValueError:
        raise ExpressionError(f"bad vertex number in {body!r}") from None
    if not (1 <= vertex <= algebra.quiver.vertex_count):
        raise ExpressionError(
            f"vertex {vertex} out of range 1..{algebra.quiver.vertex_count}"
        )
    v = vertex - 1
    kind = body[0]
    if kind == "P":
        mod = proj_module(algebra, v)
    elif kind == "I":
        mod = inj_module(algebra, v)
    else:
        mod = simple_module(algebra, v)
    if rad_power is not None:
        mod = radical_quotient(mod, rad_power)[0]
    return mod
