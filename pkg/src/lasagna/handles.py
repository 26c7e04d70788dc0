"""Handle attachments on skein modules at desk scale.

1-handles: Hochschild-0 of the bimodule of the tangle cut along the cocore.
2-handles: a truncated presentation generated by cabled homologies modulo
braid and annulus relations.  The companion is restricted to the 0-framed
crossingless unknot, whose cables are unlinks of concentric loops indexed by
position; the ambient link enters through the Kunneth isomorphism.
3-handles: a quotient by caller-supplied relations.  4-handles: identity.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .arc_algebra import ALGEBRA_CAP, tangle_bimodule
from .diagram import DiagramError, TangleDiagram, braid, disjoint_union, from_pd, unlink
from .gluing import _QuotientBuilder, hochschild0, hochschild0_enveloping, hochschild0_relations
from .khovanov.cobordism import cobordism_map
from .khovanov.cube import CROSSING_CAP, CapExceeded, cube_complex, kh, label_index, label_qdeg
from .khovanov.reidemeister import equivalence, r2_removal
from .linalg import ChainMap, Echelon, GradedVectorSpace, Homology, SparseMatrix, axpy, induced_map
from .tqft import FrobeniusSpec, evaluate_closed_surface

CABLE_CAP = 4


# -- 1-handles ------------------------------------------------------------------------------

def check_one_handle_input(d: TangleDiagram) -> None:
    """An (n,n)-tangle whose closure through the handle is oriented, with
    algebraic intersection zero against the cocore."""
    if d.m != d.n:
        raise DiagramError(f"1-handle input must be an (n,n)-tangle, got ({d.m},{d.n})", "square")
    if d.n == 0:
        return
    top, bottom = d.boundary_directions("t"), d.boundary_directions("b")
    if top is None:
        raise DiagramError("1-handle input must be oriented", "orientation")
    if top != [-x for x in bottom]:
        raise DiagramError("top and bottom orientation sequences differ", "orientation")
    if sum(top):
        raise DiagramError("strands meet the cocore with nonzero algebraic intersection",
                           "intersection")


def attach_1_handle(d: TangleDiagram, spec: FrobeniusSpec | None = None, cap: int = CROSSING_CAP,
                    algebra_cap: int = ALGEBRA_CAP) -> GradedVectorSpace:
    check_one_handle_input(d)
    return hochschild0(tangle_bimodule(d, spec, cap=cap, algebra_cap=algebra_cap))


@dataclass
class OneHandleReport:
    coequalizer: GradedVectorSpace
    relations: GradedVectorSpace
    enveloping: GradedVectorSpace

    @property
    def agree(self) -> bool:
        return self.coequalizer == self.relations == self.enveloping

    @property
    def dims(self) -> GradedVectorSpace:
        return self.coequalizer


def one_handle_report(d: TangleDiagram, spec: FrobeniusSpec | None = None, cap: int = CROSSING_CAP,
                      algebra_cap: int = ALGEBRA_CAP) -> OneHandleReport:
    """HH0 by the coequalizer, by enumerated commutators and by the enveloping algebra."""
    check_one_handle_input(d)
    B = tangle_bimodule(d, spec, cap=cap, algebra_cap=algebra_cap)
    return OneHandleReport(hochschild0(B), hochschild0_relations(B).dims,
                           hochschild0_enveloping(B).dims)


# -- closed braids and braid maps on unlinks -------------------------------------------------

def closed_braid(n: int, word: Sequence[int], directions: Sequence[int] | None = None):
    """Closure of a pure braid; returns the diagram and ``levels``, where
    ``levels[k][p]`` labels the arc at position p above letter k (level 0 is
    the closing arc, which is also the last level)."""
    if any(not 1 <= abs(g) < n for g in word):
        raise DiagramError(f"braid generator out of range for {n} strands", "braid")
    width = n + n % 2
    dirs = list(directions or [1] * n) + [1] * (width - n)
    b = braid(width, word, dirs)
    if list(b.boundary_directions("t")) != [-x for x in b.boundary_directions("b")]:
        raise DiagramError("braid closure is not oriented; use a pure braid", "orientation")
    close = {lab: p for p, lab in enumerate(b.bottom)}
    ren = {lab: close.get(lab, lab) for lab in b.arcs()}
    crossings = [tuple(ren[x] for x in c) for c in b.crossings]
    used = {x for c in crossings for x in c}
    loops = [p for p in range(n) if p not in used]
    levels = [list(range(n))]
    for k, g in enumerate(word):
        i = abs(g) - 1
        row = list(levels[-1])
        row[i], row[i + 1] = ren[width + 2 * k], ren[width + 2 * k + 1]
        levels.append(row)
    return from_pd(crossings, loops=loops), levels


@dataclass
class _Reduction:
    small: TangleDiagram
    to_small: ChainMap
    to_big: ChainMap
    owner: dict


def _reduce(big: TangleDiagram, pairs, spec: FrobeniusSpec, cap: int) -> _Reduction:
    """Remove R2 pairs in turn; each pair names two crossings and two arcs of
    the bigon by their labels in ``big``."""
    d = big
    remaining = list(range(big.n_crossings))
    owner = {a: a for a in big.arcs()}
    down = up = None
    for c1, c2, x, y in pairs:
        rm = r2_removal(d, remaining.index(c1), remaining.index(c2), (owner[x], owner[y]))
        eq = equivalence(rm, spec, cap)
        down = eq.to_small if down is None else eq.to_small @ down
        up = eq.to_big if up is None else up @ eq.to_big
        inv = {m: s for s, members in rm.arc_map.items() for m in members}
        owner = {a: inv[o] for a, o in owner.items() if o in inv}
        remaining = [remaining[k] for k in rm.keep]
        d = rm.small
    return _Reduction(d, down, up, owner)


def _factor_perm(source, target, where: Sequence[int], field) -> ChainMap:
    """Tensor-factor permutation between crossingless complexes: source
    circle k becomes target circle ``where[k]``."""
    n = len(where)
    cols = []
    for j in range(1 << n):
        labs = [(j >> (n - 1 - k)) & 1 for k in range(n)]
        new = [0] * n
        for k, t in enumerate(where):
            new[t] = labs[k]
        cols.append({label_index(new): field.one})
    return ChainMap(source, target, {0: SparseMatrix(1 << n, 1 << n, field, cols)})


def _positions(d: TangleDiagram, owner: dict, anchors: Sequence[int]) -> list[int]:
    """Circle order of a crossingless ``d`` mapped to positions via anchor arcs."""
    order = sorted(d.loops)
    pos = {owner[a]: p for p, a in enumerate(anchors)}
    return [pos[s] for s in order]


def inverse_word(word: Sequence[int]) -> list[int]:
    return [-g for g in reversed(word)]


def braid_map(n: int, word: Sequence[int], spec: FrobeniusSpec, directions: Sequence[int] | None = None,
              cap: int = CROSSING_CAP) -> ChainMap:
    """psi_w on C(unlink(n)): push a finger realizing w w^-1 between the
    loops, then cancel each letter against its inverse around the closure.
    Loops are identified with positions before and after."""
    word = list(word)
    if not word:
        c = cube_complex(unlink(n), spec)
        return ChainMap.identity(c.complex)
    if 2 * len(word) > cap:
        raise CapExceeded("braid crossing count", 2 * len(word), cap)
    big, lev = closed_braid(n, word + inverse_word(word), directions)
    L = len(word)
    pos = [abs(g) - 1 for g in word]
    finger = [(k, 2 * L - 1 - k, lev[k + 1][pos[k]], lev[k + 1][pos[k] + 1])
              for k in reversed(range(L))]
    around = [(j, 2 * L - 1 - j, lev[j][pos[j]], lev[j][pos[j] + 1]) for j in range(L)]
    fin = _reduce(big, finger, spec, cap)
    lon = _reduce(big, around, spec, cap)
    F = spec.field
    cable = cube_complex(unlink(n), spec).complex
    src_pos = _positions(fin.small, fin.owner, lev[0])
    into = _factor_perm(cable, fin.to_big.source, [src_pos.index(p) for p in range(n)], F)
    out = _factor_perm(lon.to_small.target, cable, _positions(lon.small, lon.owner, lev[L]), F)
    psi = out @ lon.to_small @ fin.to_big @ into
    psi.verify()
    return _unit_normalized(psi)


def _unit_normalized(f: ChainMap) -> ChainMap:
    """Fix the sign ambiguity of cobordism maps: the all-ONE class maps to
    itself with coefficient +1."""
    F = f.source.field
    c = f.component(0).column(0).get(0, F.zero)
    if c == F.one:
        return f
    if c != F.neg(F.one):
        raise ArithmeticError("braid map does not fix the all-ONE class up to sign")
    return ChainMap(f.source, f.target, {i: m.scale(c) for i, m in f.components.items()},
                    f.hshift, f.qshift)


def annulus_map(n_plus: int, n_minus: int, dots: int, spec: FrobeniusSpec) -> ChainMap:
    """C(unlink(n)) -> C(unlink(n+2)): birth, pinch and ``dots`` dots, creating a
    parallel pair at positions n_plus (with the companion) and n_plus + 1."""
    n = n_plus + n_minus
    events = [("birth",), ("saddle", n, n)] + [("dot", n)] * dots
    res = cobordism_map(unlink(n), events, spec)
    place = {p: (p if p < n_plus else p + 2) for p in range(n)}
    place[n], place[n + 1] = n_plus, n_plus + 1
    order = sorted(res.target.loops)
    target = cube_complex(unlink(n + 2), spec).complex
    perm = _factor_perm(res.map.target, target, [place[s] for s in order], spec.field)
    m = perm @ res.map
    m.verify()
    return m


def _matrix_on_homology(f: ChainMap) -> dict:
    return {deg: m.to_dense() for deg, m in induced_map(f).items()}


def _homology_equal(f: ChainMap, g: ChainMap) -> bool:
    return _matrix_on_homology(f) == _matrix_on_homology(g)


def braid_consistency(n_plus: int, n_minus: int, spec: FrobeniusSpec | None = None,
                      cap: int = CROSSING_CAP) -> dict[str, bool]:
    """Two-path checks of the braid maps on the (n_plus, n_minus)-cable."""
    spec = spec or FrobeniusSpec.named("khovanov")
    n = n_plus + n_minus
    dirs = [1] * n_plus + [-1] * n_minus
    out: dict[str, bool] = {}
    ident = braid_map(n, [], spec)
    for i in range(1, n):
        s = braid_map(n, [i], spec, dirs, cap)
        s_inv = braid_map(n, [-i], spec, dirs, cap)
        out[f"psi_s{i}^2 = psi_(s{i}^2)"] = _homology_equal(s @ s, braid_map(n, [i, i], spec, dirs, cap))
        out[f"psi_s{i}^-1 psi_s{i} = id"] = _homology_equal(s_inv @ s, ident)
    for i in range(1, n - 1):
        a = braid_map(n, [i, i + 1, i], spec, dirs, cap)
        b = braid_map(n, [i + 1, i, i + 1], spec, dirs, cap)
        s1, s2 = braid_map(n, [i], spec, dirs, cap), braid_map(n, [i + 1], spec, dirs, cap)
        out[f"psi_(s{i}s{i+1}s{i}) = psi_(s{i+1}s{i}s{i+1})"] = _homology_equal(a, b)
        out[f"psi_(s{i}s{i+1}s{i}) = psi_s{i} psi_s{i+1} psi_s{i}"] = _homology_equal(a, s1 @ s2 @ s1)
    return out


# -- 2-handles ------------------------------------------------------------------------------

class HandleScopeError(DiagramError):
    """The requested handle attachment lies outside the implemented scope."""


def levels(N: int) -> list[tuple[int, int]]:
    return [(p, t - p) for t in range(N + 1) for p in range(t, -1, -1)]


@dataclass
class HandlePresentation:
    """Generators and relations of the truncated 2-handle presentation.

    ``generators[g] = (level, bidegree, k)``: the k-th generator of that level
    in that bidegree.  ``relations[deg]`` has one column per relation vector,
    rows indexing the generators of bidegree ``deg`` in order.
    """

    truncation: int
    graded: bool
    generators: list[tuple[tuple[int, int], tuple[int, int], int]]
    relations: dict[tuple[int, int], SparseMatrix]
    generator_dims: GradedVectorSpace
    relation_ranks: dict[tuple[int, int], int]
    quotient_dims: GradedVectorSpace
    stabilization: dict[tuple[int, int], tuple[int, int]] = dc_field(default_factory=dict)
    complete_bidegrees: list[tuple[int, int]] = dc_field(default_factory=list)
    checks: dict[str, bool] = dc_field(default_factory=dict)
    chain_maps_verified: int = 0

    def consistent(self) -> bool:
        gen = self.generator_dims.dims
        quo = self.quotient_dims.dims
        return all(quo.get(deg, 0) == n - self.relation_ranks.get(deg, 0) for deg, n in gen.items())

    def to_json(self) -> dict:
        return {
            "truncation": self.truncation,
            "generator_dims": self.generator_dims.to_records(),
            "relation_ranks": [[i, q, r] for (i, q), r in sorted(self.relation_ranks.items())],
            "quotient_dims": self.quotient_dims.to_records(),
            "quotient_poincare": self.quotient_dims.poincare(),
            "stabilization": [[i, q, a, b] for (i, q), (a, b) in sorted(self.stabilization.items())],
            "complete_bidegrees": [list(d) for d in self.complete_bidegrees],
            "checks": {k: bool(v) for k, v in sorted(self.checks.items())},
            "chain_maps_verified": self.chain_maps_verified,
        }


def _check_companion(k: TangleDiagram) -> None:
    if not k.is_closed:
        raise DiagramError("companion must be a closed diagram", "closed")
    if k.n_crossings or len(k.loops) != 1:
        raise HandleScopeError("2-handles are implemented for the crossingless unknot companion only",
                               "scope")
    if k.framing != 0:
        raise HandleScopeError("2-handles are implemented for framing 0 only", "scope")


@dataclass
class _Level:
    level: tuple[int, int]
    dims: GradedVectorSpace


def _cable_qdegs(n: int) -> list[int]:
    return [label_qdeg([(j >> (n - 1 - k)) & 1 for k in range(n)]) for j in range(1 << n)]


def _presentation(ambient_reps, N: int, spec: FrobeniusSpec, braid_maps: dict, annuli: dict,
                  max_level: int | None = None):
    """Builder for levels <= N; relations touching a level above ``max_level`` are skipped."""
    F = spec.field
    graded = spec.graded
    qb = _QuotientBuilder(F, graded)
    gen_meta = []
    counter: dict = {}
    for lev in levels(N):
        n = sum(lev)
        qd = _cable_qdegs(n)
        for a, (i, q_a, _) in enumerate(ambient_reps):
            for j in range(1 << n):
                deg = (i, q_a + qd[j] + n) if graded else (i, 0)
                key = (lev, deg)
                gen_meta.append((lev, deg, counter.get(key, 0)))
                counter[key] = counter.get(key, 0) + 1
                qb.add_basis((lev, a, j), deg)
    vectors: dict = {}

    def add(vec):
        vec = {k: c for k, c in vec.items() if c != 0}
        qb.add_relation(vec)
        if vec:
            deg = qb.degrees[next(iter(vec))]
            vectors.setdefault(deg, []).append(vec)

    idx = qb.index
    for lev in levels(N):
        n = sum(lev)
        for i in range(1, n):
            m = braid_maps[(lev, i)]
            for a in range(len(ambient_reps)):
                for j in range(1 << n):
                    rel = {idx[(lev, a, j)]: F.one}
                    for j2, c in m.column(j).items():
                        axpy(F, rel, F.neg(c), {idx[(lev, a, j2)]: F.one})
                    add(rel)
        up = (lev[0] + 1, lev[1] + 1)
        if sum(up) > N:
            continue
        for dots in (0, 1):
            eps = evaluate_closed_surface(0, dots, spec)
            m = annuli[(lev, dots)]
            for a in range(len(ambient_reps)):
                for j in range(1 << n):
                    rel = {}
                    for j2, c in m.column(j).items():
                        axpy(F, rel, c, {idx[(up, a, j2)]: F.one})
                    axpy(F, rel, F.neg(eps), {idx[(lev, a, j)]: F.one})
                    add(rel)
    return qb.build(), gen_meta, vectors


def attach_2_handle(ambient: TangleDiagram, k: TangleDiagram, N: int,
                    spec: FrobeniusSpec | None = None, cap: int = CROSSING_CAP,
                    cable_cap: int = CABLE_CAP, threads: int = 1,
                    consistency: bool = True) -> HandlePresentation:
    """Truncated presentation sum_{n+ + n- <= N} Kh(cable(n+, n-) u ambient) / ~."""
    spec = spec or FrobeniusSpec.named("khovanov")
    _check_companion(k)
    if not ambient.is_closed:
        raise DiagramError("ambient link must be a closed diagram", "closed")
    if N < 0:
        raise ValueError("truncation level must be non-negative")
    if N > cable_cap:
        raise CapExceeded("cable level", N, cable_cap, "raise the cable cap")
    if ambient.n_crossings > cap:
        raise CapExceeded("crossing count", ambient.n_crossings, cap)
    F = spec.field
    amb_cube = cube_complex(ambient, spec, cap)
    amb_h = Homology(amb_cube.complex)
    amb_reps = amb_h.basis
    amb_dims = GradedVectorSpace({deg: len(r) for deg, r in amb_h.reps.items()}, spec.graded)

    def level_dims(lev):
        n = sum(lev)
        cab = unlink(n)
        whole = disjoint_union(ambient, cab) if ambient.arcs() else cab
        return _Level(lev, kh(whole, spec, cap))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            direct = list(ex.map(level_dims, levels(N)))
    else:
        direct = [level_dims(lev) for lev in levels(N)]

    checks: dict[str, bool] = {}
    verified = 0
    kunneth = True
    for lv in direct:
        n = sum(lv.level)
        expect = amb_dims.tensor(kh(unlink(n), spec))
        kunneth &= lv.dims == expect
    checks["kunneth"] = kunneth

    braid_maps: dict = {}
    annuli: dict = {}
    for lev in levels(N):
        n = sum(lev)
        dirs = [1] * lev[0] + [-1] * lev[1]
        for i in range(1, n):
            braid_maps[(lev, i)] = braid_map(n, [i], spec, dirs, cap).component(0)
            verified += 1
        if sum(lev) + 2 <= N:
            for dots in (0, 1):
                annuli[(lev, dots)] = annulus_map(lev[0], lev[1], dots, spec).component(0)
                verified += 1

    if consistency:
        for lev in levels(N):
            if sum(lev) >= 2:
                for name, ok in braid_consistency(lev[0], lev[1], spec, cap).items():
                    checks[f"{lev}: {name}"] = ok

    quo, gen_meta, vectors = _presentation(amb_reps, N, spec, braid_maps, annuli)
    relations = {}
    for deg, vecs in sorted(vectors.items()):
        rows = [g for g in range(len(quo.labels)) if quo.degrees[g] == deg]
        local = {g: r for r, g in enumerate(rows)}
        relations[deg] = SparseMatrix(len(rows), len(vecs), F,
                                      [{local[g]: c for g, c in v.items()} for v in vecs])

    stab: dict = {}
    complete: list = []
    if N >= 1:
        prev, _, _ = _presentation(amb_reps, N - 1, spec, braid_maps, annuli)
        d_prev, d_now = prev.dims.dims, quo.dims.dims
        for deg in sorted(set(d_prev) | set(d_now)):
            stab[deg] = (d_prev.get(deg, 0), d_now.get(deg, 0))
        top_degs = {deg for (lev, deg, _) in gen_meta if sum(lev) == N}
        complete = sorted(deg for deg in d_prev if deg not in top_degs)
        checks["complete bidegrees reproduced"] = all(stab[deg][0] == stab[deg][1] for deg in complete)
        checks["lower levels reproduced"] = _restricted_dims(quo, vectors, N - 1) == prev.dims
    return HandlePresentation(N, spec.graded, gen_meta, relations, quo.free_dims,
                              quo.relation_ranks, quo.dims, stab, complete, checks, verified)


def _restricted_dims(quo, vectors: dict, level_cap: int) -> GradedVectorSpace:
    """Generators at levels <= level_cap modulo the relations supported there."""
    keep = {g for g, lab in enumerate(quo.labels) if sum(lab[0]) <= level_cap}
    dims: dict = {}
    for g in keep:
        dims[quo.degrees[g]] = dims.get(quo.degrees[g], 0) + 1
    for deg, vecs in vectors.items():
        ech = Echelon(quo.echelons[deg].field)
        for v in vecs:
            if set(v) <= keep:
                ech.add(v)
        if deg in dims:
            dims[deg] -= ech.rank
    return GradedVectorSpace(dims, quo.graded)


# -- 3- and 4-handles -----------------------------------------------------------------------

@dataclass
class ModuleRelation:
    """A degree-preserving operator given blockwise, with its scalar epsilon."""

    blocks: Mapping[tuple[int, int], SparseMatrix]
    epsilon: object = 0


def attach_3_handle(module: GradedVectorSpace, relations: Sequence[ModuleRelation | SparseMatrix]
                    ) -> GradedVectorSpace:
    """module / span of (r - eps(r) id)(module), block by block."""
    dims = module.dims
    rels = []
    for r in relations:
        if isinstance(r, SparseMatrix):
            nonzero = [deg for deg, n in dims.items() if n]
            if len(nonzero) != 1:
                raise ValueError("a bare matrix relation needs a module concentrated in one bidegree")
            r = ModuleRelation({nonzero[0]: r}, 0)
        rels.append(r)
    out = {}
    for deg, n in dims.items():
        field = None
        cols = []
        for r in rels:
            m = r.blocks.get(deg)
            if m is None:
                continue
            if m.shape != (n, n):
                raise ValueError(f"relation block at {deg} has shape {m.shape}, module block is {n}")
            field = m.field
            eps = field(r.epsilon)
            shifted = m - SparseMatrix.identity(n, field).scale(eps)
            cols.extend(shifted.columns)
        rank = 0
        if field is not None:
            ech = Echelon(field)
            for c in cols:
                if c:
                    ech.add(c)
            rank = ech.rank
        out[deg] = n - rank
    return GradedVectorSpace(out, module.graded)


def attach_4_handle(module: GradedVectorSpace) -> GradedVectorSpace:
    return GradedVectorSpace(module.dims, module.graded)
