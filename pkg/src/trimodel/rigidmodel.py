"""Morphism classes, factorizations and homotopies induced by a rigid
subcategory.

Given a rigid set T of indecomposables in a mesh category, this module
derives the whole verification surface:

  * ideals of morphisms factoring through a subcategory, decided blockwise
    by span membership per vertex pair;
  * left/right approximations (tautological and greedily minimized);
  * the four morphism classes: weak equivalences (Hom(t, -) applied to the
    morphism is bijective for every t in T), fibrations (Hom(sigma t, -)
    surjective), trivial fibrations (both), and weak cofibrations (split
    monos with complement in sigma T);
  * cofibrant objects: the cones of morphisms between sums of T vertices,
    enumerated through exact cone fingerprints and cross-checked against the
    approximation criterion (cones are closed under sums and summands, so
    the indecomposable cones generate the whole list);
  * cylinders, path objects, right homotopies, homotopy inverses;
  * both factorizations and cofibrant replacements, each returned with
    certified factors and exact composite equality.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import addcat as ac
from .addcat import Mor, Obj
from .exactlin import array_rank, array_rref, array_solve, fast_rank
from .meshcat import MeshCategory


class NotRigidError(ValueError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(
            f"not rigid: dim Hom({pair[0]!r}, sigma {pair[1]!r}) != 0"
        )


@dataclass
class EnumParams:
    """Enumeration bounds; the defaults are sized for desk-scale categories."""

    mult_bound: int = 2          # summand multiplicity per T vertex in cones
    side_total: int = 4          # total summands per side in targeted sweeps
    blind_side_total: int = 2    # total summands per side in the blind sweep
    pair_cap_exp: int = 14       # exhaust a cone coefficient space up to p^this
    ts_total: int = 4            # summand bound for the cofibrant-object list
    enum_exp_cap: int = 20       # exhaustive morphism spaces up to p^this
    sample_count: int = 500      # seeded draws beyond the exhaustive cap
    seed: int = 0


@dataclass
class Classification:
    weq: bool
    fib: bool
    wfib: bool
    wcof: bool
    retraction: Mor | None = None
    complement: Obj | None = None

    def as_dict(self) -> dict:
        return {"weq": self.weq, "fib": self.fib,
                "wfib": self.wfib, "wcof": self.wcof}


@dataclass
class FactorPair:
    first: Mor
    second: Mor
    first_class: Classification
    second_class: Classification


@dataclass
class RightHomotopy:
    """A right homotopy: K into a path object, with the defining equations
    (q . m = diagonal, q . K = (f, g), m a weak equivalence) verified."""

    m: Mor            # Y -> Y + U
    q: Mor            # Y + U -> Y + Y
    K: Mor            # X -> Y + U
    correction: Mor   # h with f - g = h . approx


def _multisets(items, mult_bound, total_bound):
    """All multisets over items with the given bounds, ordered by size."""
    out = [()]
    for n in range(1, total_bound + 1):
        for combo in itertools.combinations_with_replacement(sorted(items), n):
            if all(combo.count(v) <= mult_bound for v in set(combo)):
                out.append(combo)
    return out


class RigidStructure:
    """A rigid subcategory with everything the checks derive from it."""

    def __init__(self, cat: MeshCategory, t_ind, params: EnumParams | None = None):
        self.cat = cat
        self.params = params or EnumParams()
        self.t_ind = tuple(sorted(set(t_ind)))
        if not self.t_ind:
            raise ValueError("T must be nonempty")
        for t in self.t_ind:
            if t not in cat.vidx:
                raise ValueError(f"unknown vertex {t!r}")
        for t in self.t_ind:
            for s in self.t_ind:
                if cat.hom_dim(t, cat.sigma_vertex(s)) != 0:
                    raise NotRigidError((t, s))
        self.sigma_t_ind = tuple(sorted(cat.sigma_vertex(t) for t in self.t_ind))
        self.perp_ind = tuple(
            u for u in cat.verts
            if all(cat.hom_dim(t, u) == 0 for t in self.t_ind)
        )
        self._ideal_cache: dict = {}
        self.crosscheck_disagreements: list[str] = []
        self._enumerate_ts()

    # ------------------------------------------------------------- subcats

    def subcat(self, name) -> tuple[str, ...]:
        if isinstance(name, str):
            try:
                return {"T": self.t_ind, "sigmaT": self.sigma_t_ind,
                        "perp": self.perp_ind}[name]
            except KeyError:
                raise ValueError(f"unknown subcategory spec {name!r}") from None
        return tuple(sorted(set(name)))

    # -------------------------------------------------------------- ideals

    def _ideal_pair(self, key, u: str, v: str):
        """Row space (rref rows, pivots) of the ideal subspace of Hom(u, v)."""
        ck = (key, u, v)
        hit = self._ideal_cache.get(ck)
        if hit is not None:
            return hit
        cat = self.cat
        p = cat.field.p
        d = cat.hom_dim(u, v)
        rows = []
        for w in self.subcat(key):
            t1 = cat.comp.get((u, w, v))
            if t1 is None:
                continue
            rows.extend(t1.reshape(-1, d))
        if rows:
            red, pivots = array_rref(np.stack(rows), p)
            red = red[: len(pivots)]
        else:
            red, pivots = np.zeros((0, d), dtype=np.int64), []
        self._ideal_cache[ck] = (red, pivots)
        return red, pivots

    def ideal_dim_pair(self, key, u: str, v: str) -> int:
        return len(self._ideal_pair(key, u, v)[1])

    def _vec_in_ideal(self, key, u, v, vec) -> bool:
        red, pivots = self._ideal_pair(key, u, v)
        p = self.cat.field.p
        r = vec % p
        for row, c in zip(red, pivots):
            if r[c]:
                r = (r - r[c] * row) % p
        return not np.any(r)

    def ideal_membership(self, f: Mor, key) -> bool:
        """Whether f factors through the additive closure of the subcategory.

        The ideal is blockwise: a block matrix lies in it iff every block
        does, so the test runs against per-vertex-pair span bases.
        """
        return all(
            self._vec_in_ideal(key, f.dom.summands[j], f.cod.summands[i], vec)
            for (i, j), vec in f.blocks.items()
        )

    def ideal_witness(self, f: Mor, key):
        """(lam, h) with h . lam = f through the tautological left
        approximation lam of dom f, or None when f is not in the ideal."""
        if not self.ideal_membership(f, key):
            return None
        lam = self.tautological_approx(f.dom, "left", key)
        a = ac.right_mul_matrix(lam, f.cod)
        x = array_solve(a, ac.mor_to_vec(f), self.cat.field.p)
        if x is None:
            raise AssertionError("ideal member failed to factor through "
                                 "the tautological approximation")
        h = ac.vec_to_mor(self.cat, lam.cod, f.cod, x)
        return lam, h

    def ideal_span_matrix(self, key, x: Obj, y: Obj) -> np.ndarray:
        """Columns spanning the ideal subspace of Hom(x, y), blockwise."""
        cat = self.cat
        layout, total = ac.hom_layout(cat, x, y)
        cols = []
        for (ij, off, d) in layout:
            i, j = ij
            red, _ = self._ideal_pair(key, x.summands[j], y.summands[i])
            for row in red:
                col = np.zeros(total, dtype=np.int64)
                col[off:off + d] = row
                cols.append(col)
        if not cols:
            return np.zeros((total, 0), dtype=np.int64)
        return np.stack(cols, axis=1)

    # -------------------------------------------------------- approximations

    def tautological_approx(self, x: Obj, side: str, key) -> Mor:
        """Right: bundle a basis of every Hom(u, x), u in the subcategory;
        left: dual.  Approximation property holds by construction."""
        if isinstance(key, str):
            cache = getattr(self, "_taut_cache", None)
            if cache is None:
                cache = self._taut_cache = {}
            ck = (x.summands, side, key)
            hit = cache.get(ck)
            if hit is None:
                hit = cache[ck] = self._tautological_approx(x, side, key)
            return hit
        return self._tautological_approx(x, side, key)

    def _tautological_approx(self, x: Obj, side: str, key) -> Mor:
        cat = self.cat
        if side == "right":
            summands, blocks = [], []
            for u in self.subcat(key):
                for j, xs in enumerate(x.summands):
                    for k in range(cat.hom_dim(u, xs)):
                        summands.append(u)
                        blocks.append((j, k))
            a = Obj(tuple(summands))
            f = Mor(cat, a, x)
            for col, (j, k) in enumerate(blocks):
                vec = np.zeros(cat.hom_dim(a.summands[col], x.summands[j]),
                               dtype=np.int64)
                vec[k] = 1
                f.set_block(j, col, vec)
            return f
        if side == "left":
            summands, blocks = [], []
            for u in self.subcat(key):
                for j, xs in enumerate(x.summands):
                    for k in range(cat.hom_dim(xs, u)):
                        summands.append(u)
                        blocks.append((j, k))
            a = Obj(tuple(summands))
            f = Mor(cat, x, a)
            for row, (j, k) in enumerate(blocks):
                vec = np.zeros(cat.hom_dim(x.summands[j], a.summands[row]),
                               dtype=np.int64)
                vec[k] = 1
                f.set_block(row, j, vec)
            return f
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def is_approximation(self, f: Mor, side: str, key) -> bool:
        cat = self.cat
        if side == "right":
            x = f.cod
            return all(
                fast_rank(ac.left_mul_matrix(f, Obj((u,))), cat.field.p)
                == ac.hom_space_dim(cat, Obj((u,)), x)
                for u in self.subcat(key)
            )
        x = f.dom
        return all(
            fast_rank(ac.right_mul_matrix(f, Obj((u,))), cat.field.p)
            == ac.hom_space_dim(cat, x, Obj((u,)))
            for u in self.subcat(key)
        )

    def approx(self, x: Obj, side: str, key, minimize: bool = True) -> Mor:
        """Left/right approximation of x by the subcategory.

        The tautological bundle is the correctness anchor; minimization drops
        summand copies greedily in vertex-then-copy order while the
        approximation property survives.
        """
        f = self.tautological_approx(x, side, key)
        if not minimize:
            return f
        cat = self.cat
        while True:
            a = f.dom if side == "right" else f.cod
            dropped = False
            for drop in range(len(a.summands)):
                keep = [k for k in range(len(a.summands)) if k != drop]
                new_a = Obj(tuple(a.summands[k] for k in keep))
                if side == "right":
                    g = Mor(cat, new_a, x)
                    for (i, j), vec in f.blocks.items():
                        if j != drop:
                            g.set_block(i, keep.index(j), vec)
                else:
                    g = Mor(cat, x, new_a)
                    for (i, j), vec in f.blocks.items():
                        if i != drop:
                            g.set_block(keep.index(i), j, vec)
                if self.is_approximation(g, side, key):
                    f = g
                    dropped = True
                    break
            if not dropped:
                return f

    # ---------------------------------------------------------- morphism classes

    def hom_functor_matrix(self, f: Mor, t: str) -> np.ndarray:
        """The matrix of Hom(t, f): Hom(t, dom) -> Hom(t, cod)."""
        return ac.left_mul_matrix(f, Obj((t,)))

    def classify(self, f: Mor) -> Classification:
        cat = self.cat
        p = cat.field.p
        weq = True
        for t in self.t_ind:
            m = self.hom_functor_matrix(f, t)
            if m.shape[0] != m.shape[1] or fast_rank(m, p) != m.shape[0]:
                weq = False
                break
        fib = True
        for t in self.t_ind:
            m = self.hom_functor_matrix(f, cat.sigma_vertex(t))
            if fast_rank(m, p) != m.shape[0]:
                fib = False
                break
        # split monos force a sub-multiset codomain (Krull-Schmidt), so the
        # counter test prunes the retraction solve
        retraction = None
        complement = None
        wcof = False
        cx, cy = f.dom.counter(), f.cod.counter()
        if all(cx[v] <= cy.get(v, 0) for v in cx):
            rest = ac.multiset_sub(f.cod, f.dom)
            if all(v in self.sigma_t_ind for v in rest.summands):
                retraction = ac.find_retraction(f)
                if retraction is not None:
                    wcof = True
                    complement = rest
        return Classification(weq, fib, weq and fib, wcof,
                              retraction, complement)

    # ------------------------------------------------------ cofibrant objects

    def _radical_coords(self, t1: tuple, t0: tuple):
        """Coordinates of the radical part of Hom(T1, T0): same-vertex blocks
        carry only the identity class, so they are forced to zero."""
        cat = self.cat
        coords = []
        for i, v0 in enumerate(t0):
            for j, v1 in enumerate(t1):
                if v1 == v0:
                    continue
                for k in range(cat.hom_dim(v1, v0)):
                    coords.append((i, j, k))
        return coords

    def _cone_fingerprint(self, alpha: Mor) -> np.ndarray:
        """dim Hom(u, cone alpha) for every vertex u, from the long exact
        sequence: coker of Hom(u, alpha) plus kernel of Hom(u, sigma alpha)."""
        cat = self.cat
        p = cat.field.p
        salpha = ac.sigma_mor(alpha)
        fp = np.zeros(len(cat.verts), dtype=np.int64)
        for ui, u in enumerate(cat.verts):
            uo = Obj((u,))
            m1 = ac.left_mul_matrix(alpha, uo)
            m2 = ac.left_mul_matrix(salpha, uo)
            fp[ui] = (m1.shape[0] - fast_rank(m1, p)) \
                + (m2.shape[1] - fast_rank(m2, p))
        return fp

    def _cone_tensors(self, t1: tuple, t0: tuple):
        """Radical-coordinate tensors for batched cone fingerprints.

        For each vertex u, K[u][c] is the matrix of Hom(u, elementary_c) and
        KS[u][c] the matrix of Hom(u, sigma elementary_c); both are plain
        reindexings of the composition constants, so assembly is cheap."""
        cache = getattr(self, "_cone_tensor_cache", None)
        if cache is None:
            cache = self._cone_tensor_cache = {}
        key = (t1, t0)
        hit = cache.get(key)
        if hit is not None:
            return hit
        cat = self.cat
        p = cat.field.p
        coords = self._radical_coords(t1, t0)
        dim = len(coords)
        x1, x0 = Obj(t1), Obj(t0)
        sx1, sx0 = ac.sigma_obj(cat, x1), ac.sigma_obj(cat, x0)
        ks, kss = [], []
        for u in cat.verts:
            uo = Obj((u,))
            lay1, d1 = ac.hom_layout(cat, uo, x1)
            lay0, d0 = ac.hom_layout(cat, uo, x0)
            off1 = {ij[0]: off for ij, off, _ in lay1}
            off0 = {ij[0]: off for ij, off, _ in lay0}
            k_t = np.zeros((dim, d0, d1), dtype=np.int64)
            slay1, sd1 = ac.hom_layout(cat, uo, sx1)
            slay0, sd0 = ac.hom_layout(cat, uo, sx0)
            soff1 = {ij[0]: off for ij, off, _ in slay1}
            soff0 = {ij[0]: off for ij, off, _ in slay0}
            ks_t = np.zeros((dim, sd0, sd1), dtype=np.int64)
            for c, (i, j, k) in enumerate(coords):
                v1, v0 = t1[j], t0[i]
                tens = cat.comp.get((u, v1, v0))
                if tens is not None and j in off1 and i in off0:
                    blk = tens[k].T
                    k_t[c, off0[i]: off0[i] + blk.shape[0],
                        off1[j]: off1[j] + blk.shape[1]] = blk
                sv1, sv0 = cat.sigma_vertex(v1), cat.sigma_vertex(v0)
                stens = cat.comp.get((u, sv1, sv0))
                if stens is not None and j in soff1 and i in soff0:
                    svec = cat.sigma_map[(v1, v0)][:, k]
                    blk = np.einsum("m,msr->rs", svec, stens) % p
                    ks_t[c, soff0[i]: soff0[i] + blk.shape[0],
                         soff1[j]: soff1[j] + blk.shape[1]] = blk
            ks.append(k_t)
            kss.append(ks_t)
        cache[key] = (coords, ks, kss)
        return cache[key]

    def _batch_cone_fps(self, t1: tuple, t0: tuple,
                        coeff_rows: np.ndarray) -> np.ndarray:
        """Cone fingerprints for a batch of radical coefficient rows."""
        cat = self.cat
        p = cat.field.p
        coords, ks, kss = self._cone_tensors(t1, t0)
        n = coeff_rows.shape[0]
        fp = np.zeros((n, len(cat.verts)), dtype=np.int64)
        for ui in range(len(cat.verts)):
            k_t, ks_t = ks[ui], kss[ui]
            dim, d0, d1 = k_t.shape
            sd0, sd1 = ks_t.shape[1], ks_t.shape[2]
            base = d0 + sd1
            if d0 * d1:
                mats = (coeff_rows @ k_t.reshape(dim, d0 * d1)).reshape(
                    n, d0, d1) % p
                ranks1 = [fast_rank(mats[i], p) for i in range(n)]
            else:
                ranks1 = [0] * n
            if sd0 * sd1:
                smats = (coeff_rows @ ks_t.reshape(dim, sd0 * sd1)).reshape(
                    n, sd0, sd1) % p
                ranks2 = [fast_rank(smats[i], p) for i in range(n)]
            else:
                ranks2 = [0] * n
            fp[:, ui] = base - np.array(ranks1) - np.array(ranks2)
        return fp

    def _cone_fingerprint_dual(self, alpha: Mor) -> np.ndarray:
        """dim Hom(cone alpha, w) for every w; consistency check of the
        covariant computation."""
        cat = self.cat
        p = cat.field.p
        salpha = ac.sigma_mor(alpha)
        fp = np.zeros(len(cat.verts), dtype=np.int64)
        for wi, w in enumerate(cat.verts):
            wo = Obj((w,))
            m1 = ac.right_mul_matrix(alpha, wo)
            m2 = ac.right_mul_matrix(salpha, wo)
            fp[wi] = (m1.shape[1] - fast_rank(m1, p)) \
                + (m2.shape[0] - fast_rank(m2, p))
        return fp

    def _fp_matrix_invertible(self) -> bool:
        """Whether the vertex-fingerprint matrix is invertible over Q
        (it need not be; e.g. it is singular in type D)."""
        cached = getattr(self.cat, "_fp_invertible", None)
        if cached is None:
            n = len(self.cat.verts)
            a = [[Fraction(int(self.cat.dims[i, j])) for j in range(n)]
                 for i in range(n)]
            r = 0
            for c in range(n):
                piv = next((i for i in range(r, n) if a[i][c] != 0), None)
                if piv is None:
                    continue
                a[r], a[piv] = a[piv], a[r]
                inv = 1 / a[r][c]
                a[r] = [x * inv for x in a[r]]
                for i in range(n):
                    if i != r and a[i][c] != 0:
                        fac = a[i][c]
                        a[i] = [x - fac * y for x, y in zip(a[i], a[r])]
                r += 1
            cached = self.cat._fp_invertible = (r == n)
        return cached

    def _fingerprint_solutions(self, fp: np.ndarray, limit: int = 3,
                               allowed=None) -> list[tuple]:
        """Multisets x with sum of Hom(-, x) dimensions equal to fp.

        Exhaustive bounded search with pruning; limit caps how many
        solutions are produced (enough to detect ambiguity).  ``allowed``
        restricts the support."""
        cat = self.cat
        n = len(cat.verts)
        usable = [allowed is None or v in set(allowed) for v in cat.verts]
        # suffix coverage: a leftover fingerprint entry with no remaining
        # column touching it prunes the branch
        cover = np.zeros((n + 1, n), dtype=bool)
        for idx in range(n - 1, -1, -1):
            cover[idx] = cover[idx + 1]
            if usable[idx]:
                cover[idx] = cover[idx] | (cat.dims[:, idx] > 0)
        sols: list[tuple] = []

        def rec(idx, remaining, acc):
            if len(sols) >= limit:
                return
            if not np.any(remaining):
                sols.append(tuple(acc))
                return
            if idx == n or np.any((remaining > 0) & ~cover[idx]):
                return
            if not usable[idx]:
                rec(idx + 1, remaining, acc)
                return
            v = cat.verts[idx]
            col = cat.dims[:, idx]
            nz = col > 0
            max_m = int((remaining[nz] // col[nz]).min()) if nz.any() else 0
            for m in range(max_m, -1, -1):
                rec(idx + 1, remaining - m * col, acc + [v] * m)

        rec(0, np.asarray(fp, dtype=np.int64).copy(), [])
        return sorted(tuple(sorted(s)) for s in sols)

    def _approx_criterion_cofibrant(self, v: str) -> bool:
        """Independent test: the minimal left perp-approximation of v lands
        in the additive closure of sigma T."""
        f = self.approx(Obj((v,)), "left", "perp", minimize=True)
        return all(u in self.sigma_t_ind for u in f.cod.summands)

    def _alpha_from_coords(self, t1: tuple, t0: tuple, coords,
                           coeffs) -> Mor:
        cat = self.cat
        alpha = Mor(cat, Obj(t1), Obj(t0))
        acc: dict[tuple[int, int], np.ndarray] = {}
        for (i, j, k), c in zip(coords, coeffs):
            if not c:
                continue
            vec = acc.setdefault(
                (i, j), np.zeros(cat.hom_dim(t1[j], t0[i]), dtype=np.int64))
            vec[k] = c
        for (i, j), vec in acc.items():
            alpha.set_block(i, j, vec)
        return alpha

    def _cones_of_pair(self, t1: tuple, t0: tuple, found: set,
                       ambiguous: set, stop_fp=None) -> bool:
        """Sweep the radical morphisms of one side pair in batches.

        Records recovered cone multisets; with stop_fp set, returns True as
        soon as some cone has exactly that fingerprint."""
        cat = self.cat
        p = cat.field.p
        coords, _, _ = self._cone_tensors(t1, t0)
        dim = len(coords)
        exhaustive = p ** dim <= p ** self.params.pair_cap_exp
        if exhaustive:
            space = itertools.product(range(p), repeat=dim)
            total = p ** dim
        else:
            rng = np.random.default_rng(self.params.seed)
            total = self.params.sample_count
            space = (tuple(rng.integers(0, p, size=dim))
                     for _ in range(total))
        seen_fp = self._seen_cone_fps
        chunk = 1024
        it = iter(space)
        while True:
            rows = list(itertools.islice(it, chunk))
            if not rows:
                return False
            coeff_rows = np.array(rows, dtype=np.int64).reshape(len(rows), dim)
            fps = self._batch_cone_fps(t1, t0, coeff_rows)
            for rown in range(fps.shape[0]):
                key = tuple(int(x) for x in fps[rown])
                if stop_fp is not None and key == stop_fp:
                    return True
                if key in seen_fp:
                    continue
                seen_fp.add(key)
                sols = self._fingerprint_solutions(fps[rown], limit=3)
                if not sols:
                    self.crosscheck_disagreements.append(
                        f"cone fingerprint {key} admits no multiset solution")
                    continue
                if len(sols) > 1:
                    # the fingerprint matrix can be singular (type D);
                    # ambiguous cones are re-checked against the final
                    # vertex support
                    ambiguous.add(key)
                    continue
                ms = sols[0]
                alpha = self._alpha_from_coords(t1, t0, coords,
                                                coeff_rows[rown])
                dual = self._cone_fingerprint_dual(alpha)
                dual_expect = np.zeros(len(cat.verts), dtype=np.int64)
                for v in ms:
                    dual_expect += cat.dims[cat.vidx[v], :]
                if not np.array_equal(dual, dual_expect):
                    self.crosscheck_disagreements.append(
                        f"cone fingerprint dual mismatch for {ms}")
                found.add(ms)

    def _enumerate_ts(self) -> None:
        cat = self.cat
        pr = self.params
        found: set[tuple] = set()
        ambiguous: set[tuple] = set()
        self._seen_cone_fps: set[tuple] = set()
        blind = _multisets(self.t_ind, pr.mult_bound, pr.blind_side_total)
        for t1 in blind:
            for t0 in blind:
                self._cones_of_pair(t1, t0, found, ambiguous)
        vertices = {v for ms in found for v in ms}
        # every vertex is settled by a targeted enumeration: a cofibrant
        # vertex v is the cone of some morphism into its minimal right
        # T-approximation source, and a single-vertex cone fingerprint is
        # never ambiguous (fingerprint-kernel vectors have mixed signs on
        # several vertices), so the hunt is conclusive
        sides = _multisets(self.t_ind, pr.mult_bound, pr.side_total)
        for v in cat.verts:
            crit = self._approx_criterion_cofibrant(v)
            if crit and v not in vertices:
                t0_mor = self.approx(Obj((v,)), "right", "T", minimize=True)
                t0 = tuple(sorted(t0_mor.dom.summands))
                target = tuple(int(x) for x in cat.dims[:, cat.vidx[v]])
                hit = False
                for t1 in sides:
                    if self._cones_of_pair(t1, t0, found, ambiguous,
                                           stop_fp=target):
                        hit = True
                        break
                if hit:
                    found.add((v,))
                    vertices.add(v)
            if crit != (v in vertices):
                self.crosscheck_disagreements.append(
                    f"cofibrancy cross-check disagreement at vertex {v!r}: "
                    f"cone enumeration says {v in vertices}, "
                    f"approximation criterion says {crit}")
        for key in sorted(ambiguous):
            fp = np.array(key, dtype=np.int64)
            if not self._fingerprint_solutions(fp, limit=1, allowed=vertices):
                self.crosscheck_disagreements.append(
                    f"ambiguous cone fingerprint {key} is not realizable "
                    "over the enumerated cofibrant vertices")
        self.ts_ind = tuple(sorted(vertices))
        self.ts_list = [Obj(ms) for ms in
                        _multisets(self.ts_ind, pr.ts_total, pr.ts_total)]

    def is_cofibrant(self, x: Obj) -> bool:
        """Cones are closed under direct sums and summands, so membership is
        summand-wise membership among the enumerated indecomposable cones."""
        return all(v in self.ts_ind for v in x.summands)

    # ------------------------------------------------------------- homotopies

    def homotopic(self, f: Mor, g: Mor) -> bool:
        if f.dom != g.dom or f.cod != g.cod:
            raise ValueError("homotopic needs parallel morphisms")
        return self.ideal_membership(ac.sub(f, g), "perp")

    def _homotopy_correction(self, f: Mor, g: Mor):
        """h with f - g = h . a, a the tautological left perp-approximation
        of the domain; None iff f and g are not homotopic."""
        if f.dom != g.dom or f.cod != g.cod:
            raise ValueError("right_homotopy needs parallel morphisms")
        cat = self.cat
        diff = ac.sub(f, g)
        a = self.tautological_approx(f.dom, "left", "perp")
        sol = array_solve(ac.right_mul_matrix(a, f.cod),
                          ac.mor_to_vec(diff), cat.field.p)
        if sol is None:
            return None
        return a, ac.vec_to_mor(cat, a.cod, f.cod, sol)

    def right_homotopy(self, f: Mor, g: Mor):
        """Explicit witness for f ~ g, or None.

        Solves f - g = h . a with a the tautological left perp-approximation
        of the domain, and packages the path object Y + U with structure maps
        [1; 0] and [[1, h], [1, 0]] together with K = (g, a)."""
        cat = self.cat
        got = self._homotopy_correction(f, g)
        if got is None:
            return None
        a, h = got
        u = a.cod
        y = f.cod
        yu = ac.dsum_obj(y, u)
        m = Mor(cat, y, yu)
        for i in range(len(y)):
            m.set_block(i, i, ac.identity(cat, y).block(i, i))
        q = Mor(cat, yu, ac.dsum_obj(y, y))
        idy = ac.identity(cat, y)
        for i in range(len(y)):
            for j in range(len(y)):
                vec = idy.block(i, j)
                if np.any(vec):
                    q.set_block(i, j, vec)
                    q.set_block(len(y) + i, j, vec)
        for (i, j), vec in h.blocks.items():
            q.set_block(i, len(y) + j, vec)
        K = Mor(cat, f.dom, yu)
        for (i, j), vec in g.blocks.items():
            K.set_block(i, j, vec)
        for (i, j), vec in a.blocks.items():
            K.set_block(len(y) + i, j, vec)
        # verify the defining equations exactly
        delta = Mor(cat, y, ac.dsum_obj(y, y))
        for i in range(len(y)):
            for j in range(len(y)):
                vec = idy.block(i, j)
                if np.any(vec):
                    delta.set_block(i, j, vec)
                    delta.set_block(len(y) + i, j, vec)
        assert ac.compose(q, m) == delta
        fg = Mor(cat, f.dom, ac.dsum_obj(y, y))
        for (i, j), vec in f.blocks.items():
            fg.set_block(i, j, vec)
        for (i, j), vec in g.blocks.items():
            fg.set_block(len(y) + i, j, vec)
        assert ac.compose(q, K) == fg
        assert self.classify(m).weq
        return RightHomotopy(m, q, K, h)

    def cylinder(self, x: Obj) -> tuple[Mor, Mor]:
        """(i, s) with s . i the fold map of x and s a weak equivalence."""
        cat = self.cat
        a = self.tautological_approx(x, "left", "perp")
        u = a.cod
        xu = ac.dsum_obj(x, u)
        xx = ac.dsum_obj(x, x)
        idx = ac.identity(cat, x)
        i = Mor(cat, xx, xu)
        for (r, c), vec in idx.blocks.items():
            i.set_block(r, c, vec)
            i.set_block(r, len(x) + c, vec)
        for (r, c), vec in a.blocks.items():
            i.set_block(len(x) + r, c, vec)
        s = Mor(cat, xu, x)
        for (r, c), vec in idx.blocks.items():
            s.set_block(r, c, vec)
        fold = Mor(cat, xx, x)
        for (r, c), vec in idx.blocks.items():
            fold.set_block(r, c, vec)
            fold.set_block(r, len(x) + c, vec)
        assert ac.compose(s, i) == fold
        assert self.classify(s).weq
        return i, s

    def path_obj(self, y: Obj) -> tuple[Mor, Mor]:
        """(m, q) with q . m the diagonal of y and m a weak equivalence.

        The spare coordinate is a right perp-approximation source of y, so
        every ideal difference of parallel morphisms into y is realized by
        some K into this path object."""
        cat = self.cat
        b = self.tautological_approx(y, "right", "perp")
        w = b.dom
        yw = ac.dsum_obj(y, w)
        yy = ac.dsum_obj(y, y)
        idy = ac.identity(cat, y)
        m = Mor(cat, y, yw)
        for (r, c), vec in idy.blocks.items():
            m.set_block(r, c, vec)
        q = Mor(cat, yw, yy)
        for (r, c), vec in idy.blocks.items():
            q.set_block(r, c, vec)
            q.set_block(len(y) + r, c, vec)
        for (r, c), vec in b.blocks.items():
            q.set_block(r, len(y) + c, vec)
        delta = Mor(cat, y, yy)
        for (r, c), vec in idy.blocks.items():
            delta.set_block(r, c, vec)
            delta.set_block(len(y) + r, c, vec)
        assert ac.compose(q, m) == delta
        assert self.classify(m).weq
        return m, q

    def homotopy_inverse(self, f: Mor):
        """eps with eps . f and f . eps the identities modulo (sigma T)."""
        cat = self.cat
        p = cat.field.p
        x, y = f.dom, f.cod
        if not (self.is_cofibrant(x) and self.is_cofibrant(y)):
            raise ValueError("homotopy_inverse needs cofibrant endpoints")
        rm = ac.right_mul_matrix(f, x)    # Hom(y,x) -> Hom(x,x), e -> e.f
        lm = ac.left_mul_matrix(f, y)     # Hom(y,x) -> Hom(y,y), e -> f.e
        w1 = self.ideal_span_matrix("sigmaT", x, x)
        w2 = self.ideal_span_matrix("sigmaT", y, y)
        d = rm.shape[1]
        top = np.concatenate(
            [rm, w1, np.zeros((rm.shape[0], w2.shape[1]), dtype=np.int64)],
            axis=1)
        bot = np.concatenate(
            [lm, np.zeros((lm.shape[0], w1.shape[1]), dtype=np.int64), w2],
            axis=1)
        a = np.concatenate([top, bot], axis=0)
        rhs = np.concatenate([ac.mor_to_vec(ac.identity(cat, x)),
                              ac.mor_to_vec(ac.identity(cat, y))])
        sol = array_solve(a, rhs, p)
        if sol is None:
            if self.classify(f).weq:
                raise AssertionError(
                    "invariant violation: weak equivalence between cofibrant "
                    "objects has no homotopy inverse")
            return None
        return ac.vec_to_mor(cat, y, x, sol[:d])

    # ---------------------------------------------------------- factorizations

    def factor_wcof_fib(self, f: Mor) -> FactorPair:
        """f = [f a] . [1; 0] with the inclusion a weak cofibration and
        [f a] a fibration, a being a minimal right sigma-T-approximation of
        the codomain."""
        cat = self.cat
        a = self.approx(f.cod, "right", "sigmaT", minimize=True)
        mid = ac.dsum_obj(f.dom, a.dom)
        first = Mor(cat, f.dom, mid)
        for (i, j), vec in ac.identity(cat, f.dom).blocks.items():
            first.set_block(i, j, vec)
        second = Mor(cat, mid, f.cod)
        for (i, j), vec in f.blocks.items():
            second.set_block(i, j, vec)
        for (i, j), vec in a.blocks.items():
            second.set_block(i, len(f.dom) + j, vec)
        assert ac.compose(second, first) == f
        c1 = self.classify(first)
        c2 = self.classify(second)
        if not (c1.wcof and c1.weq):
            raise AssertionError("first factor failed certification")
        if not c2.fib:
            raise AssertionError("second factor failed fibration certification")
        return FactorPair(first, second, c1, c2)

    def factor_htpcof_wfib(self, f: Mor) -> FactorPair:
        """f = [q 0] . [ft; eps] through a cofibrant replacement of the
        codomain; needs a cofibrant domain."""
        cat = self.cat
        if not self.is_cofibrant(f.dom):
            raise ValueError("domain not cofibrant")
        qy_obj, q = self.cofibrant_replacement(f.cod)
        sol = array_solve(ac.left_mul_matrix(q, f.dom),
                          ac.mor_to_vec(f), cat.field.p)
        if sol is None:
            raise AssertionError("no lift through the cofibrant replacement")
        ft = ac.vec_to_mor(cat, f.dom, qy_obj, sol)
        eps = self.approx(f.dom, "left", "perp", minimize=True)
        if not all(v in self.sigma_t_ind for v in eps.cod.summands):
            raise AssertionError("epsilon verification failed: target "
                                 f"{eps.cod.summands} outside add sigma T")
        if not self.is_approximation(eps, "left", "perp"):
            raise AssertionError("epsilon verification failed: not a left "
                                 "perp approximation")
        mid = ac.dsum_obj(qy_obj, eps.cod)
        first = Mor(cat, f.dom, mid)
        for (i, j), vec in ft.blocks.items():
            first.set_block(i, j, vec)
        for (i, j), vec in eps.blocks.items():
            first.set_block(len(qy_obj) + i, j, vec)
        second = Mor(cat, mid, f.cod)
        for (i, j), vec in q.blocks.items():
            second.set_block(i, j, vec)
        assert ac.compose(second, first) == f
        c1 = self.classify(first)
        c2 = self.classify(second)
        if not c2.wfib:
            raise AssertionError("second factor failed certification")
        return FactorPair(first, second, c1, c2)

    def cofibrant_replacement(self, x: Obj) -> tuple[Obj, Mor]:
        """Minimal cofibrant object with a certified trivial fibration onto x.

        Candidates are filtered by the Hom(t, -) dimension fingerprint and
        searched in size order, so the first hit is minimal by summand count
        with lexicographic tie-breaking."""
        cat = self.cat
        p = cat.field.p
        if self.is_cofibrant(x):
            return x, ac.identity(cat, x)
        want = [sum(cat.hom_dim(t, v) for v in x.summands) for t in self.t_ind]
        for cand in self.ts_list:
            have = [sum(cat.hom_dim(t, v) for v in cand.summands)
                    for t in self.t_ind]
            if have != want:
                continue
            d = ac.hom_space_dim(cat, cand, x)
            if p ** d <= p ** self.params.enum_exp_cap:
                space = ac.enumerate_morphisms(cat, cand, x,
                                               cap=p ** self.params.enum_exp_cap)
            else:
                rng = np.random.default_rng(self.params.seed)
                space = (ac.random_morphism_rng(cat, cand, x, rng)
                         for _ in range(self.params.sample_count))
            for q in space:
                c = self.classify(q)
                if c.wfib:
                    return cand, q
        raise RuntimeError("no replacement found within budget")


def build_rigid(cat: MeshCategory, t_ind, params: EnumParams | None = None) -> RigidStructure:
    return RigidStructure(cat, t_ind, params)


def all_rigid_subsets(cat: MeshCategory) -> list[tuple[str, ...]]:
    """Every nonempty rigid set of indecomposables, in lexicographic order."""
    verts = list(cat.verts)
    compat = {
        (u, v): cat.hom_dim(u, cat.sigma_vertex(v)) == 0
        and cat.hom_dim(v, cat.sigma_vertex(u)) == 0
        for u in verts for v in verts
    }
    out: list[tuple[str, ...]] = []

    def rec(start: int, acc: list[str]) -> None:
        if acc:
            out.append(tuple(acc))
        for i in range(start, len(verts)):
            v = verts[i]
            if cat.hom_dim(v, cat.sigma_vertex(v)) != 0:
                continue
            if all(compat[(w, v)] for w in acc):
                acc.append(v)
                rec(i + 1, acc)
                acc.pop()

    rec(0, [])
    return sorted(out, key=lambda s: (len(s), s))
