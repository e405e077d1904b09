"""Characterization-free decision procedures for lifting properties, and the
axiom / lemma suites that test the class predicates against them.

Lifting against *all* commuting squares is a single rank condition over the
finite field: the squares from ell to r form the kernel of a linear map, and
a lift exists for all of them iff the lift-candidate map surjects onto that
kernel.  The homotopy-weakened variants enlarge the candidate map by the
ideal subspace on the relevant edge.  Enumeration is reserved for the
quantifier over the generating family (morphisms from sums of T vertices to
cofibrant objects).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import addcat as ac
from .addcat import Mor, Obj
from .exactlin import array_kernel, fast_rank
from .meshcat import MeshCategory
from .report import Report, mor_to_json
from .rigidmodel import RigidStructure


@dataclass
class LiftingReport:
    f: Mor
    g: Mor
    square_space_dim: int
    plain: bool
    htp_top: bool
    htp_bottom: bool


def _square_space(rigid: RigidStructure, ell: Mor, r: Mor) -> np.ndarray:
    """Basis (as columns) of the space of commuting squares from ell to r."""
    cat = rigid.cat
    p = cat.field.p
    a_obj = ell.dom
    lam = np.concatenate(
        [ac.left_mul_matrix(r, a_obj), -ac.right_mul_matrix(ell, r.cod)],
        axis=1) % p
    basis = array_kernel(lam, p)
    if not basis:
        return np.zeros((lam.shape[1], 0), dtype=np.int64)
    return np.stack(basis, axis=1)


def _candidate_matrix(rigid: RigidStructure, ell: Mor, r: Mor, mode: str):
    cat = rigid.cat
    a_obj, b_obj = ell.dom, ell.cod
    psi = np.concatenate(
        [ac.right_mul_matrix(ell, r.dom), ac.left_mul_matrix(r, b_obj)],
        axis=0)
    if mode == "plain":
        return psi
    d_top = ac.hom_space_dim(cat, a_obj, r.dom)
    d_bot = ac.hom_space_dim(cat, b_obj, r.cod)
    if mode == "htp_top":
        w = rigid.ideal_span_matrix("perp", a_obj, r.dom)
        pad = np.zeros((d_bot, w.shape[1]), dtype=np.int64)
        return np.concatenate([psi, np.concatenate([w, pad], axis=0)], axis=1)
    if mode == "htp_bottom":
        w = rigid.ideal_span_matrix("perp", b_obj, r.cod)
        pad = np.zeros((d_top, w.shape[1]), dtype=np.int64)
        return np.concatenate([psi, np.concatenate([pad, w], axis=0)], axis=1)
    raise ValueError(f"unknown mode {mode!r}")


def rlp_all_squares(rigid: RigidStructure, ell: Mor, r: Mor,
                    mode: str = "plain") -> bool:
    """Whether every commuting square from ell to r admits a lift.

    mode "plain" asks for strictly commuting triangles; "htp_top" relaxes the
    upper triangle to a right homotopy, "htp_bottom" the lower one to a left
    homotopy (both decided through the perp ideal).  A lift for every square
    at once means the square space lies in the image of the candidate map,
    which is one rank comparison over the field."""
    p = rigid.cat.field.p
    if mode == "plain":
        # strictly commuting lifts land inside the square space, so
        # surjectivity onto it is a dimension comparison
        cat = rigid.cat
        lam = np.concatenate(
            [ac.left_mul_matrix(r, ell.dom),
             -ac.right_mul_matrix(ell, r.cod)], axis=1) % p
        psi = _candidate_matrix(rigid, ell, r, "plain")
        return fast_rank(psi, p) == lam.shape[1] - fast_rank(lam, p)
    sq = _square_space(rigid, ell, r)
    if sq.shape[1] == 0:
        return True
    cand = _candidate_matrix(rigid, ell, r, mode)
    base = fast_rank(cand, p)
    return fast_rank(np.concatenate([cand, sq], axis=1), p) == base


def lifting_report(rigid: RigidStructure, ell: Mor, r: Mor) -> LiftingReport:
    return LiftingReport(
        ell, r, _square_space(rigid, ell, r).shape[1],
        rlp_all_squares(rigid, ell, r, "plain"),
        rlp_all_squares(rigid, ell, r, "htp_top"),
        rlp_all_squares(rigid, ell, r, "htp_bottom"),
    )


def _generating_family(rigid: RigidStructure, mult_bound: int = 2,
                       a_total: int | None = None):
    """(R, A) pairs for the generating cofibrations: R a multiset of T
    vertices, A an enumerated cofibrant object; ordered small to large.

    Pairs where some summand has no Hom against the whole other side are
    dropped: every generator on such a pair is a direct sum of a generator
    on a smaller pair with a trivial one, and lifting against a direct sum
    holds iff it holds against each summand."""
    cache = getattr(rigid, "_gen_family_cache", None)
    if cache is None:
        cache = rigid._gen_family_cache = {}
    key = (mult_bound, a_total)
    hit = cache.get(key)
    if hit is not None:
        return hit
    cat = rigid.cat
    froms = []
    counts = itertools.product(range(mult_bound + 1), repeat=len(rigid.t_ind))
    for cs in counts:
        froms.append(tuple(itertools.chain.from_iterable(
            (t,) * c for t, c in zip(rigid.t_ind, cs))))
    froms.sort(key=lambda m: (len(m), m))
    tos = [a for a in rigid.ts_list
           if a_total is None or len(a) <= a_total]
    pairs = []
    for rs in froms:
        for a in tos:
            if len(rs) > 1 or len(a) > 1:
                if any(all(cat.hom_dim(r, v) == 0 for v in a.summands)
                       for r in rs):
                    continue
                if any(all(cat.hom_dim(r, v) == 0 for r in rs)
                       for v in a.summands):
                    continue
            pairs.append((Obj(rs), a))
    pairs.sort(key=lambda pair: (len(pair[0]) + len(pair[1]),
                                 pair[0].summands, pair[1].summands))
    cache[key] = pairs
    return pairs


def _gen_tensor(rigid: RigidStructure, r_obj: Obj, a_obj: Obj, z_obj: Obj):
    """Per-coordinate precomposition matrices: stacking right_mul_matrix of
    every elementary morphism R -> A, evaluated into Hom(-, Z)."""
    cache = getattr(rigid, "_gen_tensor_cache", None)
    if cache is None:
        cache = rigid._gen_tensor_cache = {}
    key = (r_obj.summands, a_obj.summands, z_obj.summands)
    hit = cache.get(key)
    if hit is not None:
        return hit
    cat = rigid.cat
    layout, dim_g = ac.hom_layout(cat, r_obj, a_obj)
    d_rz = ac.hom_space_dim(cat, r_obj, z_obj)
    d_az = ac.hom_space_dim(cat, a_obj, z_obj)
    t = np.zeros((dim_g, d_rz, d_az), dtype=np.int64)
    for (ij, off, d) in layout:
        i, j = ij
        for k in range(d):
            e = ac.elementary(cat, r_obj, a_obj, i, j, k)
            t[off + k] = ac.right_mul_matrix(e, z_obj)
    cache[key] = t
    return t


def rlp_against_generating_I(rigid: RigidStructure, r: Mor,
                             budget: int | None = None,
                             mult_bound: int = 2,
                             a_total: int | None = None):
    """(verdict, exhaustive): right lifting property of r against every
    morphism of the generating family, enumerated over the field.

    Stops at the first failing generator.  When a coefficient space exceeds
    the budget it is sampled (seeded) and the returned flag is False."""
    cat = rigid.cat
    p = cat.field.p
    if budget is None:
        budget = p ** rigid.params.enum_exp_cap
    x_obj, y_obj = r.dom, r.cod
    lf_cache: dict[tuple, np.ndarray] = {}

    def lf(w: Obj) -> np.ndarray:
        hit = lf_cache.get(w.summands)
        if hit is None:
            hit = lf_cache[w.summands] = ac.left_mul_matrix(r, w)
        return hit

    exhaustive = True
    for (r_obj, a_obj) in _generating_family(rigid, mult_bound, a_total):
        dim_g = ac.hom_space_dim(cat, r_obj, a_obj)
        if dim_g == 0:
            coeffs = np.zeros((1, 0), dtype=np.int64)
        elif p ** dim_g <= budget:
            coeffs = np.array(
                list(itertools.product(range(p), repeat=dim_g)),
                dtype=np.int64).reshape(-1, dim_g)
        else:
            exhaustive = False
            rng = np.random.default_rng(rigid.params.seed)
            coeffs = rng.integers(
                0, p, size=(rigid.params.sample_count, dim_g))
        if len(r_obj) >= 1 and len(a_obj) >= 1 and dim_g:
            # rows with an all-zero block for some summand are direct sums
            # of smaller generators with trivial ones; covered elsewhere
            layout, _ = ac.hom_layout(cat, r_obj, a_obj)
            skip = np.zeros(coeffs.shape[0], dtype=bool)
            for side in (0, 1):
                groups: dict[int, list[int]] = {}
                for (ij, off, d) in layout:
                    groups.setdefault(ij[side], []).extend(
                        range(off, off + d))
                for idx in groups.values():
                    skip |= ~np.any(coeffs[:, idx], axis=1)
            coeffs = coeffs[~skip]
            if coeffs.shape[0] == 0:
                continue
        t_x = _gen_tensor(rigid, r_obj, a_obj, x_obj)
        t_y = _gen_tensor(rigid, r_obj, a_obj, y_obj)
        d_rx, d_ax = t_x.shape[1], t_x.shape[2]
        d_ry, d_ay = t_y.shape[1], t_y.shape[2]
        if d_rx + d_ay == 0:
            continue
        l_r = lf(r_obj)
        l_a = lf(a_obj)
        n_g = coeffs.shape[0]
        rg_x = (coeffs @ t_x.reshape(dim_g, d_rx * d_ax)).reshape(
            n_g, d_rx, d_ax) % p
        rg_y = (coeffs @ t_y.reshape(dim_g, d_ry * d_ay)).reshape(
            n_g, d_ry, d_ay) % p
        for n in range(coeffs.shape[0]):
            lam = np.concatenate([l_r, -rg_y[n]], axis=1) % p
            psi = np.concatenate([rg_x[n], l_a], axis=0)
            if fast_rank(psi, p) != d_rx + d_ay - fast_rank(lam, p):
                return False, exhaustive
    return True, exhaustive


# --------------------------------------------------------------- sampling


def objects_up_to(cat: MeshCategory, max_summands: int,
                  include_zero: bool = True) -> list[Obj]:
    out = [Obj(())] if include_zero else []
    for n in range(1, max_summands + 1):
        out.extend(Obj(ms) for ms in
                   itertools.combinations_with_replacement(cat.verts, n))
    return out


def _sample_obj(pool, rng) -> Obj:
    return pool[int(rng.integers(0, len(pool)))]


def _sample_mor(cat, pool, rng) -> Mor:
    x = _sample_obj(pool, rng)
    y = _sample_obj(pool, rng)
    return ac.random_morphism_rng(cat, x, y, rng)


def _random_iso(cat, x: Obj, rng) -> Mor:
    """Identity plus a random radical part: always invertible."""
    f = ac.random_morphism_rng(cat, x, x, rng)
    for i, v in enumerate(x.summands):
        for j, w in enumerate(x.summands):
            if v == w:
                vec = f.block(i, j).copy()
                vec[0] = 1 if i == j else 0
                f.set_block(i, j, vec)
    return f


def _wfib_family(rigid: RigidStructure, pool, rng, count: int) -> list[Mor]:
    """Trivial fibrations to test against: replacement maps, their direct
    sums with identities, and classified random finds."""
    cat = rigid.cat
    fam: list[Mor] = []
    for x in pool[1: 1 + min(len(pool) - 1, 8)]:
        _, q = rigid.cofibrant_replacement(x)
        fam.append(q)
        z = _sample_obj(pool, rng)
        fam.append(ac.dsum_mor(q, ac.identity(cat, z)))
    tries = 0
    while len(fam) < count and tries < 40 * count:
        tries += 1
        f = _sample_mor(cat, pool, rng)
        if rigid.classify(f).wfib:
            fam.append(f)
    return fam[:count]


def _fib_family(rigid: RigidStructure, pool, rng, count: int) -> list[Mor]:
    cat = rigid.cat
    fam: list[Mor] = []
    while len(fam) < count:
        f = _sample_mor(cat, pool, rng)
        fam.append(rigid.factor_wcof_fib(f).second)
        if rigid.classify(f).fib:
            fam.append(f)
    return fam[:count]


def _wcof_family(rigid: RigidStructure, pool, rng, count: int) -> list[Mor]:
    """Canonical inclusions into X + sigma T, conjugated by isomorphisms."""
    cat = rigid.cat
    fam: list[Mor] = []
    while len(fam) < count:
        x = _sample_obj(pool, rng)
        k = int(rng.integers(0, 3))
        ts = tuple(rigid.sigma_t_ind[int(rng.integers(0, len(rigid.sigma_t_ind)))]
                   for _ in range(k))
        cod = ac.dsum_obj(x, Obj(ts))
        inc = Mor(cat, x, cod)
        for (i, j), vec in ac.identity(cat, x).blocks.items():
            inc.set_block(i, j, vec)
        u = _random_iso(cat, cod, rng)
        v = _random_iso(cat, x, rng)
        fam.append(ac.compose(u, ac.compose(inc, v)))
    return fam


# ------------------------------------------------------------- axiom suite


def run_axiom_suite(cat: MeshCategory, rigid: RigidStructure,
                    budget: int = 500, seed: int = 0) -> Report:
    """Sampled verification of the structural axioms.

    Conditions: (0) pullbacks of trivial fibrations along split epis,
    (0.5) coproduct inclusions with cofibrant second summand, (1) the
    two-out-of-three property, (2) identity/composition/retract closure of
    the classes, (3) the two orthogonality relations, (4) both
    factorizations with certified factors on every sampled morphism."""
    rng = np.random.default_rng(seed)
    p = cat.field.p
    pool = objects_up_to(cat, 2)
    n = max(4, budget // 25)
    rep = Report("axioms", {
        "field_char": p, "T": list(rigid.t_ind), "budget": budget,
        "seed": seed,
    })

    # (0) pullback of a trivial fibration along a split epi
    bad = []
    wfibs = _wfib_family(rigid, pool, rng, max(4, n // 4))
    for q in wfibs:
        z = _sample_obj(pool, rng)
        pb = ac.dsum_mor(q, ac.identity(cat, z))
        top = Mor(cat, ac.dsum_obj(q.dom, z), q.dom)
        for (i, j), vec in ac.identity(cat, q.dom).blocks.items():
            top.set_block(i, j, vec)
        bottom = Mor(cat, ac.dsum_obj(q.cod, z), q.cod)
        for (i, j), vec in ac.identity(cat, q.cod).blocks.items():
            bottom.set_block(i, j, vec)
        if ac.compose(q, top) != ac.compose(bottom, pb):
            bad.append(("square does not commute", mor_to_json(q)))
            continue
        if not rigid.classify(pb).wfib:
            bad.append(("pullback not a trivial fibration", mor_to_json(q)))
            continue
        # universal property on sampled cones: solutions exist uniquely
        u_obj = _sample_obj(pool, rng)
        m = np.concatenate([ac.left_mul_matrix(top, u_obj),
                            ac.left_mul_matrix(pb, u_obj)], axis=0)
        dim_dom = ac.hom_space_dim(cat, u_obj, top.dom)
        if dim_dom and fast_rank(m, p) != dim_dom:
            bad.append(("mediating morphism not unique", mor_to_json(q)))
            continue
        for _ in range(3):
            c = ac.random_morphism_rng(cat, u_obj, top.dom, rng)
            a_mor = ac.compose(top, c)
            b_mor = ac.compose(pb, c)
            vec = np.concatenate([ac.mor_to_vec(a_mor), ac.mor_to_vec(b_mor)])
            from .exactlin import array_solve
            sol = array_solve(m, vec, p)
            if sol is None or not np.array_equal(
                    sol % p, ac.mor_to_vec(c) % p):
                bad.append(("universal property failed", mor_to_json(q)))
                break
    rep.add("axiom-0-pullbacks", not bad,
            f"{len(wfibs)} trivial fibrations tested", bad[:3] or None)

    # (0.5) inclusions A -> A + B with B cofibrant: LLP against the family
    bad = []
    for _ in range(n):
        a_obj = _sample_obj(pool, rng)
        b_obj = rigid.ts_list[int(rng.integers(0, len(rigid.ts_list)))]
        inc = Mor(cat, a_obj, ac.dsum_obj(a_obj, b_obj))
        for (i, j), vec in ac.identity(cat, a_obj).blocks.items():
            inc.set_block(i, j, vec)
        for q in wfibs:
            if not rlp_all_squares(rigid, inc, q, "plain"):
                bad.append({"A": list(a_obj.summands), "B": list(b_obj.summands)})
                break
    rep.add("axiom-0.5-coproduct-inclusions", not bad,
            "literal reading tested: arbitrary first summand, "
            f"{n} samples", bad[:3] or None)

    # (1) two-out-of-three
    bad = []
    for _ in range(budget):
        x, y, z = (_sample_obj(pool, rng) for _ in range(3))
        f = ac.random_morphism_rng(cat, x, y, rng)
        g = ac.random_morphism_rng(cat, y, z, rng)
        wf = rigid.classify(f).weq
        wg = rigid.classify(g).weq
        wgf = rigid.classify(ac.compose(g, f)).weq
        if (wf and wg and not wgf) or (wf and wgf and not wg) \
                or (wg and wgf and not wf):
            bad.append({"f": mor_to_json(f), "g": mor_to_json(g),
                        "flags": [wf, wg, wgf]})
    rep.add("axiom-1-two-out-of-three", not bad, f"{budget} pairs",
            bad[:3] or None)

    # (2) closure: identities, composition, retracts
    bad = []
    for x in pool[: min(len(pool), 20)]:
        c = rigid.classify(ac.identity(cat, x))
        if not (c.weq and c.fib and c.wcof):
            bad.append({"identity": list(x.summands), "flags": c.as_dict()})
    for _ in range(n):
        x, y, z = (_sample_obj(pool, rng) for _ in range(3))
        f = ac.random_morphism_rng(cat, x, y, rng)
        g = ac.random_morphism_rng(cat, y, z, rng)
        cf, cg = rigid.classify(f), rigid.classify(g)
        cgf = rigid.classify(ac.compose(g, f))
        for attr in ("weq", "fib", "wfib", "wcof"):
            if getattr(cf, attr) and getattr(cg, attr) \
                    and not getattr(cgf, attr):
                bad.append({"class": attr, "f": mor_to_json(f),
                            "g": mor_to_json(g)})
    for _ in range(n):
        x, y = _sample_obj(pool, rng), _sample_obj(pool, rng)
        f0 = ac.random_morphism_rng(cat, x, y, rng)
        h = _sample_mor(cat, pool, rng)
        big = ac.dsum_mor(f0, h)
        u = _random_iso(cat, big.cod, rng)
        v = _random_iso(cat, big.dom, rng)
        f = ac.compose(u, ac.compose(big, v))
        cf, cf0 = rigid.classify(f), rigid.classify(f0)
        for attr in ("weq", "fib", "wfib"):
            if getattr(cf, attr) and not getattr(cf0, attr):
                bad.append({"retract-class": attr, "f0": mor_to_json(f0)})
    rep.add("axiom-2-class-closure", not bad, f"{2 * n} samples",
            bad[:3] or None)

    # (3) orthogonality
    bad = []
    fibs = _fib_family(rigid, pool, rng, max(4, n // 4))
    for ell in _wcof_family(rigid, pool, rng, max(4, n // 4)):
        for r in fibs:
            if not rlp_all_squares(rigid, ell, r, "plain"):
                bad.append({"wcof": mor_to_json(ell), "fib": mor_to_json(r)})
    for _ in range(max(4, n // 4)):
        a_obj = _sample_obj(pool, rng)
        b_obj = rigid.ts_list[int(rng.integers(0, len(rigid.ts_list)))]
        inc = Mor(cat, a_obj, ac.dsum_obj(a_obj, b_obj))
        for (i, j), vec in ac.identity(cat, a_obj).blocks.items():
            inc.set_block(i, j, vec)
        for q in wfibs:
            if not rlp_all_squares(rigid, inc, q, "plain"):
                bad.append({"cof": mor_to_json(inc), "wfib": mor_to_json(q)})
    rep.add("axiom-3-orthogonality", not bad, "weak cofibrations vs "
            "fibrations, canonical cofibrations vs trivial fibrations",
            bad[:3] or None)

    # (4) factorizations on every sampled morphism
    bad = []
    count = 0
    for _ in range(budget):
        f = _sample_mor(cat, pool, rng)
        count += 1
        try:
            rigid.factor_wcof_fib(f)
        except AssertionError as e:
            bad.append({"factorization": "wcof-fib", "f": mor_to_json(f),
                        "error": str(e)})
        x = rigid.ts_list[int(rng.integers(0, len(rigid.ts_list)))]
        y = _sample_obj(pool, rng)
        g = ac.random_morphism_rng(cat, x, y, rng)
        try:
            fp = rigid.factor_htpcof_wfib(g)
        except AssertionError as e:
            bad.append({"factorization": "htpcof-wfib", "f": mor_to_json(g),
                        "error": str(e)})
            continue
        for q in wfibs[:3]:
            if not (rlp_all_squares(rigid, fp.first, q, "htp_top")
                    and rlp_all_squares(rigid, fp.first, q, "htp_bottom")):
                bad.append({"factorization": "htpcof-wfib",
                            "first-factor-falsified": mor_to_json(fp.first)})
                break
    rep.add("axiom-4-factorizations", not bad,
            f"{count} morphisms, both constructors, certified factors",
            bad[:3] or None)
    return rep


# ----------------------------------------------------------- lemma suite


def _morphism_space(cat, x, y, cap_exp, sample_count, rng):
    p = cat.field.p
    d = ac.hom_space_dim(cat, x, y)
    if p ** d <= p ** cap_exp:
        return ac.enumerate_morphisms(cat, x, y, cap=p ** cap_exp), True
    return (ac.random_morphism_rng(cat, x, y, rng)
            for _ in range(sample_count)), False


def lemma_equivalence_suite(cat: MeshCategory, rigid: RigidStructure,
                            max_summands: int = 2, seed: int = 0,
                            gen_mult_bound: int = 2,
                            gen_a_total: int | None = None) -> Report:
    """Per-morphism agreement between the class predicates and the
    characterization-free oracles.

    (a) perp-ideal membership vs vanishing of Hom(t, -);
    (b) trivial-fibration flag vs lifting against the generating family;
    (c) weak-cofibration flag: canonical forms are flagged, flagged
        morphisms lift against enumerated fibrations and split as expected;
    (d) homotopy: explicit right-homotopy construction vs ideal membership
        of the difference (both depend only on f - g, so differences
        against zero cover all parallel pairs)."""
    rng = np.random.default_rng(seed)
    p = cat.field.p
    pool = objects_up_to(cat, max_summands)
    rep = Report("lemmas", {
        "field_char": p, "T": list(rigid.t_ind), "seed": seed,
        "max_summands": max_summands,
    })
    bad_a, bad_b, bad_c, bad_d = [], [], [], []
    fib_pool: list[Mor] = []
    fib_rng = np.random.default_rng(seed + 1)
    for _ in range(8):
        fib_pool.append(rigid.factor_wcof_fib(
            _sample_mor(cat, pool, fib_rng)).second)
    exhaustive = True
    for x in pool:
        for y in pool:
            space, exh = _morphism_space(
                cat, x, y, rigid.params.enum_exp_cap,
                rigid.params.sample_count, rng)
            exhaustive = exhaustive and exh
            for f in space:
                cls = rigid.classify(f)
                in_ideal = rigid.ideal_membership(f, "perp")
                functor_zero = all(
                    not np.any(rigid.hom_functor_matrix(f, t))
                    for t in rigid.t_ind)
                if in_ideal != functor_zero:
                    bad_a.append(mor_to_json(f))
                verdict, _ = rlp_against_generating_I(
                    rigid, f, mult_bound=gen_mult_bound, a_total=gen_a_total)
                if verdict != cls.wfib:
                    bad_b.append({"f": mor_to_json(f), "wfib": cls.wfib,
                                  "oracle": verdict})
                if cls.wcof:
                    if ac.compose(cls.retraction, f) != ac.identity(cat, x):
                        bad_c.append({"f": mor_to_json(f),
                                      "reason": "retraction not verified"})
                    elif any(v not in rigid.sigma_t_ind
                             for v in cls.complement.summands):
                        bad_c.append({"f": mor_to_json(f),
                                      "reason": "complement outside sigma T"})
                    else:
                        for r in fib_pool[:4]:
                            if not rlp_all_squares(rigid, f, r, "plain"):
                                bad_c.append({"f": mor_to_json(f),
                                              "reason": "LLP vs fibration failed"})
                                break
                # the witness verdict is the solvability of the correction
                # system; the packaged construction is exercised below
                got = rigid._homotopy_correction(f, ac.zero_mor(cat, x, y))
                if (got is not None) != in_ideal:
                    bad_d.append(mor_to_json(f))
    # canonical-form direction of the weak-cofibration characterization
    crng = np.random.default_rng(seed + 2)
    for _ in range(50):
        for ell in _wcof_family(rigid, pool, crng, 1):
            if not rigid.classify(ell).wcof:
                bad_c.append({"f": mor_to_json(ell),
                              "reason": "canonical form not flagged"})
    # a few honest parallel pairs through the pair API
    prng = np.random.default_rng(seed + 3)
    for _ in range(25):
        x = _sample_obj(pool, prng)
        y = _sample_obj(pool, prng)
        f = ac.random_morphism_rng(cat, x, y, prng)
        g = ac.random_morphism_rng(cat, x, y, prng)
        if (rigid.right_homotopy(f, g) is not None) != rigid.homotopic(f, g):
            bad_d.append({"f": mor_to_json(f), "g": mor_to_json(g)})
    rep.add("lemma-ideal-vanishing", not bad_a,
            "exhaustive" if exhaustive else "sampled", bad_a[:3] or None)
    rep.add("lemma-generating-rlp-vs-trivial-fibration", not bad_b,
            "exhaustive" if exhaustive else "sampled", bad_b[:3] or None)
    rep.add("lemma-weak-cofibration-form", not bad_c, "",
            bad_c[:3] or None)
    rep.add("lemma-homotopy-witness", not bad_d, "",
            bad_d[:3] or None)
    return rep
