"""Additive closure of a mesh category.

Objects are formal ordered multisets of vertices; morphisms are block
matrices whose (i, j) block is a coefficient vector over the Hom basis from
the j-th source summand to the i-th target summand.  Composition is the
bilinear extension of the category's structure constants.

The suspension acts summand-wise on objects and, via the basis maps computed
by the mesh layer, linearly on blocks.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .exactlin import array_inverse, array_rank, array_solve
from .meshcat import MeshCategory


@dataclass(frozen=True)
class Obj:
    """Formal direct sum of vertices; the empty tuple is the zero object."""

    summands: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.summands)

    def counter(self) -> Counter:
        return Counter(self.summands)


ZERO = Obj(())


def obj(*names: str) -> Obj:
    return Obj(tuple(names))


def dsum_obj(*objs: Obj) -> Obj:
    return Obj(tuple(itertools.chain.from_iterable(o.summands for o in objs)))


class Mor:
    """Block-matrix morphism.  blocks[(i, j)] is the coefficient vector of
    the component dom.summands[j] -> cod.summands[i]; absent keys mean zero
    (including every pair whose Hom space is zero)."""

    __slots__ = ("cat", "dom", "cod", "blocks")

    def __init__(self, cat: MeshCategory, dom: Obj, cod: Obj, blocks=None) -> None:
        self.cat = cat
        self.dom = dom
        self.cod = cod
        self.blocks: dict[tuple[int, int], np.ndarray] = {}
        if blocks:
            for (i, j), vec in blocks.items():
                self.set_block(i, j, vec)

    def block_dim(self, i: int, j: int) -> int:
        return self.cat.hom_dim(self.dom.summands[j], self.cod.summands[i])

    def block(self, i: int, j: int) -> np.ndarray:
        b = self.blocks.get((i, j))
        if b is None:
            return np.zeros(self.block_dim(i, j), dtype=np.int64)
        return b

    def set_block(self, i: int, j: int, vec) -> None:
        d = self.block_dim(i, j)
        v = np.asarray(vec, dtype=np.int64) % self.cat.field.p
        if v.shape != (d,):
            raise ValueError(
                f"block ({i},{j}) must have length {d}, got shape {v.shape}"
            )
        if d and np.any(v):
            self.blocks[(i, j)] = v
        else:
            self.blocks.pop((i, j), None)

    def is_zero(self) -> bool:
        return not self.blocks

    def copy(self) -> "Mor":
        return Mor(self.cat, self.dom, self.cod,
                   {k: v.copy() for k, v in self.blocks.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mor):
            return NotImplemented
        if (self.cat is not other.cat or self.dom != other.dom
                or self.cod != other.cod):
            return False
        keys = set(self.blocks) | set(other.blocks)
        return all(np.array_equal(self.block(*k), other.block(*k)) for k in keys)

    def __repr__(self) -> str:
        return (f"Mor({'+'.join(self.dom.summands) or '0'} -> "
                f"{'+'.join(self.cod.summands) or '0'}, "
                f"{{{', '.join(f'{k}:{v.tolist()}' for k, v in sorted(self.blocks.items()))}}})")


def zero_mor(cat: MeshCategory, dom: Obj, cod: Obj) -> Mor:
    return Mor(cat, dom, cod)


def identity(cat: MeshCategory, x: Obj) -> Mor:
    f = Mor(cat, x, x)
    for i, v in enumerate(x.summands):
        vec = np.zeros(cat.hom_dim(v, v), dtype=np.int64)
        vec[0] = 1
        f.set_block(i, i, vec)
    return f


def elementary(cat: MeshCategory, dom: Obj, cod: Obj, i: int, j: int, k: int) -> Mor:
    """The morphism with a single basis class in block (i, j)."""
    f = Mor(cat, dom, cod)
    vec = np.zeros(f.block_dim(i, j), dtype=np.int64)
    vec[k] = 1
    f.set_block(i, j, vec)
    return f


def add(f: Mor, g: Mor) -> Mor:
    if f.dom != g.dom or f.cod != g.cod:
        raise ValueError("endpoint mismatch in sum")
    out = f.copy()
    for k, v in g.blocks.items():
        out.set_block(*k, out.block(*k) + v)
    return out


def sub(f: Mor, g: Mor) -> Mor:
    return add(f, smul(-1, g))


def smul(c: int, f: Mor) -> Mor:
    out = Mor(f.cat, f.dom, f.cod)
    for k, v in f.blocks.items():
        out.set_block(*k, c * v)
    return out


def compose(g: Mor, f: Mor) -> Mor:
    """g . f (apply f first)."""
    if f.cod != g.dom:
        raise ValueError("endpoint mismatch in composition")
    cat = f.cat
    p = cat.field.p
    out = Mor(cat, f.dom, g.cod)
    acc: dict[tuple[int, int], np.ndarray] = {}
    for (j, k), fv in f.blocks.items():
        u = f.dom.summands[k]
        v = f.cod.summands[j]
        for (i, j2), gv in g.blocks.items():
            if j2 != j:
                continue
            w = g.cod.summands[i]
            tensor = cat.comp.get((u, v, w))
            if tensor is None:
                continue
            term = np.einsum("j,i,jik->k", gv, fv, tensor)
            key = (i, k)
            if key in acc:
                acc[key] = acc[key] + term
            else:
                acc[key] = term
    for key, vec in acc.items():
        out.set_block(*key, vec % p)
    return out


def dsum_mor(*fs: Mor) -> Mor:
    cat = fs[0].cat
    dom = dsum_obj(*(f.dom for f in fs))
    cod = dsum_obj(*(f.cod for f in fs))
    out = Mor(cat, dom, cod)
    ri = ci = 0
    for f in fs:
        for (i, j), v in f.blocks.items():
            out.set_block(ri + i, ci + j, v)
        ri += len(f.cod)
        ci += len(f.dom)
    return out


# ------------------------------------------------------------- vectorization


def hom_layout(cat: MeshCategory, x: Obj, y: Obj):
    """Deterministic flat layout of Hom(x, y): ((i, j), offset, dim) rows."""
    cache = getattr(cat, "_layout_cache", None)
    if cache is None:
        cache = cat._layout_cache = {}
    key = (x.summands, y.summands)
    hit = cache.get(key)
    if hit is not None:
        return hit
    layout = []
    off = 0
    for i in range(len(y)):
        for j in range(len(x)):
            d = cat.hom_dim(x.summands[j], y.summands[i])
            if d:
                layout.append(((i, j), off, d))
                off += d
    cache[key] = (layout, off)
    return layout, off


def hom_space_dim(cat: MeshCategory, x: Obj, y: Obj) -> int:
    return hom_layout(cat, x, y)[1]


def mor_to_vec(f: Mor) -> np.ndarray:
    layout, total = hom_layout(f.cat, f.dom, f.cod)
    vec = np.zeros(total, dtype=np.int64)
    for (ij, off, d) in layout:
        vec[off:off + d] = f.block(*ij)
    return vec


def vec_to_mor(cat: MeshCategory, x: Obj, y: Obj, vec) -> Mor:
    layout, total = hom_layout(cat, x, y)
    v = np.asarray(vec, dtype=np.int64)
    if v.shape != (total,):
        raise ValueError(f"expected vector of length {total}")
    f = Mor(cat, x, y)
    for (ij, off, d) in layout:
        f.set_block(*ij, v[off:off + d])
    return f


def left_mul_matrix(f: Mor, w: Obj) -> np.ndarray:
    """Matrix of Hom(w, dom f) -> Hom(w, cod f), g -> f . g."""
    cat = f.cat
    src_layout, src_total = hom_layout(cat, w, f.dom)
    dst_layout, dst_total = hom_layout(cat, w, f.cod)
    m = np.zeros((dst_total, src_total), dtype=np.int64)
    dst_index = {ij: (off, d) for ij, off, d in dst_layout}
    for (jk, soff, sd) in src_layout:
        j, k = jk
        u = w.summands[k]
        v = f.dom.summands[j]
        for (i, j2), fv in f.blocks.items():
            if j2 != j:
                continue
            entry = dst_index.get((i, k))
            if entry is None:
                continue
            tensor = cat.comp.get((u, v, f.cod.summands[i]))
            if tensor is None:
                continue
            doff, dd = entry
            # column s of the block: coefficients of f . basis_s
            m[doff:doff + dd, soff:soff + sd] += np.einsum(
                "j,jsk->ks", fv, tensor)
    return m % cat.field.p


def right_mul_matrix(f: Mor, z: Obj) -> np.ndarray:
    """Matrix of Hom(cod f, z) -> Hom(dom f, z), g -> g . f."""
    cat = f.cat
    src_layout, src_total = hom_layout(cat, f.cod, z)
    dst_layout, dst_total = hom_layout(cat, f.dom, z)
    m = np.zeros((dst_total, src_total), dtype=np.int64)
    dst_index = {ij: (off, d) for ij, off, d in dst_layout}
    for (ij_src, soff, sd) in src_layout:
        i, j = ij_src          # cod_j -> z_i
        v = f.cod.summands[j]
        w = z.summands[i]
        for (j2, k), fv in f.blocks.items():
            if j2 != j:
                continue
            entry = dst_index.get((i, k))
            if entry is None:
                continue
            u = f.dom.summands[k]
            tensor = cat.comp.get((u, v, w))
            if tensor is None:
                continue
            doff, dd = entry
            m[doff:doff + dd, soff:soff + sd] += np.einsum(
                "i,sik->ks", fv, tensor)
    return m % cat.field.p


# ------------------------------------------------------- structure utilities


def multiset_sub(y: Obj, x: Obj) -> Obj:
    """Multiset difference y - x; error when x is not a sub-multiset."""
    cy, cx = y.counter(), x.counter()
    if any(cx[v] > cy.get(v, 0) for v in cx):
        raise ValueError("not a sub-multiset")
    rest = cy - cx
    return Obj(tuple(sorted(rest.elements())))


def is_iso(f: Mor) -> bool:
    """Invertibility test via identity-coefficient matrices per vertex type.

    Valid because dim End(v) = 1: the non-identity classes span exactly the
    radical, so f is invertible iff each per-type scalar matrix is.
    """
    if f.dom.counter() != f.cod.counter():
        return False
    p = f.cat.field.p
    for v in set(f.dom.summands):
        rows = [i for i, w in enumerate(f.cod.summands) if w == v]
        cols = [j for j, w in enumerate(f.dom.summands) if w == v]
        m = np.array([[int(f.block(i, j)[0]) for j in cols] for i in rows],
                     dtype=np.int64)
        if array_rank(m, p) != len(rows):
            return False
    return True


def _diagonal_part(f: Mor) -> Mor:
    """The length-zero (identity-class) part of f; the rest is radical."""
    d = Mor(f.cat, f.dom, f.cod)
    for (i, j), vec in f.blocks.items():
        if f.cod.summands[i] == f.dom.summands[j] and vec[0]:
            nv = np.zeros(len(vec), dtype=np.int64)
            nv[0] = vec[0]
            d.set_block(i, j, nv)
    return d


def inverse(f: Mor) -> Mor:
    """Two-sided inverse of an isomorphism.

    Splits f = d + n with d the identity-coefficient part and n radical,
    inverts d per vertex type, and sums the geometric series in d^-1 n,
    which terminates because the radical is nilpotent.
    """
    if not is_iso(f):
        raise ValueError("not an isomorphism")
    cat = f.cat
    p = cat.field.p
    d = _diagonal_part(f)
    n = sub(f, d)
    # invert the per-type scalar matrices; d_inv: cod -> dom
    d_inv = Mor(cat, f.cod, f.dom)
    for v in set(f.dom.summands):
        rows = [i for i, w in enumerate(f.cod.summands) if w == v]
        cols = [j for j, w in enumerate(f.dom.summands) if w == v]
        m = np.array([[int(d.block(i, j)[0]) for j in cols] for i in rows],
                     dtype=np.int64)
        mi = array_inverse(m, p)
        for a, j in enumerate(cols):
            for b, i in enumerate(rows):
                vec = np.zeros(cat.hom_dim(v, v), dtype=np.int64)
                vec[0] = mi[a, b]
                d_inv.set_block(j, i, vec)
    term = d_inv
    total = d_inv
    for _ in range(cat.radical_length + 1):
        term = smul(-1, compose(d_inv, compose(n, term)))
        if term.is_zero():
            break
        total = add(total, term)
    if compose(total, f) != identity(cat, f.dom) or \
            compose(f, total) != identity(cat, f.cod):
        raise AssertionError("inverse construction failed to verify")
    return total


def find_retraction(f: Mor):
    """Some r with r . f = id(dom f), or None (deterministic solve)."""
    cat = f.cat
    a = right_mul_matrix(f, f.dom)
    rhs = mor_to_vec(identity(cat, f.dom))
    x = array_solve(a, rhs, cat.field.p)
    if x is None:
        return None
    return vec_to_mor(cat, f.cod, f.dom, x)


def find_section(f: Mor):
    """Some s with f . s = id(cod f), or None."""
    cat = f.cat
    a = left_mul_matrix(f, f.cod)
    rhs = mor_to_vec(identity(cat, f.cod))
    x = array_solve(a, rhs, cat.field.p)
    if x is None:
        return None
    return vec_to_mor(cat, f.cod, f.dom, x)


def hom_fingerprint(cat: MeshCategory, x: Obj) -> np.ndarray:
    """(dim Hom(v, x))_v over the vertex order of the category."""
    fp = np.zeros(len(cat.verts), dtype=np.int64)
    for s in x.summands:
        fp += cat.dims[:, cat.vidx[s]]
    return fp


def count_morphisms(cat: MeshCategory, x: Obj, y: Obj) -> int:
    return cat.field.p ** hom_space_dim(cat, x, y)


def enumerate_morphisms(cat: MeshCategory, x: Obj, y: Obj,
                        cap: int = 2 ** 20):
    """All of Hom(x, y) in lexicographic coefficient order."""
    total = hom_space_dim(cat, x, y)
    p = cat.field.p
    if p ** total > cap:
        raise ValueError(
            f"budget exceeded: |Hom| = {p}^{total} > {cap}")
    for coeffs in itertools.product(range(p), repeat=total):
        yield vec_to_mor(cat, x, y, np.array(coeffs, dtype=np.int64))


def random_morphism(cat: MeshCategory, x: Obj, y: Obj, seed: int) -> Mor:
    total = hom_space_dim(cat, x, y)
    rng = np.random.default_rng(seed)
    return vec_to_mor(cat, x, y, rng.integers(0, cat.field.p, size=total))


def random_morphism_rng(cat: MeshCategory, x: Obj, y: Obj, rng) -> Mor:
    total = hom_space_dim(cat, x, y)
    return vec_to_mor(cat, x, y, rng.integers(0, cat.field.p, size=total))


# ------------------------------------------------------------------ suspension


def sigma_obj(cat: MeshCategory, x: Obj) -> Obj:
    return Obj(tuple(cat.sigma_vertex(v) for v in x.summands))


def sigma_mor(f: Mor) -> Mor:
    cat = f.cat
    out = Mor(cat, sigma_obj(cat, f.dom), sigma_obj(cat, f.cod))
    for (i, j), vec in f.blocks.items():
        u = f.dom.summands[j]
        v = f.cod.summands[i]
        out.set_block(i, j, cat.sigma_map[(u, v)] @ vec)
    return out
