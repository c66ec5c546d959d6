"""Exact linear algebra and equivariant cohomology of graded complexes.

Ranks are computed modulo two fixed 31-bit primes and certified by exact
fraction-free elimination on demand (or automatically if the two primes
disagree, which a rank drop modulo a single prime could cause).  Kernels
are computed exactly over Q in reduced echelon form: the nullspace basis
contains an identity block on the free columns, so the trace of any basis
symmetry restricted to the kernel reads off directly, without forming or
inverting a Gram matrix.

For a degree k the cohomology is H^k = ker d_k / im d_{k-1}.  Since the leg
relabeling action is by signed permutation matrices commuting with d, the
character of H^k is

    tr(sigma | H^k) = tr(sigma | ker d_k) - tr(sigma | C^{k-1})
                      + tr(sigma | ker d_{k-1}),

and multiplicities follow by the class-sum average.  The harmonic space
ker d_k with ker d_{k-1}^T intersected gives an independent model of H^k
used as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .differential import GradedComplex, SparseIntMatrix
from .symmetric import (
    CharacterTable,
    RepDecomposition,
    act,
    act_trace,
    class_representative,
    multiplicities_from_traces,
)

RANK_PRIMES = (2147483629, 2147483647)  # both > 2^30


def _columns(m: SparseIntMatrix):
    cols = [dict() for _ in range(m.cols)]
    for (r, c), v in m.entries.items():
        cols[c][r] = v
    return cols


def rank_mod_p(m: SparseIntMatrix, p) -> int:
    """Rank over GF(p) by sparse column elimination."""
    pivots = {}  # pivot row -> reduced column (dict row -> value, pivot value 1)
    rank = 0
    for col in _columns(m):
        col = {r: v % p for r, v in col.items() if v % p}
        while col:
            r = min(col)
            if r in pivots:
                coef = col.pop(r)
                for rr, vv in pivots[r].items():
                    if rr in col:
                        nv = (col[rr] - coef * vv) % p
                        if nv:
                            col[rr] = nv
                        else:
                            del col[rr]
                    else:
                        col[rr] = (-coef * vv) % p
                col.pop(r, None)
            else:
                inv = pow(col[r], p - 2, p)
                red = {rr: (vv * inv) % p for rr, vv in col.items()}
                del red[r]
                pivots[r] = red
                rank += 1
                break
    return rank


def rank_fraction_free(m: SparseIntMatrix) -> int:
    """Exact rank over Q by integer elimination with gcd reduction."""
    rows = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
    rows = list(rows.values())
    rank = 0
    while rows:
        # choose the sparsest row, then its sparsest column, to limit fill-in
        rows.sort(key=len)
        pivot_row = rows.pop(0)
        if not pivot_row:
            continue
        rank += 1
        pc = min(pivot_row, key=lambda c: (abs(pivot_row[c]), c))
        pv = pivot_row[pc]
        new_rows = []
        for row in rows:
            if pc in row:
                a = row[pc]
                g = gcd(pv, a)
                fp, fr = pv // g, a // g
                out = {}
                for c, v in row.items():
                    out[c] = v * fp
                for c, v in pivot_row.items():
                    nv = out.get(c, 0) - v * fr
                    if nv:
                        out[c] = nv
                    else:
                        out.pop(c, None)
                if out:
                    g2 = 0
                    for v in out.values():
                        g2 = gcd(g2, v)
                        if g2 == 1:
                            break
                    if g2 > 1:
                        out = {c: v // g2 for c, v in out.items()}
                    new_rows.append(out)
            elif row:
                new_rows.append(row)
        rows = new_rows
    return rank


def rank_exact(m: SparseIntMatrix, certify=False) -> int:
    """Rank over Q: two modular ranks, exact elimination when they disagree
    (or when certification is requested)."""
    r1 = rank_mod_p(m, RANK_PRIMES[0])
    r2 = rank_mod_p(m, RANK_PRIMES[1])
    if certify or r1 != r2:
        r = rank_fraction_free(m)
        if r != max(r1, r2):
            # a modular rank can only undershoot the rational rank
            if r < max(r1, r2):
                raise AssertionError("modular rank exceeds exact rank")
        return r
    return r1


def nullspace_rref(m: SparseIntMatrix):
    """Exact kernel of m over Q in reduced echelon coordinates.

    Returns (free_cols, basis) where basis[j] is a dict col -> Fraction
    giving the j-th kernel vector, normalized so basis[j][free_cols[j]] == 1
    and basis[j][free_cols[i]] == 0 for i != j.
    """
    rows = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = Fraction(v)
    rows = list(rows.values())
    pivots = {}  # col -> reduced row (dict col -> Fraction, pivot coeff 1)
    for row in sorted(rows, key=len):
        row = dict(row)
        while row:
            c = min(row)
            if c in pivots:
                coef = row.pop(c)
                for cc, vv in pivots[c].items():
                    nv = row.get(cc, 0) - coef * vv
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            else:
                inv = 1 / row[c]
                pivots[c] = {cc: vv * inv for cc, vv in row.items() if cc != c}
                break
    # back-substitute to full reduction
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        out = {}
        for cc, vv in row.items():
            if cc in pivots and cc > c:
                for c3, v3 in pivots[cc].items():
                    nv = out.get(c3, 0) - vv * v3
                    if nv:
                        out[c3] = nv
                    else:
                        out.pop(c3, None)
                continue
            nv = out.get(cc, 0) + vv
            if nv:
                out[cc] = nv
            else:
                out.pop(cc, None)
        pivots[c] = out
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        vec = {f: Fraction(1)}
        for pc, row in pivots.items():
            if f in row:
                vec[pc] = -row[f]
        basis.append(vec)
    return free, basis


def kernel_trace(free, basis, action):
    """Trace of a signed basis permutation restricted to an invariant kernel.

    ``action[src] = (tgt, sign)`` and the kernel basis is in reduced echelon
    form: sigma N = N M with M read off on the free rows, so the trace is
    sum_j (sigma N_j)[free_j].
    """
    inv = {}
    for src, (tgt, sign) in enumerate(action):
        inv[tgt] = (src, sign)
    total = Fraction(0)
    for j, f in enumerate(free):
        src, sign = inv[f]
        v = basis[j].get(src)
        if v:
            total += sign * v
    if total.denominator != 1:
        raise AssertionError("non-integer kernel trace")
    return int(total)


# ---------------------------------------------------------------------------
# Cohomology of a graded complex.
# ---------------------------------------------------------------------------

def cohomology_dims(cx: GradedComplex, certify=False):
    """dim H^k = dim C^k - rank d_k - rank d_{k-1} for every degree."""
    degrees = cx.degrees()
    ranks = {k: rank_exact(cx.differential(k), certify) for k in degrees}
    out = {}
    for k in degrees:
        out[k] = cx.dim(k) - ranks.get(k, 0) - ranks.get(k - 1, 0)
        if out[k] < 0:
            raise AssertionError("negative cohomology dimension")
    return out


@dataclass
class HarmonicSpace:
    """Exact basis of ker d_k intersected with ker d_{k-1}^T."""

    degree: int
    free: list
    basis: list  # list of dicts col -> Fraction, reduced echelon form

    @property
    def dim(self):
        return len(self.basis)


def harmonic_basis(cx: GradedComplex, k) -> HarmonicSpace:
    """Kernel of the stacked matrix [d_k; d_{k-1}^T]."""
    dk = cx.differential(k)
    dprev = cx.differential(k - 1)
    stacked = SparseIntMatrix(dk.rows + dprev.cols, cx.dim(k))
    for (r, c), v in dk.entries.items():
        stacked.set(r, c, v)
    for (r, c), v in dprev.entries.items():
        stacked.set(dk.rows + c, r, v)
    free, basis = nullspace_rref(stacked)
    return HarmonicSpace(k, free, basis)


@dataclass
class CohomologyResult:
    """Equivariant cohomology of one complex B_{g,n}."""

    g: int
    n: int
    dims: dict  # degree -> integer dimension
    by_degree: dict  # degree -> RepDecomposition
    euler: RepDecomposition  # alternating sum over the cochain spaces

    def to_json(self):
        return {
            "g": self.g,
            "n": self.n,
            "dims": {str(k): v for k, v in sorted(self.dims.items())},
            "H": {str(k): dec.to_json()
                  for k, dec in sorted(self.by_degree.items()) if dec},
            "euler": self.euler.to_json(),
        }


def _class_actions(basis_slice, table):
    return {mu: act(lambda l, s=class_representative(mu): s[l], basis_slice)
            for mu in table.classes}


def equivariant_cohomology(cx: GradedComplex, table: CharacterTable,
                           progress=None) -> CohomologyResult:
    """Isotypic decomposition of every H^k, by exact kernel traces."""
    degrees = cx.degrees()
    actions = {}
    chain_traces = {}
    for k in degrees:
        acts = _class_actions(cx.basis.by_degree[k], table)
        actions[k] = acts
        chain_traces[k] = {mu: act_trace(a) for mu, a in acts.items()}
        if progress:
            progress("actions C^%d (dim %d)" % (k, cx.dim(k)))
    kernels = {}
    for k in degrees:
        kernels[k] = nullspace_rref(cx.differential(k))
        if progress:
            progress("kernel d_%d (dim %d)" % (k, len(kernels[k][0])))
    ker_traces = {
        k: {mu: kernel_trace(kernels[k][0], kernels[k][1], actions[k][mu])
            for mu in table.classes}
        for k in degrees
    }

    by_degree = {}
    dims = {}
    euler = RepDecomposition()
    chain_decs = {}
    for k in degrees:
        traces = {}
        for mu in table.classes:
            t = ker_traces[k][mu]
            if (k - 1) in degrees:
                t += ker_traces[k - 1][mu] - chain_traces[k - 1][mu]
            traces[mu] = t
        dec = multiplicities_from_traces(table, traces)
        if any(m < 0 for m in dec.values()):
            raise AssertionError("negative multiplicity in H^%d" % k)
        by_degree[k] = dec
        dims[k] = dec.dimension()
        chain_decs[k] = multiplicities_from_traces(table, chain_traces[k])
        for lam, m in chain_decs[k].items():
            euler.add(lam, m * (-1) ** k)
    # dimension cross-check against plain ranks
    rank_dims = cohomology_dims(cx)
    if rank_dims != dims:
        raise AssertionError("equivariant dims disagree with rank dims: %s vs %s"
                             % (dims, rank_dims))
    return CohomologyResult(cx.basis.g, cx.basis.n, dims, by_degree, euler)


def chain_decomposition(cx: GradedComplex, table: CharacterTable, k) -> RepDecomposition:
    """Isotypic decomposition of the cochain space C^k."""
    acts = _class_actions(cx.basis.by_degree.get(k, ()), table)
    traces = {mu: act_trace(a) for mu, a in acts.items()}
    return multiplicities_from_traces(table, traces)


def euler_check(result: CohomologyResult):
    """Per-irreducible equality of the two Euler characteristics.

    The alternating sum of the cochain decompositions must match the
    alternating sum of the cohomology decompositions; returns the shared
    virtual decomposition, raising on any mismatch.
    """
    from_h = RepDecomposition()
    for k, dec in result.by_degree.items():
        for lam, m in dec.items():
            from_h.add(lam, m * (-1) ** k)
    if from_h != result.euler:
        raise AssertionError(
            "Euler characteristics disagree: chains %s vs cohomology %s"
            % (result.euler, from_h))
    return from_h


def harmonic_cross_check(cx: GradedComplex, table: CharacterTable,
                         result: CohomologyResult):
    """Recompute every H^k from the harmonic model and compare.

    The harmonic space is invariant under the signed permutation action, so
    traces restrict to it in reduced echelon coordinates exactly as for
    kernels; the resulting decomposition must agree degree by degree.
    """
    for k in cx.degrees():
        hs = harmonic_basis(cx, k)
        if hs.dim != result.dims.get(k, 0):
            raise AssertionError("harmonic dim mismatch in degree %d" % k)
        acts = _class_actions(cx.basis.by_degree[k], table)
        traces = {mu: kernel_trace(hs.free, hs.basis, acts[mu])
                  for mu in table.classes}
        dec = multiplicities_from_traces(table, traces)
        if dec != result.by_degree[k]:
            raise AssertionError("harmonic decomposition mismatch in degree %d" % k)
    return True
