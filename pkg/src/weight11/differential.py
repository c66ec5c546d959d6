"""The coboundary operator delta = delta_omega + delta_s on canonical generators.

delta_omega removes one distinguished half-edge from the orientation with
sign (-1)^(k+j-1), where k counts structural edges and j is the half-edge's
position; the resulting mark disappears from the graph, and terms whose
total w drops below 11 die in the quotient.  delta_s splits vertices:
delta_s_internal replaces a non-special vertex by two vertices joined by a
new edge e0 (each side keeping at least two of the original half-edges),
and delta_s_special reconnects a subset B of half-edges at the special
vertex (|B| >= 2, at most one of them distinguished) to a new internal
vertex joined to the special vertex by e0.  A mark inside B migrates to
e0's special half-edge and keeps its slot in the orientation; e0 itself is
prepended to the wedge.

Terms are canonicalized immediately.  With ``drop_s`` set, terms containing
a component from the set S are discarded: that realizes the differential of
the quotient complex B/K, which is well defined because K (the span of
graphs with an S component) is a subcomplex.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .graphs import Generator, canonicalize, to_work

W_CUTOFF = 11


class FormalSum:
    """Integer linear combination of canonical generators."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    def add(self, gen, coeff):
        if coeff == 0:
            return
        new = self.terms.get(gen, 0) + coeff
        if new:
            self.terms[gen] = new
        else:
            del self.terms[gen]

    def __iadd__(self, other):
        for gen, c in other.terms.items():
            self.add(gen, c)
        return self

    def __eq__(self, other):
        return self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: t[0].components))

    def __getitem__(self, gen):
        return self.terms.get(gen, 0)

    def is_zero(self):
        return not self.terms

    def coefficients_by_shape(self):
        """Map component-multiset (shapes, anonymized) -> list of coefficients."""
        out = {}
        for gen, c in self.terms.items():
            key = tuple(sorted(comp.shape() for comp in gen.components))
            out.setdefault(key, []).append(c)
        return out

    def __repr__(self):
        return " + ".join("%d*[%s]" % (c, gen) for gen, c in self) or "0"


def _emit(acc, wg, coeff, drop_s):
    res = canonicalize(wg)
    if res is None:
        return
    sign, gen = res
    if drop_s:
        from .catalog import has_s_component

        if has_s_component(gen):
            return
    acc.add(gen, coeff * sign)


def delta_omega(gen: Generator, drop_s=False, w_cutoff=W_CUTOFF) -> FormalSum:
    """Sum over distinguished half-edges of the generator with that mark removed."""
    wg = to_work(gen)
    k = gen.n_structural_edges
    acc = FormalSum()
    if gen.w - 1 < w_cutoff:
        return acc
    halves = [sym for sym in wg.orientation if sym[0] == "H"]
    for j, sym in enumerate(halves):
        wg2 = wg.copy()
        half = sym[1]
        if half[0] == "L":
            wg2.legmarks.discard(half[1])
        else:
            wg2.marks.discard(half)
        wg2.orientation = [s for s in wg2.orientation if s != sym]
        _emit(acc, wg2, (-1) ** (k + j), drop_s)
    return acc


def delta_s_internal(gen: Generator, drop_s=False) -> FormalSum:
    """Split every internal vertex in all admissible ways."""
    wg = to_work(gen)
    acc = FormalSum()
    for v in range(1, wg.nv + 1):
        halves = wg.internal_halves(v)
        if len(halves) < 4:
            continue
        # Each unordered split appears once: halves[0] stays on the old
        # vertex, and both sides keep >= 2 original half-edges.
        rest = halves[1:]
        for r in range(2, len(halves) - 1):
            for moved in itertools.combinations(rest, r):
                wg2 = wg.copy()
                new_v = wg2.add_vertex()
                for h in moved:
                    if h[0] == "L":
                        wg2.legs[h[1]] = new_v
                    else:
                        wg2.edges[h[0]][h[1]] = new_v
                e0 = wg2.add_edge(v, new_v)
                wg2.orientation = [("E", e0)] + wg2.orientation
                _emit(acc, wg2, 1, drop_s)
    return acc


def delta_s_special(gen: Generator, drop_s=False) -> FormalSum:
    """Reconnect subsets of special-vertex half-edges to a new vertex."""
    wg = to_work(gen)
    acc = FormalSum()
    halves = wg.special_halves()
    unmarked = [h for h, m in halves if not m]
    marked = [h for h, m in halves if m]
    total = len(halves)
    for base_size in range(1, len(unmarked) + 1):
        for base in itertools.combinations(unmarked, base_size):
            for extra in [None] + marked:
                B = list(base) + ([extra] if extra is not None else [])
                if len(B) < 2 or len(B) > total - 1:
                    continue
                # both halves of one tadpole would form an internal tadpole
                eids = [h[0] for h in B if h[0] != "L"]
                if len(eids) != len(set(eids)):
                    continue
                wg2 = wg.copy()
                new_v = wg2.add_vertex()
                for h in B:
                    if h[0] == "L":
                        wg2.legs[h[1]] = new_v
                        wg2.legmarks.discard(h[1])
                    else:
                        wg2.edges[h[0]][h[1]] = new_v
                        wg2.marks.discard(h)
                e0 = wg2.add_edge(0, new_v)
                orientation = [("E", e0)] + wg2.orientation
                if extra is not None:
                    wg2.marks.add((e0, 0))
                    orientation = [("H", (e0, 0)) if s == ("H", extra) else s
                                   for s in orientation]
                wg2.orientation = orientation
                _emit(acc, wg2, 1, drop_s)
    return acc


def delta(gen: Generator, drop_s=False, w_cutoff=W_CUTOFF) -> FormalSum:
    out = delta_omega(gen, drop_s, w_cutoff)
    out += delta_s_internal(gen, drop_s)
    out += delta_s_special(gen, drop_s)
    return out


# ---------------------------------------------------------------------------
# Sparse integer matrices and graded complexes.
# ---------------------------------------------------------------------------

@dataclass
class SparseIntMatrix:
    """Sparse matrix over Z; entries maps (row, col) -> nonzero int."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def set(self, r, c, v):
        if v:
            self.entries[(r, c)] = v
        else:
            self.entries.pop((r, c), None)

    def columns(self):
        """Column-major view: list of dicts row -> value."""
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def transpose(self):
        return SparseIntMatrix(self.cols, self.rows,
                               {(c, r): v for (r, c), v in self.entries.items()})

    def compose(self, other):
        """self @ other (apply other first)."""
        if other.rows != self.cols:
            raise ValueError("shape mismatch")
        by_col = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        out = {}
        for (r, c), v in other.entries.items():
            for (rr, vv) in by_col.get(r, ()):
                key = (rr, c)
                out[key] = out.get(key, 0) + vv * v
        return SparseIntMatrix(self.rows, other.cols,
                               {k: v for k, v in out.items() if v})

    def is_zero(self):
        return not self.entries

    def to_triplet_text(self):
        """Plain text "rows cols" header plus one "r c v" line per entry."""
        lines = ["%d %d" % (self.rows, self.cols)]
        for (r, c) in sorted(self.entries):
            lines.append("%d %d %d" % (r, c, self.entries[(r, c)]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplet_text(cls, text):
        lines = [l for l in text.strip().splitlines() if l.strip()]
        rows, cols = map(int, lines[0].split())
        m = cls(rows, cols)
        for line in lines[1:]:
            r, c, v = line.split()
            m.set(int(r), int(c), int(v))
        return m


class ClosureError(RuntimeError):
    """A differential image fell outside the enumerated basis."""


@dataclass
class GradedComplex:
    """Per-degree bases with the sparse differentials d[k]: C^k -> C^{k+1}."""

    basis: object
    d: dict
    drop_s: bool = False

    def dim(self, k):
        return self.basis.dim(k)

    def degrees(self):
        return self.basis.degrees()

    def differential(self, k):
        if k in self.d:
            return self.d[k]
        return SparseIntMatrix(self.basis.dim(k + 1), self.basis.dim(k))


def build_complex(basis, drop_s=False, threads=1, check_d_squared=True,
                  w_cutoff=W_CUTOFF) -> GradedComplex:
    """Assemble the differential matrices column by column.

    Every canonicalized, non-quotiented image term must lie in the enumerated
    next-degree basis, otherwise the enumeration is incomplete and a
    ClosureError names the offending generator.
    """
    degrees = basis.degrees()
    index = {k: basis.index(k) for k in degrees}
    d = {}

    def column(args):
        k, j, gen = args
        return k, j, delta(gen, drop_s, w_cutoff)

    jobs = [(k, j, gen) for k in degrees
            for j, gen in enumerate(basis.by_degree[k])]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(column, jobs))
    else:
        results = [column(job) for job in jobs]

    for k in degrees:
        d[k] = SparseIntMatrix(basis.dim(k + 1), basis.dim(k))
    for k, j, image in results:
        target = index.get(k + 1, {})
        for gen, coeff in image.terms.items():
            if gen not in target:
                raise ClosureError(
                    "delta image in degree %d misses the basis: %s" % (k + 1, gen))
            d[k].set(target[gen], j, coeff)

    cx = GradedComplex(basis, d, drop_s)
    if check_d_squared:
        verify_d_squared(cx)
    return cx


def verify_d_squared(cx: GradedComplex):
    for k in cx.degrees():
        if (k + 1) in cx.d:
            prod = cx.d[k + 1].compose(cx.d[k])
            if not prod.is_zero():
                raise AssertionError("d^2 != 0 between degrees %d and %d" % (k, k + 2))


def _select(cx: GradedComplex, keep_pred):
    """Sub/quotient data for the basis elements satisfying keep_pred."""
    from .catalog import GradedBasis

    kept = {k: tuple(g for g in v if keep_pred(g))
            for k, v in cx.basis.by_degree.items()}
    kept = {k: v for k, v in kept.items() if v}
    new_basis = GradedBasis(cx.basis.g, cx.basis.n, kept)
    old_index = {k: cx.basis.index(k) for k in cx.basis.degrees()}
    d = {}
    for k, gens in kept.items():
        rows = {old_index[k + 1][g]: i for i, g in enumerate(kept.get(k + 1, ()))
                } if (k + 1) in old_index else {}
        m = SparseIntMatrix(len(kept.get(k + 1, ())), len(gens))
        cols = cx.d[k].columns()
        for j, gen in enumerate(gens):
            for r, v in cols[old_index[k][gen]].items():
                if r in rows:
                    m.set(rows[r], j, v)
        d[k] = m
    return GradedComplex(new_basis, d, cx.drop_s)


def quotient_by_K(cx: GradedComplex) -> GradedComplex:
    """Remove every basis element with a component from the set S.

    Row/column deletion realizes the quotient differential because K is a
    subcomplex (no admissible image re-enters the kept part from K).
    """
    from .catalog import has_s_component

    return _select(cx, lambda gen: not has_s_component(gen))


def k_subcomplex(cx: GradedComplex) -> GradedComplex:
    """The subcomplex spanned by basis elements with a component from S."""
    from .catalog import has_s_component

    sub = _select(cx, has_s_component)
    # Subcomplex closure: images of K-elements must stay in K.
    for k, gens in sub.basis.by_degree.items():
        full_index = cx.basis.index(k)
        next_kept = set(sub.basis.by_degree.get(k + 1, ()))
        next_gens = cx.basis.by_degree.get(k + 1, ())
        cols = cx.d[k].columns()
        for gen in gens:
            for r in cols[full_index[gen]]:
                if next_gens[r] not in next_kept:
                    raise AssertionError("K is not closed under delta")
    return sub
