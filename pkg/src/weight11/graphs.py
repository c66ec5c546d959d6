"""Core graph model: blown-up components, generators, orientations, canonical forms.

A generator of the complex B_{g,n} is a connected graph with one special
vertex, n labelled legs and loop order g-1, together with a marking of a
subset of the half-edges incident to the special vertex (the distinguished
half-edges, labelled omega; the unmarked ones are labelled epsilon).  We
store generators in blown-up form: the multiset of connected components
obtained by deleting the special vertex, with omega/epsilon labels on the
severed half-edges.

An orientation is an ordering of the structural edges (all edges except the
n legs) and of the distinguished half-edges, read as a single wedge.
Orderings are identified up to the sign of the permutation relating them,
and isomorphic graphs are identified.  A generator whose automorphism group
induces an odd permutation of the orientation data is zero.

Canonical forms are computed by exhaustive search over internal-vertex
labelings; all graphs here have at most a handful of internal vertices per
component, so no general-purpose canonical-labeling machinery is needed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

OMEGA = "w"
EPSILON = "e"

# End markers of degenerate (single-edge) components sort omega < epsilon < legs.
_END_RANK = {OMEGA: 0, EPSILON: 1}


def _end_key(end):
    if end[0] == "l":
        return (2, end[1])
    return (_END_RANK[end[0]], 0)


class InvalidGenerator(ValueError):
    """Raised when graph data violates the generator axioms."""


@dataclass(frozen=True, order=True)
class Component:
    """One blown-up connected component, in canonical form.

    Regular components (``nv >= 1``) carry internal edges plus per-vertex
    decorations: counts of omega/epsilon ports and sorted leg labels.
    Degenerate components (``nv == 0``) are a single edge whose two ends are
    given by ``ends``: ("w",), ("e",) or ("l", label).  Instances should be
    built through :func:`canonical_component` or the work-graph pipeline, not
    directly.
    """

    nv: int
    edges: tuple  # sorted tuple of (a, b) pairs, a <= b
    omegas: tuple  # per-vertex omega-port count
    epsilons: tuple  # per-vertex epsilon-port count
    legs: tuple  # per-vertex sorted tuple of leg labels
    ends: tuple = ()  # degenerate only: sorted pair of end markers

    @property
    def w(self):
        """Number of distinguished (omega) half-edges."""
        if self.nv == 0:
            return sum(1 for e in self.ends if e[0] == OMEGA)
        return sum(self.omegas)

    @property
    def eps(self):
        """Number of unmarked (epsilon) half-edges."""
        if self.nv == 0:
            return sum(1 for e in self.ends if e[0] == EPSILON)
        return sum(self.epsilons)

    @property
    def leg_labels(self):
        if self.nv == 0:
            return tuple(e[1] for e in self.ends if e[0] == "l")
        return tuple(sorted(l for ls in self.legs for l in ls))

    @property
    def n_legs(self):
        return len(self.leg_labels)

    @property
    def h1(self):
        """Loop order of the component itself."""
        if self.nv == 0:
            return 0
        return len(self.edges) - self.nv + 1

    @property
    def loop_contribution(self):
        """Contribution to the loop order of the assembled graph."""
        return self.h1 + self.eps + self.w - 1

    @property
    def excess(self):
        """3*h1 + 3*(#epsilon) + 2*(#legs) + (#omega) - 3."""
        return 3 * self.h1 + 3 * self.eps + 2 * self.n_legs + self.w - 3

    @property
    def n_edge_slots(self):
        """Structural edges this component contributes (legs excluded)."""
        if self.nv == 0:
            # A tadpole at the special vertex is one structural edge; a leg
            # attached at the special vertex is not structural.
            return 0 if any(e[0] == "l" for e in self.ends) else 1
        return len(self.edges) + self.w + self.eps

    @property
    def n_half_slots(self):
        return self.w

    def shape(self):
        """The component with leg labels anonymized (slots keep multiplicity)."""
        if self.nv == 0:
            ends = tuple(sorted(((("l", 0) if e[0] == "l" else e) for e in self.ends),
                                key=_end_key))
            return Component(0, (), (), (), (), ends)
        raw = _raw_key(self.nv, self.edges, [(0,) * len(ls) for ls in self.legs],
                       self.omegas, self.epsilons)
        comp, _, _ = _canonical_regular(raw)
        return comp

    def __str__(self):
        return component_text(self)


@dataclass(frozen=True)
class Generator:
    """Canonical basis element: a sorted multiset of canonical components.

    The implied canonical orientation lists every component's structural
    edges (components in sorted order, internal edges before port edges),
    followed by every component's distinguished half-edges in the same
    component order.
    """

    n: int
    components: tuple

    @property
    def w(self):
        return sum(c.w for c in self.components)

    @property
    def eps(self):
        return sum(c.eps for c in self.components)

    @property
    def genus(self):
        return 1 + sum(c.loop_contribution for c in self.components)

    @property
    def n_structural_edges(self):
        return sum(c.n_edge_slots for c in self.components)

    def degree(self):
        """22 + |E| - n - w, where |E| counts all edges including legs."""
        return 22 + self.n_structural_edges - self.w

    def excess(self):
        return 3 * (self.genus - 1) + 2 * self.n - 2 * self.w

    def __str__(self):
        return generator_text(self)


def excess_component(c: Component) -> int:
    return c.excess


def excess_generator(gen: Generator) -> int:
    return gen.excess()


def excess_complex(g: int, n: int) -> int:
    """Excess of the complex B_{g,n}."""
    return 3 * g + 2 * n - 25


def degree(gen: Generator) -> int:
    return gen.degree()


# ---------------------------------------------------------------------------
# Work representation: an assembled graph with explicit orientation symbols.
# ---------------------------------------------------------------------------

class WorkGraph:
    """Mutable assembled form of a generator.

    Vertex 0 is the special vertex.  Edges are ordered pairs of vertex ids;
    half-edge ids are (edge_id, side) with side indexing the pair, or
    ("L", label) for the half of a leg attached at the special vertex.
    ``orientation`` is a list of symbols ("E", edge_id) / ("H", half_id)
    interpreted as a single wedge.
    """

    __slots__ = ("n", "nv", "edges", "legs", "marks", "legmarks", "orientation")

    def __init__(self, n):
        self.n = n
        self.nv = 0
        self.edges = []  # list of [a, b]
        self.legs = {}  # label -> vertex
        self.marks = set()  # (edge_id, side) with that endpoint == 0
        self.legmarks = set()  # labels of marked legs at the special vertex
        self.orientation = []

    def copy(self):
        wg = WorkGraph(self.n)
        wg.nv = self.nv
        wg.edges = [e[:] for e in self.edges]
        wg.legs = dict(self.legs)
        wg.marks = set(self.marks)
        wg.legmarks = set(self.legmarks)
        wg.orientation = list(self.orientation)
        return wg

    def add_vertex(self):
        self.nv += 1
        return self.nv

    def add_edge(self, a, b):
        self.edges.append([a, b])
        return len(self.edges) - 1

    def special_halves(self):
        """(half_id, marked) pairs at the special vertex."""
        halves = []
        for eid, (a, b) in enumerate(self.edges):
            if a == 0:
                halves.append(((eid, 0), (eid, 0) in self.marks))
            if b == 0:
                halves.append(((eid, 1), (eid, 1) in self.marks))
        for label in sorted(self.legs):
            if self.legs[label] == 0:
                halves.append((("L", label), label in self.legmarks))
        return halves

    def internal_halves(self, v):
        """Half-edge ids incident at internal vertex v (legs included)."""
        halves = []
        for eid, (a, b) in enumerate(self.edges):
            if a == v:
                halves.append((eid, 0))
            if b == v:
                halves.append((eid, 1))
        for label in sorted(self.legs):
            if self.legs[label] == v:
                halves.append(("L", label))
        return halves


def to_work(gen: Generator) -> WorkGraph:
    """Assemble a canonical generator; the orientation comes out as the identity."""
    wg = WorkGraph(gen.n)
    half_symbols = []
    for comp in gen.components:
        if comp.nv == 0:
            kinds = [e[0] for e in comp.ends]
            if "l" in kinds:
                label = next(e[1] for e in comp.ends if e[0] == "l")
                port = next(e[0] for e in comp.ends if e[0] != "l")
                wg.legs[label] = 0
                if port == OMEGA:
                    wg.legmarks.add(label)
                    half_symbols.append(("H", ("L", label)))
            else:
                eid = wg.add_edge(0, 0)
                for side, end in enumerate(comp.ends):
                    if end[0] == OMEGA:
                        wg.marks.add((eid, side))
                        half_symbols.append(("H", (eid, side)))
        else:
            base = wg.nv
            for _ in range(comp.nv):
                wg.add_vertex()
            for (a, b) in comp.edges:
                wg.add_edge(base + 1 + a, base + 1 + b)
            for v in range(comp.nv):
                for _ in range(comp.omegas[v]):
                    eid = wg.add_edge(0, base + 1 + v)
                    wg.marks.add((eid, 0))
                    half_symbols.append(("H", (eid, 0)))
                for _ in range(comp.epsilons[v]):
                    wg.add_edge(0, base + 1 + v)
                for label in comp.legs[v]:
                    wg.legs[label] = base + 1 + v
    wg.orientation = [("E", i) for i in range(len(wg.edges))] + half_symbols
    return wg


# ---------------------------------------------------------------------------
# Per-component canonical labeling (exhaustive over vertex orderings, cached).
# ---------------------------------------------------------------------------

def _raw_key(nv, edges, legs, omegas, epsilons):
    return (nv, tuple(sorted(tuple(sorted(e)) for e in edges)),
            tuple(tuple(sorted(ls)) for ls in legs),
            tuple(omegas), tuple(epsilons))


@lru_cache(maxsize=None)
def _canonical_regular(key):
    """Canonicalize a regular component given its raw key.

    Returns (component, best_perm, zero) where best_perm sends raw vertex ids
    to canonical positions and zero flags an orientation-odd automorphism (or
    a structure, like parallel edges, that forces one).
    """
    nv, edges, legs, omegas, epsilons = key
    edge_list = list(edges)
    if any(a == b for a, b in edge_list):
        raise InvalidGenerator("tadpole at an internal vertex")
    # Parallel internal edges admit an odd swap; so do two epsilon ports at
    # one vertex.
    zero = any(edge_list[i] == edge_list[i + 1] for i in range(len(edge_list) - 1))
    zero = zero or any(e >= 2 for e in epsilons)

    best = None
    best_perm = None
    stabilizer = []
    for perm in itertools.permutations(range(nv)):
        relabeled = tuple(sorted(tuple(sorted((perm[a], perm[b])))
                                 for a, b in edge_list))
        inv = [0] * nv
        for i, p in enumerate(perm):
            inv[p] = i
        enc = (relabeled,
               tuple(omegas[inv[v]] for v in range(nv)),
               tuple(epsilons[inv[v]] for v in range(nv)),
               tuple(legs[inv[v]] for v in range(nv)))
        if best is None or enc < best:
            best = enc
            best_perm = perm
            stabilizer = [perm]
        elif enc == best:
            stabilizer.append(perm)

    comp = Component(nv, best[0], best[1], best[2], best[3])
    if not zero and len(stabilizer) > 1:
        slots0 = _regular_slotmap(key, comp, best_perm)
        order0 = sorted(slots0, key=slots0.get)
        for perm in stabilizer:
            if perm == best_perm:
                continue
            slots = _regular_slotmap(key, comp, perm)
            if _parity_by_rank([slots[obj] for obj in order0]) < 0:
                zero = True
                break
    return comp, best_perm, zero


def _regular_slotmap(key, comp, perm):
    """Map raw objects of a regular component to local slot positions.

    Raw objects: ("ie", i) the i-th internal edge in raw sorted order,
    ("wp", v, j) the j-th omega port at raw vertex v, ("ep", v, j), and
    ("wh", v, j) the marked half of ("wp", v, j).  Slot positions enumerate
    edge slots (internal edges in canonical order, then ports vertex-major,
    omegas before epsilons) followed by half slots.
    """
    nv, edges, legs, omegas, epsilons = key
    canon_edges = list(comp.edges)
    slot = {}
    taken = {}
    for i, (a, b) in enumerate(edges):
        tgt = tuple(sorted((perm[a], perm[b])))
        idx = canon_edges.index(tgt, taken.get(tgt, 0))
        taken[tgt] = idx + 1
        slot[("ie", i)] = idx
    pos = len(canon_edges)
    w_off = [0] * nv
    e_off = [0] * nv
    for v in range(nv):
        w_off[v] = pos
        pos += comp.omegas[v]
        e_off[v] = pos
        pos += comp.epsilons[v]
    h_off = [0] * nv
    for v in range(nv):
        h_off[v] = pos
        pos += comp.omegas[v]
    for v in range(nv):
        for j in range(omegas[v]):
            slot[("wp", v, j)] = w_off[perm[v]] + j
            slot[("wh", v, j)] = h_off[perm[v]] + j
        for j in range(epsilons[v]):
            slot[("ep", v, j)] = e_off[perm[v]] + j
    return slot


def _parity_by_rank(targets):
    """Sign of the permutation sending position i to the rank of targets[i]."""
    order = sorted(range(len(targets)), key=lambda i: targets[i])
    rank = [0] * len(targets)
    for r, i in enumerate(order):
        rank[i] = r
    return _perm_parity(rank)


def _perm_parity(perm):
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Canonicalization of a whole work graph.
# ---------------------------------------------------------------------------

def canonicalize(wg: WorkGraph):
    """Canonical form of a work graph.

    Returns (sign, Generator), or None when the isomorphism class vanishes
    because of an orientation-odd automorphism.  Raises InvalidGenerator if
    the graph violates the generator axioms.
    """
    _validate(wg)
    pieces = _split_components(wg)

    entries = []  # (Component, input order index, objmap)
    for idx, piece in enumerate(pieces):
        kind = piece[0]
        if kind == "leg":
            _, label, marked = piece
            port = (OMEGA,) if marked else (EPSILON,)
            ends = tuple(sorted((port, ("l", label)), key=_end_key))
            comp = Component(0, (), (), (), (), ends)
            objmap = {}
            if marked:
                objmap[("H", ("L", label))] = ("h", 0)
            entries.append((comp, idx, objmap))
        elif kind == "tad":
            _, eid, m0, m1 = piece
            if m0 and m1:
                return None  # swapping the two marked halves is odd
            ends = tuple(sorted(((OMEGA,) if m0 else (EPSILON,),
                                 (OMEGA,) if m1 else (EPSILON,)), key=_end_key))
            comp = Component(0, (), (), (), (), ends)
            objmap = {("E", eid): ("e", 0)}
            if m0:
                objmap[("H", (eid, 0))] = ("h", 0)
            if m1:
                objmap[("H", (eid, 1))] = ("h", 0)
            entries.append((comp, idx, objmap))
        else:
            _, iedges, ports, legs = piece
            comp, objmap, zero = _canonicalize_regular_piece(iedges, ports, legs)
            if zero:
                return None
            entries.append((comp, idx, objmap))

    # Identical components: interchanging two copies permutes their edge and
    # half slots blockwise, which is odd exactly when the per-component slot
    # count is odd.
    counts = {}
    for comp, _, _ in entries:
        counts[comp] = counts.get(comp, 0) + 1
    for comp, cnt in counts.items():
        if cnt >= 2 and (comp.n_edge_slots + comp.n_half_slots) % 2 == 1:
            return None

    entries.sort(key=lambda t: (t[0], t[1]))
    components = tuple(e[0] for e in entries)

    # Global positions: edge block then half block, component-major.
    edge_base = []
    half_base = []
    pos = 0
    for comp in components:
        edge_base.append(pos)
        pos += comp.n_edge_slots
    for comp in components:
        half_base.append(pos)
        pos += comp.n_half_slots
    placement = {}
    for ci, (comp, _, objmap) in enumerate(entries):
        for sym, (blk, local) in objmap.items():
            base = edge_base[ci] if blk == "e" else half_base[ci]
            placement[sym] = base + local

    if len(wg.orientation) != pos:
        raise InvalidGenerator("orientation does not list every object exactly once")
    targets = [placement[sym] for sym in wg.orientation]
    if len(set(targets)) != len(targets):
        raise InvalidGenerator("orientation repeats an object")
    sign = _perm_parity(targets)
    return sign, Generator(wg.n, components)


def _validate(wg):
    if sorted(wg.legs) != list(range(1, wg.n + 1)):
        raise InvalidGenerator("leg labels must be exactly 1..n")
    valency = [0] * (wg.nv + 1)
    for a, b in wg.edges:
        valency[a] += 1
        valency[b] += 1
    for v in wg.legs.values():
        valency[v] += 1
    if valency[0] < 2:
        raise InvalidGenerator("special vertex valency < 2")
    for v in range(1, wg.nv + 1):
        if valency[v] < 3:
            raise InvalidGenerator("internal vertex valency < 3")
    for label in wg.legmarks:
        if wg.legs.get(label) != 0:
            raise InvalidGenerator("marked leg not at the special vertex")


def _split_components(wg):
    """Blow up: delete the special vertex and group what remains."""
    parent = list(range(wg.nv + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in wg.edges:
        if a != 0 and b != 0:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

    groups = {}
    for v in range(1, wg.nv + 1):
        groups.setdefault(find(v), []).append(v)

    pieces = []
    for _, verts in sorted(groups.items()):
        verts = sorted(verts)
        vidx = {v: i for i, v in enumerate(verts)}
        iedges = []  # (eid, local a, local b)
        ports = {i: [] for i in range(len(verts))}  # (eid, marked, half_id)
        legs = {i: [] for i in range(len(verts))}
        for eid, (a, b) in enumerate(wg.edges):
            if a in vidx and b in vidx:
                iedges.append((eid, vidx[a], vidx[b]))
            elif a == 0 and b in vidx:
                ports[vidx[b]].append((eid, (eid, 0) in wg.marks, (eid, 0)))
            elif b == 0 and a in vidx:
                ports[vidx[a]].append((eid, (eid, 1) in wg.marks, (eid, 1)))
        for label, v in wg.legs.items():
            if v in vidx:
                legs[vidx[v]].append(label)
        if not any(ports.values()):
            raise InvalidGenerator("component not attached to the special vertex")
        pieces.append(("reg", iedges, ports, legs))
    for eid, (a, b) in enumerate(wg.edges):
        if a == 0 and b == 0:
            pieces.append(("tad", eid, (eid, 0) in wg.marks, (eid, 1) in wg.marks))
    for label in sorted(wg.legs):
        if wg.legs[label] == 0:
            pieces.append(("leg", label, label in wg.legmarks))
    return pieces


def _canonicalize_regular_piece(iedges, ports, legs):
    """Canonicalize one regular piece; returns (Component, objmap, zero)."""
    nv = len(ports)
    raw_edges = sorted((tuple(sorted((a, b))), eid) for eid, a, b in iedges)
    w_ports = {v: [] for v in range(nv)}  # (eid, half_id), in input edge order
    e_ports = {v: [] for v in range(nv)}
    for v in range(nv):
        for eid, marked, half in sorted(ports[v]):
            (w_ports if marked else e_ports)[v].append((eid, half))
    key = _raw_key(nv, [e for e, _ in raw_edges],
                   [legs[v] for v in range(nv)],
                   [len(w_ports[v]) for v in range(nv)],
                   [len(e_ports[v]) for v in range(nv)])
    comp, perm, zero = _canonical_regular(key)
    if zero:
        return comp, {}, True

    slots = _regular_slotmap(key, comp, perm)
    ne = comp.n_edge_slots
    objmap = {}
    for i, (_, eid) in enumerate(raw_edges):
        objmap[("E", eid)] = ("e", slots[("ie", i)])
    for v in range(nv):
        for j, (eid, half) in enumerate(w_ports[v]):
            objmap[("E", eid)] = ("e", slots[("wp", v, j)])
            objmap[("H", half)] = ("h", slots[("wh", v, j)] - ne)
        for j, (eid, half) in enumerate(e_ports[v]):
            objmap[("E", eid)] = ("e", slots[("ep", v, j)])
    return comp, objmap, False


# ---------------------------------------------------------------------------
# Building components and generators directly.
# ---------------------------------------------------------------------------

def canonical_component(nv, edges=(), omegas=(), epsilons=(), legs=(), ends=()):
    """Canonicalize explicit component data; returns (Component, zero)."""
    if nv == 0:
        ends = tuple(sorted(ends, key=_end_key))
        comp = Component(0, (), (), (), (), ends)
        return comp, ends == ((OMEGA,), (OMEGA,))
    key = _raw_key(nv, edges, legs, omegas, epsilons)
    comp, _, zero = _canonical_regular(key)
    return comp, zero


def leg_component(label, marked=True):
    kind = (OMEGA,) if marked else (EPSILON,)
    return Component(0, (), (), (), (),
                     tuple(sorted((kind, ("l", label)), key=_end_key)))


def tadpole_component(marked=1):
    """Tadpole at the special vertex with 0, 1 or 2 marked halves."""
    ends = tuple(sorted(((OMEGA,) if i < marked else (EPSILON,) for i in range(2)),
                        key=_end_key))
    return Component(0, (), (), (), (), ends)


def star_component(*decorations):
    """Single internal vertex with the given decorations (OMEGA/EPSILON/labels)."""
    om = sum(1 for d in decorations if d == OMEGA)
    ep = sum(1 for d in decorations if d == EPSILON)
    legs = tuple(sorted(d for d in decorations if isinstance(d, int)))
    comp, _ = canonical_component(1, (), (om,), (ep,), (legs,))
    return comp


def tree_component(*vertex_decorations):
    """Path of internal vertices, consecutive ones joined, decorated per vertex."""
    nv = len(vertex_decorations)
    edges = [(i, i + 1) for i in range(nv - 1)]
    om, ep, legs = [], [], []
    for decs in vertex_decorations:
        om.append(sum(1 for d in decs if d == OMEGA))
        ep.append(sum(1 for d in decs if d == EPSILON))
        legs.append(tuple(sorted(d for d in decs if isinstance(d, int))))
    comp, _ = canonical_component(nv, edges, om, ep, legs)
    return comp


TRIPLEO = star_component(OMEGA, OMEGA, OMEGA)


def assemble(components, n):
    """Build the canonical generator with these components.

    Raises InvalidGenerator on duplicate or missing leg labels or any axiom
    violation; returns None if the generator vanishes.
    """
    gen = Generator(n, tuple(sorted(components)))
    wg = to_work(gen)
    res = canonicalize(wg)
    return None if res is None else res[1]


def blow_up(gen: Generator):
    """The multiset of blown-up components (sorted tuple)."""
    return gen.components


def relabel(gen: Generator, sigma):
    """Apply the leg relabeling ``sigma`` (dict or callable on 1..n).

    Returns (sign, Generator) or None if the image vanishes (it never does
    for relabelings of a nonzero generator, but the contract is uniform).
    """
    mapping = sigma if callable(sigma) else (lambda l: sigma[l])
    wg = to_work(gen)
    wg.legs = {mapping(l): v for l, v in wg.legs.items()}
    wg.legmarks = {mapping(l) for l in wg.legmarks}
    wg.orientation = [
        ("H", ("L", mapping(h[1][1]))) if h[0] == "H" and h[1][0] == "L" else h
        for h in wg.orientation]
    return canonicalize(wg)


# ---------------------------------------------------------------------------
# Serialization.
# ---------------------------------------------------------------------------

def component_to_json(comp: Component):
    if comp.nv == 0:
        ports = []
        for end in comp.ends:
            if end[0] == "l":
                ports.append({"at": "free", "kind": end[1]})
            else:
                ports.append({"at": "free",
                              "kind": "omega" if end[0] == OMEGA else "epsilon"})
        return {"vertices": 0, "edges": [], "ports": ports}
    ports = []
    for v in range(comp.nv):
        for _ in range(comp.omegas[v]):
            ports.append({"at": v, "kind": "omega"})
        for _ in range(comp.epsilons[v]):
            ports.append({"at": v, "kind": "epsilon"})
        for label in comp.legs[v]:
            ports.append({"at": v, "kind": label})
    return {"vertices": comp.nv,
            "edges": [list(e) for e in comp.edges],
            "ports": ports}


def generator_to_json(gen: Generator):
    return {"n": gen.n, "components": [component_to_json(c) for c in gen.components]}


def generator_from_json(data) -> Generator:
    n = data["n"]
    comps = []
    for cd in data["components"]:
        nv = cd["vertices"]
        if nv == 0:
            ends = []
            for p in cd["ports"]:
                k = p["kind"]
                if k == "omega":
                    ends.append((OMEGA,))
                elif k == "epsilon":
                    ends.append((EPSILON,))
                else:
                    ends.append(("l", int(k)))
            comp, _ = canonical_component(0, ends=ends)
        else:
            om = [0] * nv
            ep = [0] * nv
            legs = [[] for _ in range(nv)]
            for p in cd["ports"]:
                v, k = p["at"], p["kind"]
                if k == "omega":
                    om[v] += 1
                elif k == "epsilon":
                    ep[v] += 1
                else:
                    legs[v].append(int(k))
            comp, _ = canonical_component(nv, [tuple(e) for e in cd["edges"]],
                                          om, ep, legs)
        comps.append(comp)
    gen = assemble(comps, n)
    if gen is None:
        raise InvalidGenerator("serialized generator vanishes")
    return gen


def generator_dumps(gen: Generator) -> str:
    return json.dumps(generator_to_json(gen), sort_keys=True)


def generator_loads(text: str) -> Generator:
    return generator_from_json(json.loads(text))


def _dec_text(d):
    if d == OMEGA:
        return "ω"
    if d == EPSILON:
        return "ε"
    return str(d)


def component_text(comp: Component) -> str:
    """Compact text form: 'ω1', 'ωε', '(ω ω ω)', '(11 ω | 12 13)', ..."""
    if comp.nv == 0:
        return "".join(_dec_text(e[1] if e[0] == "l" else e[0]) for e in comp.ends)
    groups = []
    for v in range(comp.nv):
        decs = ([str(l) for l in comp.legs[v]]
                + ["ω"] * comp.omegas[v] + ["ε"] * comp.epsilons[v])
        groups.append(" ".join(decs))
    return "(" + " | ".join(groups) + ")"


def generator_text(gen: Generator) -> str:
    return " ".join(component_text(c) for c in gen.components)
