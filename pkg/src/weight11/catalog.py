"""Component catalog and basis enumeration for the complexes B_{g,n}.

The generators of an excess-four complex are assembled from connected
components of excess at most four.  The essential components (those that
survive the reduction to the quotient complex) are a fixed finite list; the
non-essential excess-four components with w >= 4 form the set S whose span
K is an acyclic subcomplex.  Bases are enumerated by distributing leg labels
over template slots in all ways, padding the loop order with tripleo
components, and letting canonicalization deduplicate and drop vanishing
assignments.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .graphs import (
    EPSILON,
    OMEGA,
    TRIPLEO,
    Component,
    Generator,
    InvalidGenerator,
    assemble,
    canonical_component,
    component_text,
    excess_complex,
    generator_to_json,
    leg_component,
    star_component,
    tadpole_component,
    tree_component,
)


class UnsupportedExcess(ValueError):
    """Complex excess outside the supported range {0, 2, 4}."""


@dataclass(frozen=True)
class ComponentTemplate:
    """A component shape with anonymous leg slots.

    ``shape`` is the canonical component with every leg label replaced by 0.
    ``name`` uses the generator-family notation the result tables are stated
    in, so CLI output can be matched against them directly.
    """

    name: str
    excess: int
    essential: bool
    shape: Component

    @property
    def slots(self):
        return self.shape.n_legs

    @property
    def loop_contribution(self):
        return self.shape.loop_contribution

    def fill(self, labels):
        """Component with the slot labels replaced by ``labels`` (in slot order)."""
        shape = self.shape
        if len(labels) != shape.n_legs:
            raise ValueError("label count does not match slot count")
        if shape.nv == 0:
            ends = []
            it = iter(labels)
            for end in shape.ends:
                ends.append(("l", next(it)) if end[0] == "l" else end)
            comp, zero = canonical_component(0, ends=ends)
        else:
            it = iter(labels)
            legs = [tuple(next(it) for _ in ls) for ls in shape.legs]
            comp, zero = canonical_component(
                shape.nv, shape.edges, shape.omegas, shape.epsilons, legs)
        return None if zero else comp

    def __str__(self):
        return "%s  E=%d  %s" % (component_text(self.shape), self.excess, self.name)


def _template(name, comp, essential=True):
    return ComponentTemplate(name, comp.excess, essential, comp.shape())


S = 0  # anonymous slot label used when building template shapes


@lru_cache(maxsize=1)
def essential_templates():
    """The essential component shapes of excess <= 4 (two per excess 0 and 1,
    three per excess 2 and 3, and the seven of excess 4)."""
    return (
        _template("ω-leg", leg_component(S, marked=True)),
        _template("tripleo", TRIPLEO),
        _template("ωε tadpole", tadpole_component(1)),
        _template("(j ω ω) star", star_component(S, OMEGA, OMEGA)),
        _template("ε-leg", leg_component(S, marked=False)),
        _template("(ε ω ω) star", star_component(EPSILON, OMEGA, OMEGA)),
        _template("(i j ω) star", star_component(S, S, OMEGA)),
        _template("εε tadpole", tadpole_component(0)),
        _template("(ε j ω) star", star_component(EPSILON, S, OMEGA)),
        _template("(i ω | ω j) tree", tree_component((S, OMEGA), (OMEGA, S))),
        _template("Γ^(4)_{εi} component", star_component(S, OMEGA, OMEGA, EPSILON)),
        _template("Γ^(4)_{ε·i} component", tree_component((S, OMEGA), (OMEGA, EPSILON))),
        _template("Γ^(4)_{iωj} component",
                  tree_component((S, OMEGA), (OMEGA,), (OMEGA, S))),
        _template("Γ^(4)_{ijk} component", star_component(S, OMEGA, S, S)),
        _template("Γ^(4)_{εi·ω} component",
                  tree_component((S, EPSILON), (OMEGA, OMEGA))),
        _template("Γ^(4)_{εij} component", star_component(EPSILON, S, S)),
        _template("Γ^(4)_{i·jk} component", tree_component((S, OMEGA), (S, S))),
    )


# ---------------------------------------------------------------------------
# General component-shape enumeration (oracle machinery and the S set).
# ---------------------------------------------------------------------------

def _connected(nv, edges):
    if nv == 1:
        return True
    adj = {v: set() for v in range(nv)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == nv


def _decoration_splits(total, nv):
    """All ways to write total as an ordered sum of nv nonnegative integers."""
    if nv == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _decoration_splits(total - first, nv - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_component_shapes(max_excess, max_h1=0, max_nv=5):
    """All nonzero component shapes with excess <= max_excess.

    Legs are anonymized to slot markers.  Components with parallel internal
    edges, two epsilon ports at a vertex or any other orientation-odd
    symmetry are omitted (they vanish).  Degenerate single-edge components
    are included.  Valency forces #externals >= nv + 2 - 2*h1, so excess <= 4
    never needs more than five internal vertices.
    """
    shapes = set()
    for ends in itertools.combinations_with_replacement(
            [(OMEGA,), (EPSILON,), ("l", 0)], 2):
        if all(e[0] == "l" for e in ends):
            continue  # not attached to the special vertex
        comp, zero = canonical_component(0, ends=ends)
        if not zero and comp.excess <= max_excess:
            shapes.add(comp)
    pairs = None
    for nv in range(1, max_nv + 1):
        pairs = list(itertools.combinations(range(nv), 2))
        for h1 in range(0, max_h1 + 1):
            ne = nv - 1 + h1
            if ne < 0 or ne > len(pairs):
                continue
            for edges in itertools.combinations(pairs, ne):
                if not _connected(nv, edges):
                    continue
                deg = [0] * nv
                for a, b in edges:
                    deg[a] += 1
                    deg[b] += 1
                # excess = 3*h1 + 3*e + 2*L + w - 3
                budget = max_excess + 3 - 3 * h1
                for e_total in range(budget // 3 + 1):
                    for L_total in range((budget - 3 * e_total) // 2 + 1):
                        for w_total in range(budget - 3 * e_total - 2 * L_total + 1):
                            if e_total + w_total == 0:
                                continue  # must attach to the special vertex
                            for om in _decoration_splits(w_total, nv):
                                for ep in _decoration_splits(e_total, nv):
                                    if any(e >= 2 for e in ep):
                                        continue
                                    for lg in _decoration_splits(L_total, nv):
                                        if any(deg[v] + om[v] + ep[v] + lg[v] < 3
                                               for v in range(nv)):
                                            continue
                                        comp, zero = canonical_component(
                                            nv, edges, om, ep,
                                            [(0,) * k for k in lg])
                                        if not zero:
                                            shapes.add(comp)
    return tuple(sorted(shapes))


@lru_cache(maxsize=1)
def s_templates():
    """The set S: non-essential excess-four shapes with w >= 4.

    These come in three groups: w=4 with one epsilon port, w=5 with one leg,
    and w=7; all are trees.
    """
    out = []
    for comp in enumerate_component_shapes(4, max_h1=0, max_nv=5):
        if comp.excess == 4 and comp.w >= 4:
            out.append(ComponentTemplate(
                "S (w=%d): %s" % (comp.w, component_text(comp)), 4, False, comp))
    return tuple(out)


def component_catalog(max_excess, include_nonessential=False):
    """The documented templates of excess <= max_excess, essential first.

    Raises UnsupportedExcess beyond 4 (the engine's scope).
    """
    if not 0 <= max_excess <= 4:
        raise UnsupportedExcess("component catalog covers excess 0..4 only")
    out = [t for t in essential_templates() if t.excess <= max_excess]
    if include_nonessential and max_excess >= 4:
        out.extend(s_templates())
    return tuple(out)


@lru_cache(maxsize=1)
def auxiliary_templates():
    """Nonzero shapes of excess <= 4 that are neither essential nor in S.

    The paper-side reductions eventually cancel these against each other,
    but the honest complex needs them: the differential of an essential
    generator may pass through them.
    """
    known = {t.shape for t in essential_templates()}
    known.update(t.shape for t in s_templates())
    out = []
    for comp in enumerate_component_shapes(4, max_h1=0, max_nv=5):
        if comp not in known:
            out.append(ComponentTemplate(
                "auxiliary: %s" % component_text(comp), comp.excess, False, comp))
    return tuple(out)


@lru_cache(maxsize=4)
def basis_templates(max_excess, include_s):
    """Every component shape enumerate_basis may use, as templates."""
    out = [t for t in essential_templates() if t.excess <= max_excess]
    out.extend(t for t in auxiliary_templates() if t.excess <= max_excess)
    if include_s and max_excess >= 4:
        out.extend(s_templates())
    return tuple(out)


@lru_cache(maxsize=1)
def s_shapes():
    return frozenset(t.shape for t in s_templates())


def has_s_component(gen: Generator) -> bool:
    shapes = s_shapes()
    return any(c.shape() in shapes for c in gen.components)


# ---------------------------------------------------------------------------
# Graded bases.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedBasis:
    """Canonical basis of B_{g,n}, grouped and ordered by degree."""

    g: int
    n: int
    by_degree: dict

    def degrees(self):
        return sorted(self.by_degree)

    def dim(self, k):
        return len(self.by_degree.get(k, ()))

    def dims(self):
        return {k: len(v) for k, v in sorted(self.by_degree.items())}

    def index(self, k):
        return {gen: i for i, gen in enumerate(self.by_degree.get(k, ()))}

    def total_dim(self):
        return sum(len(v) for v in self.by_degree.values())

    def to_json(self):
        return {str(k): [generator_to_json(gen) for gen in v]
                for k, v in sorted(self.by_degree.items())}


def _group_by_degree(g, n, gens):
    by_degree = {}
    for gen in gens:
        by_degree.setdefault(gen.degree(), set()).add(gen)
    return GradedBasis(g, n, {k: tuple(sorted(v, key=lambda x: x.components))
                              for k, v in sorted(by_degree.items())})


def _template_multisets(templates, budget):
    """Multisets of templates (excess >= 1) with total excess == budget."""
    templates = [t for t in templates if t.excess >= 1]
    out = []

    def rec(i, remaining, chosen):
        if remaining == 0:
            out.append(tuple(chosen))
            return
        for j in range(i, len(templates)):
            if templates[j].excess <= remaining:
                chosen.append(templates[j])
                rec(j, remaining - templates[j].excess, chosen)
                chosen.pop()

    rec(0, budget, [])
    return out


def _instances(g, n, multiset):
    """All canonical generators built from one template multiset."""
    loops = sum(t.loop_contribution for t in multiset)
    pad = g - 1 - loops
    if pad < 0 or pad % 2 == 1:
        return
    tripleos = [TRIPLEO] * (pad // 2)
    slot_counts = [t.slots for t in multiset]
    total_slots = sum(slot_counts)
    if total_slots > n:
        return
    for labels in itertools.permutations(range(1, n + 1), total_slots):
        comps = list(tripleos)
        pos = 0
        ok = True
        for t, k in zip(multiset, slot_counts):
            comp = t.fill(labels[pos:pos + k])
            pos += k
            if comp is None:
                ok = False
                break
            comps.append(comp)
        if not ok:
            continue
        rest = set(range(1, n + 1)) - set(labels)
        comps.extend(leg_component(l) for l in rest)
        gen = assemble(comps, n)
        if gen is not None:
            yield gen


def enumerate_basis(g, n, include_nonessential=False) -> GradedBasis:
    """Basis of B_{g,n} (with include_nonessential) or of B/K (without).

    Supports complexes of excess 0, 2 and 4.  Every generator excess in
    {E, E-2, ..., 0} appears (the w >= 11 quotient keeps exactly these).
    Omitting the non-essential S shapes realizes the quotient by the acyclic
    subcomplex K of graphs with an S component.
    """
    excess = excess_complex(g, n)
    if excess not in (0, 2, 4):
        raise UnsupportedExcess(
            "E(%d,%d) = %d; supported complex excess: 0, 2, 4" % (g, n, excess))
    templates = basis_templates(min(excess, 4), include_nonessential)
    gens = set()
    for x in range(excess, -1, -2):
        for multiset in _template_multisets(templates, x):
            gens.update(_instances(g, n, multiset))
    gens = {gen for gen in gens if gen.w >= 11}
    return _group_by_degree(g, n, gens)


class EnumerationOverflow(RuntimeError):
    """Brute-force enumeration exceeded its caps."""


def brute_force_basis(g, n, max_nv=5, max_components=None) -> GradedBasis:
    """Oracle enumeration straight from the generator axioms.

    Enumerates all multisets of valid components (no catalog) with total
    loop order g-1 and legs 1..n, then keeps w >= 11.  The shape search is
    bounded because excess is additive and nonnegative: no component can
    exceed the complex excess, which caps epsilon ports, legs and loop
    order per component.
    """
    excess = excess_complex(g, n)
    if excess < 0:
        return GradedBasis(g, n, {})
    shapes = [c for c in enumerate_component_shapes(excess, max_h1=min(1, g - 1),
                                                    max_nv=max_nv)
              if c.loop_contribution <= g - 1 and c.n_legs <= n]
    if max_components is None:
        max_components = n + 2 * max(1, g)
    results = set()

    def rec(i, loops_left, slots_left, excess_left, count, chosen):
        if count > max_components:
            raise EnumerationOverflow("component count cap exceeded")
        if i == len(shapes):
            if loops_left == 0 and slots_left == 0:
                results.update(_label_and_assemble(n, chosen))
            return
        shape = shapes[i]
        copies = 0
        while True:
            rec(i + 1, loops_left - shape.loop_contribution * copies,
                slots_left - shape.n_legs * copies,
                excess_left - shape.excess * copies,
                count + copies, chosen + [shape] * copies)
            copies += 1
            if (shape.loop_contribution * copies > loops_left
                    or shape.n_legs * copies > slots_left
                    or shape.excess * copies > excess_left
                    or (shape.loop_contribution == 0 and shape.n_legs == 0)):
                break

    rec(0, g - 1, n, excess, 0, [])
    return _group_by_degree(g, n, {gen for gen in results if gen.w >= 11})


def _shape_fillings(shape, pool):
    """All fillings of one shape from the label pool.

    Yields (labels_key, component, remaining_pool); labels at one vertex are
    chosen as sorted combinations so each per-vertex multiset appears once.
    """
    if shape.n_legs == 0:
        yield (), shape, pool
        return
    if shape.nv == 0:
        for i, l in enumerate(pool):
            filled = ComponentTemplate("", shape.excess, True, shape).fill((l,))
            if filled is not None:
                yield (l,), filled, pool[:i] + pool[i + 1:]
        return
    counts = [len(ls) for ls in shape.legs]

    def rec(v, pool_left, picked):
        if v == len(counts):
            labels = tuple(l for grp in picked for l in grp)
            filled = ComponentTemplate("", shape.excess, True, shape).fill(labels)
            if filled is not None:
                yield labels, filled, pool_left
            return
        if counts[v] == 0:
            yield from rec(v + 1, pool_left, picked + [()])
            return
        for combo in itertools.combinations(pool_left, counts[v]):
            remaining = tuple(l for l in pool_left if l not in combo)
            yield from rec(v + 1, remaining, picked + [combo])

    yield from rec(0, tuple(pool), [])


def _label_and_assemble(n, shapes):
    """Assemble all labelings of a shape multiset; identical copies are kept
    in increasing label order so each unordered assignment appears once."""
    if sum(c.n_legs for c in shapes) != n:
        return

    def rec(i, pool, comps, prev_key):
        if i == len(shapes):
            try:
                gen = assemble(comps, n)
            except InvalidGenerator:
                return
            if gen is not None:
                yield gen
            return
        shape = shapes[i]
        same_as_prev = i > 0 and shapes[i - 1] == shape and shape.n_legs > 0
        for key, filled, rest in _shape_fillings(shape, pool):
            if same_as_prev and key <= prev_key:
                continue
            yield from rec(i + 1, rest, comps + [filled], key)

    yield from rec(0, tuple(range(1, n + 1)), [], ())
