"""Generator families of the excess-four complexes and their modules.

Each family is a multiset of special component shapes; instances pad with
tripleo components to reach loop order g-1 and mark every unused leg as an
omega-leg.  The span of one family inside a fixed degree is an S_n-module;
its decomposition can be computed two independent ways: from traces of the
relabeling action on the actual basis (chain route) and from the family's
slot structure by iterated Pieri steps (induction route).  The printed
module column of each family is recorded verbatim so discrepancies can be
reported as table errata rather than silently adopted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    EPSILON,
    OMEGA,
    TRIPLEO,
    leg_component,
    star_component,
    tadpole_component,
    tree_component,
)
from .symmetric import RepDecomposition, pieri_induce
from .catalog import GradedBasis

SLOT = 0

_wleg = leg_component(SLOT, marked=True).shape()


def _shapes(*comps):
    return tuple(sorted(c.shape() for c in comps))


WE_TAD = tadpole_component(1)
EE_TAD = tadpole_component(0)
E_LEG = leg_component(SLOT, marked=False)
STAR_JWW = star_component(SLOT, OMEGA, OMEGA)
STAR_EWW = star_component(EPSILON, OMEGA, OMEGA)
STAR_IJW = star_component(SLOT, SLOT, OMEGA)
STAR_EJW = star_component(EPSILON, SLOT, OMEGA)
TREE_IWWJ = tree_component((SLOT, OMEGA), (OMEGA, SLOT))
STAR_IWWE = star_component(SLOT, OMEGA, OMEGA, EPSILON)
TREE_IWWE = tree_component((SLOT, OMEGA), (OMEGA, EPSILON))
TREE_IEWW = tree_component((SLOT, EPSILON), (OMEGA, OMEGA))
TREE_212 = tree_component((SLOT, OMEGA), (OMEGA,), (OMEGA, SLOT))
STAR_IWJK = star_component(SLOT, OMEGA, SLOT, SLOT)
STAR_EIJ = star_component(EPSILON, SLOT, SLOT)
TREE_IWJK = tree_component((SLOT, OMEGA), (SLOT, SLOT))


def _mod(*patterns):
    """Module pattern: list of (prefix parts, ones offset[, multiplicity])."""
    out = []
    for p in patterns:
        if len(p) == 3:
            out.append(p)
        else:
            out.append((p[0], p[1], 1))
    return tuple(out)


@dataclass(frozen=True)
class GeneratorFamily:
    """One row of the generator tables."""

    name: str
    shapes: tuple  # sorted shapes of the non-padding components
    degree_shift: int  # degree = 3/2 (g - shift) + offset
    degree_offset: int
    printed_module: tuple  # patterns (prefix, ones offset, multiplicity)

    def slots(self):
        return sum(s.n_legs for s in self.shapes)

    def degree(self, g):
        num = 3 * (g - self.degree_shift)
        if num % 2:
            raise ValueError("degree formula needs g with matching parity")
        return num // 2 + self.degree_offset

    def loop_need(self):
        return sum(s.loop_contribution for s in self.shapes)

    def exists_at(self, g, n):
        pad = g - 1 - self.loop_need()
        return pad >= 0 and pad % 2 == 0 and self.slots() <= n

    def printed_decomposition(self, n):
        dec = RepDecomposition()
        for prefix, offset, mult in self.printed_module:
            ones = n - offset
            if ones < 0:
                continue
            lam = tuple(prefix) + (1,) * ones
            if lam and any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
                continue
            if sum(lam) == n and (not lam or lam[-1] >= 1):
                dec.add(lam, mult)
        return dec

    def stratum(self, basis: GradedBasis):
        """Basis elements of this family (any degree), in basis order."""
        wleg = _wleg
        tripleo = TRIPLEO
        key = self.shapes
        out = []
        for k in basis.degrees():
            for gen in basis.by_degree[k]:
                rest = tuple(sorted(
                    c.shape() for c in gen.components
                    if c.shape() != wleg and c.shape() != tripleo))
                if rest == key:
                    out.append(gen)
        return out

    def pieri_blocks(self, n):
        """Block structure of the induced module, derived from the shapes."""
        return derive_blocks(self.shapes, n)


class UnsupportedFamily(ValueError):
    pass


def _swap_parity(shape):
    return (shape.n_edge_slots + shape.n_half_slots) % 2


def _internal_slot_symmetry(shape):
    """Slot blocks of a single multi-slot component.

    Returns a list of Pieri blocks.  Handles the shapes occurring in the
    tables: slot groups at single vertices are unordered (trivial blocks); a
    shape automorphism exchanging two one-slot vertices merges them into one
    block, trivial or sign according to the parity of the induced
    orientation permutation.
    """
    from .graphs import _canonical_regular, _raw_key, _regular_slotmap, _parity_by_rank

    counts = [len(ls) for ls in shape.legs]
    key = _raw_key(shape.nv, shape.edges, shape.legs, shape.omegas, shape.epsilons)
    # The zero flag of the anonymized shape is ignored on purpose: an odd
    # automorphism that moves slot vertices is a sign symmetry of the slots,
    # not a vanishing (distinct labels break it).
    comp, best, _ = _canonical_regular(key)
    # stabilizer permutations and their parities on orientation slots
    import itertools

    autos = []
    slots0 = _regular_slotmap(key, comp, best)
    order0 = sorted(slots0, key=slots0.get)
    for perm in itertools.permutations(range(shape.nv)):
        relabeled = tuple(sorted(tuple(sorted((perm[a], perm[b])))
                                 for a, b in shape.edges))
        inv = [0] * shape.nv
        for i, p in enumerate(perm):
            inv[p] = i
        enc = (relabeled,
               tuple(shape.omegas[inv[v]] for v in range(shape.nv)),
               tuple(shape.epsilons[inv[v]] for v in range(shape.nv)),
               tuple(shape.legs[inv[v]] for v in range(shape.nv)))
        if enc == (comp.edges, comp.omegas, comp.epsilons, comp.legs):
            slots = _regular_slotmap(key, comp, perm)
            parity = _parity_by_rank([slots[obj] for obj in order0])
            autos.append((perm, parity))
    slot_vertices = [v for v, c in enumerate(counts) if c]
    nontrivial = [(p, s) for p, s in autos
                  if any(p[v] != best[v] for v in slot_vertices)]
    if not nontrivial:
        return [("triv", c) for c in counts if c]
    if (len(nontrivial) == 1 and len(slot_vertices) == 2
            and all(counts[v] == 1 for v in slot_vertices)):
        sign = nontrivial[0][1]
        return [("triv", 2) if sign > 0 else ("sign", 2)]
    raise UnsupportedFamily("slot symmetry not supported for %s" % (shape,))


def derive_blocks(shapes, n):
    """Pieri blocks for a family's induced module, or None if it vanishes.

    Unused legs form a sign block (omega-legs anticommute); identical
    single-slot components symmetrize with or without sign according to
    their interchange parity; a pair of identical one-vertex two-slot
    components symmetrizes to the h_2[h_2] factor.
    """
    groups = {}
    for s in shapes:
        groups[s] = groups.get(s, 0) + 1
    blocks = []
    used = 0
    for shape, m in sorted(groups.items()):
        nl = shape.n_legs
        used += m * nl
        if nl == 0:
            if m >= 2 and _swap_parity(shape):
                return None
            continue
        if nl == 1:
            if m == 1:
                blocks.append(("triv", 1))
            elif _swap_parity(shape) == 0:
                blocks.append(("triv", m))
            else:
                blocks.append(("sign", m))
            continue
        if m == 1:
            sub = _internal_slot_symmetry(shape)
            if sub is None:
                return None
            blocks.extend(sub)
            continue
        if m == 2 and shape.nv == 1 and nl == 2 and _swap_parity(shape) == 0:
            blocks.append(("sym2_triv", 2))
            continue
        raise UnsupportedFamily("component group not supported: %s x%d" % (shape, m))
    if used > n:
        return None
    if n - used:
        blocks.append(("sign", n - used))
    return blocks


def family_module(family: GeneratorFamily, n) -> RepDecomposition:
    """Induction-route decomposition of the family's span."""
    blocks = family.pieri_blocks(n)
    if blocks is None:
        return RepDecomposition()
    return pieri_induce(blocks)


GENERATOR_TABLE = (
    # excess four, partition 4
    GeneratorFamily("G4_eij", _shapes(STAR_EIJ), 1, 12,
                    _mod(((3,), 3), ((2,), 2))),
    GeneratorFamily("G4_ijk", _shapes(STAR_IWJK), 1, 12,
                    _mod(((4,), 4), ((3,), 3))),
    GeneratorFamily("G4_i.jk", _shapes(TREE_IWJK), 1, 13,
                    _mod(((4,), 4), ((3, 2), 5), ((3,), 3, 2), ((2, 2), 4), ((2,), 2))),
    GeneratorFamily("G4_ei", _shapes(STAR_IWWE), 3, 14,
                    _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G4_ei.w", _shapes(TREE_IEWW), 3, 15,
                    _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G4_e.i", _shapes(TREE_IWWE), 3, 15,
                    _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G4_iwj", _shapes(TREE_212), 3, 16,
                    _mod(((2, 2), 4), ((2,), 2), ((), 0))),
    # partition 31
    GeneratorFamily("G31_ee;e", _shapes(WE_TAD, EE_TAD), 3, 13,
                    _mod(((), 0))),
    GeneratorFamily("G31_ee;i", _shapes(STAR_JWW, EE_TAD), 3, 14,
                    _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G31_ewi;e", _shapes(WE_TAD, STAR_EJW), 3, 14,
                    _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G31_ewi;j", _shapes(STAR_JWW, STAR_EJW), 3, 15,
                    _mod(((3,), 3), ((2, 2), 4), ((2,), 2, 2), ((), 0))),
    GeneratorFamily("G31_i.j;e", _shapes(WE_TAD, TREE_IWWJ), 3, 15,
                    _mod(((3,), 3), ((2,), 2))),
    GeneratorFamily("G31_i.j;k", _shapes(STAR_JWW, TREE_IWWJ), 3, 16,
                    _mod(((4,), 4), ((3, 2), 5), ((3,), 3, 2), ((2, 2), 4), ((2,), 2))),
    # partition 2^2
    GeneratorFamily("G22_ei;ej", _shapes(E_LEG, E_LEG), 1, 11,
                    _mod(((3,), 3), ((2,), 2))),
    GeneratorFamily("G22_ei;jk", _shapes(E_LEG, STAR_IJW), 1, 12,
                    _mod(((4,), 4), ((3, 2), 5), ((3,), 3, 2), ((2, 2), 4), ((2,), 2))),
    GeneratorFamily("G22_ei;e", _shapes(E_LEG, STAR_EWW), 3, 14,
                    _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G22_ij;kl", _shapes(STAR_IJW, STAR_IJW), 1, 13,
                    _mod(((5,), 5), ((4,), 4), ((3, 3), 6), ((3, 2), 5), ((2, 2), 4))),
    GeneratorFamily("G22_e;ij", _shapes(STAR_EWW, STAR_IJW), 3, 15,
                    _mod(((3,), 3), ((2,), 2))),
    GeneratorFamily("G22_e;e", _shapes(STAR_EWW, STAR_EWW), 5, 17,
                    _mod(((), 0))),
    # partition 21^2
    GeneratorFamily("G212_ei", _shapes(WE_TAD, WE_TAD, E_LEG),
                    3, 13, _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G212_ei;j", _shapes(WE_TAD, STAR_JWW, E_LEG),
                    3, 14, _mod(((3,), 3), ((2, 2), 4), ((2,), 2, 2), ((), 0))),
    GeneratorFamily("G212_ei;j;k", _shapes(STAR_JWW, STAR_JWW, E_LEG),
                    3, 15,
                    _mod(((4,), 4), ((3, 2), 5), ((3,), 3, 2), ((2, 2), 4), ((2,), 2))),
    GeneratorFamily("G212_ij", _shapes(WE_TAD, WE_TAD, STAR_IJW), 3, 14,
                    _mod(((3,), 3), ((2,), 2))),
    GeneratorFamily("G212_ij;k", _shapes(WE_TAD, STAR_JWW, STAR_IJW), 3, 15,
                    _mod(((4,), 4), ((3, 2), 5), ((3,), 3, 2), ((2, 2), 4), ((2,), 2))),
    GeneratorFamily("G212_ij;k;l", _shapes(STAR_JWW, STAR_JWW, STAR_IJW), 3, 16,
                    _mod(((5,), 5), ((4, 2), 6), ((4,), 4, 2), ((3, 3), 6),
                         ((3, 2), 5, 2), ((3,), 3), ((2, 2), 4))),
    GeneratorFamily("G212_e", _shapes(WE_TAD, WE_TAD, STAR_EWW), 5, 16,
                    _mod(((), 0))),
    GeneratorFamily("G212_e;i", _shapes(WE_TAD, STAR_JWW, STAR_EWW), 5, 17,
                    _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G212_e;i;j", _shapes(STAR_JWW, STAR_JWW, STAR_EWW), 5, 18,
                    _mod(((3,), 3), ((2,), 2))),
    # partition 1^4
    GeneratorFamily("G14_we", _shapes(WE_TAD, WE_TAD, WE_TAD, WE_TAD), 5, 15,
                    _mod(((), 0))),
    GeneratorFamily("G14_i", _shapes(WE_TAD, WE_TAD, WE_TAD, STAR_JWW), 5, 16,
                    _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G14_i;j", _shapes(WE_TAD, WE_TAD, STAR_JWW, STAR_JWW), 5, 17,
                    _mod(((3,), 3), ((2,), 2))),
    GeneratorFamily("G14_i;j;k", _shapes(WE_TAD, STAR_JWW, STAR_JWW, STAR_JWW), 5, 18,
                    _mod(((4,), 4), ((3,), 3))),
    GeneratorFamily("G14_i;j;k;l", _shapes(STAR_JWW, STAR_JWW, STAR_JWW, STAR_JWW),
                    5, 19, _mod(((5,), 5), ((4,), 4))),
    # lower excess
    GeneratorFamily("G2_e", _shapes(STAR_EWW), 3, 13, _mod(((), 0))),
    GeneratorFamily("G2_ei", _shapes(E_LEG), 1, 10,
                    _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G2_ij", _shapes(STAR_IJW), 1, 11,
                    _mod(((3,), 3), ((2,), 2))),
    GeneratorFamily("G2_wewe", _shapes(WE_TAD, WE_TAD), 3, 12, _mod(((), 0))),
    GeneratorFamily("G2_wei", _shapes(WE_TAD, STAR_JWW), 3, 13,
                    _mod(((2,), 2), ((), 0))),
    GeneratorFamily("G2_i;j", _shapes(STAR_JWW, STAR_JWW), 3, 14,
                    _mod(((3,), 3), ((2,), 2))),
    GeneratorFamily("G0", (), 1, 9, _mod(((), 0))),
)
