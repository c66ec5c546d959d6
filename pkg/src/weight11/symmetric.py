"""Symmetric group machinery: partitions, characters, actions, induced modules.

Characters come from the Murnaghan-Nakayama rule with exact integer
arithmetic; irreducible dimensions from the hook length formula.  The leg
relabeling action on a chain basis is a signed permutation matrix, so
isotypic multiplicities are class-sum averages of traces.  Induced modules
of Young-subgroup products of trivial and sign blocks are expanded by
iterated Pieri steps (horizontal strips for complete factors h_k, vertical
strips for elementary factors e_k); small non-strip factors enter through
their Jacobi-Trudi expansions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .graphs import Generator, relabel


# ---------------------------------------------------------------------------
# Partitions.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def partitions(n):
    """All partitions of n as weakly decreasing tuples, reverse-lex sorted."""
    if n == 0:
        return ((),)
    out = []

    def rec(rest, maxpart, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(rest, maxpart), 0, -1):
            prefix.append(p)
            rec(rest - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(sorted(out, reverse=True))


def is_partition(lam):
    return all(lam[i] >= lam[i + 1] >= 1 for i in range(len(lam) - 1)) and (
        not lam or lam[-1] >= 1)


def partition_str(lam):
    """Compact print form: descending parts with ^e for repeats >= 2.

    Multi-digit parts fall back to a bracketed comma form to stay parseable.
    """
    if not lam:
        return "()"
    if lam[0] >= 10:
        return "(" + ",".join(str(p) for p in lam) + ")"
    out = []
    for part, grp in itertools.groupby(lam):
        k = len(list(grp))
        out.append(str(part) + ("^" + str(k) if k >= 2 else ""))
    return "".join(out)


def parse_partition(text):
    """Inverse of partition_str.

    Exponent runs like "3^21^7" are ambiguous character-wise; the grammar is
    pinned down by requiring exponents >= 2 and strictly decreasing parts,
    which makes the compact form uniquely parseable for single-digit parts.
    """
    text = text.strip()
    if text == "()":
        return ()
    if text.startswith("("):
        return tuple(int(p) for p in text[1:-1].split(","))

    def rec(i, prev_part):
        if i == len(text):
            return ()
        if not text[i].isdigit():
            return None
        part = int(text[i])
        if part == 0 or part >= prev_part:
            return None
        i += 1
        if i < len(text) and text[i] == "^":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            digits = text[i + 1:j]
            # the digit run may spill into the next part; prefer the shortest
            # exponent, which is the unique reading for partitions of n <= 13
            for cut in range(1, len(digits) + 1):
                exp = int(digits[:cut])
                if exp < 2:
                    continue
                rest = rec(i + 1 + cut, part)
                if rest is not None:
                    return (part,) * exp + rest
            return None
        rest = rec(i, part)
        if rest is None:
            return None
        return (part,) + rest

    lam = rec(0, 10)
    if lam is None or not is_partition(lam):
        raise ValueError("not a partition: %r" % text)
    return lam


def hook_dimension(lam):
    """Dimension of the irreducible module V_lam (hook length formula)."""
    n = sum(lam)
    conj = conjugate(lam)
    denom = 1
    for i, row in enumerate(lam):
        for j in range(row):
            denom *= row - j + conj[j] - i - 1
    return factorial(n) // denom


def conjugate(lam):
    if not lam:
        return ()
    out = [0] * lam[0]
    for row in lam:
        for j in range(row):
            out[j] += 1
    return tuple(out)


def class_size(mu):
    """Size of the conjugacy class with cycle type mu."""
    n = sum(mu)
    z = 1
    for part, grp in itertools.groupby(mu):
        k = len(list(grp))
        z *= part ** k * factorial(k)
    return factorial(n) // z


def class_representative(mu):
    """A permutation of cycle type mu as a dict on 1..n (consecutive cycles)."""
    perm = {}
    start = 1
    for part in mu:
        cyc = list(range(start, start + part))
        for i, x in enumerate(cyc):
            perm[x] = cyc[(i + 1) % part]
        start += part
    return perm


def permutation_sign(mu):
    return (-1) ** (sum(mu) - len(mu))


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama characters.
# ---------------------------------------------------------------------------

def _border_strips(lam, length):
    """All (smaller partition, height) from removing a border strip.

    Via beta-numbers: removing a strip of the given length moves one beta
    number down by that length onto a free spot; the strip height is one
    more than the number of beta numbers jumped over.
    """
    r = len(lam)
    beta = [lam[i] + (r - 1 - i) for i in range(r)]
    bset = set(beta)
    out = []
    for b in beta:
        nb = b - length
        if nb < 0 or nb in bset:
            continue
        crossed = sum(1 for x in beta if nb < x < b)
        newbeta = sorted((x for x in beta if x != b), reverse=True)
        newbeta.append(nb)
        newbeta.sort(reverse=True)
        newlam = tuple(newbeta[i] - (r - 1 - i) for i in range(r))
        out.append((tuple(p for p in newlam if p > 0), crossed + 1))
    return out


@lru_cache(maxsize=None)
def _mn_character(lam, mu):
    if not mu:
        return 1 if not lam else 0
    length = mu[0]
    rest = mu[1:]
    total = 0
    for new, height in _border_strips(lam, length):
        total += (-1) ** (height - 1) * _mn_character(new, rest)
    return total


@dataclass(frozen=True)
class CharacterTable:
    """Integer character table of S_n with class sizes."""

    n: int
    classes: tuple  # partitions of n (cycle types)
    sizes: tuple
    values: dict  # (lam, mu) -> chi_lam(mu)

    def chi(self, lam, mu):
        return self.values[(lam, mu)]

    def check_orthogonality(self):
        nfact = factorial(self.n)
        ps = partitions(self.n)
        for lam in ps:
            for nu in ps:
                s = sum(size * self.chi(lam, mu) * self.chi(nu, mu)
                        for mu, size in zip(self.classes, self.sizes))
                if s != (nfact if lam == nu else 0):
                    raise AssertionError(
                        "orthogonality fails for %s, %s" % (lam, nu))
        return True


def characters(n) -> CharacterTable:
    """Full character table of S_n (intended range n <= 13)."""
    ps = partitions(n)
    values = {(lam, mu): _mn_character(lam, mu) for lam in ps for mu in ps}
    return CharacterTable(n, ps, tuple(class_size(mu) for mu in ps), values)


# ---------------------------------------------------------------------------
# Representation decompositions.
# ---------------------------------------------------------------------------

class RepDecomposition(dict):
    """Multiset of partitions: map partition -> multiplicity (ints, may be
    virtual with negative entries for Euler characteristics)."""

    def add(self, lam, mult=1):
        new = self.get(lam, 0) + mult
        if new:
            self[lam] = new
        elif lam in self:
            del self[lam]

    def dimension(self):
        return sum(m * hook_dimension(lam) for lam, m in self.items())

    def __str__(self):
        if not self:
            return "0"
        items = sorted(self.items(), reverse=True)
        parts = []
        for lam, m in items:
            head = "" if m == 1 else "%d" % m
            parts.append("%sV_{%s}" % (head, partition_str(lam)))
        return " + ".join(parts)

    def to_json(self):
        return [{"lambda": list(lam), "mult": m}
                for lam, m in sorted(self.items(), reverse=True)]

    @classmethod
    def from_json(cls, data):
        out = cls()
        for item in data:
            out.add(tuple(item["lambda"]), item["mult"])
        return out


# ---------------------------------------------------------------------------
# Signed permutation action on chain bases.
# ---------------------------------------------------------------------------

class BasisClosureError(RuntimeError):
    pass


def act(sigma, basis_slice):
    """Signed permutation matrix of the leg relabeling sigma on an ordered
    basis: a list mapping source index -> (target index, sign)."""
    index = {gen: i for i, gen in enumerate(basis_slice)}
    out = []
    for gen in basis_slice:
        res = relabel(gen, sigma)
        if res is None:
            raise BasisClosureError("relabeled generator vanishes: %s" % (gen,))
        sign, image = res
        if image not in index:
            raise BasisClosureError("relabeled generator missing: %s" % (image,))
        out.append((index[image], sign))
    return out


def act_trace(action):
    return sum(sign for i, (tgt, sign) in enumerate(action) if tgt == i)


def multiplicities_from_traces(table: CharacterTable, traces) -> RepDecomposition:
    """m_lam = (1/n!) sum_mu |class mu| chi_lam(mu) trace(mu), exactly."""
    nfact = factorial(table.n)
    out = RepDecomposition()
    for lam in partitions(table.n):
        s = Fraction(0)
        for mu, size in zip(table.classes, table.sizes):
            s += size * table.chi(lam, mu) * traces[mu]
        m = s / nfact
        if m.denominator != 1:
            raise AssertionError("non-integer multiplicity for %s: %s" % (lam, m))
        if m:
            out.add(lam, int(m))
    return out


def chain_multiplicities(basis_slice, table: CharacterTable) -> RepDecomposition:
    """Isotypic decomposition of the span of an ordered, relabel-closed basis."""
    traces = {}
    for mu in table.classes:
        sigma = class_representative(mu)
        traces[mu] = act_trace(act(lambda l: sigma[l], basis_slice))
    dec = multiplicities_from_traces(table, traces)
    if any(m < 0 for m in dec.values()):
        raise AssertionError("negative multiplicity: %s" % (dec,))
    if dec.dimension() != len(basis_slice):
        raise AssertionError("dimension mismatch in decomposition")
    return dec


# ---------------------------------------------------------------------------
# Pieri-rule induction.
# ---------------------------------------------------------------------------

def _add_horizontal_strips(lam, k):
    """Partitions nu >= lam with nu/lam a horizontal strip of size k.

    The strip condition interleaves the shapes: nu_1 >= lam_1 >= nu_2 >=
    lam_2 >= ... with |nu| = |lam| + k.
    """
    rows = len(lam)
    out = []

    def rec(i, remaining, acc):
        if i == rows:
            if remaining == 0:
                out.append(tuple(acc))
            elif rows == 0 or remaining <= lam[rows - 1]:
                out.append(tuple(acc + [remaining]))
            return
        low = lam[i]
        high = lam[i] + remaining if i == 0 else min(lam[i - 1], lam[i] + remaining)
        for nu_i in range(low, high + 1):
            acc.append(nu_i)
            rec(i + 1, remaining - (nu_i - lam[i]), acc)
            acc.pop()

    rec(0, k, [])
    return out


def _add_vertical_strips(lam, k):
    return [conjugate(nu) for nu in _add_horizontal_strips(conjugate(lam), k)]


def _multiply_factor(state, factor):
    """Multiply a partition->coeff state by h_k or e_k via Pieri."""
    kind, k = factor
    adder = _add_horizontal_strips if kind == "h" else _add_vertical_strips
    out = {}
    for lam, coeff in state.items():
        for nu in adder(lam, k):
            out[nu] = out.get(nu, 0) + coeff
    return {lam: c for lam, c in out.items() if c}


# Jacobi-Trudi h-expansions of the small non-strip factors we need.
# h_2[h_2] = s_4 + s_{2,2} is the symmetrized square of a trivial pair block.
_SPECIAL_FACTORS = {
    ("sym2_triv", 2): [(1, (("h", 4),)),
                       (1, (("h", 2), ("h", 2))),
                       (-1, (("h", 3), ("h", 1)))],
}


def pieri_induce(blocks) -> RepDecomposition:
    """Decompose an induced Young-subgroup module into irreducibles.

    ``blocks`` is a list of factors: ("triv", k) for a trivial block of size
    k, ("sign", k) for a sign block, and ("sym2_triv", k) for two identical
    trivial blocks of size k symmetrized by their (signless) interchange.
    Block sizes must sum to n.
    """
    expanded = [[(1, ())]]
    for block in blocks:
        kind, k = block
        if k == 0:
            continue
        if kind == "triv":
            expanded.append([(1, (("h", k),))])
        elif kind == "sign":
            expanded.append([(1, (("e", k),))])
        elif (kind, k) in _SPECIAL_FACTORS:
            expanded.append(_SPECIAL_FACTORS[(kind, k)])
        elif kind == "sym2_triv" and k == 1:
            expanded.append([(1, (("h", 2),))])
        else:
            raise ValueError("unsupported block: %r" % (block,))

    total = RepDecomposition()
    for combo in itertools.product(*expanded):
        coeff = 1
        factors = []
        for c, fs in combo:
            coeff *= c
            factors.extend(fs)
        state = {(): 1}
        for f in factors:
            state = _multiply_factor(state, f)
        for lam, c in state.items():
            total.add(lam, coeff * c)
    if any(m < 0 for m in total.values()):
        raise AssertionError("virtual result from pieri_induce: %s" % (total,))
    return total
