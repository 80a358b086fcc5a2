"""Subgroup lattices: exhaustive enumeration, conjugacy classes, subconjugacy.

Subgroups are bitsets over element indices (Python ints), so membership and
containment are single bit operations.  The lattice is complete: it is built
by seeding with all cyclic subgroups and closing under pairwise joins, and
every subgroup of a listed subgroup is again listed.  All tie-breaking is by
least element index / least bitset, which makes every derived structure
deterministic for a fixed group realization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContainmentError
from .groups import FiniteGroup


def bits_iter(bits: int):
    """Yield set bit positions in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def bit_count(bits: int) -> int:
    return bin(bits).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class Subgroup:
    """Subgroup as a bitset over element indices plus its cardinality."""

    members: int
    order: int

    def contains_element(self, x: int) -> bool:
        return self.members >> x & 1 == 1

    def element_indices(self) -> list[int]:
        return list(bits_iter(self.members))


def closure(group: FiniteGroup, generators) -> int:
    """Bitset of the subgroup generated by the given element indices."""
    mul = group.mul_table
    bits = 1 << group.identity_index
    frontier = [group.identity_index]
    gens = list(generators)
    while frontier:
        new = []
        for x in frontier:
            row = mul[x]
            for g in gens:
                y = row[g]
                if not bits >> y & 1:
                    bits |= 1 << y
                    new.append(y)
        frontier = new
    return bits


def conjugate_bits(group: FiniteGroup, g: int, bits: int) -> int:
    """Bitset of ^g S = g S g^-1."""
    mul = group.mul_table
    gi = group.inv[g]
    row = mul[g]
    out = 0
    for x in bits_iter(bits):
        out |= 1 << mul[row[x]][gi]
    return out


def left_transversal(group: FiniteGroup, K_bits: int, H_bits: int) -> list[int]:
    """Least-index representatives of the left cosets kH inside K (H <= K)."""
    if not is_subset(H_bits, K_bits):
        raise ContainmentError("H must be contained in K")
    mul = group.mul_table
    reps, covered = [], 0
    for k in bits_iter(K_bits):
        if covered >> k & 1:
            continue
        reps.append(k)
        row = mul[k]
        for h in bits_iter(H_bits):
            covered |= 1 << row[h]
    return reps


def right_transversal(group: FiniteGroup, K_bits: int, H_bits: int) -> list[int]:
    """Least-index representatives of the right cosets Hk inside K (H <= K)."""
    if not is_subset(H_bits, K_bits):
        raise ContainmentError("H must be contained in K")
    mul = group.mul_table
    reps, covered = [], 0
    for k in bits_iter(K_bits):
        if covered >> k & 1:
            continue
        reps.append(k)
        for h in bits_iter(H_bits):
            covered |= 1 << mul[h][k]
    return reps


def double_coset_reps(group: FiniteGroup, L_bits: int, K_bits: int, H_bits: int) -> list[int]:
    """Least-index representatives of the double cosets L\\K/H (L, H <= K)."""
    if not (is_subset(L_bits, K_bits) and is_subset(H_bits, K_bits)):
        raise ContainmentError("L and H must be contained in K")
    mul = group.mul_table
    reps, covered = [], 0
    h_list = list(bits_iter(H_bits))
    for k in bits_iter(K_bits):
        if covered >> k & 1:
            continue
        reps.append(k)
        for l in bits_iter(L_bits):
            row = mul[mul[l][k]]
            for h in h_list:
                covered |= 1 << row[h]
    return reps


@dataclass
class SubgroupLattice:
    """All subgroups of a group, their conjugacy classes, and subconjugacy.

    ``subgroups`` is sorted by (order, bitset); ``subconj[c1][c2]`` is True iff
    some member of class c1 is contained in some member of class c2.
    """

    group: FiniteGroup
    subgroups: list[Subgroup]
    index_of: dict[int, int]
    class_of: list[int]
    class_reps: list[int]
    subconj: list[list[bool]]
    _normalizers: list[Subgroup | None] | None = field(default=None, repr=False)
    _contained_cache: dict[int, tuple[int, ...]] = field(default_factory=dict, repr=False)

    @property
    def num_classes(self) -> int:
        return len(self.class_reps)

    @property
    def top_index(self) -> int:
        return len(self.subgroups) - 1

    def subgroup_index(self, bits: int) -> int:
        idx = self.index_of.get(bits)
        if idx is None:
            raise KeyError(f"bitset {bits:#x} is not a subgroup of the group")
        return idx

    def class_size(self, cls: int) -> int:
        return sum(1 for c in self.class_of if c == cls)

    def subgroups_within(self, sub_idx: int) -> tuple[int, ...]:
        """Indices of all subgroups contained in the given subgroup, ascending."""
        cached = self._contained_cache.get(sub_idx)
        if cached is None:
            top = self.subgroups[sub_idx].members
            cached = tuple(
                i for i, s in enumerate(self.subgroups) if is_subset(s.members, top)
            )
            self._contained_cache[sub_idx] = cached
        return cached

    def normalizer(self, sub_idx: int) -> Subgroup:
        if self._normalizers is None:
            self._normalizers = [None] * len(self.subgroups)
        cached = self._normalizers[sub_idx]
        if cached is None:
            g = self.group
            bits = self.subgroups[sub_idx].members
            if g.is_abelian:
                cached = self.subgroups[self.top_index]
            else:
                out = 0
                for x in range(g.order):
                    if conjugate_bits(g, x, bits) == bits:
                        out |= 1 << x
                cached = Subgroup(out, bit_count(out))
            self._normalizers[sub_idx] = cached
        return cached

    def is_subconjugate(self, h_idx: int, k_idx: int) -> bool:
        """True iff some conjugate of subgroup h lies inside subgroup k."""
        return self.subconj[self.class_of[h_idx]][self.class_of[k_idx]]


def subgroup_lattice(group: FiniteGroup) -> SubgroupLattice:
    """Enumerate every subgroup by cyclic seeding and pairwise-join closure."""
    mul = group.mul_table
    n = group.order

    # Cyclic subgroups, keyed by bitset; remember one generator each.
    found: dict[int, tuple[int, ...]] = {1 << group.identity_index: ()}
    cyclics: list[tuple[int, int]] = []
    for x in range(n):
        if x == group.identity_index:
            continue
        bits = 1 << group.identity_index
        power = x
        while power != group.identity_index:
            bits |= 1 << power
            power = mul[power][x]
        if bits not in found:
            found[bits] = (x,)
            cyclics.append((bits, x))
    cyclics.sort(key=lambda t: (bit_count(t[0]), t[0]))

    # Join closure: any subgroup is the join of its cyclic subgroups.
    queue = sorted(found)
    qi = 0
    while qi < len(queue):
        s_bits = queue[qi]
        qi += 1
        s_gens = found[s_bits]
        for c_bits, c in cyclics:
            if s_bits >> c & 1:
                continue
            joined = closure(group, s_gens + (c,))
            if joined not in found:
                found[joined] = s_gens + (c,)
                queue.append(joined)

    ordered = sorted(found, key=lambda b: (bit_count(b), b))
    subgroups = [Subgroup(b, bit_count(b)) for b in ordered]
    index_of = {b: i for i, b in enumerate(ordered)}

    # Conjugacy classes via orbit closure under the group generators.
    class_of = [-1] * len(subgroups)
    class_reps: list[int] = []
    for i, sub in enumerate(subgroups):
        if class_of[i] != -1:
            continue
        cls = len(class_reps)
        class_reps.append(i)
        frontier = [sub.members]
        class_of[i] = cls
        while frontier:
            new = []
            for bits in frontier:
                for g in group.gen_indices:
                    cb = conjugate_bits(group, g, bits)
                    j = index_of[cb]
                    if class_of[j] == -1:
                        class_of[j] = cls
                        new.append(cb)
            frontier = new

    nclasses = len(class_reps)
    subconj = [[False] * nclasses for _ in range(nclasses)]
    for i, sub in enumerate(subgroups):
        ci = class_of[i]
        row = subconj[ci]
        for c2, rep in enumerate(class_reps):
            if not row[c2] and is_subset(sub.members, subgroups[rep].members):
                row[c2] = True
    return SubgroupLattice(group, subgroups, index_of, class_of, class_reps, subconj)


def p_residual_bits(group: FiniteGroup, H_bits: int, p: int) -> int:
    """Bitset of O^p(H): the subgroup generated by all p'-elements of H."""
    gens = [x for x in bits_iter(H_bits) if group.element_order(x) % p != 0]
    return closure(group, gens)


def p_residual(lattice: SubgroupLattice, H: Subgroup, p: int) -> Subgroup:
    """O^p(H): smallest normal subgroup of H with p-power-order quotient."""
    bits = p_residual_bits(lattice.group, H.members, p)
    return lattice.subgroups[lattice.subgroup_index(bits)]


def p_residual_normal_oracle(lattice: SubgroupLattice, H: Subgroup, p: int) -> Subgroup:
    """Independent route to O^p(H): intersect all normal subgroups of H of p-power index.

    Used to cross-check p_residual; quadratic in the number of subgroups of H.
    """
    group = lattice.group
    h_idx = lattice.subgroup_index(H.members)
    acc = H.members
    for idx in lattice.subgroups_within(h_idx):
        nb = lattice.subgroups[idx].members
        quotient = H.order // lattice.subgroups[idx].order
        q = quotient
        while q % p == 0:
            q //= p
        if q != 1:
            continue
        if all(conjugate_bits(group, h, nb) == nb for h in bits_iter(H.members)):
            acc &= nb
    return lattice.subgroups[lattice.subgroup_index(acc)]


def is_subconjugate(lattice: SubgroupLattice, H: Subgroup, K: Subgroup) -> bool:
    return lattice.is_subconjugate(
        lattice.subgroup_index(H.members), lattice.subgroup_index(K.members)
    )


def double_cosets(lattice_or_group, L: Subgroup, K: Subgroup, H: Subgroup) -> list[int]:
    """Representatives of L\\K/H, one per double coset, least element index first."""
    group = getattr(lattice_or_group, "group", lattice_or_group)
    return double_coset_reps(group, L.members, K.members, H.members)
