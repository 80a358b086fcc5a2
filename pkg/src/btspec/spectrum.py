"""Prime ideals of the Burnside Tambara functor and their containment poset.

The prime ideals are indexed by pairs (conjugacy class of a subgroup H, p)
with p a prime or 0.  Membership at a level is a mod-p vanishing condition on
marks at the subgroups subconjugate to H.  Containments are decided purely
combinatorially:

    (i)   P(K,0) <= P(H,0)  iff  H subconjugate to K
    (ii)  P(H,0) <  P(H,p)  always;  P(H,p) never inside P(K,0)
    (iii) P(K,p) <= P(H,q)  iff  p = q and O^p(H) subconjugate to O^p(K)
    (iv)  P(K,0) <= P(H,p)  iff  O^p(H) subconjugate to K

where O^p is the p-residual subgroup, so an ideal with p > 0 canonically
equals the one indexed by the p-perfect representative O^p(H).  For any prime
q not dividing |G| the residual is the identity map and all such fibers are
order-isomorphic; the poset therefore materializes one symbolic GENERIC fiber
alongside the fibers over 0 and over each prime dividing |G|.

The companion Zariski spectrum of the plain Burnside ring A(G) has the same
node set but only the 0-to-p containments with matching residual, and Krull
dimension 1.

Primality of the ideal family itself is not re-certified by machine (that
would quantify over every element of every level); the enumeration trusts the
classification.  What IS machine-checked here: the Q-condition on concrete
witness pairs, which certifies NON-primality of every ideal attached to a
non-principal family of subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .burnside import BurnsideElement, GhostElement
from .ghost import GhostSystem
from .lattice import conjugate_bits, is_subset, p_residual_bits


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def validate_prime_or_zero(p: int) -> int:
    if p != 0 and not is_prime(p):
        raise ValueError(f"expected a prime or 0, got {p}")
    return p


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def residual_class(system: GhostSystem, cls: int, p: int) -> int:
    """Conjugacy class of O^p(H) for H a representative of the given class."""
    key = (cls, p)
    cached = system._residuals.get(key)
    if cached is None:
        lattice = system.lattice
        rep = lattice.class_reps[cls]
        bits = p_residual_bits(system.group, lattice.subgroups[rep].members, p)
        cached = lattice.class_of[lattice.subgroup_index(bits)]
        system._residuals[key] = cached
    return cached


@dataclass(frozen=True, eq=False)
class PrimeIdeal:
    """Prime ideal indexed by (subgroup class, p); equality is canonical.

    Two ideals are equal iff they have the same p and, for p > 0, conjugate
    p-residuals (for p = 0, conjugate subgroups).
    """

    subgroup_class: int
    p: int
    canonical_class: int

    def __eq__(self, other):
        if not isinstance(other, PrimeIdeal):
            return NotImplemented
        return self.p == other.p and self.canonical_class == other.canonical_class

    def __hash__(self):
        return hash((self.p, self.canonical_class))


def make_prime_ideal(system: GhostSystem, cls: int, p: int) -> PrimeIdeal:
    validate_prime_or_zero(p)
    canonical = cls if p == 0 else residual_class(system, cls, p)
    return PrimeIdeal(cls, p, canonical)


# -- subgroup families --------------------------------------------------------


def family_closed(lattice, classes) -> bool:
    """True iff the class set is nonempty and downward closed under subconjugacy."""
    cset = frozenset(classes)
    if not cset:
        return False
    for c in cset:
        for c2 in range(lattice.num_classes):
            if lattice.subconj[c2][c] and c2 not in cset:
                return False
    return True


def make_family(lattice, classes) -> frozenset[int]:
    cset = frozenset(classes)
    if not family_closed(lattice, cset):
        raise ValueError("a subgroup family must be nonempty and closed under subconjugacy")
    return cset


def principal_family(lattice, cls: int) -> frozenset[int]:
    """F_H = all classes subconjugate to the given class."""
    return frozenset(c for c in range(lattice.num_classes) if lattice.subconj[c][cls])


def all_families(lattice) -> list[frozenset[int]]:
    """Every nonempty downward-closed class set, ordered by (size, sorted members)."""
    n = lattice.num_classes
    out = []
    for mask in range(1, 1 << n):
        cset = frozenset(c for c in range(n) if mask >> c & 1)
        if family_closed(lattice, cset):
            out.append(cset)
    out.sort(key=lambda f: (len(f), sorted(f)))
    return out


def family_maximal_classes(lattice, family) -> list[int]:
    return sorted(
        c
        for c in family
        if not any(c2 != c and lattice.subconj[c][c2] for c2 in family)
    )


# -- ideal membership ----------------------------------------------------------


def _in_mod(value: int, p: int) -> bool:
    return value == 0 if p == 0 else value % p == 0


def ghost_ideal_membership(
    system: GhostSystem, family, p: int, a: GhostElement
) -> bool:
    """True iff a's coordinate at every subgroup of its level whose class is in
    the family lies in (p)."""
    validate_prime_or_zero(p)
    lattice = system.lattice
    ring = system.level(a.level)
    for cls in range(ring.num_classes):
        g_cls = lattice.class_of[ring.class_reps[cls]]
        if g_cls in family and not _in_mod(a.values[cls], p):
            return False
    return True


def burnside_ideal_membership(
    system: GhostSystem, k_cls: int, p: int, x: BurnsideElement
) -> bool:
    """Membership of a Burnside element in P(K,p) at its level: all marks at
    subgroups subconjugate to K vanish mod p."""
    return ghost_ideal_membership(
        system, principal_family(system.lattice, k_cls), p, system.ghost_map(x)
    )


def ideal_member(system: GhostSystem, ideal: PrimeIdeal, x: BurnsideElement) -> bool:
    return burnside_ideal_membership(system, ideal.subgroup_class, ideal.p, x)


# -- containment ---------------------------------------------------------------


def _contains_tambara(system, p1, cls1, res1, p2, cls2, res2) -> bool:
    """Ideal (cls1, p1) contained in ideal (cls2, p2); GENERIC encoded as p = -1."""
    sc = system.lattice.subconj
    if p1 == 0 and p2 == 0:
        return sc[cls2][cls1]
    if p1 == 0:
        return sc[res2][cls1]
    if p2 == 0:
        return False
    return p1 == p2 and sc[res2][res1]


def ideal_contains(system: GhostSystem, i1: PrimeIdeal, i2: PrimeIdeal) -> bool:
    """True iff i1 is contained in i2 (combinatorial criterion)."""
    return _contains_tambara(
        system, i1.p, i1.subgroup_class, i1.canonical_class,
        i2.p, i2.subgroup_class, i2.canonical_class,
    )


# -- spectrum poset --------------------------------------------------------------

GENERIC = "GENERIC"


@dataclass(frozen=True)
class SpectrumNode:
    node_id: int
    fiber: str                      # "0", "2", ..., or "GENERIC"
    residual_class: int             # canonical class index
    member_classes: tuple[int, ...]  # classes whose ideal collapses onto this node


@dataclass
class SpectrumPoset:
    group: str
    kind: str                        # "tambara" or "ring"
    nodes: list[SpectrumNode]
    edges: list[tuple[int, int]]     # Hasse edges (a, b) meaning ideal a < ideal b
    fibers: dict[str, list[int]]
    krull_dimension: int
    contains: list[list[bool]]       # full containment relation over node ids

    def node_count(self) -> int:
        return len(self.nodes)


def _fiber_p(fiber: str) -> int:
    return -1 if fiber == GENERIC else int(fiber)


def _collect_nodes(system, fiber_keys):
    lattice = system.lattice
    nodes: list[SpectrumNode] = []
    fibers: dict[str, list[int]] = {}
    for fiber in fiber_keys:
        p = _fiber_p(fiber)
        ids = []
        if p <= 0:
            for cls in range(lattice.num_classes):
                node = SpectrumNode(len(nodes), fiber, cls, (cls,))
                nodes.append(node)
                ids.append(node.node_id)
        else:
            groups: dict[int, list[int]] = {}
            for cls in range(lattice.num_classes):
                groups.setdefault(residual_class(system, cls, p), []).append(cls)
            for res in sorted(groups):
                node = SpectrumNode(len(nodes), fiber, res, tuple(groups[res]))
                nodes.append(node)
                ids.append(node.node_id)
        fibers[fiber] = ids
    return nodes, fibers


def _node_contains(system, n1: SpectrumNode, n2: SpectrumNode, ring: bool) -> bool:
    p1, p2 = _fiber_p(n1.fiber), _fiber_p(n2.fiber)
    if p1 != 0 and p2 != 0 and n1.fiber != n2.fiber:
        return False  # never across distinct primes
    if p1 != 0 and p2 == 0:
        return False  # a positive-characteristic ideal never sits inside a 0-ideal
    if not ring:
        # (i)/(iii)/(iv) uniformly: residual of the target subconjugate to the
        # source's canonical datum (which is the class itself in the 0 fiber).
        return system.lattice.subconj[n2.residual_class][n1.residual_class]
    if p2 == 0:
        return n1.residual_class == n2.residual_class
    # Ring case, 0-node into p-node: kernels agree exactly on matching residuals.
    res = n1.residual_class if p2 == -1 else residual_class(system, n1.residual_class, p2)
    return res == n2.residual_class


def _transitive_reduction(contains: list[list[bool]]) -> list[tuple[int, int]]:
    n = len(contains)
    edges = []
    for a in range(n):
        for b in range(n):
            if a == b or not contains[a][b]:
                continue
            if any(
                c != a and c != b and contains[a][c] and contains[c][b] for c in range(n)
            ):
                continue
            edges.append((a, b))
    return edges


def _class_chain_length(lattice) -> int:
    """Longest strict chain (edge count) in the subconjugacy poset of classes."""
    n = lattice.num_classes
    # Classes are sorted compatibly with subconjugacy, so a forward DP works.
    best = [0] * n
    order = sorted(range(n), key=lambda c: lattice.subgroups[lattice.class_reps[c]].order)
    for c in order:
        for c2 in order:
            if c2 != c and lattice.subconj[c][c2]:
                best[c2] = max(best[c2], best[c] + 1)
    return max(best) if n else 0


def _assemble(system, fiber_keys, ring: bool, krull: int) -> SpectrumPoset:
    nodes, fibers = _collect_nodes(system, fiber_keys)
    n = len(nodes)
    contains = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a == b:
                contains[a][b] = True
            else:
                contains[a][b] = _node_contains(system, nodes[a], nodes[b], ring)
    strict = [
        [contains[a][b] and a != b for b in range(n)] for a in range(n)
    ]
    edges = _transitive_reduction(strict)
    return SpectrumPoset(
        group=system.group.name,
        kind="ring" if ring else "tambara",
        nodes=nodes,
        edges=edges,
        fibers=fibers,
        krull_dimension=krull,
        contains=contains,
    )


def _fiber_keys(system, extra_primes) -> list[str]:
    divisors = prime_factors(system.group.order)
    extras = sorted(
        {validate_prime_or_zero(q) for q in extra_primes} - set(divisors) - {0}
    )
    return ["0"] + [str(p) for p in divisors] + [str(q) for q in extras] + [GENERIC]


def enumerate_spectrum(system: GhostSystem, extra_primes=()) -> SpectrumPoset:
    """The full prime-ideal poset: 0 fiber, one fiber per prime dividing |G|,
    requested extra primes, and one symbolic GENERIC fiber."""
    krull = 1 + _class_chain_length(system.lattice)
    return _assemble(system, _fiber_keys(system, extra_primes), ring=False, krull=krull)


def burnside_ring_spectrum(system: GhostSystem, extra_primes=()) -> SpectrumPoset:
    """Zariski spectrum of the Burnside ring A(G), same node indexing."""
    return _assemble(system, _fiber_keys(system, extra_primes), ring=True, krull=1)


# -- Q-condition and non-primality witnesses -------------------------------------


def _norm_route_values(system, a: GhostElement, L_idx: int) -> list[GhostElement]:
    """All nm^L . conj_g . res_H(a) for H over level classes of a's level and
    admissible g (those with ^g H <= L)."""
    group = system.group
    lattice = system.lattice
    L_bits = lattice.subgroups[L_idx].members
    ring = system.level(a.level)
    out = []
    for h_cls in range(ring.num_classes):
        H_idx = ring.class_reps[h_cls]
        restricted = system.ghost_res(a.level, H_idx, a)
        H_bits = lattice.subgroups[H_idx].members
        seen_routes = set()
        for g in range(group.order):
            if not is_subset(conjugate_bits(group, g, H_bits), L_bits):
                continue
            conj = system.ghost_conj(g, restricted)
            val = system.ghost_nm(L_idx, conj.level, conj)
            if val.values not in seen_routes:
                seen_routes.add(val.values)
                out.append(val)
    return out


def q_condition_check(
    system: GhostSystem,
    family,
    p: int,
    a: GhostElement,
    b: GhostElement,
    exhaustive_levels: bool = False,
) -> bool:
    """Evaluate the primality relation Q for the ideal attached to (family, p).

    Iterates every pair of generalized products nm.conj.res applied to a and b
    over all admissible (H1, g1, H2, g2, L); conjugation equivariance of the
    ideal reduces L to class representatives unless ``exhaustive_levels``.
    """
    validate_prime_or_zero(p)
    lattice = system.lattice
    if exhaustive_levels:
        level_ids = list(range(len(lattice.subgroups)))
    else:
        level_ids = [lattice.class_reps[c] for c in range(lattice.num_classes)]
    for L_idx in level_ids:
        va = _norm_route_values(system, a, L_idx)
        vb = _norm_route_values(system, b, L_idx)
        for v1 in va:
            for v2 in vb:
                if not ghost_ideal_membership(system, family, p, v1 * v2):
                    return False
    return True


def non_prime_witness(system: GhostSystem, family, p: int):
    """For a non-principal family, produce the witness pair certifying that the
    attached ideal is not prime; returns None exactly for principal families.

    The witnesses are indicator vectors concentrated at two maximal classes of
    the family with no common upper bound inside it: each is 1 at its own top
    subgroup and 0 below, lies outside the ideal, and the pair satisfies Q.
    """
    validate_prime_or_zero(p)
    lattice = system.lattice
    maximal = family_maximal_classes(lattice, family)
    if len(maximal) == 1:
        assert family == principal_family(lattice, maximal[0])
        return None
    c1, c2 = maximal[0], maximal[1]
    out = []
    for cls in (c1, c2):
        level_idx = lattice.class_reps[cls]
        ring = system.level(level_idx)
        values = [0] * ring.num_classes
        values[ring.num_classes - 1] = 1  # the level subgroup itself is the last class
        out.append(GhostElement(level_idx, tuple(values)))
    return out[0], out[1]
