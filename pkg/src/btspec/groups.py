"""Concrete finite groups as permutation groups with full multiplication tables.

Groups are specified either by a named family (cyclic, dihedral, quaternion,
symmetric, alternating, PSL2(7)/GL3(2)) or by explicit permutation generators,
and realized by breadth-first closure.  Element indices are stable and
deterministic for a given spec: index 0 is the identity and new elements are
numbered in BFS discovery order over the sorted generator list, so two runs on
the same spec produce identical tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import OrderExceededError, SpecParseError, SpecRangeError

DEFAULT_MAX_ORDER = 2000


@dataclass(frozen=True)
class Permutation:
    """Permutation of {0,...,degree-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (p * q)(x) = p(q(x)): apply q first.
        if len(self.images) != len(other.images):
            raise ValueError("degree mismatch")
        img = self.images
        return Permutation(tuple(img[i] for i in other.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    @staticmethod
    def from_cycles(cycles: list[list[int]], degree: int | None = None) -> "Permutation":
        top = max((p for cyc in cycles for p in cyc), default=-1)
        if degree is None:
            degree = top + 1
        elif top >= degree:
            raise ValueError(f"cycle point {top} exceeds degree {degree}")
        img = list(range(max(degree, 1)))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if img[a] != a:
                    raise ValueError(f"point {a} repeated across cycles")
                img[a] = b
        return Permutation(tuple(img))


NAMED_KINDS = ("cyclic", "dihedral", "quaternion", "symmetric", "alternating", "psl2", "gl3")


@dataclass(frozen=True)
class GroupSpec:
    """Parsed group description: a named family or explicit generators."""

    kind: str
    parameters: tuple[int, ...] = ()
    generators: tuple[Permutation, ...] | None = None

    def canonical_text(self) -> str:
        k, p = self.kind, self.parameters
        if k == "cyclic":
            return f"C{p[0]}"
        if k == "dihedral":
            return f"D{p[0]}"
        if k == "quaternion":
            return f"Q{p[0]}"
        if k == "symmetric":
            return f"S{p[0]}"
        if k == "alternating":
            return f"A{p[0]}"
        if k == "psl2":
            return f"PSL2_{p[0]}"
        if k == "gl3":
            return f"GL3_{p[0]}"
        parts = []
        for g in self.generators or ():
            parts.append("".join(f"({' '.join(str(x) for x in cyc)})" for cyc in _cycle_form(g)))
        return "perm:" + ";".join(parts)


def _cycle_form(p: Permutation) -> list[list[int]]:
    seen = [False] * p.degree
    cycles = []
    for start in range(p.degree):
        if seen[start] or p.images[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = p.images[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = p.images[nxt]
        cycles.append(cyc)
    return cycles


_NAMED_RE = re.compile(r"^([CDQSA])(\d+)$")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse group-spec text: C<n> | D<n> | Q<n> | S<n> | A<n> | PSL2_7 | GL3_2 | perm:...

    D<n> denotes the dihedral group of order 2n.  Raises SpecParseError with a
    position on malformed text and SpecRangeError on invalid parameters.
    """
    text = text.strip()
    if not text:
        raise SpecParseError("empty group spec", 0)
    if text == "PSL2_7":
        return GroupSpec("psl2", (7,))
    if text == "GL3_2":
        return GroupSpec("gl3", (2,))
    if text.startswith("perm:"):
        return GroupSpec("perm", (), _parse_perm_generators(text, 5))
    m = _NAMED_RE.match(text)
    if m is None:
        raise SpecParseError(f"unrecognized group spec {text!r}", 0)
    letter, n = m.group(1), int(m.group(2))
    if letter == "C":
        if n < 1:
            raise SpecRangeError("cyclic order must be >= 1")
        return GroupSpec("cyclic", (n,))
    if letter == "D":
        if n < 1:
            raise SpecRangeError("dihedral parameter must be >= 1 (order 2n)")
        return GroupSpec("dihedral", (n,))
    if letter == "Q":
        if n < 8 or n % 4 != 0:
            raise SpecRangeError(f"quaternion order must be a multiple of 4 and >= 8, got {n}")
        return GroupSpec("quaternion", (n,))
    if letter == "S":
        if n < 1:
            raise SpecRangeError("symmetric degree must be >= 1")
        return GroupSpec("symmetric", (n,))
    if n < 1:
        raise SpecRangeError("alternating degree must be >= 1")
    return GroupSpec("alternating", (n,))


def _parse_perm_generators(text: str, offset: int) -> tuple[Permutation, ...]:
    body = text[offset:]
    if not body:
        raise SpecParseError("perm spec has no generators", offset)
    gen_cycles: list[list[list[int]]] = []
    for chunk in body.split(";"):
        pos = offset
        cycles: list[list[int]] = []
        i = 0
        while i < len(chunk):
            ch = chunk[i]
            if ch.isspace():
                i += 1
                continue
            if ch != "(":
                raise SpecParseError(f"expected '(' but found {ch!r}", pos + i)
            close = chunk.find(")", i)
            if close < 0:
                raise SpecParseError("unclosed cycle", pos + i)
            inner = chunk[i + 1 : close].replace(",", " ").split()
            try:
                points = [int(tok) for tok in inner]
            except ValueError:
                raise SpecParseError(f"non-integer point in cycle {chunk[i:close + 1]!r}", pos + i)
            if any(p < 0 for p in points):
                raise SpecParseError("negative point in cycle", pos + i)
            if len(set(points)) != len(points):
                raise SpecParseError("repeated point in cycle", pos + i)
            if points:
                cycles.append(points)
            i = close + 1
        gen_cycles.append(cycles)
        offset += len(chunk) + 1
    degree = max((p for cycles in gen_cycles for cyc in cycles for p in cyc), default=0) + 1
    gens = []
    for cycles in gen_cycles:
        try:
            gens.append(Permutation.from_cycles(cycles, degree))
        except ValueError as exc:
            raise SpecParseError(str(exc), 5)
    return tuple(gens)


def _cyclic_generator(n: int) -> list[Permutation]:
    # Disjoint cycles of prime-power lengths: minimal faithful degree for C_n.
    if n == 1:
        return [Permutation.identity(1)]
    parts = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            q = 1
            while m % d == 0:
                q *= d
                m //= d
            parts.append(q)
        d += 1
    if m > 1:
        parts.append(m)
    degree = sum(parts)
    cycles, start = [], 0
    for q in parts:
        cycles.append(list(range(start, start + q)))
        start += q
    return [Permutation.from_cycles(cycles, degree)]


def _dihedral_generators(m: int) -> list[Permutation]:
    if m == 1:
        return [Permutation.from_cycles([[0, 1]], 2)]
    if m == 2:
        return [Permutation.from_cycles([[0, 1]], 4), Permutation.from_cycles([[2, 3]], 4)]
    rot = Permutation.from_cycles([list(range(m))], m)
    refl = Permutation(tuple((m - i) % m for i in range(m)))
    return [rot, refl]


def _quaternion_generators(n: int) -> list[Permutation]:
    # Dicyclic group of order n = 4k acting on itself: elements a^i b^j with
    # 0 <= i < m = n/2, j in {0,1}, b^2 = a^(m/2), b a b^-1 = a^-1.
    m = n // 2

    def idx(i: int, j: int) -> int:
        return j * m + i

    def mult(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        i, j = x
        k, l = y
        if j == 0:
            return ((i + k) % m, l)
        if l == 0:
            return ((i - k) % m, 1)
        return ((i - k + m // 2) % m, 0)

    elems = [(i, j) for j in (0, 1) for i in range(m)]
    gens = []
    for g in ((1, 0), (0, 1)):
        gens.append(Permutation(tuple(idx(*mult(g, x)) for x in elems)))
    return gens


def _symmetric_generators(n: int) -> list[Permutation]:
    if n == 1:
        return [Permutation.identity(1)]
    if n == 2:
        return [Permutation.from_cycles([[0, 1]], 2)]
    return [Permutation.from_cycles([[0, 1]], n), Permutation.from_cycles([list(range(n))], n)]


def _alternating_generators(n: int) -> list[Permutation]:
    if n <= 2:
        return [Permutation.identity(max(n, 1))]
    if n == 3:
        return [Permutation.from_cycles([[0, 1, 2]], 3)]
    three = Permutation.from_cycles([[0, 1, 2]], n)
    if n % 2 == 1:
        big = Permutation.from_cycles([list(range(n))], n)
    else:
        big = Permutation.from_cycles([list(range(1, n))], n)
    return [three, big]


def _psl2_7_generators() -> list[Permutation]:
    # Projective line over F7: points 0..6 and infinity = 7.
    # z -> z + 1 and z -> -1/z.
    shift = Permutation.from_cycles([[0, 1, 2, 3, 4, 5, 6]], 8)
    img = [0] * 8
    img[7] = 0
    img[0] = 7
    for z in range(1, 7):
        img[z] = (-pow(z, 5, 7)) % 7  # z^-1 = z^5 mod 7
    return [shift, Permutation(tuple(img))]


def _gl3_2_generators() -> list[Permutation]:
    # Nonzero vectors of F2^3 encoded as integers 1..7, acting points 0..6.
    def apply(matrix_rows, v):
        bits = [(v >> c) & 1 for c in range(3)]
        out = 0
        for r in range(3):
            s = 0
            for c in range(3):
                s ^= matrix_rows[r][c] & bits[c]
            out |= s << r
        return out

    transvection = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    rotation = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    gens = []
    for mat in (transvection, rotation):
        gens.append(Permutation(tuple(apply(mat, v) - 1 for v in range(1, 8))))
    return gens


def _generators_for(spec: GroupSpec) -> list[Permutation]:
    if spec.kind == "cyclic":
        return _cyclic_generator(spec.parameters[0])
    if spec.kind == "dihedral":
        return _dihedral_generators(spec.parameters[0])
    if spec.kind == "quaternion":
        return _quaternion_generators(spec.parameters[0])
    if spec.kind == "symmetric":
        return _symmetric_generators(spec.parameters[0])
    if spec.kind == "alternating":
        return _alternating_generators(spec.parameters[0])
    if spec.kind == "psl2":
        return _psl2_7_generators()
    if spec.kind == "gl3":
        return _gl3_2_generators()
    if spec.kind == "perm":
        return list(spec.generators or ())
    raise ValueError(f"unknown spec kind {spec.kind!r}")


@dataclass
class FiniteGroup:
    """Fully enumerated permutation group.

    ``mul_table[i][j]`` is the index of elements[i] * elements[j]; index 0 is
    always the identity.  Instances are immutable by convention and safe to
    share across threads.
    """

    spec: GroupSpec
    degree: int
    elements: list[Permutation]
    mul_table: list[list[int]]
    inv: list[int]
    identity_index: int = 0
    gen_indices: tuple[int, ...] = ()
    _orders: list[int] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def name(self) -> str:
        return self.spec.canonical_text()

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul_table[self.mul_table[g][x]][self.inv[g]]

    def element_order(self, x: int) -> int:
        if self._orders is None:
            self._orders = [0] * self.order
        if self._orders[x] == 0:
            power, k = x, 1
            while power != self.identity_index:
                power = self.mul_table[power][x]
                k += 1
            self._orders[x] = k
        return self._orders[x]

    @cached_property
    def is_abelian(self) -> bool:
        mt = self.mul_table
        return all(mt[a][b] == mt[b][a] for a in self.gen_indices for b in self.gen_indices)


def realize(spec: GroupSpec, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Enumerate the group generated by the spec's generators via BFS closure.

    Raises OrderExceededError if the closure passes ``max_order``.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    raw = _generators_for(spec)
    degree = max((g.degree for g in raw), default=1)
    gens = sorted({g for g in raw if not g.is_identity()}, key=lambda p: p.images)
    ident = Permutation.identity(degree)
    elements = [ident]
    index = {ident.images: 0}
    deriv: list[tuple[int, int]] = [(0, -1)]
    step_rows: list[list[int]] = []
    pos = 0
    while pos < len(elements):
        x = elements[pos]
        row = []
        for gi, g in enumerate(gens):
            y = x * g
            j = index.get(y.images)
            if j is None:
                if len(elements) >= max_order:
                    raise OrderExceededError(
                        f"group closure for {spec.canonical_text()!r} exceeds max_order={max_order}"
                    )
                j = len(elements)
                index[y.images] = j
                elements.append(y)
                deriv.append((pos, gi))
            row.append(j)
        step_rows.append(row)
        pos += 1

    n = len(elements)
    mul = [[0] * n for _ in range(n)]
    for i in range(n):
        row = mul[i]
        row[0] = i
        for j in range(1, n):
            x, gi = deriv[j]
            row[j] = step_rows[row[x]][gi]
    inv = [mul[i].index(0) for i in range(n)]
    gen_indices = tuple(index[g.images] for g in gens)
    return FiniteGroup(spec, degree, elements, mul, inv, 0, gen_indices)


def group_from_text(text: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    return realize(parse_group_spec(text), max_order)
