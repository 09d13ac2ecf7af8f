"""Materialized finite groups: PSL(2,p), PGL(2,p) and (Z_m x PSL(2,p)):2.

Groups at this scale (order <= ~2*10^4) are kept as complete element lists in
a canonical sorted order, and all queries work on integer element indices,
so handles double as lookup tables.  Handles are immutable once built and are
cached per (family, p, m).

The extended family EXT realizes (Z_m x PSL(2,p)):2 inside Z_m x PGL(2,p)
with the twisted product

    (i, g) * (j, h) = (i + eps(g)*j mod m, g*h),   eps(g) = +1 iff g in PSL,

so that every element outside Z_m x PSL(2,p) inverts the cyclic factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gfproj import (
    GFProjError,
    ProjMatrix,
    all_matrices,
    check_prime,
    in_psl,
    mat_inverse,
    mat_multiply,
)

PSL2 = "psl2"
PGL2 = "pgl2"
EXT = "ext"

FAMILIES = (PSL2, PGL2, EXT)


class GroupError(ValueError):
    """Invalid group parameters or element arguments."""


class BudgetExceeded(RuntimeError):
    """An exhaustive scan was requested beyond the configured size budget."""


def psl_order(p: int) -> int:
    return p * (p - 1) * (p + 1) // 2


def pgl_order(p: int) -> int:
    return p * (p - 1) * (p + 1)


class GroupHandle:
    """A fully materialized group with index-based multiplication.

    ``elements[i]`` is either a ProjMatrix (psl2/pgl2) or an
    (exponent, ProjMatrix) pair (ext), listed in ascending tuple order.
    """

    def __init__(self, family: str, p: int, m: int):
        self.family = family
        self.p = p
        self.m = m
        if family == PSL2:
            self.elements = tuple(g for g in all_matrices(p) if in_psl(g))
        elif family == PGL2:
            self.elements = tuple(all_matrices(p))
        else:
            mats = all_matrices(p)
            self.elements = tuple((i, g) for i in range(m) for g in mats)
        self.order = len(self.elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        if family == EXT:
            self._psl = tuple(in_psl(g) for _, g in self.elements)
            self.identity = self.index[(0, ProjMatrix(1, 0, 0, 1, p))]
        else:
            self._psl = tuple(in_psl(g) for g in self.elements)
            self.identity = self.index[ProjMatrix(1, 0, 0, 1, p)]
        self._orders: dict[int, int] = {}
        self._inverses: list[int] | None = None
        self._involutions: tuple[int, ...] | None = None
        self._pair_orders: dict[tuple[int, int], int] = {}

    # -- element access ----------------------------------------------------

    def matrix_part(self, i: int) -> ProjMatrix:
        return self.elements[i][1] if self.family == EXT else self.elements[i]

    def exponent_part(self, i: int) -> int:
        return self.elements[i][0] if self.family == EXT else 0

    def in_psl_part(self, i: int) -> bool:
        """PSL membership of the matrix part (the twist sign for EXT)."""
        return self._psl[i]

    # -- arithmetic ----------------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        if self.family == EXT:
            e1, g1 = self.elements[i]
            e2, g2 = self.elements[j]
            e = (e1 + e2) % self.m if self._psl[i] else (e1 - e2) % self.m
            return self.index[(e, mat_multiply(g1, g2))]
        return self.index[mat_multiply(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        if self._inverses is None:
            self._inverses = [-1] * self.order
        cached = self._inverses[i]
        if cached >= 0:
            return cached
        if self.family == EXT:
            e, g = self.elements[i]
            gi = mat_inverse(g)
            # (i,g)^-1 = (-eps(g^-1)*i, g^-1); eps(g^-1) = eps(g)
            ei = (-e if self._psl[i] else e) % self.m
            j = self.index[(ei, gi)]
        else:
            j = self.index[mat_inverse(self.elements[i])]
        self._inverses[i] = j
        self._inverses[j] = i
        return j

    def element_order(self, i: int) -> int:
        cached = self._orders.get(i)
        if cached is not None:
            return cached
        n = 1
        acc = i
        while acc != self.identity:
            acc = self.mul(acc, i)
            n += 1
        self._orders[i] = n
        return n

    def is_involution(self, i: int) -> bool:
        return i != self.identity and self.mul(i, i) == self.identity

    def conjugate(self, i: int, g: int) -> int:
        return self.mul(self.mul(self.inv(g), i), g)

    def involutions(self) -> tuple[int, ...]:
        if self._involutions is None:
            self._involutions = tuple(
                i for i in range(self.order) if self.is_involution(i)
            )
        return self._involutions

    def pair_order(self, i: int, j: int) -> int:
        """Order of elements[i] * elements[j], memoized."""
        key = (i, j) if i <= j else (j, i)
        cached = self._pair_orders.get(key)
        if cached is None:
            # |uv| = |vu| always, so one entry serves both orders
            cached = self.element_order(self.mul(key[0], key[1]))
            self._pair_orders[key] = cached
        return cached

    # -- serialization -------------------------------------------------------

    def descriptor(self) -> dict:
        return {"family": self.family, "p": self.p, "m": self.m}

    def element_json(self, i: int) -> dict:
        g = self.matrix_part(i)
        rec = {"mat": list(g.entries()), "p": self.p}
        if self.family == EXT:
            rec["exp"] = self.exponent_part(i)
        return rec

    def element_from_json(self, rec: dict) -> int:
        from .gfproj import proj_matrix

        try:
            a, b, c, d = rec["mat"]
            g = proj_matrix(a, b, c, d, self.p)
        except (GFProjError, TypeError, ValueError) as exc:
            raise GroupError(f"bad element record {rec}: {exc}") from exc
        key = (rec.get("exp", 0) % self.m, g) if self.family == EXT else g
        if key not in self.index:
            raise GroupError(f"element {rec} not in {self.family}(2,{self.p})")
        return self.index[key]

    def __repr__(self) -> str:
        return f"GroupHandle({self.family}, p={self.p}, m={self.m}, order={self.order})"


_CACHE: dict[tuple[str, int, int], GroupHandle] = {}


def build_group(family: str, p: int, m: int = 1) -> GroupHandle:
    """Materialize a group of the given family.

    psl2 / pgl2 require m = 1.  ext requires p = 3 (mod 4), m odd > 1 and
    gcd(m, p) = 1.  Handles are cached and shared; they are immutable.
    """
    if family not in FAMILIES:
        raise GroupError(f"unknown family {family!r}, expected one of {FAMILIES}")
    try:
        check_prime(p)
    except GFProjError as exc:
        raise GroupError(str(exc)) from exc
    if family in (PSL2, PGL2):
        if m != 1:
            raise GroupError(f"family {family} takes m = 1, got m = {m}")
    else:
        if p % 4 != 3:
            raise GroupError(f"extended family needs p = 3 (mod 4), got p = {p}")
        if m <= 1:
            raise GroupError(f"extended family needs m > 1, got m = {m}")
        if m % 2 == 0:
            raise GroupError(f"extended family needs odd m, got m = {m}")
        if math.gcd(m, p) != 1:
            raise GroupError(f"m = {m} must be coprime to p = {p}")
    key = (family, p, m)
    handle = _CACHE.get(key)
    if handle is None:
        handle = GroupHandle(family, p, m)
        expected = {PSL2: psl_order(p), PGL2: pgl_order(p), EXT: m * pgl_order(p)}
        assert handle.order == expected[family], (handle.order, expected[family])
        _CACHE[key] = handle
    return handle


def involutions(G: GroupHandle) -> tuple[int, ...]:
    """All elements of order exactly 2, in canonical order."""
    return G.involutions()


def dihedral_order(G: GroupHandle, u: int, v: int) -> int:
    """Order of the dihedral group generated by two distinct involutions.

    Two distinct involutions always generate a dihedral group of order twice
    the order of their product; order 4 (the Klein group) counts as dihedral.
    """
    if u == v:
        raise GroupError("dihedral_order needs two distinct involutions")
    if not G.is_involution(u) or not G.is_involution(v):
        raise GroupError("dihedral_order arguments must be involutions")
    return 2 * G.pair_order(u, v)


@dataclass(frozen=True)
class SubgroupHandle:
    group: GroupHandle
    members: tuple[int, ...]
    structure: str

    @property
    def order(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CosetPartition:
    subgroup: SubgroupHandle
    blocks: tuple[tuple[int, ...], ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(block[0] for block in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


def _closure(G: GroupHandle, gens: Sequence[int], stop_above: int | None = None) -> set[int] | None:
    """Right-multiplication closure of the identity under gens.

    With ``stop_above`` set, returns None as soon as the closure is known to
    exceed that many elements (then it can only be the whole group when
    stop_above >= the largest proper subgroup order).
    """
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = G.mul(s, g)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
                    if stop_above is not None and len(seen) > stop_above:
                        return None
        frontier = nxt
    return seen


def _structure_tag(G: GroupHandle, members: tuple[int, ...]) -> str:
    n = len(members)
    if any(G.element_order(i) == n for i in members):
        return f"cyclic({n})"
    if n % 2 == 0:
        invs = [i for i in members if G.is_involution(i)]
        for a in range(len(invs)):
            for b in range(a + 1, len(invs)):
                if 2 * G.pair_order(invs[a], invs[b]) == n:
                    return f"dihedral({n})"
    return "other"


def subgroup_closure(G: GroupHandle, gens: Iterable[int]) -> SubgroupHandle:
    """Smallest subgroup containing gens, with a cyclic/dihedral structure tag."""
    gens = sorted(set(gens))
    if not gens:
        raise GroupError("subgroup_closure needs at least one generator")
    if any(not 0 <= g < G.order for g in gens):
        raise GroupError("generator index out of range")
    members = tuple(sorted(_closure(G, gens)))
    return SubgroupHandle(G, members, _structure_tag(G, members))


def generates(G: GroupHandle, gens: Iterable[int]) -> bool:
    """True iff the closure of gens is the whole group.

    Any proper subgroup has at most half the elements, so the breadth first
    closure stops as soon as it passes |G|/2.
    """
    gens = sorted(set(gens))
    if not gens:
        return False
    closed = _closure(G, gens, stop_above=G.order // 2)
    return closed is None or len(closed) == G.order


def right_cosets(G: GroupHandle, H: SubgroupHandle) -> CosetPartition:
    """Partition of G into right cosets Hg, blocks ordered by least member."""
    if H.group is not G:
        raise GroupError("subgroup belongs to a different group handle")
    if G.identity not in H.members:
        raise GroupError("subgroup must contain the identity")
    if G.order % len(H.members):
        raise GroupError("member count does not divide the group order")
    assigned = bytearray(G.order)
    blocks = []
    for g in range(G.order):
        if assigned[g]:
            continue
        block = tuple(sorted(G.mul(h, g) for h in H.members))
        if len(block) != len(H.members):
            raise GroupError("members are not closed under multiplication")
        for t in block:
            assigned[t] = 1
        blocks.append(block)
    return CosetPartition(H, tuple(blocks))


def conjugacy_class(G: GroupHandle, g: int) -> tuple[int, ...]:
    """The orbit of g under conjugation by the whole group."""
    if not 0 <= g < G.order:
        raise GroupError("element index out of range")
    return tuple(sorted({G.conjugate(g, h) for h in range(G.order)}))


def conjugacy_class_reps(G: GroupHandle) -> tuple[int, ...]:
    """Least-index representatives of all conjugacy classes."""
    seen = bytearray(G.order)
    reps = []
    for g in range(G.order):
        if seen[g]:
            continue
        reps.append(g)
        for h in conjugacy_class(G, g):
            seen[h] = 1
    return tuple(reps)
