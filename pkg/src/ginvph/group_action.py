"""Finite groups of simplicial automorphisms given as vertex permutations.

A permutation is a tuple ``p`` with ``p[v]`` the image of vertex ``v``.
Composition follows function notation: ``compose(a, b)[v] == a[b[v]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complex_core import Simplex, SimplicialComplex

Perm = tuple[int, ...]


def as_perm(image: Sequence[int], n: int | None = None) -> Perm:
    p = tuple(int(v) for v in image)
    if n is not None and len(p) != n:
        raise ValueError(f"permutation has length {len(p)}, expected {n}")
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a bijection on 0..{len(p) - 1}: {list(p)}")
    return p


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(a[x] for x in b)


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for v, w in enumerate(a):
        inv[w] = v
    return tuple(inv)


def image(p: Perm, s: Simplex) -> Simplex:
    return tuple(sorted(p[v] for v in s))


def is_automorphism(cx: SimplicialComplex, p: Perm) -> bool:
    if len(p) != cx.vertex_count:
        return False
    index = cx.index
    return all(image(p, s) in index for s in cx)


@dataclass(frozen=True)
class GroupAction:
    """A finite permutation group; the identity is always ``elements[0]``."""

    elements: tuple[Perm, ...]
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elems = tuple(as_perm(e) for e in self.elements)
        if not elems:
            raise ValueError("a group needs at least the identity")
        n = len(elems[0])
        if any(len(e) != n for e in elems):
            raise ValueError("group elements act on different vertex counts")
        members = frozenset(elems)
        if len(members) != len(elems):
            raise ValueError("repeated group element")
        e = identity(n)
        if e not in members:
            raise ValueError("group does not contain the identity")
        for a in elems:
            if inverse(a) not in members:
                raise ValueError("group is not closed under inverses")
            for b in elems:
                if compose(a, b) not in members:
                    raise ValueError("group is not closed under composition")
        elems = (e,) + tuple(x for x in elems if x != e)
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_members", members)

    @classmethod
    def trivial(cls, n: int) -> "GroupAction":
        return cls((identity(n),))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def vertex_count(self) -> int:
        return len(self.elements[0])

    def __contains__(self, p) -> bool:
        return tuple(p) in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def vertex_orbits(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        orbits = []
        for v in range(self.vertex_count):
            if v in seen:
                continue
            orb = tuple(sorted({h[v] for h in self.elements}))
            seen.update(orb)
            orbits.append(orb)
        return orbits


@dataclass(frozen=True)
class GroupSample:
    """Finite list of sampled symmetry elements; need not form a group."""

    elements: tuple[Perm, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(as_perm(e) for e in self.elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def check(self, cx: SimplicialComplex) -> None:
        for i, g in enumerate(self.elements):
            if not is_automorphism(cx, g):
                raise ValueError(f"sample element {i} is not a simplicial automorphism")


class GroupTooLarge(ValueError):
    pass


def enumerate_group(generators: Iterable[Sequence[int]], cap: int = 10_000, n: int | None = None) -> GroupAction:
    """Close ``generators`` under composition.

    ``n`` is needed only when ``generators`` is empty.  Raises
    :class:`GroupTooLarge` once the closure exceeds ``cap`` elements.
    """
    gens = [as_perm(g) for g in generators]
    if gens:
        n = len(gens[0])
        if any(len(g) != n for g in gens):
            raise ValueError("generators act on different vertex counts")
    elif n is None:
        raise ValueError("vertex count required for an empty generator list")
    e = identity(n)
    found = {e}
    order = [e]
    frontier = [e]
    # finite group: closure under composition already contains inverses
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = compose(g, a)
                if c not in found:
                    found.add(c)
                    order.append(c)
                    nxt.append(c)
                    if len(found) > cap:
                        raise GroupTooLarge(f"group order exceeds cap {cap}")
        frontier = nxt
    return GroupAction(tuple(order))


@dataclass
class CheckResult:
    passed: bool
    failures: list[tuple[Perm, Simplex]] = field(default_factory=list)


@dataclass
class ValidationReport:
    automorphism: CheckResult
    freeness: CheckResult
    regularity: CheckResult

    @property
    def ok(self) -> bool:
        return self.automorphism.passed and self.freeness.passed and self.regularity.passed

    @property
    def engine_ok(self) -> bool:
        """Automorphism + freeness, all the orbit-chain engine needs."""
        return self.automorphism.passed and self.freeness.passed

    def summary(self) -> str:
        lines = []
        for name in ("automorphism", "freeness", "regularity"):
            res = getattr(self, name)
            status = "pass" if res.passed else f"FAIL ({len(res.failures)} offending pairs)"
            lines.append(f"{name}: {status}")
            for h, s in res.failures[:5]:
                lines.append(f"  h={list(h)} simplex={list(s)}")
        return "\n".join(lines)


def validate_action(cx: SimplicialComplex, H: GroupAction, max_failures: int = 50) -> ValidationReport:
    if H.vertex_count != cx.vertex_count:
        raise ValueError(
            f"group acts on {H.vertex_count} vertices, complex has {cx.vertex_count}"
        )
    index = cx.index
    auto, free, reg = [], [], []
    for h in H.elements[1:]:
        for s in cx:
            t = image(h, s)
            if t not in index and len(auto) < max_failures:
                auto.append((h, s))
            if t == s and len(free) < max_failures:
                free.append((h, s))
    for s in cx:
        if len(reg) >= max_failures:
            break
        if len(s) < 2:
            continue
        verts = set(s)
        # an element carrying one vertex of s onto another
        for h in H.elements[1:]:
            if any(h[v] in verts and h[v] != v for v in s):
                reg.append((h, s))
                break
    return ValidationReport(
        CheckResult(not auto, auto), CheckResult(not free, free), CheckResult(not reg, reg)
    )


def check_conjugation_closure(H: GroupAction, sample: Iterable[Sequence[int]]) -> tuple[bool, tuple[Perm, Perm] | None]:
    """True iff g h g^-1 lies in H for every sampled g and every h in H.

    On failure the second item is a violating ``(g, h)``.
    """
    for g in sample:
        g = as_perm(g, H.vertex_count)
        g_inv = inverse(g)
        for h in H.elements:
            if compose(compose(g, h), g_inv) not in H:
                return False, (g, h)
    return True, None


def group_to_json(H: GroupAction) -> dict:
    return {"elements": [list(h) for h in H.elements]}


def group_from_json(data: dict, n: int | None = None) -> GroupAction:
    """Parse ``{"elements": [...]}`` or ``{"generators": [...], "cap": M}``."""
    if not isinstance(data, dict):
        raise ValueError("group JSON must be an object")
    if "elements" in data:
        elems = data["elements"]
        if not isinstance(elems, list) or not elems:
            raise ValueError("group JSON: 'elements' must be a non-empty list")
        return GroupAction(tuple(as_perm(e, n) for e in elems))
    if "generators" in data:
        gens = data["generators"]
        if not isinstance(gens, list):
            raise ValueError("group JSON: 'generators' must be a list")
        cap = data.get("cap", 10_000)
        if not isinstance(cap, int) or cap < 1:
            raise ValueError("group JSON: 'cap' must be a positive integer")
        return enumerate_group([as_perm(g, n) for g in gens], cap=cap, n=n)
    raise ValueError("group JSON: expected field 'elements' or 'generators'")


def sample_from_json(data, n: int | None = None) -> GroupSample:
    if isinstance(data, dict):
        if "elements" not in data:
            raise ValueError("group sample JSON: missing field 'elements'")
        data = data["elements"]
    if not isinstance(data, list) or not data:
        raise ValueError("group sample JSON: expected a non-empty list of permutations")
    return GroupSample(tuple(as_perm(e, n) for e in data))
