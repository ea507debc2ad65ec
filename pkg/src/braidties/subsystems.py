"""The monoid of root subsystems of a finite root system.

A root subsystem is stored by its positive part as a bitmask over the
positive roots of the ambient system (in the order of
``CoxeterSystem.positive_roots``).  Negatives are implicit.  The product of
two subsystems is the subsystem generated by their union.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .certificates import CheckResult
from .coxeter import CoxeterError, CoxeterSystem, GroupElement


class SubsystemSpace:
    """Sigma(Phi) for a finite Coxeter system: closure, join, and the W-action."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self.roots = system.positive_roots()
        n = len(self.roots)
        self.size = n
        b = system.backend
        # reflection table on positive roots, signs dropped
        self._refl = [
            [system.root_index(b.reflect(a, r))[0] for r in self.roots] for a in self.roots
        ]
        self._refl_sign = [
            [system.root_index(b.reflect(a, r))[1] for r in self.roots] for a in self.roots
        ]
        self._join: dict[tuple[int, int], int] = {}
        self._closure: dict[int, int] = {0: 0}
        self._perm: dict = {}
        self._monoid: SubsystemMonoid | None = None

    @classmethod
    def of(cls, system: CoxeterSystem) -> "SubsystemSpace":
        space = getattr(system, "_subsystem_space", None)
        if space is None:
            space = cls(system)
            system._subsystem_space = space
        return space

    # -- masks ----------------------------------------------------------------

    def closure_mask(self, mask: int) -> int:
        hit = self._closure.get(mask)
        if hit is not None:
            return hit
        members = [i for i in range(self.size) if mask >> i & 1]
        out = mask
        queue = deque(members)
        while queue:
            i = queue.popleft()
            row = self._refl[i]
            for j in list(members):
                for k in (row[j], self._refl[j][i]):
                    if not out >> k & 1:
                        out |= 1 << k
                        members.append(k)
                        queue.append(k)
        self._closure[mask] = out
        self._closure[out] = out
        return out

    def join_mask(self, a: int, b: int) -> int:
        if a == b or b == 0:
            return a
        if a == 0:
            return b
        if a | b == a:
            return a
        if a | b == b:
            return b
        key = (a, b) if a < b else (b, a)
        hit = self._join.get(key)
        if hit is None:
            hit = self.closure_mask(a | b)
            self._join[key] = hit
        return hit

    def perm(self, w: GroupElement) -> tuple[int, ...]:
        """Action of w on positive roots up to sign, as an index permutation."""
        if w.system is not self.system:
            raise CoxeterError("group element does not act on this root system")
        p = self._perm.get(w.form)
        if p is None:
            act = self.system.backend.apply
            idx = self.system.root_index
            p = tuple(idx(act(w.form, r))[0] for r in self.roots)
            self._perm[w.form] = p
        return p

    @staticmethod
    def permute(perm: Sequence[int], mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << perm[i]
            mask >>= 1
            i += 1
        return out

    def act_mask(self, w: GroupElement, mask: int) -> int:
        return self.permute(self.perm(w), mask)

    def mask_of(self, roots: Iterable) -> int:
        mask = 0
        for r in roots:
            mask |= 1 << self.system.root_index(r)[0]
        return mask

    def simple_system(self, mask: int) -> list[int]:
        """Canonical simple roots of a subsystem: beta whose reflection makes no
        other positive root of the subsystem negative."""
        members = [i for i in range(self.size) if mask >> i & 1]
        out = []
        for i in members:
            signs = self._refl_sign[i]
            if all(signs[j] > 0 for j in members if j != i):
                out.append(i)
        return out

    # -- objects --------------------------------------------------------------

    def subsystem(self, mask: int) -> "RootSubsystem":
        return RootSubsystem(self, mask)

    def empty(self) -> "RootSubsystem":
        return RootSubsystem(self, 0)

    def closure(self, roots: Iterable) -> "RootSubsystem":
        return RootSubsystem(self, self.closure_mask(self.mask_of(roots)))

    def rank_one(self, root) -> "RootSubsystem":
        """<alpha> = {alpha, -alpha}."""
        return RootSubsystem(self, self.mask_of([root]))

    def generator_subsystem(self, i: int) -> "RootSubsystem":
        """<s_i>."""
        return self.rank_one(self.system.simple_root(i))

    def from_json(self, data) -> "RootSubsystem":
        roots = []
        for r in data:
            if isinstance(r, dict):
                roots.append(int(r["angle_index"]))
            else:
                roots.append(tuple(int(c) for c in r))
        return self.closure(roots)

    def root_name(self, i: int) -> str:
        r = self.roots[i]
        if isinstance(r, int):
            return f"r{r}"
        parts = []
        for k, c in enumerate(r):
            if c:
                parts.append(f"a{k + 1}" if c == 1 else f"{c}a{k + 1}")
        return "+".join(parts)

    def mask_name(self, mask: int) -> str:
        if mask == 0:
            return "<>"
        return "<" + ",".join(self.root_name(i) for i in self.simple_system(mask)) + ">"

    def enumerate(self) -> "SubsystemMonoid":
        """All root subsystems, found by growing subsystems one root at a time."""
        if self._monoid is None:
            seen = {0}
            queue = deque([0])
            while queue:
                m = queue.popleft()
                for i in range(self.size):
                    if not m >> i & 1:
                        c = self.closure_mask(m | 1 << i)
                        if c not in seen:
                            seen.add(c)
                            queue.append(c)
            self._monoid = SubsystemMonoid(self, seen)
        return self._monoid


@dataclass(frozen=True)
class RootSubsystem:
    space: SubsystemSpace
    mask: int

    def __post_init__(self):
        if self.space.closure_mask(self.mask) != self.mask:
            raise CoxeterError("root set is not closed under its reflections")

    def __eq__(self, other):
        if not isinstance(other, RootSubsystem):
            return NotImplemented
        return self.space is other.space and self.mask == other.mask

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return self.space.mask_name(self.mask)

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, root):
        idx, _ = self.space.system.root_index(root)
        return bool(self.mask >> idx & 1)

    @property
    def positive_roots(self) -> list:
        return [r for i, r in enumerate(self.space.roots) if self.mask >> i & 1]

    def roots(self) -> list:
        neg = self.space.system.backend.negate
        pos = self.positive_roots
        return pos + [neg(r) for r in pos]

    def join(self, other: "RootSubsystem") -> "RootSubsystem":
        _same(self, other)
        return RootSubsystem(self.space, self.space.join_mask(self.mask, other.mask))

    __mul__ = join

    def act(self, w: GroupElement) -> "RootSubsystem":
        return RootSubsystem(self.space, self.space.act_mask(w, self.mask))

    def simple_system(self) -> list:
        return [self.space.roots[i] for i in self.space.simple_system(self.mask)]

    def to_json(self) -> list:
        rj = self.space.system.backend.root_json
        return [rj(r) for r in self.positive_roots]


def _same(a: RootSubsystem, b: RootSubsystem):
    if a.space is not b.space:
        raise CoxeterError("root subsystems live in different ambient root systems")


def closure(roots: Iterable, system: CoxeterSystem) -> RootSubsystem:
    return SubsystemSpace.of(system).closure(roots)


def join(a: RootSubsystem, b: RootSubsystem) -> RootSubsystem:
    return a.join(b)


def act(w: GroupElement, psi: RootSubsystem) -> RootSubsystem:
    return psi.act(w)


def enumerate_subsystems(system: CoxeterSystem) -> "SubsystemMonoid":
    return SubsystemSpace.of(system).enumerate()


class SubsystemMonoid:
    """A finite submonoid of Sigma(Phi) closed under join (and, when built by
    :func:`generated_submonoid`, under an acting group)."""

    def __init__(self, space: SubsystemSpace, masks: Iterable[int], generators: Iterable[int] = ()):
        self.space = space
        self.masks = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
        self._set = frozenset(self.masks)
        gens = sorted(set(generators), key=lambda m: (bin(m).count("1"), m))
        self.generators = gens or [m for m in self.masks if m]
        self.index = {m: k for k, m in enumerate(self.masks)}

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return (RootSubsystem(self.space, m) for m in self.masks)

    def __contains__(self, item):
        m = item.mask if isinstance(item, RootSubsystem) else item
        return m in self._set

    @classmethod
    def trivial(cls, space: SubsystemSpace | None = None) -> "SubsystemMonoid":
        """The one-element monoid {unit}; ``space`` may be None."""
        return cls(space, [0])

    def __repr__(self):
        where = self.space.system.label if self.space is not None else "-"
        return f"SubsystemMonoid({len(self)} elements in Sigma({where}))"

    @property
    def unit(self) -> int:
        return 0

    def join_table(self) -> list[list[int]]:
        """Indices of products, row-major over the canonical element order."""
        j = self.space.join_mask if self.space is not None else (lambda a, b: a | b)
        return [[self.index[j(a, b)] for b in self.masks] for a in self.masks]

    def is_closed(self, acting: Sequence[GroupElement] = ()) -> bool:
        for a in self.masks:
            for g in acting:
                if self.space.act_mask(g, a) not in self._set:
                    return False
            for b in self.masks:
                if self.space.join_mask(a, b) not in self._set:
                    return False
        return 0 in self._set

    def to_json(self) -> dict:
        table = self.join_table()
        digest = hashlib.sha256(json.dumps(table).encode()).hexdigest()
        if self.space is None:
            return {"ambient": None, "size": len(self), "elements": [[]], "join_table_sha256": digest}
        rj = self.space.system.backend.root_json
        return {
            "ambient": self.space.system.label,
            "size": len(self),
            "elements": [[rj(r) for r in RootSubsystem(self.space, m).positive_roots] for m in self.masks],
            "join_table_sha256": digest,
        }


def generated_submonoid(
    space: SubsystemSpace,
    gens: Iterable,
    acting: Sequence[GroupElement] = (),
) -> SubsystemMonoid:
    """Least submonoid containing ``gens`` that is stable under the group
    generated by ``acting`` (elements of the ambient system)."""
    masks = [g.mask if isinstance(g, RootSubsystem) else int(g) for g in gens]
    perms = [space.perm(g) for g in acting]
    # orbit of the generators
    orbit = set(masks)
    queue = deque(masks)
    while queue:
        x = queue.popleft()
        for p in perms:
            y = space.permute(p, x)
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    elems = {0}
    frontier = deque([0])
    while frontier:
        x = frontier.popleft()
        for g in orbit:
            y = space.join_mask(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return SubsystemMonoid(space, elems, generators=orbit - {0})


def check_mih_condition(
    monoid: SubsystemMonoid,
    tie: dict[int, int],
    action: Callable[[int, int], int],
) -> CheckResult:
    """e_s . x == e_s . (s.x) for all s and all monoid generators x.

    ``tie`` maps generator index -> mask of e_s; ``action(s, mask)`` is the
    action of the simple generator s on E.
    """
    j = monoid.space.join_mask
    checks = 0
    for s, es in sorted(tie.items()):
        if es not in monoid:
            return CheckResult(False, "mih-condition", checks, {"s": s, "reason": "e_s not in E"})
        for x in monoid.generators:
            checks += 1
            sx = action(s, x)
            if j(es, x) != j(es, sx):
                return CheckResult(
                    False,
                    "mih-condition",
                    checks,
                    {"s": s, "x": monoid.space.mask_name(x), "s.x": monoid.space.mask_name(sx)},
                )
    return CheckResult(True, "mih-condition", checks, justification="e_s(1-rho_s)=0 checked on monoid generators")
