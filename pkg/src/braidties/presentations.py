"""Braids-and-ties presentations and their verification inside the Marin
construction.

A presentation is a list of relations ``lhs = rhs`` written in the
expression language of :meth:`MarinAlgebra.element_from_word`: ``g1``,
``e1``, ``f2``, Laurent scalars such as ``(u-1)``, inverses ``g1^-1`` and
group actions ``{s1 s2}.e1``.
"""

from __future__ import annotations

import re
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .certificates import CheckResult
from .coxeter import INF, CoxeterError, CoxeterSystem
from .juyumaya import CatalogEntry, catalog, juyumaya_datum
from .marin import AlgebraElement, MarinAlgebra, MarinDatum
from .scalars import LaurentPoly, MonoidAlgebra, ParameterMap, QuotientRing
from .subsystems import SubsystemSpace, generated_submonoid

KINDS = ("typeA", "typeA-2param", "typeB", "typeD", "doubled", "marin-CW")


class PresentationError(CoxeterError):
    pass


@dataclass(frozen=True)
class Relation:
    tag: str
    name: str
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"tag": self.tag, "name": self.name, "lhs": self.lhs, "rhs": self.rhs}

    def __str__(self):
        return f"({self.tag}) {self.lhs} = {self.rhs}"


@dataclass
class Presentation:
    kind: str
    arg: object
    system: str
    generators: list[str]
    relations: list[Relation]
    params: dict[str, str] = field(default_factory=dict)
    derived: list[str] = field(default_factory=list)

    _TOKEN = re.compile(r"\b([gef]\d+'*)|\b(e)\b")

    def validate(self) -> None:
        declared = set(self.generators) | set(self.derived)
        for rel in self.relations:
            for side in (rel.lhs, rel.rhs):
                stripped = re.sub(r"\{[^}]*\}", "", side)
                for m in self._TOKEN.finditer(stripped):
                    tok = m.group(1) or m.group(2)
                    if tok not in declared:
                        raise PresentationError(f"relation {rel.tag} uses undeclared generator {tok!r}")

    def tags(self) -> list[str]:
        seen = []
        for r in self.relations:
            if r.tag not in seen:
                seen.append(r.tag)
        return seen

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "arg": self.arg,
            "system": self.system,
            "generators": list(self.generators),
            "derived": list(self.derived),
            "params": dict(self.params),
            "relations": [r.to_json() for r in self.relations],
        }

    def to_text(self) -> str:
        lines = [f"{self.kind} {self.arg}: {self.system}",
                 "generators: " + ", ".join(self.generators + self.derived)]
        if self.params:
            lines.append("parameters: " + ", ".join(f"{k} -> {v}" for k, v in self.params.items()))
        lines.extend(str(r) for r in self.relations)
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# diagram helpers


def diagram_distance(W: CoxeterSystem) -> list[list[int]]:
    """Graph distance in the Coxeter diagram (edges where m != 2)."""
    n = W.rank
    out = []
    for a in range(n):
        d = [-1] * n
        d[a] = 0
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in range(n):
                if y != x and W.m(x, y) != 2 and d[y] < 0:
                    d[y] = d[x] + 1
                    queue.append(y)
        out.append([x if x >= 0 else n + 1 for x in d])
    return out


def _idx(W: CoxeterSystem, s: int) -> str:
    name = W.names[s]
    return name[1:] if name.startswith("s") else name


def _braid(a: str, b: str, m: int) -> tuple[str, str]:
    left = " ".join((a, b)[k % 2] for k in range(m))
    right = " ".join((b, a)[k % 2] for k in range(m))
    return left, right


def _conjugators(W: CoxeterSystem, tie: Mapping[int, int], acting) -> dict[int, tuple]:
    """orbit mask -> (word, j) with word.e_j = mask, shortest words first."""
    sp = SubsystemSpace.of(acting[0].system) if acting else None
    perms = [sp.perm(g) for g in acting]
    out: dict[int, tuple] = {}
    queue = deque()
    for j in range(W.rank):
        if tie[j] not in out:
            out[tie[j]] = ((), j)
            queue.append(tie[j])
    while queue:
        x = queue.popleft()
        word, j = out[x]
        for s, p in enumerate(perms):
            y = sp.permute(p, x)
            if y not in out:
                out[y] = ((s,) + word, j)
                queue.append(y)
    return out


def _coeff_expr(W: CoxeterSystem, word: tuple, j: int) -> str:
    e = "e" + _idx(W, j)
    if not word:
        return e
    return "{" + W.format_word(word) + "}." + e


# ---------------------------------------------------------------------------
# relation lists


def _type_a_relations(W: CoxeterSystem, quad: str, *, prefix: str = "aa", d=None) -> list[Relation]:
    """The braids-and-ties relations shared by types A and D; ``d`` is the
    diagram distance."""
    n = W.rank
    d = d or diagram_distance(W)
    g = ["g" + _idx(W, s) for s in range(n)]
    e = ["e" + _idx(W, s) for s in range(n)]
    rels = []
    t = lambda k: f"{prefix}{k}"  # noqa: E731
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] > 1:
                rels.append(Relation(t(1), f"commute {g[i]},{g[j]}", f"{g[i]} {g[j]}", f"{g[j]} {g[i]}"))
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] == 1:
                lhs, rhs = _braid(g[i], g[j], W.m(i, j))
                rels.append(Relation(t(2), f"braid {g[i]},{g[j]}", lhs, rhs))
    for i in range(n):
        rels.append(Relation(t(3), f"quadratic {g[i]}", f"{g[i]}^2", quad.format(g=g[i], e=e[i], i=i)))
    for i in range(n):
        for j in range(n):
            if d[i][j] != 1:
                rels.append(Relation(t(33), f"{g[i]} {e[j]} commute", f"{g[i]} {e[j]}", f"{e[j]} {g[i]}"))
    for i in range(n):
        for j in range(n):
            if d[i][j] == 1:
                rels.append(Relation(t(4), f"{g[j]} {g[i]} {e[j]} twist", f"{g[j]} {g[i]} {e[j]}",
                                     f"{e[i]} {g[j]} {g[i]}"))
    for i in range(n):
        for j in range(i + 1, n):
            rels.append(Relation(t(5), f"{e[i]},{e[j]} commute", f"{e[i]} {e[j]}", f"{e[j]} {e[i]}"))
    for i in range(n):
        rels.append(Relation(t(6), f"{e[i]} idempotent", f"{e[i]}^2", e[i]))
    for i in range(n):
        for j in range(n):
            if d[i][j] == 1:
                rels.append(Relation(t(7), f"{e[j]} {e[i]} {g[j]} left", f"{e[j]} {e[i]} {g[j]}",
                                     f"{e[i]} {g[j]} {e[i]}"))
                rels.append(Relation(t(7), f"{e[j]} {e[i]} {g[j]} right", f"{e[i]} {g[j]} {e[i]}",
                                     f"{g[j]} {e[i]} {e[j]}"))
    return rels


def _w_families(W: CoxeterSystem, orbit: Mapping[int, tuple], tags: Sequence[str]) -> list[Relation]:
    """The relations quantified over group elements, one instance per
    distinct value w.e_j (the relations only see that value)."""
    n = W.rank
    sp_items = sorted(orbit.items(), key=lambda kv: (len(kv[1][0]), kv[1]))
    exprs = [_coeff_expr(W, word, j) for _, (word, j) in sp_items]
    rels = []
    for i in range(n):
        gi = "g" + _idx(W, i)
        si = W.names[i]
        for _, (word, j) in sp_items:
            c = _coeff_expr(W, word, j)
            sc = "{" + " ".join((si,) + tuple(W.names[x] for x in word)) + "}." + "e" + _idx(W, j)
            rels.append(Relation(tags[0], f"{gi} moves {c}", f"{gi} {c}", f"{sc} {gi}"))
    for a in range(len(exprs)):
        for b in range(a + 1, len(exprs)):
            rels.append(Relation(tags[1], "ties commute", f"{exprs[a]} {exprs[b]}", f"{exprs[b]} {exprs[a]}"))
    for c in exprs:
        rels.append(Relation(tags[2], f"{c} idempotent", f"{c}^2", c))
    for i in range(n):
        ei = "e" + _idx(W, i)
        si = W.names[i]
        for _, (word, j) in sp_items:
            c = _coeff_expr(W, word, j)
            sc = "{" + " ".join((si,) + tuple(W.names[x] for x in word)) + "}." + "e" + _idx(W, j)
            rels.append(Relation(tags[3], f"{ei} absorbs {si}", f"{ei} {c}", f"{ei} {sc}"))
    return rels


def _type_b_relations(n: int) -> list[Relation]:
    g = [None] + [f"g{i}" for i in range(1, n + 1)]
    e = [None] + [f"e{i}" for i in range(1, n + 1)]
    f = [None] + [f"f{i}" for i in range(1, n + 1)]
    rels = []
    ex12 = lambda i, j: {i, j} == {1, 2}  # noqa: E731
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if abs(i - j) > 1:
                rels.append(Relation("rrB1", f"commute {g[i]},{g[j]}", f"{g[i]} {g[j]}", f"{g[j]} {g[i]}"))
    if n >= 2:
        rels.append(Relation("rrB2", "braid g1,g2", "g1 g2 g1 g2", "g2 g1 g2 g1"))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if abs(i - j) == 1 and not ex12(i, j):
                rels.append(Relation("rrB3", f"braid {g[i]},{g[j]}", f"{g[i]} {g[j]} {g[i]}", f"{g[j]} {g[i]} {g[j]}"))
    for i in range(1, n + 1):
        p = "v" if i == 1 else "u"
        rels.append(Relation("rrB4", f"quadratic {g[i]}", f"{g[i]}^2", f"1 + ({p}-1) {e[i]} (1 - {g[i]})"))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if abs(i - j) != 1 or (i, j) == (1, 2):
                rels.append(Relation("rrB5", f"{g[i]} {e[j]} commute", f"{g[i]} {e[j]}", f"{e[j]} {g[i]}"))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if abs(i - j) == 1 and not ex12(i, j):
                rels.append(Relation("rrB6", f"{g[j]} {g[i]} {e[j]} twist", f"{g[j]} {g[i]} {e[j]}",
                                     f"{e[i]} {g[j]} {g[i]}"))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append(Relation("rrB7", f"{e[i]},{e[j]} commute", f"{e[i]} {e[j]}", f"{e[j]} {e[i]}"))
    for i in range(1, n + 1):
        rels.append(Relation("rrB8", f"{e[i]} idempotent", f"{e[i]}^2", e[i]))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if abs(i - j) == 1 and not ex12(i, j):
                rels.append(Relation("rrB9", f"{e[j]} {e[i]} {g[j]} left", f"{e[j]} {e[i]} {g[j]}",
                                     f"{e[i]} {g[j]} {e[i]}"))
                rels.append(Relation("rrB9", f"{e[j]} {e[i]} {g[j]} right", f"{e[i]} {g[j]} {e[i]}",
                                     f"{g[j]} {e[i]} {e[j]}"))
    if n >= 2:
        rels.append(Relation("rrB10", "e1 e2 g2 left", "e1 e2 g2", "e2 g2 e1"))
        rels.append(Relation("rrB10", "e1 e2 g2 right", "e2 g2 e1", "g2 e1 e2"))
    rels.append(Relation("rrB11", "f1 is e1", "f1", "e1"))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == 1 or j not in (i - 1, i):
                rels.append(Relation("rrB12", f"{g[i]} {f[j]} commute", f"{g[i]} {f[j]}", f"{f[j]} {g[i]}"))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rels.append(Relation("rrB13", f"{e[i]} {f[j]} commute", f"{e[i]} {f[j]}", f"{f[j]} {e[i]}"))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append(Relation("rrB14", f"{f[i]},{f[j]} commute", f"{f[i]} {f[j]}", f"{f[j]} {f[i]}"))
    for i in range(2, n + 1):
        rels.append(Relation("rrB15", f"{g[i]} {f[i - 1]} shift", f"{g[i]} {f[i - 1]}", f"{f[i]} {g[i]}"))
    for i in range(2, n + 1):
        rels.append(Relation("rrB16", f"{g[i]} {f[i]} shift", f"{g[i]} {f[i]}", f"{f[i - 1]} {g[i]}"))
    for i in range(1, n):
        rels.append(Relation("rrB17", f"{e[i + 1]} {f[i]} swap", f"{e[i + 1]} {f[i]}", f"{e[i + 1]} {f[i + 1]}"))
    for i in range(1, n):
        rels.append(Relation("rrB18", f"{e[i + 1]} {f[i]} pair", f"{e[i + 1]} {f[i]}", f"{f[i + 1]} {f[i]}"))
    return rels


# ---------------------------------------------------------------------------
# construction


@dataclass
class Construction:
    """A Marin algebra together with the names used by a presentation."""

    kind: str
    arg: object
    algebra: MarinAlgebra
    env: dict
    entry: CatalogEntry | None = None

    @property
    def datum(self) -> MarinDatum:
        return self.algebra.datum


def _rank_arg(kind: str, arg, least: int) -> int:
    try:
        n = int(arg)
    except (TypeError, ValueError):
        raise PresentationError(f"{kind} needs an integer rank, got {arg!r}") from None
    if n < least:
        raise PresentationError(f"{kind} needs rank >= {least}, got {n}")
    return n


def _default_arg(kind: str):
    return {"doubled": "G2", "marin-CW": "A2", "typeA": 3, "typeA-2param": 3, "typeB": 2, "typeD": 4}.get(kind)


def build_algebra(kind: str, arg=None) -> Construction:
    """The Marin algebra whose relations ``emit_presentation(kind, arg)`` lists.

    typeA n: identity map on A_{n-1}.  typeB n: B_n -> A_n.  typeD n: the
    diagram D_{1',1'',2..n} -> A_n.  doubled X: terminal map on X.
    marin-CW X: identity map on X.
    """
    arg = _default_arg(kind) if arg is None else arg
    if kind in ("typeA", "typeA-2param"):
        n = _rank_arg(kind, arg, 2)
        entry = catalog("identity", f"A{n - 1}")
        if kind == "typeA":
            datum = juyumaya_datum(entry.phi, entry.tie, ParameterMap.uniform(entry.source, "u"),
                                   name=f"E_{n}")
        else:
            datum = juyumaya_datum(entry.phi, entry.tie, two_parameter=True, name=f"E_{n}(u,v)")
    elif kind == "typeB":
        n = _rank_arg(kind, arg, 2)
        entry = catalog("B-to-A", n)
        W = entry.source
        params = ParameterMap(W, {s: LaurentPoly.var("v" if s == 0 else "u") for s in range(W.rank)})
        datum = juyumaya_datum(entry.phi, entry.tie, params, name=f"E^B_{n}")
    elif kind == "typeD":
        n = _rank_arg(kind, arg, 3)
        entry = catalog("D-to-A", n)
        datum = juyumaya_datum(entry.phi, entry.tie, ParameterMap.uniform(entry.source, "u"),
                               name=f"E^D_{n}")
    elif kind == "doubled":
        entry = catalog("terminal", str(arg))
        datum = juyumaya_datum(entry.phi, entry.tie, ParameterMap.per_class(entry.source),
                               name=f"doubled({arg})")
    elif kind == "marin-CW":
        entry = catalog("identity", str(arg))
        datum = juyumaya_datum(entry.phi, entry.tie, ParameterMap.per_class(entry.source),
                               name=f"C_W({arg})")
    else:
        raise PresentationError(f"unknown presentation kind {kind!r}; known: {', '.join(KINDS)}")
    alg = datum.marin_algebra()
    env = {}
    if kind == "doubled":
        env["e"] = alg.tie(0)
    if kind == "typeB":
        for i, f in enumerate(define_f_elements(alg, entry.source.rank), start=1):
            env[f"f{i}"] = f
    return Construction(kind, arg, alg, env, entry)


def define_f_elements(alg: MarinAlgebra, n: int) -> list[AlgebraElement]:
    """f_1 = e_1 and f_i = s_i . f_{i-1}."""
    W = alg.system
    if n > W.rank:
        raise PresentationError(f"only {W.rank} generators available")
    out = [alg.tie(0)]
    for i in range(1, n):
        c = out[-1].as_coefficient().act(W.gens[i])
        out.append(alg.coeff(c))
    return out


def emit_presentation(kind: str, arg=None, *, full: bool = False) -> Presentation:
    """Relation list for ``kind``; ``full`` adds the families quantified
    over group elements (types A and B)."""
    arg = _default_arg(kind) if arg is None else arg
    if kind in ("typeA", "typeA-2param"):
        n = _rank_arg(kind, arg, 2)
        from .coxeter import build_system
        W = build_system(f"A{n - 1}")
        quad = "1 + (u-1) {e} (1 - {g})" if kind == "typeA" else "1 + (u-1) {e} + (v-1) {e} {g}"
        rels = _type_a_relations(W, quad)
        if kind == "typeA-2param":
            rels = [Relation("newq", r.name, r.lhs, r.rhs) if r.tag == "aa3" else r for r in rels]
        if full:
            entry = catalog("identity", f"A{n - 1}")
            orbit = _conjugators(W, entry.tie.values, [entry.phi(g) for g in entry.source.gens])
            rels += _w_families(W, orbit, ("a4", "a5", "a6", "a7"))
        params = {"s*": "u"} if kind == "typeA" else {"b": "1+(u-1)e", "c": "1-(v-1)e"}
        p = Presentation(kind, n, f"A{n - 1}", _gens(W), rels, params)
    elif kind == "typeB":
        n = _rank_arg(kind, arg, 2)
        from .coxeter import build_system
        W = build_system(f"B{n}")
        rels = _type_b_relations(n)
        if full:
            entry = catalog("B-to-A", n)
            orbit = _conjugators(W, entry.tie.values, [entry.phi(g) for g in entry.source.gens])
            rels += _w_families(W, orbit, ("rB6", "rB7", "rB8", "rB9"))
        p = Presentation(kind, n, f"B{n}", _gens(W), rels, {"s1": "v", "s2..": "u"},
                         derived=[f"f{i}" for i in range(1, n + 1)])
    elif kind == "typeD":
        n = _rank_arg(kind, arg, 3)
        entry = catalog("D-to-A", n)
        W = entry.source
        rels = _type_a_relations(W, "1 + (u-1) {e} (1 - {g})", prefix="D")
        rels.append(Relation("D8", "e1' is e1''", "e1'", "e1''"))
        p = Presentation(kind, n, f"D{n + 1}", _gens(W), rels, {"s*": "u"})
    elif kind == "doubled":
        entry = catalog("terminal", str(arg))
        W = entry.source
        params = ParameterMap.per_class(W)
        rels = []
        for i in range(W.rank):
            for j in range(i + 1, W.rank):
                m = W.m(i, j)
                if m != INF:
                    lhs, rhs = _braid("g" + _idx(W, i), "g" + _idx(W, j), m)
                    rels.append(Relation("dbl1", f"braid g{_idx(W, i)},g{_idx(W, j)}", lhs, rhs))
        for i in range(W.rank):
            g = "g" + _idx(W, i)
            rels.append(Relation("dbl2", f"quadratic {g}", f"{g}^2", f"1 + ({params[i]}-1) e (1 - {g})"))
        for i in range(W.rank):
            g = "g" + _idx(W, i)
            rels.append(Relation("dbl3", f"{g} e commute", f"{g} e", f"e {g}"))
        rels.append(Relation("dbl4", "e idempotent", "e^2", "e"))
        p = Presentation(kind, arg, W.label, ["g" + _idx(W, i) for i in range(W.rank)] + ["e"], rels,
                         {W.names[s]: str(params[s]) for s in range(W.rank)})
    elif kind == "marin-CW":
        entry = catalog("identity", str(arg))
        W = entry.source
        params = ParameterMap.per_class(W)
        rels = []
        for i in range(W.rank):
            for j in range(i + 1, W.rank):
                m = W.m(i, j)
                if m != INF:
                    lhs, rhs = _braid("g" + _idx(W, i), "g" + _idx(W, j), m)
                    rels.append(Relation("cw1", f"braid g{_idx(W, i)},g{_idx(W, j)}", lhs, rhs))
        for i in range(W.rank):
            g, e = "g" + _idx(W, i), "e" + _idx(W, i)
            rels.append(Relation("cw2", f"quadratic {g}", f"{g}^2", f"1 + ({params[i]}-1) {e} (1 - {g})"))
        orbit = _conjugators(W, entry.tie.values, list(entry.target.gens))
        rels += _w_families(W, orbit, ("cw3", "cw4", "cw5", "cw6"))
        p = Presentation(kind, arg, W.label, _gens(W), rels, {W.names[s]: str(params[s]) for s in range(W.rank)})
    else:
        raise PresentationError(f"unknown presentation kind {kind!r}; known: {', '.join(KINDS)}")
    p.validate()
    return p


def _gens(W: CoxeterSystem) -> list[str]:
    return ["g" + _idx(W, s) for s in range(W.rank)] + ["e" + _idx(W, s) for s in range(W.rank)]


# ---------------------------------------------------------------------------
# verification


@dataclass
class RelationStatus:
    relation: Relation
    ok: bool
    difference: str
    hecke_ok: bool | None = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {**self.relation.to_json(), "ok": self.ok, "difference": self.difference}
        if self.hecke_ok is not None:
            out["hecke_ok"] = self.hecke_ok
        return out


@dataclass
class VerificationReport:
    kind: str
    arg: object
    system: str
    dimension: int
    monoid_size: int
    group_order: int | None
    statuses: list[RelationStatus]
    free: CheckResult | None = None
    seconds: float = 0.0
    extra: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (all(s.ok and s.hecke_ok is not False for s in self.statuses)
                and (self.free is None or self.free.ok) and all(c.ok for c in self.extra))

    def failures(self) -> list[RelationStatus]:
        return [s for s in self.statuses if not s.ok or s.hecke_ok is False]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "arg": self.arg,
            "system": self.system,
            "ok": self.ok,
            "dimension": self.dimension,
            "monoid_size": self.monoid_size,
            "group_order": self.group_order,
            "free_condition": self.free.to_json() if self.free else None,
            "relations": [s.to_json() for s in self.statuses],
            "checks": [c.to_json() for c in self.extra],
        }

    def to_text(self) -> str:
        lines = []
        for s in self.statuses:
            mark = "ok  " if s.ok else "FAIL"
            line = f"{mark} {s.relation}"
            if not s.ok:
                line += f"   difference: {s.difference}"
            if s.hecke_ok is False:
                line += "   (Hecke images differ)"
            lines.append(line)
        for c in self.extra:
            lines.append(c.line())
        if self.free is not None:
            lines.append(self.free.line())
        held = sum(1 for s in self.statuses if s.ok)
        lines.append(f"{self.kind} {self.arg}: {held}/{len(self.statuses)} relations hold")
        return "\n".join(lines)


def verify_presentation(p: Presentation, construction: Construction | None = None, *, threads: int = 1,
                        hecke: bool = True) -> VerificationReport:
    """Evaluate both sides of every relation to normal form and compare."""
    t0 = time.perf_counter()
    con = construction or build_algebra(p.kind, p.arg)
    alg = con.algebra
    env = con.env
    known = set(alg.default_env()) | set(env)
    for g in list(p.generators) + list(p.derived):
        if g not in known:
            raise PresentationError(f"generator {g!r} has no image in the algebra")
    free = con.datum.check_free_condition()
    use_hecke = hecke and not con.datum.generic
    H = alg._hecke() if use_hecke else None

    def run(rel: Relation) -> RelationStatus:
        start = time.perf_counter()
        lhs = alg.element_from_word(rel.lhs, env)
        rhs = alg.element_from_word(rel.rhs, env)
        diff = lhs - rhs
        hk = None
        if use_hecke:
            hk = alg.hecke_image(lhs, H) == alg.hecke_image(rhs, H)
        return RelationStatus(rel, diff.is_zero(), str(diff), hk, time.perf_counter() - start)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            statuses = list(pool.map(run, p.relations))
    else:
        statuses = [run(r) for r in p.relations]
    W = alg.system
    return VerificationReport(p.kind, p.arg, p.system, con.datum.dimension(), len(con.datum.algebra.monoid),
                              W.order() if W.is_finite else None, statuses, free, time.perf_counter() - t0)


def corrupt(p: Presentation, relation: Relation) -> Presentation:
    """A copy of ``p`` with one extra (usually false) relation."""
    return Presentation(p.kind, p.arg, p.system, list(p.generators), p.relations + [relation], dict(p.params),
                        list(p.derived))


def parse_relations(text: str, tag: str = "custom") -> list[Relation]:
    """``lhs = rhs`` per line; ``#`` starts a comment.  A leading
    ``(tag)`` names the relation."""
    out = []
    for k, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name = tag
        m = re.match(r"^\(([^)]*)\)\s*(.*)$", line)
        if m and "=" in m.group(2):
            name, line = m.group(1), m.group(2)
        parts = line.split("=")
        if len(parts) < 2:
            raise PresentationError(f"line {k}: expected 'lhs = rhs'")
        for a, b in zip(parts, parts[1:]):
            out.append(Relation(name, f"line {k}", a.strip(), b.strip()))
    return out


# ---------------------------------------------------------------------------
# rescaling


def rescaling_check(n: int = 3) -> VerificationReport:
    """The two-parameter algebra E_n(u,v) over Q(u,v)[delta].

    Checks, for every generator s with lambda_s = 1 + delta e_s and
    tau = 1 + delta:
      * (1+(u-1)e)lambda^2 - (v-1)e lambda - 1 = 0,
      * e lambda = tau e,
      * gt = lambda g satisfies gt^2 = 1 + (v-1)tau e + (v-1)tau e gt, so
        h = -gt satisfies h^2 = 1 + (U-1)e(1-h) with U = 1 + (v-1)tau,
      * lambda is equivariant along odd edges and the gt satisfy the braid
        relations.
    """
    t0 = time.perf_counter()
    n = _rank_arg("rescaling", n, 2)
    entry = catalog("identity", f"A{n - 1}")
    W = entry.source
    Q = QuotientRing.delta("u", "v", "delta")
    sp = SubsystemSpace.of(entry.target)
    E = generated_submonoid(sp, entry.tie.values.values(), [entry.phi(g) for g in W.gens])
    A = MonoidAlgebra(E, hom=entry.phi, reducer=Q)
    datum = MarinDatum.two_parameter(W, A, entry.tie.values, name=f"E_{n}(u,v)[delta]")
    alg = datum.marin_algebra()
    u, v, delta = LaurentPoly.var("u"), LaurentPoly.var("v"), LaurentPoly.var("delta")
    tau = delta + 1
    checks: list[CheckResult] = []
    lam = {}
    for s in range(W.rank):
        e = A.basis(entry.tie[s])
        lam[s] = A.one + e * delta
        poly = (A.one + e * (u - 1)) * lam[s] * lam[s] - e * (v - 1) * lam[s] - A.one
        checks.append(CheckResult(poly.is_zero(), f"lambda quadratic s{s + 1}", 1, None if poly.is_zero()
                                  else {"residue": str(poly)}))
        el = e * lam[s] - e * tau
        checks.append(CheckResult(el.is_zero(), f"e lambda = tau e s{s + 1}", 1, None if el.is_zero()
                                  else {"residue": str(el)}))
    gt = {s: alg.coeff(lam[s]) * alg.gen(s) for s in range(W.rank)}
    statuses = []
    for s in range(W.rank):
        e = alg.tie(s)
        k = alg.coeff((v - 1) * tau)
        lhs = gt[s] * gt[s]
        rhs = alg.coeff(A.one) + k * e + k * e * gt[s]
        diff = lhs - rhs
        rel = Relation("rescale", f"rescaled quadratic g{s + 1}", f"(lambda g{s + 1})^2",
                       f"1 + (v-1)tau e{s + 1} + (v-1)tau e{s + 1} (lambda g{s + 1})")
        statuses.append(RelationStatus(rel, diff.is_zero(), str(diff)))
        h = -gt[s]
        U1 = alg.coeff((v - 1) * tau)
        diff = h * h - (alg.coeff(A.one) + U1 * e * (alg.coeff(A.one) - h))
        rel = Relation("rescale", f"one-parameter form of -lambda g{s + 1}", f"h{s + 1}^2",
                       f"1 + (U-1) e{s + 1} (1 - h{s + 1})")
        statuses.append(RelationStatus(rel, diff.is_zero(), str(diff)))
    for i in range(W.rank):
        for j in range(i + 1, W.rank):
            m = W.m(i, j)
            if m == INF:
                continue
            left, right = alg.coeff(A.one), alg.coeff(A.one)
            for k in range(m):
                left = left * gt[(i, j)[k % 2]]
                right = right * gt[(j, i)[k % 2]]
            diff = left - right
            rel = Relation("rescale", f"braid of rescaled g{i + 1},g{j + 1}", *_braid(f"gt{i + 1}", f"gt{j + 1}", m))
            statuses.append(RelationStatus(rel, diff.is_zero(), str(diff)))
    eq_checks = 0
    bad = None
    for a, b in W.odd_graph().edges:
        for x, y in ((a, b), (b, a)):
            eq_checks += 1
            w = W.odd_edge_conjugator(x, y)
            if lam[x].act(w) != lam[y]:
                bad = {"s1": W.names[x], "s2": W.names[y]}
    checks.append(CheckResult(bad is None, "lambda equivariant on odd edges", eq_checks, bad))
    return VerificationReport("rescaling", n, f"A{n - 1}", datum.dimension(), len(E), W.order(), statuses,
                              datum.check_free_condition(), time.perf_counter() - t0, checks)
