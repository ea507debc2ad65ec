"""Marin rings E(A, rho, a) in normal form sum_w c_w g_w.

Products are computed by right-folding: (c g_w) g_s = c g_{ws} when ws is
longer, and (c (w'.a_s)) g_{w'} + (c (1 - w'.a_s)) g_w with w' = ws otherwise.
The generic variant replaces g_s^2 = a_s + (1 - a_s) g_s by
g_s^2 = b_s + (1 - c_s) g_s.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .certificates import CheckResult
from .coxeter import CoxeterError, CoxeterSystem, GroupElement
from .scalars import (
    LaurentPoly,
    MonoidAlgebra,
    MonoidAlgebraElement,
    ParameterMap,
    ScalarError,
)
from .subsystems import SubsystemMonoid


class MarinError(CoxeterError):
    pass


class ParseError(MarinError):
    pass


class MarinDatum:
    """((W,S), A = R[E], rho, a) or, with ``c`` given, the (b, c) variant.

    ``b`` plays the role of ``a`` in the quadratic relation; in the
    one-parameter case c = a.
    """

    def __init__(self, system: CoxeterSystem, algebra: MonoidAlgebra, b: Mapping[int, MonoidAlgebraElement],
                 c: Mapping[int, MonoidAlgebraElement] | None = None, *, tie: Mapping[int, int] | None = None,
                 params: ParameterMap | None = None, name: str = ""):
        self.system = system
        self.algebra = algebra
        self.b = {s: _as_coeff(algebra, b[s]) for s in range(system.rank)}
        self.c = {s: _as_coeff(algebra, (c or b)[s]) for s in range(system.rank)}
        self.generic = c is not None
        self.tie = dict(tie) if tie is not None else None
        self.params = params
        self.name = name
        self.b_inv = {}
        for s, x in self.b.items():
            try:
                self.b_inv[s] = x.inverse()
            except ScalarError:
                raise MarinError(f"a_{system.names[s]} = {x} is not a unit of A") from None
        self._free: CheckResult | None = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_tie(cls, system, algebra, tie: Mapping[int, int], params: ParameterMap, name: str = "") -> "MarinDatum":
        """a_s = e_hat_s = 1 + (u_s - 1) e_s."""
        b = {s: algebra.e_hat(params[s], tie[s]) for s in range(system.rank)}
        return cls(system, algebra, b, tie=tie, params=params, name=name)

    @classmethod
    def two_parameter(cls, system, algebra, tie: Mapping[int, int], u="u", v="v", name: str = "") -> "MarinDatum":
        """b_s = 1 + (u - 1) e_s and c_s = 1 - (v - 1) e_s."""
        U = LaurentPoly.var(u) if isinstance(u, str) else u
        V = LaurentPoly.var(v) if isinstance(v, str) else v
        b, c = {}, {}
        for s in range(system.rank):
            e = algebra.basis(tie[s]) if tie[s] else algebra.one
            b[s] = algebra.one + e * (U - 1)
            c[s] = algebra.one - e * (V - 1)
        params = ParameterMap(system, {s: U for s in range(system.rank)})
        return cls(system, algebra, b, c, tie=tie, params=params, name=name)

    @classmethod
    def hecke(cls, system: CoxeterSystem, params: ParameterMap | None = None, name: str = "") -> "MarinDatum":
        """Trivial monoid, a_s = u_s: the Iwahori-Hecke algebra."""
        params = params or ParameterMap.per_class(system)
        algebra = MonoidAlgebra(SubsystemMonoid.trivial())
        b = {s: algebra.scalar(params[s]) for s in range(system.rank)}
        return cls(system, algebra, b, tie={s: 0 for s in range(system.rank)}, params=params,
                   name=name or f"Hecke({system.label})")

    def __repr__(self):
        return f"MarinDatum({self.name or self.system.label}, |E|={len(self.algebra.monoid)})"

    # -- checks ---------------------------------------------------------------

    def check_free_condition(self) -> CheckResult:
        """(1 - c_s)(x - s.x) = 0 for every s and every basis element x of A."""
        A = self.algebra
        W = self.system
        checks = 0
        for s in range(W.rank):
            one_minus = A.one - self.c[s]
            g = W.gens[s]
            for m in A.monoid.masks:
                checks += 1
                x = A.basis(m)
                diff = one_minus * (x - x.act(g))
                if not diff.is_zero():
                    res = CheckResult(False, "free-condition", checks,
                                      {"s": W.names[s], "c": A.mask_name(m), "residue": str(diff)})
                    self._free = res
                    return res
        res = CheckResult(True, "free-condition", checks,
                          justification="(1-a_s)(1-rho_s)=0 on a basis of A, so {g_w} is an A-basis")
        self._free = res
        return res

    def check_equivariance(self) -> CheckResult:
        """w.a_{s1} = a_{s2} on the odd-edge conjugators w s1 w^-1 = s2."""
        W = self.system
        checks = 0
        g = W.odd_graph()
        for a, b in g.edges:
            w = W.odd_edge_conjugator(a, b)
            for coeffs, label in ((self.b, "a"), (self.c, "c")):
                checks += 1
                if coeffs[a].act(w) != coeffs[b]:
                    return CheckResult(False, "equivariance", checks,
                                       {"map": label, "s1": W.names[a], "s2": W.names[b]})
        return CheckResult(True, "equivariance", checks, justification="checked on odd-edge conjugators")

    @property
    def is_free(self) -> bool:
        if self._free is None:
            self.check_free_condition()
        return self._free.ok

    def dimension(self) -> int:
        W = self.system
        if not W.is_finite:
            raise MarinError("rank formula needs a finite Coxeter group")
        return W.order() * len(self.algebra.monoid)

    def marin_algebra(self) -> "MarinAlgebra":
        return MarinAlgebra(self)


def _as_coeff(A: MonoidAlgebra, x) -> MonoidAlgebraElement:
    if isinstance(x, MonoidAlgebraElement):
        return x
    return A.scalar(x)


class MarinAlgebra:
    """Normal-form arithmetic; requires the freeness condition."""

    def __init__(self, datum: MarinDatum, *, require_free: bool = True):
        if require_free and not datum.is_free:
            raise MarinError(f"free condition fails for {datum!r}: {datum._free.witness}")
        self.datum = datum
        self.system = datum.system
        self.A = datum.algebra
        self._mult: dict = {}
        self._wb: dict = {}
        self.one = AlgebraElement(self, {self.system.one: self.A.one})
        self.zero = AlgebraElement(self, {})

    def __repr__(self):
        return f"MarinAlgebra({self.datum!r})"

    # -- elements -------------------------------------------------------------

    def basis_element(self, w: GroupElement) -> "AlgebraElement":
        return AlgebraElement(self, {w: self.A.one})

    def gen(self, s: int) -> "AlgebraElement":
        return self.basis_element(self.system.gens[s])

    def gen_inverse(self, s: int) -> "AlgebraElement":
        """g_s^-1 = a_s^-1 g_s - a_s^-1 (1 - a_s)  (with b, c in the generic case)."""
        d = self.datum
        binv = d.b_inv[s]
        return AlgebraElement(self, {self.system.gens[s]: binv, self.system.one: -(binv * (self.A.one - d.c[s]))})

    def coeff(self, c) -> "AlgebraElement":
        if not isinstance(c, MonoidAlgebraElement):
            c = self.A.scalar(c)
        return AlgebraElement(self, {self.system.one: c})

    def tie(self, s: int) -> "AlgebraElement":
        m = self.datum.tie[s]
        return self.coeff(self.A.basis(m) if m else self.A.one)

    def from_word(self, word) -> "AlgebraElement":
        """Product of g_s over a word (not necessarily reduced)."""
        out = self.one
        for s in self.system.parse_word(word):
            out = self.right_op(s, out)
        return out

    # -- the four rules -------------------------------------------------------

    def _w_act(self, w: GroupElement, c: MonoidAlgebraElement) -> MonoidAlgebraElement:
        return self.A.w_action(w, c)

    def _wb_wc(self, w: GroupElement, s: int):
        key = (w.form, s)
        hit = self._wb.get(key)
        if hit is None:
            d = self.datum
            hit = (self._w_act(w, d.b[s]), self.A.one - self._w_act(w, d.c[s]))
            self._wb[key] = hit
        return hit

    def _ws(self, w: GroupElement, s: int) -> GroupElement:
        key = (w.form, s)
        hit = self._mult.get(key)
        if hit is None:
            hit = w * self.system.gens[s]
            self._mult[key] = hit
        return hit

    def right_op(self, s: int, x: "AlgebraElement") -> "AlgebraElement":
        """G^r_s: right multiplication by g_s."""
        W = self.system
        out: dict = {}
        for w, c in x.terms.items():
            ws = self._ws(w, s)
            if not W.is_right_descent(w, s):
                _acc(out, ws, c)
            else:
                wb, wc = self._wb_wc(ws, s)
                _acc(out, ws, c * wb)
                _acc(out, w, c * wc)
        return AlgebraElement(self, out)

    def left_op(self, s: int, x: "AlgebraElement") -> "AlgebraElement":
        """G^l_s: left multiplication by g_s."""
        W = self.system
        g = W.gens[s]
        d = self.datum
        out: dict = {}
        for w, c in x.terms.items():
            sw = g * w
            sc = self._w_act(g, c)
            if W.length(sw) > W.length(w):
                _acc(out, sw, sc)
            else:
                _acc(out, sw, sc * d.b[s])
                _acc(out, w, sc * (self.A.one - d.c[s]))
        return AlgebraElement(self, out)

    def left_coeff(self, c: MonoidAlgebraElement, x: "AlgebraElement") -> "AlgebraElement":
        """C^l_c."""
        return AlgebraElement(self, {w: c * d for w, d in x.terms.items()})

    def right_coeff(self, c: MonoidAlgebraElement, x: "AlgebraElement") -> "AlgebraElement":
        """C^r_c: (d g_w) c = (d (w.c)) g_w."""
        return AlgebraElement(self, {w: d * self._w_act(w, c) for w, d in x.terms.items()})

    def multiply(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        if x.parent is not self or y.parent is not self:
            raise MarinError("elements of different Marin algebras")
        W = self.system
        total: dict = {}
        for v, d in y.terms.items():
            # x * d, then fold the letters of a reduced word of v
            z = AlgebraElement(self, {w: c * self._w_act(w, d) for w, c in x.terms.items()})
            for s in W.reduced_word(v):
                z = self.right_op(s, z)
            for w, c in z.terms.items():
                _acc(total, w, c)
        return AlgebraElement(self, total)

    def hecke_algebra(self) -> "MarinAlgebra":
        """The Iwahori-Hecke quotient: same W, trivial E, a_s = augment(a_s)."""
        d = self.datum
        A = MonoidAlgebra(SubsystemMonoid.trivial())
        b = {s: A.scalar(d.b[s].augment()) for s in range(self.system.rank)}
        c = {s: A.scalar(d.c[s].augment()) for s in range(self.system.rank)} if d.generic else None
        H = MarinDatum(self.system, A, b, c, tie={s: 0 for s in range(self.system.rank)},
                       name=f"Hecke({self.system.label})")
        return H.marin_algebra()

    def hecke_image(self, x: "AlgebraElement", target: "MarinAlgebra | None" = None) -> "AlgebraElement":
        target = target or self._hecke()
        return AlgebraElement(target, {w: target.A.scalar(c.augment()) for w, c in x.terms.items()})

    def _hecke(self) -> "MarinAlgebra":
        if not hasattr(self, "_hecke_alg"):
            self._hecke_alg = self.hecke_algebra()
        return self._hecke_alg

    # -- parsing --------------------------------------------------------------

    def default_env(self) -> dict:
        """g1.., e1.. (ties) keyed by the generator names with s replaced."""
        env = {}
        for i, name in enumerate(self.system.names):
            idx = name[1:] if name.startswith("s") else name
            env["g" + idx] = ("gen", i)
            env["e" + idx] = self.tie(i) if self.datum.tie is not None else None
        return {k: v for k, v in env.items() if v is not None}

    def element_from_word(self, text: str, env: Mapping | None = None) -> "AlgebraElement":
        """Evaluate an expression such as ``"g1 g2^-1 e1 + (1-u) g2"``.

        Juxtaposition and ``*`` multiply; ``^n`` with n >= 0 is a power and
        ``^-n`` needs a generator or an invertible coefficient; ``{s1 s2}.x``
        applies the group element to a coefficient x.
        """
        env = dict(self.default_env()) if env is None else {**self.default_env(), **env}
        return _Parser(self, text, env).parse()

    def dimension(self) -> int:
        return self.datum.dimension()


def _acc(d: dict, k, v):
    if k in d:
        d[k] = d[k] + v
    else:
        d[k] = v


class AlgebraElement:
    """sum_w c_w g_w with coefficients on the left."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent: MarinAlgebra, terms: Mapping[GroupElement, MonoidAlgebraElement]):
        self.parent = parent
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    def _coerce(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            if other.parent is not self.parent:
                raise MarinError("elements of different Marin algebras")
            return other
        if isinstance(other, (int, Fraction, LaurentPoly, MonoidAlgebraElement)):
            return self.parent.coeff(other)
        raise TypeError(f"cannot combine algebra element with {type(other).__name__}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, MonoidAlgebraElement)):
            other = self.parent.coeff(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.parent is other.parent and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            _acc(t, w, c)
        return AlgebraElement(self.parent, t)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.parent, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return AlgebraElement(self.parent, {w: c * other for w, c in self.terms.items()})
        return self.parent.multiply(self, self._coerce(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return AlgebraElement(self.parent, {w: c * other for w, c in self.terms.items()})
        return self._coerce(other) * self

    def __pow__(self, n: int):
        if n < 0:
            raise MarinError("use element_from_word or gen_inverse for negative powers")
        out = self.parent.one
        for _ in range(n):
            out = out * self
        return out

    def coefficient(self, w: GroupElement) -> MonoidAlgebraElement:
        return self.terms.get(w, self.parent.A.zero)

    def support(self) -> list[GroupElement]:
        W = self.parent.system
        return sorted(self.terms, key=lambda w: (W.length(w), W.reduced_word(w)))

    def as_generator(self) -> int | None:
        """s if this element is exactly g_s."""
        if len(self.terms) != 1:
            return None
        (w, c), = self.terms.items()
        if c != self.parent.A.one:
            return None
        word = self.parent.system.reduced_word(w)
        return word[0] if len(word) == 1 else None

    def as_coefficient(self) -> MonoidAlgebraElement | None:
        if set(w for w in self.terms) <= {self.parent.system.one}:
            return self.terms.get(self.parent.system.one, self.parent.A.zero)
        return None

    def __str__(self):
        if not self.terms:
            return "0"
        W = self.parent.system
        parts = []
        for w in self.support():
            c = self.terms[w]
            word = W.reduced_word(w)
            g = " ".join("g" + (W.names[i][1:] if W.names[i].startswith("s") else W.names[i]) for i in word)
            cs = str(c)
            if not g:
                parts.append(cs)
            elif cs == "1":
                parts.append(g)
            elif cs == "-1":
                parts.append("-" + g)
            elif _atomic(cs):
                parts.append(f"{cs} {g}")
            else:
                parts.append(f"({cs}) {g}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"<{self}>"

    def to_json(self) -> dict:
        W = self.parent.system
        return {W.format_word(W.reduced_word(w)) or "1": self.terms[w].to_json() for w in self.support()}


def _atomic(s: str) -> bool:
    return "+" not in s and "-" not in s[1:]


# ---------------------------------------------------------------------------
# expression parser

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*'*)|(\{[^}]*\})|(\^-?\d+)|([-+*().]))")


class _Parser:
    def __init__(self, alg: MarinAlgebra, text: str, env: Mapping):
        self.alg = alg
        self.env = env
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos} in {text!r}")
            kind = m.lastindex
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> AlgebraElement:
        if not self.tokens:
            return self.alg.one
        val = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"unexpected token {self.peek()[1]!r} in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def _starts_factor(self):
        kind, tok = self.peek()
        return kind in (1, 2, 3) or tok == "("

    def term(self):
        val = self.factor()
        while True:
            if self.peek()[1] == "*":
                self.take()
                val = val * self.factor()
            elif self._starts_factor():
                val = val * self.factor()
            else:
                return val

    def factor(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        while self.peek()[0] == 4:
            n = int(self.take()[1][1:])
            base = self.power(base, n)
        return base

    def power(self, base, n):
        if n >= 0:
            return base ** n
        s = base.as_generator()
        if s is not None:
            inv = self.alg.gen_inverse(s)
        else:
            c = base.as_coefficient()
            if c is None:
                raise ParseError("negative powers are only defined for generators and coefficients")
            try:
                inv = self.alg.coeff(c.inverse())
            except ScalarError as exc:
                raise ParseError(str(exc)) from None
        return inv ** (-n)

    def atom(self):
        kind, tok = self.take()
        if tok is None:
            raise ParseError(f"unexpected end of {self.text!r}")
        if tok == "(":
            val = self.expr()
            if self.take()[1] != ")":
                raise ParseError(f"missing ')' in {self.text!r}")
            return val
        if kind == 1:
            return self.alg.coeff(Fraction(tok))
        if kind == 3:
            W = self.alg.system
            try:
                w = W.element(tok[1:-1])
            except CoxeterError as exc:
                raise ParseError(str(exc)) from None
            if self.take()[1] != ".":
                raise ParseError("expected '.' after a group element in braces")
            target = self.atom()
            c = target.as_coefficient()
            if c is None:
                raise ParseError("group elements act on coefficients only")
            return self.alg.coeff(c.act(w))
        if kind == 2:
            if tok in self.env:
                v = self.env[tok]
                if isinstance(v, tuple) and v[0] == "gen":
                    return self.alg.gen(v[1])
                if isinstance(v, AlgebraElement):
                    return v
                if isinstance(v, MonoidAlgebraElement):
                    return self.alg.coeff(v)
                return self.alg.coeff(LaurentPoly.coerce(v))
            if re.fullmatch(r"[A-Za-z_][A-Za-z_]*", tok) and not re.fullmatch(r"[ge]\d.*", tok):
                return self.alg.coeff(LaurentPoly.var(tok))
            raise ParseError(f"unknown generator {tok!r}")
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


# ---------------------------------------------------------------------------
# functoriality


@dataclass
class MarinMorphism:
    """(phi, epsilon): phi maps generators of the source to words in the
    target system; epsilon maps basis masks of the source A to elements of the
    target A."""

    source: MarinAlgebra
    target: MarinAlgebra
    phi: Mapping[int, tuple]
    epsilon: Callable[[MonoidAlgebraElement], MonoidAlgebraElement]
    checks: list = field(default_factory=list)

    def verify(self) -> CheckResult:
        src, tgt = self.source, self.target
        W, U = src.system, tgt.system
        count = 0
        basis = src.A.basis_elements()
        # epsilon multiplicative on the basis
        for x in basis:
            for y in basis:
                count += 1
                if self.epsilon(x * y) != self.epsilon(x) * self.epsilon(y):
                    return CheckResult(False, "marin-morphism", count, {"reason": "epsilon not multiplicative",
                                                                       "x": str(x), "y": str(y)})
        for s in range(W.rank):
            phis = U.element(self.phi[s])
            for x in basis:
                count += 1
                if self.epsilon(x.act(W.gens[s])) != self.epsilon(x).act(phis):
                    return CheckResult(False, "marin-morphism", count,
                                       {"reason": "epsilon not equivariant", "s": W.names[s], "x": str(x)})
            word = self.phi[s]
            if len(word) == 1:
                t = word[0]
                count += 2
                if self.epsilon(src.datum.b[s]) != tgt.datum.b[t] or self.epsilon(src.datum.c[s]) != tgt.datum.c[t]:
                    return CheckResult(False, "marin-morphism", count,
                                       {"reason": "epsilon(a_s) != b_phi(s)", "s": W.names[s]})
            else:
                return CheckResult(False, "marin-morphism", count,
                                   {"reason": "phi must send generators to generators", "s": W.names[s]})
        return CheckResult(True, "marin-morphism", count,
                           justification="epsilon equivariant, multiplicative and epsilon(a) = b(phi)")

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        tgt = self.target
        out = tgt.zero
        for w, c in x.terms.items():
            img = tgt.coeff(self.epsilon(c))
            for s in x.parent.system.reduced_word(w):
                for t in self.phi[s]:
                    img = tgt.right_op(t, img)
            out = out + img
        return out


def functorial_map(source: MarinAlgebra, target: MarinAlgebra, phi: Mapping[int, tuple],
                   epsilon: Callable | None = None, *, check: bool = True) -> MarinMorphism:
    """Build (and by default certify) the algebra map g_s -> g_phi(s), c -> epsilon(c)."""
    if epsilon is None:
        if target.A.monoid.space is None:
            def epsilon(x):
                return target.A.scalar(x.augment())
        elif target.A.monoid.space is source.A.monoid.space:
            def epsilon(x):
                return MonoidAlgebraElement(target.A, x.terms)
        else:
            raise MarinError("no default coefficient map between these algebras")
    phi = {s: tuple(target.system.parse_word(v)) if not isinstance(v, int) else (v,) for s, v in phi.items()}
    m = MarinMorphism(source, target, phi, epsilon)
    if check:
        res = m.verify()
        m.checks.append(res)
        if not res.ok:
            raise MarinError(f"not a morphism of Marin data: {res.witness}")
    return m
