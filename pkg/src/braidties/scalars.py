"""Exact coefficients: Laurent polynomials over Q, a quadratic extension for
rescaling, and the monoid algebra R[E] over a submonoid of root subsystems."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .coxeter import CoxeterError, CoxeterSystem, GroupElement
from .subsystems import SubsystemMonoid

Monomial = tuple  # sorted tuple of (name, nonzero exponent)


class ScalarError(ArithmeticError):
    pass


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        e2 = d.get(v, 0) + e
        if e2:
            d[v] = e2
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {c!r} as a rational coefficient")


class LaurentPoly:
    """Sparse multivariate Laurent polynomial with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[m] = c
        self.terms = t
        self._hash = None

    # -- construction ---------------------------------------------------------

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({(): _coerce_coeff(c)})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "LaurentPoly":
        if not exp:
            return cls.const(1)
        return cls({((name, exp),): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return cls.const(x)

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def degree(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(other.terms) == 1 and () in other.terms:
            k = other.terms[()]
            return LaurentPoly({m: c * k for m, c in self.terms.items()})
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return LaurentPoly(t)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise ScalarError(f"{self} is not a unit of the Laurent polynomial ring")
        (m, c), = self.terms.items()
        return LaurentPoly({tuple((v, -e) for v, e in m): 1 / c})

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def subs(self, values: Mapping[str, object]) -> "LaurentPoly":
        """Substitute Laurent polynomials (or numbers) for some variables."""
        out = LaurentPoly()
        for m, c in self.terms.items():
            term = LaurentPoly({(): c})
            rest = []
            for v, e in m:
                if v in values:
                    term = term * LaurentPoly.coerce(values[v]) ** e
                else:
                    rest.append((v, e))
            out = out + term * LaurentPoly({tuple(rest): Fraction(1)})
        return out

    # -- display --------------------------------------------------------------

    def _sorted(self):
        def key(item):
            m, _ = item
            return (sum(abs(e) for _, e in m), m)

        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self._sorted():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"

    def to_json(self) -> dict:
        names = sorted(self.variables())
        terms = {}
        for m, c in self._sorted():
            d = dict(m)
            key = ",".join(str(d.get(v, 0)) for v in names)
            terms[key] = str(c)
        return {"vars": names, "terms": terms}

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        names = data["vars"]
        t = {}
        for key, c in data["terms"].items():
            exps = [int(x) for x in key.split(",")] if key else []
            m = tuple(sorted((v, e) for v, e in zip(names, exps) if e))
            t[m] = Fraction(c)
        return cls(t)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse sums of terms such as ``"1-u"``, ``"3/2*u^-1*v"``."""
        s = text.replace(" ", "")
        if not s:
            raise ScalarError("empty polynomial")
        out = cls()
        s = s.replace("^-", "^~")
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            body = body.replace("^~", "^-")
            coeff = Fraction(-1 if sign == "-" else 1)
            mono: dict = {}
            for factor in body.split("*"):
                mt = re.fullmatch(r"([A-Za-z_]\w*)(?:\^(-?\d+))?", factor)
                if mt:
                    mono[mt.group(1)] = mono.get(mt.group(1), 0) + int(mt.group(2) or 1)
                elif re.fullmatch(r"\d+(/\d+)?", factor):
                    coeff *= Fraction(factor)
                else:
                    raise ScalarError(f"bad polynomial factor {factor!r} in {text!r}")
            m = tuple(sorted((v, e) for v, e in mono.items() if e))
            out = out + cls({m: coeff})
        return out


ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


class QuotientRing:
    """Laurent polynomials extended by a root z of z^2 = c1*z + c0.

    ``reduce`` keeps the degree in ``name`` below 2; negative powers of the
    adjoined root are not allowed.
    """

    def __init__(self, name: str, c1: LaurentPoly, c0: LaurentPoly):
        self.name = name
        self.c1 = c1
        self.c0 = c0

    @classmethod
    def delta(cls, u: str = "u", v: str = "v", name: str = "delta") -> "QuotientRing":
        """z = tau - 1 where u tau^2 - (v-1) tau - 1 = 0, so that
        u z^2 = -(2u - v + 1) z - (u - v)."""
        U, V = LaurentPoly.var(u), LaurentPoly.var(v)
        uinv = U.inverse()
        c1 = -(2 * U - V + 1) * uinv
        c0 = -(U - V) * uinv
        return cls(name, c1, c0)

    def reduce(self, p: LaurentPoly) -> LaurentPoly:
        if self.name not in p.variables():
            return p
        # split by power of the adjoined root
        by_power: dict[int, dict] = {}
        for m, c in p.terms.items():
            d = dict(m)
            k = d.pop(self.name, 0)
            if k < 0:
                raise ScalarError(f"negative power of {self.name} is not defined")
            by_power.setdefault(k, {})[tuple(sorted(d.items()))] = c
        top = max(by_power)
        coeffs = [LaurentPoly(by_power.get(k, {})) for k in range(top + 1)]
        for k in range(top, 1, -1):
            ck = coeffs[k]
            if ck:
                coeffs[k - 1] = coeffs[k - 1] + ck * self.c1
                coeffs[k - 2] = coeffs[k - 2] + ck * self.c0
        z = LaurentPoly.var(self.name)
        return coeffs[0] + coeffs[1] * z if len(coeffs) > 1 else coeffs[0]


# ---------------------------------------------------------------------------
# parameter maps


class ParameterMap:
    """u: S -> R^x, constant on conjugacy classes of generators."""

    def __init__(self, system: CoxeterSystem, values: Mapping[int, object]):
        self.system = system
        vals = {}
        for i in range(system.rank):
            if i not in values:
                raise CoxeterError(f"no parameter for generator {system.names[i]}")
            vals[i] = LaurentPoly.parse(values[i]) if isinstance(values[i], str) else LaurentPoly.coerce(values[i])
        for cls in system.conjugacy_classes_of_generators():
            first = vals[cls[0]]
            for s in cls[1:]:
                if vals[s] != first:
                    raise CoxeterError(
                        f"parameters must agree on conjugate generators: "
                        f"{system.names[cls[0]]}={first} but {system.names[s]}={vals[s]}"
                    )
        self.values = vals

    @classmethod
    def per_class(cls, system: CoxeterSystem, names: Iterable[str] = ("u", "v", "w", "x", "y", "z")) -> "ParameterMap":
        names = list(names)
        classes = system.conjugacy_classes_of_generators()
        if len(classes) > len(names):
            raise CoxeterError("not enough parameter names for the generator classes")
        vals = {}
        for name, c in zip(names, classes):
            for s in c:
                vals[s] = LaurentPoly.var(name)
        return cls(system, vals)

    @classmethod
    def uniform(cls, system: CoxeterSystem, name: str = "u") -> "ParameterMap":
        return cls(system, {i: LaurentPoly.var(name) for i in range(system.rank)})

    def __getitem__(self, s: int) -> LaurentPoly:
        return self.values[s]

    def names(self) -> dict[str, str]:
        return {self.system.names[i]: str(p) for i, p in self.values.items()}


# ---------------------------------------------------------------------------
# the monoid algebra R[E]


class MonoidAlgebra:
    """R[E] for a finite submonoid E of root subsystems.

    ``hom`` maps group elements of the acting system W to the ambient system
    of E (None means W is the ambient system itself, or the action is
    trivial when E has no ambient space).
    """

    def __init__(self, monoid: SubsystemMonoid, hom: Callable[[GroupElement], GroupElement] | None = None,
                 reducer: QuotientRing | None = None):
        self.monoid = monoid
        self.space = monoid.space
        self.hom = hom
        self.reducer = reducer
        self._join = self.space.join_mask if self.space is not None else (lambda a, b: a | b)
        self._act_cache: dict = {}
        self.one = MonoidAlgebraElement(self, {0: ONE})
        self.zero = MonoidAlgebraElement(self, {})

    def __repr__(self):
        return f"R[E] with |E|={len(self.monoid)}"

    @property
    def dimension(self) -> int:
        return len(self.monoid)

    def scalar(self, c) -> "MonoidAlgebraElement":
        if isinstance(c, str):
            c = LaurentPoly.parse(c)
        return MonoidAlgebraElement(self, {0: LaurentPoly.coerce(c)})

    def basis(self, mask: int) -> "MonoidAlgebraElement":
        if mask not in self.monoid:
            raise CoxeterError(f"{self.mask_name(mask)} is not an element of E")
        return MonoidAlgebraElement(self, {mask: ONE})

    def basis_elements(self) -> list["MonoidAlgebraElement"]:
        return [self.basis(m) for m in self.monoid.masks]

    def mask_name(self, mask: int) -> str:
        if self.space is None:
            return "1" if mask == 0 else f"m{mask}"
        return self.space.mask_name(mask)

    def reduce(self, p: LaurentPoly) -> LaurentPoly:
        return self.reducer.reduce(p) if self.reducer is not None else p

    # -- W-action -------------------------------------------------------------

    def action_table(self, w: GroupElement) -> dict[int, int] | None:
        """mask -> w.mask on E, or None for the identity action."""
        if self.space is None:
            return None
        key = w.form
        if key in self._act_cache:
            return self._act_cache[key]
        g = self.hom(w) if self.hom is not None else w
        if g.is_identity():
            table = None
        else:
            perm = self.space.perm(g)
            table = {m: self.space.permute(perm, m) for m in self.monoid.masks}
        self._act_cache[key] = table
        return table

    def w_action(self, w: GroupElement, x: "MonoidAlgebraElement") -> "MonoidAlgebraElement":
        table = self.action_table(w)
        if table is None:
            return x
        return MonoidAlgebraElement(self, {table[m]: c for m, c in x.terms.items()}, _trusted=True)

    # -- distinguished elements -----------------------------------------------

    def e_hat(self, u: LaurentPoly, mask: int) -> "MonoidAlgebraElement":
        """1 + (u - 1) e."""
        u = LaurentPoly.coerce(u)
        if mask == 0:
            return self.scalar(u)
        return MonoidAlgebraElement(self, {0: ONE, mask: u - 1})

    def e_hat_inverse(self, u: LaurentPoly, mask: int) -> "MonoidAlgebraElement":
        """1 + u^-1 (1 - u) e."""
        u = LaurentPoly.coerce(u)
        if mask == 0:
            return self.scalar(u.inverse())
        return MonoidAlgebraElement(self, {0: ONE, mask: u.inverse() * (1 - u)})

    def augment(self, x: "MonoidAlgebraElement") -> LaurentPoly:
        out = ZERO
        for c in x.terms.values():
            out = out + c
        return self.reduce(out)


class MonoidAlgebraElement:
    __slots__ = ("parent", "terms", "_hash")

    def __init__(self, parent: MonoidAlgebra, terms: Mapping[int, LaurentPoly], _trusted: bool = False):
        self.parent = parent
        if _trusted:
            self.terms = dict(terms)
        else:
            red = parent.reduce
            self.terms = {}
            for m, c in terms.items():
                c = red(LaurentPoly.coerce(c))
                if c:
                    self.terms[m] = c
        self._hash = None

    def _check(self, other):
        if isinstance(other, MonoidAlgebraElement):
            if other.parent is not self.parent:
                raise CoxeterError("elements of different monoid algebras")
            return other
        if isinstance(other, (int, Fraction, LaurentPoly, str)):
            return self.parent.scalar(other)
        raise TypeError(f"cannot combine R[E] element with {type(other).__name__}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = self.parent.scalar(other)
        if not isinstance(other, MonoidAlgebraElement):
            return NotImplemented
        return self.parent is other.parent and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return MonoidAlgebraElement(self.parent, t)

    __radd__ = __add__

    def __neg__(self):
        return MonoidAlgebraElement(self.parent, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            k = LaurentPoly.coerce(other)
            return MonoidAlgebraElement(self.parent, {m: c * k for m, c in self.terms.items()})
        other = self._check(other)
        join = self.parent._join
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = join(m1, m2)
                p = c1 * c2
                t[m] = t[m] + p if m in t else p
        return MonoidAlgebraElement(self.parent, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.parent.one
        for _ in range(n):
            out = out * self
        return out

    def act(self, w: GroupElement) -> "MonoidAlgebraElement":
        return self.parent.w_action(w, self)

    def augment(self) -> LaurentPoly:
        return self.parent.augment(self)

    def is_scalar(self) -> bool:
        return set(self.terms) <= {0}

    def support(self) -> list[int]:
        return sorted(self.terms)

    def inverse(self) -> "MonoidAlgebraElement":
        """Inverse via the characters x -> [x <= F] of the finite semilattice
        generated by the support."""
        join = self.parent._join
        lat = {0}
        frontier = [0]
        supp = list(self.terms)
        while frontier:
            nxt = []
            for a in frontier:
                for b in supp:
                    c = join(a, b)
                    if c not in lat:
                        lat.add(c)
                        nxt.append(c)
            frontier = nxt
        order = sorted(lat, key=lambda m: (bin(m).count("1"), m))

        def below(x, f):
            return join(x, f) == f

        inv_vals = {}
        for f in order:
            val = ZERO
            for x, c in self.terms.items():
                if below(x, f):
                    val = val + c
            val = self.parent.reduce(val)
            try:
                inv_vals[f] = val.inverse()
            except ScalarError:
                raise ScalarError(f"{self} is not invertible in R[E]") from None
        coeffs: dict = {}
        for f in order:
            c = inv_vals[f]
            for x in order:
                if x == f:
                    break
                if x in coeffs and below(x, f):
                    c = c - coeffs[x]
            if c:
                coeffs[f] = c
        return MonoidAlgebraElement(self.parent, coeffs)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda k: (bin(k).count("1"), k)):
            c = self.terms[m]
            cs = str(c)
            if m == 0:
                parts.append(cs)
                continue
            name = "e" + self.parent.mask_name(m)
            if cs == "1":
                parts.append(name)
            elif cs == "-1":
                parts.append("-" + name)
            elif len(c.terms) == 1:
                parts.append(f"{cs}*{name}")
            else:
                parts.append(f"({cs})*{name}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"<{self}>"

    def to_json(self) -> list:
        space = self.parent.space
        out = []
        for m in sorted(self.terms, key=lambda k: (bin(k).count("1"), k)):
            if space is None:
                sub = []
            else:
                rj = space.system.backend.root_json
                sub = [rj(space.roots[i]) for i in range(space.size) if m >> i & 1]
            out.append({"subsystem": sub, "coefficient": self.terms[m].to_json()})
        return out
