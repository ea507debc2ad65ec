"""Coxeter systems, root systems and the word problem.

Two realizations of the geometric representation are used:

* ``crystallographic``: roots are integer vectors over the simple roots and a
  group element is the tuple of images of the simple roots.  Covers A, B, C, D,
  their affine versions, and custom matrices with entries in {2, 3, 4, 6, inf}.
* ``dihedral``: the roots of I2(m) are indexed by ``k`` in Z/2m (the unit vector
  at angle k*pi/m) and an element is an affine map ``k -> eps*k + c``.

Generators are addressed by 0-based indices; ``names`` carries the display
names (``s1``, ``s2``, ...).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

INF = 0  # Coxeter matrix entry standing for m = infinity

Word = tuple[int, ...]


class CoxeterError(ValueError):
    pass


class UnsupportedSystemError(CoxeterError):
    pass


class InfiniteGroupError(CoxeterError):
    """Raised by operations that need a finite group."""


# ---------------------------------------------------------------------------
# realizations


class CrystallographicBackend:
    kind = "crystallographic"

    def __init__(self, gram: Sequence[Sequence[int]]):
        self.rank = len(gram)
        self.gram = tuple(tuple(int(x) for x in row) for row in gram)
        n = self.rank
        self.simple_roots = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        self.identity = self.simple_roots
        self.generators = tuple(self.reflection_form(a) for a in self.simple_roots)

    def inner(self, a, b) -> int:
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(self.rank) if a[i] for j in range(self.rank) if b[j])

    def reflect(self, alpha, beta):
        q, r = divmod(2 * self.inner(beta, alpha), self.inner(alpha, alpha))
        if r:
            raise CoxeterError(f"non-integral reflection of {beta} in {alpha}")
        if not q:
            return beta
        return tuple(b - q * a for a, b in zip(alpha, beta))

    def orthogonal(self, a, b) -> bool:
        return self.inner(a, b) == 0

    def reflection_form(self, alpha):
        return tuple(self.reflect(alpha, e) for e in self.simple_roots)

    def apply(self, form, root):
        out = [0] * self.rank
        for j, c in enumerate(root):
            if c:
                col = form[j]
                for i in range(self.rank):
                    out[i] += c * col[i]
        return tuple(out)

    def compose(self, f, g):
        return tuple(self.apply(f, col) for col in g)

    @staticmethod
    def is_positive(root) -> bool:
        for c in root:
            if c:
                return c > 0
        raise CoxeterError("zero vector is not a root")

    @staticmethod
    def negate(root):
        return tuple(-c for c in root)

    def root_key(self, root):
        return (sum(root), tuple(-c for c in root))

    @staticmethod
    def root_json(root):
        return list(root)


class DihedralBackend:
    """I2(m) with roots indexed by angle: index k is the unit vector at k*pi/m."""

    kind = "dihedral"

    def __init__(self, m: int):
        if m < 2:
            raise CoxeterError("I2(m) needs m >= 2")
        self.m = m
        self.rank = 2
        self.simple_roots = (0, m - 1)
        self.identity = (1, 0)
        self.generators = tuple(self.reflection_form(a) for a in self.simple_roots)

    def reflect(self, alpha, beta):
        return (2 * alpha + self.m - beta) % (2 * self.m)

    def orthogonal(self, a, b) -> bool:
        return (2 * (a - b)) % (2 * self.m) == self.m % (2 * self.m)

    def reflection_form(self, alpha):
        return (-1, (2 * alpha + self.m) % (2 * self.m))

    def apply(self, form, root):
        eps, c = form
        return (eps * root + c) % (2 * self.m)

    def compose(self, f, g):
        return (f[0] * g[0], (f[0] * g[1] + f[1]) % (2 * self.m))

    def is_positive(self, root) -> bool:
        return root < self.m

    def negate(self, root):
        return (root + self.m) % (2 * self.m)

    @staticmethod
    def root_key(root):
        return (root,)

    @staticmethod
    def root_json(root):
        return {"angle_index": root}


# ---------------------------------------------------------------------------
# Gram matrices for the labelled families


def _gram_from_norms(matrix, norms):
    n = len(matrix)
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = norms[i]
        for j in range(n):
            if i == j:
                continue
            m = matrix[i][j]
            a, b = norms[i], norms[j]
            if m == 2:
                g = 0
            elif m == 3:
                if a != b:
                    raise CoxeterError(f"m={m} edge {i + 1}-{j + 1} needs equal root lengths")
                g = -a // 2
            elif m == 4:
                if max(a, b) != 2 * min(a, b):
                    raise CoxeterError(f"m=4 edge {i + 1}-{j + 1} needs root length ratio 2")
                g = -min(a, b)
            elif m == 6:
                if max(a, b) != 3 * min(a, b):
                    raise CoxeterError(f"m=6 edge {i + 1}-{j + 1} needs root length ratio 3")
                g = -3 * min(a, b) // 2
            elif m == INF:
                if a != b:
                    raise CoxeterError(f"m=inf edge {i + 1}-{j + 1} needs equal root lengths")
                g = -a
            else:
                raise UnsupportedSystemError(f"m={m} has no crystallographic realization")
            gram[i][j] = g
    return gram


def _solve_norms(matrix):
    """Assign squared root lengths along a spanning forest of the Coxeter graph.

    Consistency on the remaining edges is checked when the Gram matrix is built.
    """
    n = len(matrix)
    norms: list[Fraction | None] = [None] * n
    ratio = {3: 1, 4: 2, 6: 3, INF: 1}
    for root in range(n):
        if norms[root] is not None:
            continue
        norms[root] = Fraction(1)
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                m = matrix[i][j]
                if i == j or m == 2:
                    continue
                if m not in ratio:
                    raise UnsupportedSystemError(f"m={m} has no crystallographic realization")
                if norms[j] is None:
                    norms[j] = norms[i] * ratio[m]
                    queue.append(j)
    lcm = 1
    for x in norms:
        lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
    # even squared lengths keep the m=3 and m=6 off-diagonals integral
    return [int(x * lcm) * 2 for x in norms]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _positive_definite(gram) -> bool:
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def _path(n, bonds=None):
    mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        mat[i][i + 1] = mat[i + 1][i] = 3
    for (i, j), m in (bonds or {}).items():
        mat[i][j] = mat[j][i] = m
    return mat


def _edges(n, edges):
    mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, j, m in edges:
        mat[i][j] = mat[j][i] = m
    return mat


def _labelled(family: str, n: int, affine: bool):
    """Coxeter matrix and squared root lengths for a labelled family.

    Numbering: A path 1..n; B has the 4-bond at {1,2} with node 1 short;
    C has the 4-bond at {n-1,n} with node n long; D_n forks nodes 1,2 off
    node 3.  Affine labels follow the same conventions: ~B_n forks nodes n,
    n+1 off node n-1, ~C_n is the path 1..n+1 with 4-bonds at both ends,
    ~D_n forks 1,2 off 3 and n,n+1 off n-1.
    """
    if not affine:
        if family == "A":
            if n < 1:
                raise CoxeterError("A_n needs n >= 1")
            return _path(n), [2] * n
        if family == "B":
            if n < 2:
                raise CoxeterError("B_n needs n >= 2")
            return _path(n, {(0, 1): 4}), [2] + [4] * (n - 1)
        if family == "C":
            if n < 2:
                raise CoxeterError("C_n needs n >= 2")
            return _path(n, {(n - 2, n - 1): 4}), [2] * (n - 1) + [4]
        if family == "D":
            if n < 3:
                raise CoxeterError("D_n needs n >= 3")
            edges = [(0, 2, 3), (1, 2, 3)] + [(i, i + 1, 3) for i in range(2, n - 1)]
            return _edges(n, edges), [2] * n
    else:
        if family == "A":
            if n < 1:
                raise CoxeterError("~A_n needs n >= 1")
            if n == 1:
                return _edges(2, [(0, 1, INF)]), [2, 2]
            edges = [(i, (i + 1) % (n + 1), 3) for i in range(n + 1)]
            return _edges(n + 1, edges), [2] * (n + 1)
        if family == "B":
            if n < 3:
                raise CoxeterError("~B_n needs n >= 3")
            edges = [(0, 1, 4)] + [(i, i + 1, 3) for i in range(1, n - 2)]
            edges += [(n - 2, n - 1, 3), (n - 2, n, 3)]
            return _edges(n + 1, edges), [2] + [4] * n
        if family == "C":
            if n < 2:
                raise CoxeterError("~C_n needs n >= 2")
            mat = _path(n + 1, {(0, 1): 4, (n - 1, n): 4})
            return mat, [4] + [2] * (n - 1) + [4]
        if family == "D":
            if n < 4:
                raise CoxeterError("~D_n needs n >= 4")
            edges = [(0, 2, 3), (1, 2, 3)] + [(i, i + 1, 3) for i in range(2, n - 2)]
            edges += [(n - 2, n - 1, 3), (n - 2, n, 3)]
            return _edges(n + 1, edges), [2] * (n + 1)
    raise CoxeterError(f"unknown family {family}")


# ---------------------------------------------------------------------------
# systems and elements


class CoxeterSystem:
    """A Coxeter matrix together with an exact faithful realization."""

    def __init__(self, matrix, label: str | None = None, *, norms=None, names=None, dihedral=None):
        mat = tuple(tuple(int(x) for x in row) for row in matrix)
        _validate_matrix(mat)
        self.matrix = mat
        self.rank = len(mat)
        self.label = label
        self.names = tuple(names) if names else tuple(f"s{i + 1}" for i in range(self.rank))
        if len(self.names) != self.rank:
            raise CoxeterError("one name per generator required")

        if dihedral is None:
            dihedral = self.rank == 2 and mat[0][1] not in (2, 3, 4, 6, INF) and norms is None
        if dihedral:
            if self.rank != 2 or mat[0][1] == INF:
                raise CoxeterError("dihedral realization needs rank 2 and finite m")
            self.backend = DihedralBackend(mat[0][1])
            self.is_finite = True
        else:
            if norms is None:
                norms = _solve_norms(mat)
            try:
                gram = _gram_from_norms(mat, norms)
            except UnsupportedSystemError:
                raise
            except CoxeterError as exc:
                raise UnsupportedSystemError(f"no integral realization: {exc}") from None
            self.backend = CrystallographicBackend(gram)
            self.is_finite = _positive_definite(self.backend.gram)

        self.one = GroupElement(self, self.backend.identity)
        self.gens = tuple(GroupElement(self, f) for f in self.backend.generators)
        self._length: dict = {}
        self._words: dict = {}
        self._elements: list[GroupElement] | None = None
        self._positive_roots: list | None = None
        self._root_index: dict | None = None

    # -- presentation helpers -------------------------------------------------

    def __repr__(self):
        return f"CoxeterSystem({self.label or self.matrix!r})"

    @property
    def realization(self) -> str:
        return self.backend.kind

    def m(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def parse_word(self, text: str | Sequence) -> Word:
        """Parse ``"s1 s2 s1"`` (or a sequence of names/indices) into indices."""
        if isinstance(text, str):
            tokens = text.replace(",", " ").split()
        else:
            tokens = list(text)
        out = []
        for tok in tokens:
            if isinstance(tok, int):
                idx = tok
            elif tok in ("1", "e", "id"):
                continue
            elif tok in self.names:
                idx = self.names.index(tok)
            else:
                raise CoxeterError(f"unknown generator {tok!r} (have {', '.join(self.names)})")
            if not 0 <= idx < self.rank:
                raise CoxeterError(f"generator index {idx} out of range")
            out.append(idx)
        return tuple(out)

    def format_word(self, word: Iterable[int]) -> str:
        return " ".join(self.names[i] for i in word)

    def element(self, word: str | Sequence = ()) -> "GroupElement":
        form = self.backend.identity
        for i in self.parse_word(word):
            form = self.backend.compose(form, self.backend.generators[i])
        return GroupElement(self, form)

    # -- arithmetic -------------------------------------------------------------

    def multiply(self, u: "GroupElement", v: "GroupElement") -> "GroupElement":
        if u.system is not self or v.system is not self:
            raise CoxeterError("elements belong to different Coxeter systems")
        return GroupElement(self, self.backend.compose(u.form, v.form))

    def _right_descents_strip(self, form):
        """Strip right descents until the identity; returns the stripped letters."""
        b = self.backend
        letters = []
        while form != b.identity:
            for i, a in enumerate(b.simple_roots):
                if not b.is_positive(b.apply(form, a)):
                    form = b.compose(form, b.generators[i])
                    letters.append(i)
                    break
            else:  # pragma: no cover - a non-identity element always has a descent
                raise CoxeterError("element without descents")
        return letters

    def length(self, w: "GroupElement") -> int:
        n = self._length.get(w.form)
        if n is None:
            n = len(self._right_descents_strip(w.form))
            self._length[w.form] = n
        return n

    def inverse(self, w: "GroupElement") -> "GroupElement":
        if self.backend.kind == "dihedral":
            eps, c = w.form
            return GroupElement(self, (eps, (-eps * c) % (2 * self.backend.m)))
        form = self.backend.identity
        for i in self._right_descents_strip(w.form):
            form = self.backend.compose(form, self.backend.generators[i])
        return GroupElement(self, form)

    def is_right_descent(self, w: "GroupElement", i: int) -> bool:
        b = self.backend
        return not b.is_positive(b.apply(w.form, b.simple_roots[i]))

    def is_left_descent(self, w: "GroupElement", i: int) -> bool:
        return self.is_right_descent(self.inverse(w), i)

    def reduced_word(self, w: "GroupElement") -> Word:
        """Lexicographically least reduced word (greedy smallest left descent)."""
        word = self._words.get(w.form)
        if word is not None:
            return word
        b = self.backend
        cur = w.form
        inv = self.inverse(w).form
        out = []
        while cur != b.identity:
            for i, a in enumerate(b.simple_roots):
                if not b.is_positive(b.apply(inv, a)):
                    out.append(i)
                    cur = b.compose(b.generators[i], cur)
                    inv = b.compose(inv, b.generators[i])
                    break
        word = tuple(out)
        self._words[w.form] = word
        self._length.setdefault(w.form, len(word))
        return word

    def all_reduced_words(self, w: "GroupElement") -> set[Word]:
        memo: dict = {}

        def words(x: GroupElement) -> set[Word]:
            if x.form in memo:
                return memo[x.form]
            if x.form == self.backend.identity:
                res = {()}
            else:
                res = set()
                xinv = self.inverse(x)
                for i in range(self.rank):
                    if self.is_right_descent(xinv, i):
                        for tail in words(self.gens[i] * x):
                            res.add((i,) + tail)
            memo[x.form] = res
            return res

        return words(w)

    # -- finite enumeration -----------------------------------------------------

    def _require_finite(self, what: str):
        if not self.is_finite:
            raise InfiniteGroupError(f"{what} needs a finite Coxeter group, {self!r} is infinite")

    def elements(self) -> list["GroupElement"]:
        """All elements, breadth first by length."""
        self._require_finite("enumerate_group")
        if self._elements is None:
            b = self.backend
            seen = {b.identity: 0}
            level = [b.identity]
            out = [self.one]
            depth = 0
            while level:
                depth += 1
                nxt = []
                for f in level:
                    for g in b.generators:
                        h = b.compose(f, g)
                        if h not in seen:
                            seen[h] = depth
                            nxt.append(h)
                level = nxt
                out.extend(GroupElement(self, h) for h in nxt)
            for f, d in seen.items():
                self._length.setdefault(f, d)
            self._elements = out
        return list(self._elements)

    def order(self) -> int:
        return len(self.elements())

    def longest_element(self) -> "GroupElement":
        return self.elements()[-1]

    # -- roots ------------------------------------------------------------------

    def simple_root(self, i: int):
        return self.backend.simple_roots[i]

    def positive_roots(self) -> list:
        """Positive roots in a canonical order (by height for integer roots)."""
        self._require_finite("enumerate_roots")
        if self._positive_roots is None:
            b = self.backend
            seen = set(b.simple_roots)
            queue = deque(b.simple_roots)
            while queue:
                r = queue.popleft()
                for a in b.simple_roots:
                    x = b.reflect(a, r)
                    if b.is_positive(x) and x not in seen:
                        seen.add(x)
                        queue.append(x)
            self._positive_roots = sorted(seen, key=b.root_key)
            self._root_index = {r: k for k, r in enumerate(self._positive_roots)}
        return list(self._positive_roots)

    def roots(self) -> list:
        pos = self.positive_roots()
        return pos + [self.backend.negate(r) for r in pos]

    def root_index(self, root) -> tuple[int, int]:
        """(index of the positive root +-root, sign)."""
        self.positive_roots()
        b = self.backend
        if b.is_positive(root):
            return self._root_index[root], 1
        return self._root_index[b.negate(root)], -1

    def is_positive(self, root) -> bool:
        return self.backend.is_positive(root)

    def reflection(self, root) -> "GroupElement":
        """The reflection in ``root`` as a group element."""
        return GroupElement(self, self.backend.reflection_form(root))

    def act(self, w: "GroupElement", root):
        return self.backend.apply(w.form, root)

    def inversion_set(self, w: "GroupElement") -> list:
        """N(w): positive roots sent to negative roots by w^-1."""
        winv = self.inverse(w)
        return [r for r in self.positive_roots() if not self.is_positive(self.act(winv, r))]

    # -- conjugacy of generators ------------------------------------------------

    def odd_graph(self) -> "OddCoxeterGraph":
        return OddCoxeterGraph.of(self)

    def conjugacy_classes_of_generators(self) -> list[tuple[int, ...]]:
        return self.odd_graph().components

    def odd_edge_conjugator(self, a: int, b: int) -> "GroupElement":
        """w with w s_a w^-1 = s_b for an odd edge {a,b}: w = (s_a s_b)^k, m = 2k+1."""
        m = self.matrix[a][b]
        if m == INF or m % 2 == 0:
            raise CoxeterError(f"{self.names[a]}, {self.names[b]} are not joined by an odd edge")
        ab = self.gens[a] * self.gens[b]
        w = self.one
        for _ in range(m // 2):
            w = w * ab
        return w

    def conjugator_to_representative(self, s: int, reps: Iterable[int]) -> tuple["GroupElement", int]:
        """Return (w, s0) with s0 in ``reps`` and w s0 w^-1 = s."""
        reps = set(reps)
        if s in reps:
            return self.one, s
        graph = self.odd_graph()
        parent = {s: None}
        queue = deque([s])
        found = None
        while queue:
            v = queue.popleft()
            if v in reps:
                found = v
                break
            for u in graph.neighbours[v]:
                if u not in parent:
                    parent[u] = v
                    queue.append(u)
        if found is None:
            raise CoxeterError(f"{self.names[s]} is not conjugate to any of {sorted(reps)}")
        # walk s0 -> ... -> s, composing odd-edge conjugators on the left
        w = self.one
        v = found
        while parent[v] is not None:
            nxt = parent[v]
            w = self.odd_edge_conjugator(v, nxt) * w
            v = nxt
        return w, found

    def conjugate(self, w: "GroupElement", x: "GroupElement") -> "GroupElement":
        return w * x * self.inverse(w)


def _validate_matrix(mat):
    n = len(mat)
    if n == 0:
        raise CoxeterError("Coxeter matrix must be non-empty")
    for i, row in enumerate(mat):
        if len(row) != n:
            raise CoxeterError("Coxeter matrix must be square")
        if row[i] != 1:
            raise CoxeterError("Coxeter matrix diagonal must be 1")
        for j, m in enumerate(row):
            if m != mat[j][i]:
                raise CoxeterError("Coxeter matrix must be symmetric")
            if i != j and m != INF and m < 2:
                raise CoxeterError(f"off-diagonal entry m[{i + 1}][{j + 1}]={m} must be >= 2 or inf")


class GroupElement:
    """An element of W in canonical form (its action on the simple roots)."""

    __slots__ = ("system", "form", "_hash")

    def __init__(self, system: CoxeterSystem, form):
        self.system = system
        self.form = form
        self._hash = hash(form)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.system.multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.system is other.system and self.form == other.form

    def __hash__(self):
        return self._hash

    def __repr__(self):
        word = self.system.format_word(self.reduced_word())
        return f"<{word or '1'}>"

    def inverse(self) -> "GroupElement":
        return self.system.inverse(self)

    def length(self) -> int:
        return self.system.length(self)

    def reduced_word(self) -> Word:
        return self.system.reduced_word(self)

    def is_identity(self) -> bool:
        return self.form == self.system.backend.identity

    def act(self, root):
        return self.system.act(self, root)


@dataclass(frozen=True)
class OddCoxeterGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    neighbours: tuple[tuple[int, ...], ...]
    components: list[tuple[int, ...]]

    @classmethod
    def of(cls, W: CoxeterSystem) -> "OddCoxeterGraph":
        n = W.rank
        edges = tuple(
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if W.matrix[i][j] != INF and W.matrix[i][j] % 2 == 1
        )
        nbrs = [[] for _ in range(n)]
        for i, j in edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        comp_of = [-1] * n
        comps = []
        for v in range(n):
            if comp_of[v] >= 0:
                continue
            stack, comp = [v], []
            comp_of[v] = len(comps)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in nbrs[x]:
                    if comp_of[y] < 0:
                        comp_of[y] = len(comps)
                        stack.append(y)
            comps.append(tuple(sorted(comp)))
        return cls(tuple(range(n)), edges, tuple(tuple(sorted(x)) for x in nbrs), comps)

    def component(self, r: int) -> tuple[int, ...]:
        for c in self.components:
            if r in c:
                return c
        raise KeyError(r)

    def edge_count(self, r: int) -> int:
        """e(r): edges in the component of r."""
        comp = set(self.component(r))
        return sum(1 for i, j in self.edges if i in comp)

    def vertex_count(self, r: int) -> int:
        """n(r): vertices in the component of r."""
        return len(self.component(r))

    def free_rank(self, r: int) -> int:
        return self.edge_count(r) - self.vertex_count(r) + 1


# ---------------------------------------------------------------------------
# construction from labels

_LABEL = re.compile(r"^(~?)([A-Z])_?(\d+)$")
_DIHEDRAL = re.compile(r"^I2\((\d+)\)$")


def build_system(spec, names=None) -> CoxeterSystem:
    """Build a Coxeter system from a type label (``"B3"``, ``"~C3"``, ``"I2(5)"``)
    or from an explicit Coxeter matrix (``0`` or ``"inf"`` for infinity)."""
    if isinstance(spec, CoxeterSystem):
        return spec
    if not isinstance(spec, str):
        mat = [[_parse_entry(x) for x in row] for row in spec]
        return CoxeterSystem(mat, names=names)
    label = spec.strip()
    if label == "G2":
        label = "I2(6)"
    m = _DIHEDRAL.match(label)
    if m:
        order = int(m.group(1))
        if order < 2:
            raise CoxeterError("I2(m) needs m >= 2")
        return CoxeterSystem([[1, order], [order, 1]], label, names=names, dihedral=True)
    m = _LABEL.match(label)
    if not m:
        raise CoxeterError(f"unknown Coxeter type label {spec!r}")
    tilde, family, n = m.group(1), m.group(2), int(m.group(3))
    if family in "EFH":
        raise UnsupportedSystemError(f"type {family} is not supported")
    if family not in "ABCD":
        raise CoxeterError(f"unknown Coxeter type label {spec!r}")
    mat, norms = _labelled(family, n, bool(tilde))
    W = CoxeterSystem(mat, label, norms=norms, names=names, dihedral=False)
    if W.is_finite == bool(tilde):  # pragma: no cover - guards the tables above
        raise CoxeterError(f"finiteness of {label} disagrees with the classification")
    return W


def _parse_entry(x) -> int:
    if x is None or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo")):
        return INF
    if isinstance(x, float) and x == float("inf"):
        return INF
    v = int(x)
    return INF if v in (0, -1) else v
