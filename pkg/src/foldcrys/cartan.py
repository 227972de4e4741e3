"""Cartan data and the unfolding of non-symmetric Dynkin diagrams."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


class InvalidDatum(ValueError):
    """Raised by validate_datum; carries the full list of violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NonSymmetrizable(InvalidDatum):
    pass


class NotFiniteType(InvalidDatum):
    pass


class NotCoprime(InvalidDatum):
    pass


class BadParity(InvalidDatum):
    pass


class ClassCountMismatch(ValueError):
    pass


class UnknownVertex(ValueError):
    pass


class SeedRequired(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    """A finite-type Cartan matrix with symmetrizer, parity and vertex order.

    Vertices are labeled 1..n.  ``order`` lists the vertices from smallest
    to largest in the total order; arrows of the quiver point from even
    vertices (parity 0) to odd ones and are compatible with the order.
    """

    c: tuple
    d: tuple
    parity: tuple
    order: tuple
    family: str = None
    name: str = None

    @property
    def n(self):
        return len(self.d)

    def b(self, i, j):
        """The symmetric bilinear entry b_ij = d_i c_ij."""
        return self.d[i - 1] * self.c[i - 1][j - 1]

    def adjacent(self, i, j):
        return i != j and self.c[i - 1][j - 1] != 0

    def arrows(self):
        """Arrows i -> j of the quiver: adjacent pairs with i even, j odd."""
        out = []
        for i in range(1, self.n + 1):
            if self.parity[i - 1] != 0:
                continue
            for j in range(1, self.n + 1):
                if self.adjacent(i, j) and self.parity[j - 1] == 1:
                    out.append((i, j))
        return out

    def rank(self, i):
        return self.order.index(i)


def _det(rows):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return det


def _default_parity(c, n):
    """Proper 2-coloring by BFS, component roots colored 0."""
    parity = [None] * n
    for root in range(n):
        if parity[root] is not None:
            continue
        parity[root] = 0
        queue = [root]
        while queue:
            v = queue.pop(0)
            for w in range(n):
                if w != v and c[v][w] != 0:
                    if parity[w] is None:
                        parity[w] = 1 - parity[v]
                        queue.append(w)
    return tuple(parity)


def validate_datum(c, d, parity=None, order=None, family=None, name=None):
    """Validate raw Cartan data and return a CartanDatum.

    Raises InvalidDatum listing every violated invariant.
    """
    violations = []
    n = len(c)
    if n == 0 or any(len(row) != n for row in c):
        raise InvalidDatum(["NotSquare: Cartan matrix must be square and nonempty"])
    if len(d) != n:
        raise InvalidDatum(["BadSymmetrizer: symmetrizer length != matrix size"])
    if any(int(x) != x for row in c for x in row):
        violations.append("NotIntegral: Cartan matrix entries must be integers")
    if any(di <= 0 or int(di) != di for di in d):
        violations.append("BadSymmetrizer: symmetrizer entries must be positive integers")
    c = tuple(tuple(int(x) for x in row) for row in c)
    d = tuple(int(x) for x in d)
    for i in range(n):
        if c[i][i] != 2:
            violations.append(f"BadDiagonal: c[{i+1}][{i+1}] != 2")
        for j in range(n):
            if i != j and c[i][j] > 0:
                violations.append(f"BadSign: c[{i+1}][{j+1}] > 0")
            if (c[i][j] == 0) != (c[j][i] == 0):
                violations.append(f"BadZeroPattern: c[{i+1}][{j+1}] vs c[{j+1}][{i+1}]")
    for i in range(n):
        for j in range(n):
            if d[i] * c[i][j] != d[j] * c[j][i]:
                violations.append(
                    f"NonSymmetrizable: d_{i+1}c_{i+1}{j+1} != d_{j+1}c_{j+1}{i+1}"
                )
    g = 0
    for di in d:
        g = gcd(g, di)
    if g != 1:
        violations.append(f"NotCoprime: gcd of symmetrizer = {g}")
    # finite type: symmetrized matrix positive definite
    sym = [[d[i] * c[i][j] for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if _det([row[:k] for row in sym[:k]]) <= 0:
            violations.append(f"NotFiniteType: leading minor {k} not positive")
            break
    if parity is None:
        parity = _default_parity(c, n)
    parity = tuple(int(p) for p in parity)
    if len(parity) != n or any(p not in (0, 1) for p in parity):
        violations.append("BadParity: parity must be a 0/1 vector of length n")
    else:
        for i in range(n):
            for j in range(i + 1, n):
                if c[i][j] != 0 and parity[i] == parity[j]:
                    violations.append(
                        f"BadParity: adjacent vertices {i+1},{j+1} share parity"
                    )
    if order is None:
        evens = [i for i in range(1, n + 1) if parity[i - 1] == 0]
        odds = [i for i in range(1, n + 1) if parity[i - 1] == 1]
        order = tuple(evens + odds)
    else:
        order = tuple(order)
        if sorted(order) != list(range(1, n + 1)):
            violations.append("BadOrder: order must be a permutation of 1..n")
        else:
            rank = {v: k for k, v in enumerate(order)}
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if (
                        i != j
                        and c[i - 1][j - 1] != 0
                        and parity[i - 1] == 0
                        and parity[j - 1] == 1
                        and rank[i] > rank[j]
                    ):
                        violations.append(f"BadOrder: arrow {i}->{j} violates order")
    if violations:
        for cls, tag in (
            (NonSymmetrizable, "NonSymmetrizable"),
            (NotFiniteType, "NotFiniteType"),
            (NotCoprime, "NotCoprime"),
            (BadParity, "BadParity"),
        ):
            if any(v.startswith(tag) for v in violations):
                raise cls(violations)
        raise InvalidDatum(violations)
    return CartanDatum(c=c, d=d, parity=parity, order=order, family=family, name=name)


def _chain(n):
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        c[i][i + 1] = -1
        c[i + 1][i] = -1
    return c


def builtin_datum(name):
    """Construct one of the built-in data: A1..A6, B2..B4, C2..C4, D4, D5, E6, F4, G2."""
    name = name.upper()
    fam, rk = name[0], int(name[1:])
    if fam == "A":
        c = _chain(rk)
        d = [1] * rk
        parity = [(i % 2) for i in range(rk)]
    elif fam == "B":
        if rk < 2:
            raise ValueError("B_n needs n >= 2")
        c = _chain(rk)
        c[rk - 1][rk - 2] = -2
        d = [2] * (rk - 1) + [1]
        parity = [(rk - i) % 2 for i in range(1, rk + 1)]
    elif fam == "C":
        if rk < 2:
            raise ValueError("C_n needs n >= 2")
        c = _chain(rk)
        c[rk - 2][rk - 1] = -2
        d = [1] * (rk - 1) + [2]
        parity = [(rk - i + 1) % 2 for i in range(1, rk + 1)]
    elif fam == "D":
        if rk < 4:
            raise ValueError("D_n needs n >= 4")
        c = _chain(rk - 1)
        for row in c:
            row.append(0)
        c.append([0] * rk)
        c[rk - 1][rk - 1] = 2
        c[rk - 1][rk - 3] = -1
        c[rk - 3][rk - 1] = -1
        d = [1] * rk
        parity = [(i % 2) for i in range(rk - 1)]
        parity.append(1 - parity[rk - 3])
    elif fam == "E":
        if rk != 6:
            raise ValueError("only E6 is built in")
        c = _chain(5)
        for row in c:
            row.append(0)
        c.append([0] * 6)
        c[5][5] = 2
        c[5][2] = -1
        c[2][5] = -1
        d = [1] * 6
        parity = [0, 1, 0, 1, 0, 1]
    elif fam == "F":
        if rk != 4:
            raise ValueError("only F4 is built in")
        c = _chain(4)
        c[1][2] = -1
        c[2][1] = -2
        d = [2, 2, 1, 1]
        parity = [0, 1, 0, 1]
    elif fam == "G":
        if rk != 2:
            raise ValueError("only G2 is built in")
        c = [[2, -1], [-3, 2]]
        d = [3, 1]
        parity = [1, 0]
    else:
        raise ValueError(f"unknown type {name}")
    return validate_datum(c, d, parity=parity, family=fam, name=name)


_DEFAULT_SEEDS = {
    "A": lambda dt: (1, dt.parity[0] + 2),
    "D": lambda dt: (1, dt.parity[0] + 2),
    "E": lambda dt: (1, dt.parity[0] + 2),
    "B": lambda dt: (dt.n, 2),
    "C": lambda dt: (dt.n, 2),
    "F": lambda dt: (4, 1),
    "G": lambda dt: (2, 1),
}


@dataclass(frozen=True)
class UnfoldedQuiver:
    """The unfolded quiver: vertex set, arrows, Cartan matrix, evenness data."""

    base: CartanDatum
    underline_I: tuple
    underline_E: tuple
    underline_C: tuple
    class_residues: tuple  # per vertex i (1-based -> index i-1): frozenset of residues mod 2d_i
    seed: tuple

    def period(self, i):
        return 2 * self.base.d[i - 1]

    def vertex_index(self, ui):
        try:
            return self.underline_I.index(ui)
        except ValueError:
            raise UnknownVertex(f"{ui} not in unfolded vertex set") from None


def unfold(datum, seed=None):
    """Compute the unfolding of a Cartan datum.

    The equivalence relation on I x Z is generated by (i,r) ~ (j, r + b_ij)
    for all pairs with c_ij != 0 (including i = j, where b_ii = 2d_i).  It
    descends to the finite residue set {(i, r mod 2d_i)}; exactly two classes
    must result.  ``seed`` selects the class that becomes the even lattice.
    """
    n = datum.n
    d = datum.d
    if seed is None:
        if datum.family in _DEFAULT_SEEDS:
            seed = _DEFAULT_SEEDS[datum.family](datum)
        else:
            raise SeedRequired(
                "no default seed for a custom datum; pass seed=(vertex, integer)"
            )
    nodes = [(i, rho) for i in range(1, n + 1) for rho in range(2 * d[i - 1])]
    idx = {v: k for k, v in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    from math import lcm

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if datum.c[i - 1][j - 1] == 0:
                continue
            b = datum.b(i, j)
            period = lcm(2 * d[i - 1], 2 * d[j - 1])
            for r in range(period):
                union(
                    idx[(i, r % (2 * d[i - 1]))],
                    idx[(j, (r + b) % (2 * d[j - 1]))],
                )
    classes = {}
    for v, k in idx.items():
        classes.setdefault(find(k), []).append(v)
    if len(classes) != 2:
        raise ClassCountMismatch(
            f"unfolding produced {len(classes)} classes, expected 2"
        )
    i0, r0 = seed
    if not (1 <= i0 <= n):
        raise UnknownVertex(f"seed vertex {i0} out of range")
    seed_node = (i0, r0 % (2 * d[i0 - 1]))
    seed_class = next(vs for root, vs in classes.items() if seed_node in vs)
    class_residues = tuple(
        frozenset(rho for (i, rho) in seed_class if i == v) for v in range(1, n + 1)
    )
    underline_I = tuple(
        (i, r)
        for i in range(1, n + 1)
        for r in range(1, 2 * d[i - 1] + 1)
        if r % (2 * d[i - 1]) in class_residues[i - 1]
    )
    underline_E = []
    for (i, j) in datum.arrows():
        g2 = 2 * gcd(d[i - 1], d[j - 1])
        b = datum.b(i, j)
        for (x, r) in underline_I:
            if x != i:
                continue
            for (y, s) in underline_I:
                if y != j:
                    continue
                if (s - r + b) % g2 == 0:
                    underline_E.append(((i, r), (j, s)))
    underline_E = tuple(sorted(underline_E))
    m = len(underline_I)
    pos = {v: k for k, v in enumerate(underline_I)}
    C = [[2 if a == b_ else 0 for b_ in range(m)] for a in range(m)]
    for (x, y) in underline_E:
        C[pos[x]][pos[y]] -= 1
        C[pos[y]][pos[x]] -= 1
    underline_C = tuple(tuple(row) for row in C)
    return UnfoldedQuiver(
        base=datum,
        underline_I=underline_I,
        underline_E=underline_E,
        underline_C=underline_C,
        class_residues=class_residues,
        seed=(i0, r0),
    )


def is_even_pair(uq, ui, k):
    """True iff (ui, k) is an even pair: k matches ui's residue mod 2d_i."""
    if ui not in uq.underline_I:
        raise UnknownVertex(f"{ui} not in unfolded vertex set")
    i, r = ui
    return (k - r) % uq.period(i) == 0


def zero_I_member(uq, i, k):
    """The unfolded vertex (i, r) whose residue class contains (i, k), or None."""
    if not (1 <= i <= uq.base.n):
        return None
    p = 2 * uq.base.d[i - 1]
    if k % p not in uq.class_residues[i - 1]:
        return None
    r = k % p
    if r == 0:
        r = p
    # normalize into [1, 2d_i]
    while r > p:
        r -= p
    return (i, r)
